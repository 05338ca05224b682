#include "rlnc/node/registry.hpp"

#include <algorithm>
#include <stdexcept>

#include "rlnc/pip/pip.hpp"

namespace rlnc::node {

void Registry::add(NodeRecord record) {
    std::sort(record.coded_set.begin(), record.coded_set.end(), pip::id_less);
    if (std::adjacent_find(record.coded_set.begin(), record.coded_set.end()) != record.coded_set.end())
        throw std::invalid_argument("coded set of " + record.id + " has duplicates");
    for (const auto& id : record.coded_set)
        if (std::find(record.parents.begin(), record.parents.end(), id) == record.parents.end())
            throw std::invalid_argument("coded set of " + record.id + " names undeclared parent " + id);
    validate_policy(record.policy, record.parents);
    auto id = record.id;
    records_[id] = std::move(record);
}

const NodeRecord* Registry::find(const crypto::NodeId& id) const {
    auto it = records_.find(id);
    return it == records_.end() ? nullptr : &it->second;
}

const NodeRecord& Registry::at(const crypto::NodeId& id) const {
    if (const auto* r = find(id)) return *r;
    throw std::out_of_range("unknown node " + id);
}

std::vector<crypto::NodeId> Registry::children_of(const crypto::NodeId& id) const {
    std::vector<crypto::NodeId> out;
    for (const auto& [cid, r] : records_)
        if (std::find(r.parents.begin(), r.parents.end(), id) != r.parents.end()) out.push_back(cid);
    std::sort(out.begin(), out.end(), pip::id_less);
    return out;
}

void Registry::drop_link(const crypto::NodeId& parent, const crypto::NodeId& child) {
    auto it = records_.find(child);
    if (it == records_.end()) return;
    auto& r = it->second;
    std::erase(r.parents, parent);
    std::erase(r.coded_set, parent);
    if (auto* s = std::get_if<SpecificParents>(&r.policy)) std::erase(s->ids, parent);
    if (auto* s = std::get_if<SubsetParents>(&r.policy)) std::erase(s->ids, parent);
}

std::vector<ClaimedParent> Registry::claimed_parents(const NodeRecord& r) const {
    std::vector<ClaimedParent> out;
    for (const auto& id : r.coded_set) {
        const auto* p = find(id);
        if (!p)
            out.push_back({id, {}, std::nullopt});
        else
            out.push_back({p->id, p->pk, p->cert});
    }
    return out;
}

}  // namespace rlnc::node
