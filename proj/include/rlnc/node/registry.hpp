#pragma once

#include <map>
#include <vector>

#include "rlnc/node/policy.hpp"

namespace rlnc::node {

/// Static membership record: who a node is, who feeds it, and which of those
/// parents it declares it codes over.
struct NodeRecord {
    crypto::NodeId id;
    crypto::PublicKey pk;
    std::optional<crypto::Certificate> cert;
    bool is_source = false;
    std::vector<crypto::NodeId> parents;
    std::vector<crypto::NodeId> coded_set;  // sorted
    RequiredSetPolicy policy = AllParents{};
};

class Registry {
public:
    /// Sorts coded_set, validates the policy; replaces any existing record.
    void add(NodeRecord record);
    const NodeRecord* find(const crypto::NodeId& id) const;
    const NodeRecord& at(const crypto::NodeId& id) const;

    /// Children of `id` in canonical order.
    std::vector<crypto::NodeId> children_of(const crypto::NodeId& id) const;

    /// Removes `parent` from `child`'s parents and coded set.
    void drop_link(const crypto::NodeId& parent, const crypto::NodeId& child);

    std::vector<ClaimedParent> claimed_parents(const NodeRecord& r) const;

    const std::map<crypto::NodeId, NodeRecord>& records() const noexcept { return records_; }

private:
    std::map<crypto::NodeId, NodeRecord> records_;
};

}  // namespace rlnc::node
