#include "rlnc/sim/scenario.hpp"

#include <cstdio>
#include <stdexcept>

#include "rlnc/sim/adversary.hpp"

namespace rlnc::sim {

namespace {

Topology fanin_topology(std::size_t d) {
    Topology t;
    t.nodes.push_back({"S", Role::Source, {}, node::AllParents{}, crypto::Priority::High});
    for (std::size_t i = 0; i < d; ++i) {
        char id[24];
        std::snprintf(id, sizeof id, "P%02zu", i);
        t.nodes.push_back({id, Role::Interior, {}, node::AllParents{}, crypto::Priority::Normal});
        t.edges.push_back({0, i + 1});
        t.edges.push_back({i + 1, d + 1});
    }
    t.nodes.push_back({"R", Role::Interior, {}, node::AllParents{}, crypto::Priority::Normal});
    t.nodes.push_back({"C", Role::Sink, {}, node::AllParents{}, crypto::Priority::Normal});
    t.edges.push_back({d + 1, d + 2});
    return t;
}

}  // namespace

Fanin::Fanin(FaninConfig config)
    : cfg_(std::move(config)),
      topo_(fanin_topology(cfg_.parents)),
      group_(validity::profile(cfg_.profile).group),
      rng_(cfg_.seed) {
    if (cfg_.parents < 1) throw std::invalid_argument("Fanin: need at least one parent");
    std::vector<crypto::NodeIdentity> ids;
    for (const auto& n : topo_.nodes) ids.push_back(crypto::make_identity(n.id, rng_));
    const auto authority = *ids[0].sk;
    for (std::size_t v = 0; v < ids.size(); ++v)
        ids[v].cert = crypto::certify(authority, ids[v].pk, ids[v].id, topo_.nodes[v].priority);

    sys_ = std::make_shared<node::SystemParams>();
    sys_->protocol = cfg_.protocol;
    sys_->hash = cfg_.hash.value_or(validity::profile(cfg_.profile).hash);
    Bytes seed(20);
    rng_.fill(seed);
    sys_->seed = crypto::Seed(seed);
    sys_->master_pk = ids[0].pk;
    sys_->authority_pk = ids[0].pk;
    sys_->per_child_coefficients = cfg_.per_child_coefficients;
    sys_->challenges = cfg_.challenges;

    for (std::size_t v = 0; v < ids.size(); ++v) {
        node::NodeRecord r{ids[v].id, ids[v].pk, ids[v].cert, v == 0, {}, {}, topo_.nodes[v].policy};
        for (auto p : topo_.parents(v)) r.parents.push_back(topo_.nodes[p].id);
        r.coded_set = r.parents;
        reg_.add(std::move(r));
    }
    source_ = std::make_unique<node::Source>(ids[0], sys_, reg_, group_);
    for (std::size_t i = 0; i < cfg_.parents; ++i) parents_.push_back(std::make_unique<node::Node>(ids[i + 1], sys_, reg_));
    relay_ = std::make_unique<node::Node>(ids[cfg_.parents + 1], sys_, reg_);
    child_ = std::make_unique<node::Node>(ids[cfg_.parents + 2], sys_, reg_);
    next_epoch();
}

void Fanin::next_epoch() {
    ++k_;
    const auto& params = source_->begin_epoch(node::random_originals(cfg_.n, cfg_.m, group_.q, rng_), k_, rng_);
    for (auto& p : parents_) p->begin_epoch(params);
    relay_->begin_epoch(params);
    child_->begin_epoch(params);

    const auto emitted = source_->emit();
    std::vector<node::Packet> to_relay;
    const node::ResponderFor none = [](const node::Packet&) { return node::Responder{}; };
    for (auto& p : parents_) {
        const auto received = p->verify_all({emitted.at(p->id())}, none, rng_);
        const auto in = p->coding_inputs(received, nullptr);
        if (in.size() != 1) throw std::logic_error("Fanin: parent rejected the source packet");
        to_relay.push_back(p->code_honest(relay_->id(), in));
    }
    const node::ResponderFor route = [this](const node::Packet& pkt) -> node::Responder {
        for (auto& p : parents_)
            if (p->id() == pkt.sender) {
                const node::Node* n = p.get();
                const auto recv = pkt.receiver;
                return [n, recv](std::size_t i) { return n->respond(recv, i); };
            }
        return {};
    };
    relay_received_ = relay_->verify_all(to_relay, route, rng_);
    std::vector<crypto::NodeId> missing;
    inputs_ = relay_->coding_inputs(relay_received_, &missing);
    for (const auto& r : relay_received_)
        if (r.result)
            throw std::logic_error("Fanin: relay rejected honest parent " + r.packet.sender + ": " +
                                   std::string(pip::to_string(r.result->kind)) + " " + r.result->detail);
    if (!missing.empty()) throw std::logic_error("Fanin: relay is missing parent " + missing.front());
}

node::Packet Fanin::relay_packet(const Behavior& b, gf::Matrix span) {
    return adversarial_packet(b, AdversaryInput{*relay_, inputs_, child_->id(), rng_, std::move(span)});
}

node::Responder Fanin::responder() const {
    const node::Node* n = relay_.get();
    const auto recv = child_->id();
    return [n, recv](std::size_t i) { return n->respond(recv, i); };
}

node::ReceivedPacket Fanin::verify_at_child(const node::Packet& p) {
    node::LiveChallenges ch(rng_, cfg_.challenges, responder());
    return child_->verify(p, ch);
}

}  // namespace rlnc::sim
