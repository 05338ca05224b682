#include "rlnc/sim/simulation.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>

#include "rlnc/sim/adversary.hpp"

namespace rlnc::sim {

std::size_t TransmissionReport::detections_of(const crypto::NodeId& culprit) const {
    return static_cast<std::size_t>(
        std::count_if(detections.begin(), detections.end(), [&](const auto& d) { return d.culprit == culprit; }));
}

const SinkReport& TransmissionReport::sink(const crypto::NodeId& id) const {
    for (const auto& s : sinks)
        if (s.id == id) return s;
    throw std::out_of_range("no sink " + id);
}

namespace {

std::vector<std::vector<std::size_t>> downstream_closures(const Topology& t) {
    const std::size_t n = t.nodes.size();
    std::vector<std::set<std::size_t>> sets(n);
    for (std::size_t v = n; v-- > 0;) {
        sets[v].insert(v);
        for (auto c : t.children(v)) sets[v].insert(sets[c].begin(), sets[c].end());
    }
    std::vector<std::vector<std::size_t>> out(n);
    for (std::size_t v = 0; v < n; ++v) out[v].assign(sets[v].begin(), sets[v].end());
    return out;
}

}  // namespace

TransmissionReport run_simulation(const Topology& topo, const SimConfig& cfg) {
    validate(topo);
    if (cfg.m < 1) throw std::invalid_argument("run_simulation: m must be >= 1");
    const auto& prof = validity::profile(cfg.profile);
    const gf::PrimeField field(prof.group.q);
    const std::size_t count = topo.nodes.size();
    const std::size_t src = topo.source();

    Rng rng(cfg.seed);
    std::vector<crypto::NodeIdentity> ids;
    for (const auto& n : topo.nodes) ids.push_back(crypto::make_identity(n.id, rng));
    const crypto::SecretKey authority_sk = *ids[src].sk;
    for (std::size_t v = 0; v < count; ++v)
        ids[v].cert = crypto::certify(authority_sk, ids[v].pk, ids[v].id, topo.nodes[v].priority);

    auto sys = std::make_shared<node::SystemParams>();
    sys->protocol = cfg.protocol;
    sys->hash = prof.hash;
    Bytes seed_bytes(20);
    rng.fill(seed_bytes);
    sys->seed = crypto::Seed(seed_bytes);
    sys->master_pk = ids[src].pk;
    sys->authority_pk = ids[src].pk;
    sys->per_child_coefficients = cfg.per_child_coefficients;
    sys->challenges = cfg.challenges;

    node::Registry reg;
    std::map<crypto::NodeId, std::size_t> index;
    for (std::size_t v = 0; v < count; ++v) {
        index[topo.nodes[v].id] = v;
        node::NodeRecord r{ids[v].id, ids[v].pk, ids[v].cert, v == src, {}, {}, topo.nodes[v].policy};
        for (auto p : topo.parents(v)) r.parents.push_back(topo.nodes[p].id);
        r.coded_set = r.parents;
        reg.add(std::move(r));
    }

    node::Source source(ids[src], sys, reg, prof.group);
    std::vector<std::unique_ptr<node::Node>> nodes(count);
    for (std::size_t v = 0; v < count; ++v)
        if (v != src) nodes[v] = std::make_unique<node::Node>(ids[v], sys, reg);

    const auto depth = depths(topo);
    const std::size_t rounds = cfg.rounds ? cfg.rounds : diameter(topo) + cfg.m;
    const auto closure = downstream_closures(topo);

    TransmissionReport report;
    report.rounds = std::min(rounds, diameter(topo));
    std::vector<std::map<crypto::NodeId, node::Packet>> previous_out(count);

    for (std::uint64_t k = 1; k <= cfg.epochs; ++k) {
        auto originals = node::random_originals(cfg.n, cfg.m, prof.group.q, rng);
        const auto& params = source.begin_epoch(originals, k, rng);
        for (auto& nd : nodes)
            if (nd) nd->begin_epoch(params);

        std::vector<std::vector<node::Packet>> inbox(count);
        const auto deliver = [&](const crypto::NodeId& child, node::Packet p) { inbox[index.at(child)].push_back(std::move(p)); };
        if (rounds >= 1)
            for (auto& [child, p] : source.emit()) deliver(child, std::move(p));

        const node::ResponderFor responders = [&](const node::Packet& p) -> node::Responder {
            auto it = index.find(p.sender);
            if (it == index.end() || !nodes[it->second]) return {};
            const node::Node* sender = nodes[it->second].get();
            const crypto::NodeId receiver = p.receiver;
            return [sender, receiver](std::size_t i) { return sender->respond(receiver, i); };
        };

        std::vector<SinkReport> sinks;
        for (std::size_t v = 0; v < count; ++v) {
            if (v == src) continue;
            if (depth[v] > rounds) {
                if (topo.nodes[v].role == Role::Sink) sinks.push_back(SinkReport{topo.nodes[v].id, 0, false});
                continue;
            }
            node::Node& nd = *nodes[v];
            const bool honest = topo.nodes[v].behavior.kind == BehaviorKind::Honest;
            Rng node_rng(mix_seed(cfg.seed, k * count + v));

            auto received = nd.verify_all(inbox[v], responders, node_rng);
            std::vector<crypto::NodeId> to_drop;
            for (const auto& r : received) {
                ++report.verifications;
                if (!r.result) continue;
                ++report.failed_verifications;
                if (honest) {
                    DetectionEvent ev{k, depth[index.count(r.packet.sender) ? index.at(r.packet.sender) : v] + 1,
                                      nd.id(), r.result->culprit, r.result->kind, std::nullopt};
                    if (cfg.adjudicate && reg.find(r.result->culprit) && r.result->culprit == r.packet.sender) {
                        auto proof = node::build_misbehavior_proof(r.packet, r.transcript, params,
                                                                   node::sender_view(reg, r.packet.sender));
                        ev.ruling = node::adjudicate(proof, *sys, &reg).ruling;
                    }
                    report.detections.push_back(std::move(ev));
                }
                to_drop.push_back(r.packet.sender);
            }
            std::vector<crypto::NodeId> missing;
            nd.coding_inputs(received, &missing);
            if (!missing.empty()) ++report.degraded_nodes;
            if (cfg.drop_failed_links) {
                for (const auto& p : to_drop) reg.drop_link(p, nd.id());
                for (const auto& p : missing) reg.drop_link(p, nd.id());
            }
            const auto inputs = nd.coding_inputs(received, nullptr);

            if (topo.nodes[v].role == Role::Sink) {
                std::vector<gf::CodedVector> accepted;
                for (const auto& r : received)
                    if (!r.result) accepted.push_back(r.packet.e);
                SinkReport s{nd.id(), gf::rank(accepted, field), false};
                if (s.rank == cfg.m) {
                    auto decoded = gf::decode(accepted, field);
                    bool same = decoded.has_value();
                    for (std::size_t j = 0; same && j < cfg.m; ++j) same = (*decoded)[j] == originals[j].payload;
                    s.decoded = same;
                }
                sinks.push_back(std::move(s));
            }

            const auto children = reg.children_of(nd.id());
            if (inputs.empty() || children.empty()) continue;
            const Behavior& b = topo.nodes[v].behavior;
            if (b.kind == BehaviorKind::ReplayOld && k >= 2 && !previous_out[v].empty()) {
                for (const auto& child : children)
                    if (auto it = previous_out[v].find(child); it != previous_out[v].end()) deliver(child, it->second);
                continue;
            }
            std::map<crypto::NodeId, node::Packet> out;
            for (const auto& child : children) {
                node::Packet p;
                if (b.kind == BehaviorKind::Honest) {
                    p = nd.code_honest(child, inputs);
                } else {
                    gf::Matrix span;
                    if (b.kind == BehaviorKind::NonInnovative)
                        for (auto w : closure[index.at(child)])
                            for (const auto& q : inbox[w]) span.push_back(q.e.coding);
                    p = adversarial_packet(b, AdversaryInput{nd, inputs, child, node_rng, std::move(span)});
                }
                out.emplace(child, p);
                deliver(child, std::move(p));
            }
            previous_out[v] = std::move(out);
        }
        report.sinks = std::move(sinks);
    }
    return report;
}

}  // namespace rlnc::sim
