#include "rlnc/node/node.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace rlnc::node {

Node::Node(crypto::NodeIdentity identity, std::shared_ptr<const SystemParams> sys, const Registry& registry)
    : id_(std::move(identity)), sys_(std::move(sys)), registry_(&registry) {
    if (!id_.sk) throw std::invalid_argument("node needs its signing key");
}

void Node::begin_epoch(const validity::SourceEpochParams& params) {
    if (!validity::verify_epoch(params, sys_->master_pk)) throw std::invalid_argument("epoch parameters do not verify");
    previous_ = std::move(current_);
    current_ = params;
    trees_.clear();
}

ReceivedPacket Node::verify(const Packet& p, ChallengeSource& challenges) const {
    ReceivedPacket out{p, std::nullopt, {}};
    if (!current_) throw std::logic_error("no active epoch");
    const auto& me = registry_->at(id_.id);
    if (std::find(me.parents.begin(), me.parents.end(), p.sender) == me.parents.end() || !registry_->find(p.sender)) {
        out.result = pip::make_violation(pip::ViolationKind::BadAttest, p.sender, "sender is not a declared parent");
        return out;
    }
    const SenderView view = sender_view(*registry_, p.sender);
    const VerifyInput in{*sys_, *current_, previous_ ? &*previous_ : nullptr, view, id_.id};
    out.result = verify_packet(p, in, challenges, &out.transcript);
    return out;
}

std::vector<ReceivedPacket> Node::verify_all(const std::vector<Packet>& incoming, const ResponderFor& responders,
                                             Rng& rng) const {
    std::vector<ReceivedPacket> out;
    out.reserve(incoming.size());
    for (const auto& p : incoming) {
        LiveChallenges live(rng, sys_->challenges, responders ? responders(p) : Responder{});
        out.push_back(verify(p, live));
    }
    return out;
}

std::vector<const Packet*> Node::coding_inputs(const std::vector<ReceivedPacket>& received,
                                               std::vector<crypto::NodeId>* missing) const {
    const auto& me = registry_->at(id_.id);
    std::vector<const Packet*> inputs;
    for (const auto& parent : me.coded_set) {
        const Packet* found = nullptr;
        for (const auto& r : received)
            if (!r.result && r.packet.sender == parent) {
                found = &r.packet;
                break;
            }
        if (found)
            inputs.push_back(found);
        else if (missing)
            missing->push_back(parent);
    }
    return inputs;
}

BigInt Node::coefficient(const crypto::NodeId& parent, const crypto::NodeId& child) const {
    if (!current_) throw std::logic_error("no active epoch");
    const std::optional<crypto::NodeId> c = sys_->per_child_coefficients ? std::optional<crypto::NodeId>(child) : std::nullopt;
    return derive_coefficient(sys_->seed, parent, id_.id, c, current_->epoch_id, current_->group.q);
}

Packet Node::emit(const crypto::NodeId& child, gf::CodedVector e, validity::Sigma sigma,
                  std::vector<pip::ParentContribution> entries) {
    if (!current_) throw std::logic_error("no active epoch");
    Packet p;
    p.widths = pip::Widths::from(current_->group, sys_->hash);
    p.e = std::move(e);
    p.sigma = std::move(sigma);
    p.epoch = {current_->k, current_->master_sig};
    p.sender = id_.id;
    p.receiver = child;
    switch (sys_->protocol) {
        case pip::Protocol::None: return p;
        case pip::Protocol::Pip: p.token = pip::pip_combine(std::move(entries)); break;
        case pip::Protocol::LogPip: {
            auto [token, state] = pip::logpip_build(std::move(entries), current_->group, sys_->hash);
            p.token = std::move(token);
            trees_[child] = std::move(state);
            break;
        }
    }
    p.helper = pip::make_helper_token(*id_.sk, p.sigma, current_->group, id_.id, child);
    p.attest = attest_packet(*id_.sk, p);
    return p;
}

Packet Node::code_honest(const crypto::NodeId& child, const std::vector<const Packet*>& inputs) {
    if (inputs.empty()) throw std::invalid_argument("code_honest: no inputs");
    std::vector<gf::CodedVector> vectors;
    std::vector<validity::Sigma> sigmas;
    std::vector<BigInt> alphas;
    std::vector<pip::ParentContribution> entries;
    for (const Packet* in : inputs) {
        BigInt a = coefficient(in->sender, child);
        vectors.push_back(in->e);
        sigmas.push_back(in->sigma);
        alphas.push_back(a);
        entries.push_back({in->sender, a, in->sigma, in->helper.value_or(pip::HelperToken{})});
    }
    const gf::PrimeField field(current_->group.q);
    auto e = gf::linear_combine(vectors, alphas, field);
    auto sigma = validity::combine_validity(sigmas, alphas, current_->group);
    return emit(child, std::move(e), std::move(sigma), std::move(entries));
}

RoundOutput Node::process_round(const std::vector<Packet>& incoming, const ResponderFor& responders, Rng& rng) {
    RoundOutput out;
    out.received = verify_all(incoming, responders, rng);
    const auto inputs = coding_inputs(out.received, &out.missing);
    out.degraded = !out.missing.empty();
    if (inputs.empty()) return out;
    for (const auto& child : registry_->children_of(id_.id)) out.outgoing.emplace(child, code_honest(child, inputs));
    return out;
}

std::optional<pip::ChallengeProof> Node::respond(const crypto::NodeId& child, std::size_t index) const {
    auto it = trees_.find(child);
    if (it == trees_.end() || index >= it->second.leaf_count()) return std::nullopt;
    return pip::logpip_respond(it->second, index);
}

const pip::MerkleTreeState* Node::retained(const crypto::NodeId& child) const {
    auto it = trees_.find(child);
    return it == trees_.end() ? nullptr : &it->second;
}

Source::Source(crypto::NodeIdentity identity, std::shared_ptr<const SystemParams> sys, const Registry& registry,
               validity::DlGroup group)
    : id_(std::move(identity)), sys_(std::move(sys)), registry_(&registry), group_(std::move(group)) {
    if (!id_.sk) throw std::invalid_argument("source needs its signing key");
}

const validity::SourceEpochParams& Source::begin_epoch(std::vector<gf::CodedVector> originals, std::uint64_t k, Rng& rng) {
    epoch_ = validity::epoch_setup(*id_.sk, group_, originals, k, rng);
    originals_ = std::move(originals);
    return *epoch_;
}

const validity::SourceEpochParams& Source::epoch() const {
    if (!epoch_) throw std::logic_error("source has no epoch");
    return *epoch_;
}

std::map<crypto::NodeId, Packet> Source::emit() const {
    const auto& ep = epoch();
    std::map<crypto::NodeId, Packet> out;
    const auto children = registry_->children_of(id_.id);
    for (std::size_t i = 0; i < children.size(); ++i) {
        const std::size_t j = i % ep.m;
        Packet p;
        p.widths = pip::Widths::from(ep.group, sys_->hash);
        p.e = originals_[j];
        p.sigma = {ep.original_hashes[j]};
        p.epoch = {ep.k, ep.master_sig};
        p.sender = id_.id;
        p.receiver = children[i];
        if (sys_->protocol != pip::Protocol::None) {
            p.helper = pip::make_helper_token(*id_.sk, p.sigma, ep.group, id_.id, children[i]);
            p.attest = attest_packet(*id_.sk, p);
        }
        out.emplace(children[i], std::move(p));
    }
    return out;
}

std::vector<gf::CodedVector> random_originals(std::size_t n, std::size_t m, const BigInt& q, Rng& rng) {
    std::vector<gf::CodedVector> out;
    for (std::size_t j = 0; j < m; ++j) {
        gf::Row payload;
        for (std::size_t i = 0; i < n; ++i) payload.push_back(gf::random_element(q, rng));
        out.push_back(gf::original_packet(std::move(payload), j, m));
    }
    return out;
}

}  // namespace rlnc::node
