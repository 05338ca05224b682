#include "rlnc/node/verify.hpp"

#include <algorithm>

namespace rlnc::node {

using pip::ViolationKind;

SenderView sender_view(const Registry& reg, const crypto::NodeId& sender) {
    SenderView v{reg.at(sender), {}};
    for (const auto& id : v.sender.coded_set) {
        if (const auto* r = reg.find(id))
            v.coded_parents.push_back(*r);
        else
            v.coded_parents.push_back(NodeRecord{id, {}, std::nullopt, false, {}, {}, AllParents{}});
    }
    return v;
}

std::vector<std::size_t> sample_indices(Rng& rng, std::size_t d, std::size_t t) {
    std::vector<std::size_t> all(d);
    for (std::size_t i = 0; i < d; ++i) all[i] = i;
    t = std::min(t, d);
    // Partial Fisher-Yates.
    for (std::size_t i = 0; i < t; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.uniform(d - i));
        std::swap(all[i], all[j]);
    }
    all.resize(t);
    return all;
}

std::vector<std::size_t> LiveChallenges::indices(std::size_t leaf_count) { return sample_indices(rng_, leaf_count, t_); }

std::optional<pip::ChallengeProof> LiveChallenges::fetch(std::size_t index) {
    if (!responder_) return std::nullopt;
    return responder_(index);
}

std::vector<std::size_t> ReplayChallenges::indices(std::size_t) {
    std::vector<std::size_t> out;
    for (const auto& p : transcript_) out.push_back(p.index);
    return out;
}

std::optional<pip::ChallengeProof> ReplayChallenges::fetch(std::size_t index) {
    for (const auto& p : transcript_)
        if (p.index == index) return p;
    return std::nullopt;
}

std::vector<pip::ExpectedParent> expected_parents(const SystemParams& sys, const validity::SourceEpochParams& epoch,
                                                  const SenderView& view, const crypto::NodeId& receiver) {
    std::vector<pip::ExpectedParent> out;
    const std::optional<crypto::NodeId> child =
        sys.per_child_coefficients ? std::optional<crypto::NodeId>(receiver) : std::nullopt;
    for (const auto& p : view.coded_parents)
        out.push_back({p.id, p.pk, derive_coefficient(sys.seed, p.id, view.sender.id, child, epoch.epoch_id, epoch.group.q)});
    return out;
}

pip::CheckResult verify_after_attest(const Packet& p, const VerifyInput& in, ChallengeSource& challenges,
                                     std::vector<pip::ChallengeProof>* transcript) {
    const auto& sender = in.view.sender;
    const auto fail = [&](ViolationKind k, std::string why) { return pip::make_violation(k, sender.id, std::move(why)); };

    if (p.epoch.k != in.epoch.k || p.epoch.master_sig != in.epoch.master_sig)
        return fail(ViolationKind::BadEpoch, "packet references epoch " + std::to_string(p.epoch.k));
    if (p.widths != pip::Widths::from(in.epoch.group, in.sys.hash))
        return fail(ViolationKind::PollutedPacket, "unexpected field widths");
    if (!validity::verify_validity(in.epoch, p.e, p.sigma)) {
        if (in.previous && validity::verify_validity(*in.previous, p.e, p.sigma))
            return fail(ViolationKind::BadEpoch, "packet is valid only under the previous epoch");
        return fail(ViolationKind::PollutedPacket, "validity signature does not verify");
    }
    return verify_coding(p, in, challenges, transcript);
}

pip::CheckResult verify_coding(const Packet& p, const VerifyInput& in, ChallengeSource& challenges,
                               std::vector<pip::ChallengeProof>* transcript) {
    const auto& sender = in.view.sender;
    const auto fail = [&](ViolationKind k, std::string why) { return pip::make_violation(k, sender.id, std::move(why)); };
    if (in.sys.protocol == pip::Protocol::None) return std::nullopt;

    if (!sender.is_source) {
        std::vector<ClaimedParent> claimed;
        for (const auto& r : in.view.coded_parents) claimed.push_back({r.id, r.pk, r.cert});
        if (auto v = policy_check(sender.policy, sender.id, sender.parents, claimed, in.sys.authority_pk)) return v;
        const auto expected = expected_parents(in.sys, in.epoch, in.view, in.receiver);
        if (expected.empty()) return fail(ViolationKind::MissingEntry, "sender declares no parents");

        if (in.sys.protocol == pip::Protocol::Pip) {
            const auto* token = std::get_if<pip::PipTestToken>(&p.token);
            if (!token) return fail(ViolationKind::MissingEntry, "packet carries no PIP token");
            if (auto v = pip::pip_verif_test(p.sigma, *token, expected, sender.id, in.epoch.group)) return v;
        } else {
            const auto* token = std::get_if<pip::LogPipTestToken>(&p.token);
            if (!token) return fail(ViolationKind::MissingEntry, "packet carries no Merkle root");
            for (std::size_t idx : challenges.indices(expected.size())) {
                if (idx >= expected.size()) return fail(ViolationKind::BadMerklePath, "challenge index out of range");
                auto proof = challenges.fetch(idx);
                if (!proof) return fail(ViolationKind::BadMerklePath, "no response to challenge " + std::to_string(idx));
                if (transcript) transcript->push_back(*proof);
                pip::LogPipContext ctx{in.epoch.group, in.sys.hash, sender.id,  p.sigma,        *token,
                                       idx,            expected.size(), expected[idx], std::nullopt};
                if (auto v = pip::logpip_verify(*proof, ctx)) return v;
            }
        }
    }

    if (!p.helper) return fail(ViolationKind::BadHelperSig, "packet carries no helper token");
    return pip::check_helper(p.e, p.sigma, *p.helper, in.epoch.group, sender.pk, sender.id, in.receiver);
}

pip::CheckResult verify_packet(const Packet& p, const VerifyInput& in, ChallengeSource& challenges,
                               std::vector<pip::ChallengeProof>* transcript) {
    const auto& sender = in.view.sender;
    if (p.sender != sender.id || p.receiver != in.receiver)
        return pip::make_violation(ViolationKind::BadAttest, p.sender, "packet is not addressed from " + sender.id + " to " + in.receiver);
    if (in.sys.protocol != pip::Protocol::None && !verify_attest(sender.pk, p))
        return pip::make_violation(ViolationKind::BadAttest, sender.id, "attest signature does not verify");
    return verify_after_attest(p, in, challenges, transcript);
}

}  // namespace rlnc::node
