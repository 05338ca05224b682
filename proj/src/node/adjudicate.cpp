#include "rlnc/node/adjudicate.hpp"

namespace rlnc::node {

MisbehaviorProof build_misbehavior_proof(const Packet& packet, std::vector<pip::ChallengeProof> transcript,
                                         const validity::SourceEpochParams& epoch, SenderView sender) {
    return {packet, std::move(transcript), epoch, std::move(sender), packet.receiver};
}

std::string_view to_string(Ruling r) {
    switch (r) {
        case Ruling::Guilty: return "GUILTY";
        case Ruling::Innocent: return "INNOCENT";
        case Ruling::Inadmissible: return "INADMISSIBLE";
    }
    return "?";
}

namespace {

Judgement inadmissible(std::string why) { return {Ruling::Inadmissible, std::nullopt, std::move(why)}; }

bool cert_ok(const NodeRecord& r, const crypto::PublicKey& authority) {
    return r.cert && crypto::verify_cert(*r.cert, r.pk, r.id, authority);
}

bool same_view(const NodeRecord& a, const NodeRecord& b) {
    return a.id == b.id && a.pk == b.pk && a.is_source == b.is_source && a.parents == b.parents &&
           a.coded_set == b.coded_set && a.policy.index() == b.policy.index();
}

}  // namespace

Judgement adjudicate(const MisbehaviorProof& proof, const SystemParams& sys, const Registry* registry) {
    const auto& s = proof.sender.sender;
    if (proof.packet.sender != s.id) return inadmissible("packet sender does not match the accused");
    if (proof.packet.receiver != proof.verifier) return inadmissible("packet was not addressed to the accuser");
    if (!cert_ok(s, sys.authority_pk)) return inadmissible("certificate of the accused does not verify");
    if (!verify_attest(s.pk, proof.packet)) return inadmissible("attest signature does not verify");
    if (!validity::verify_epoch(proof.epoch, sys.master_pk)) return inadmissible("epoch parameters do not verify");
    if (proof.packet.epoch.k != proof.epoch.k || proof.packet.epoch.master_sig != proof.epoch.master_sig)
        return inadmissible("proof does not use the packet's own epoch");
    if (proof.sender.coded_parents.size() != s.coded_set.size())
        return inadmissible("parent records do not match the coded set");
    for (std::size_t i = 0; i < s.coded_set.size(); ++i)
        if (proof.sender.coded_parents[i].id != s.coded_set[i]) return inadmissible("parent records out of order");
    for (const auto& p : proof.sender.coded_parents)
        if (!cert_ok(p, sys.authority_pk)) return inadmissible("certificate of parent " + p.id + " does not verify");
    if (registry) {
        const auto* r = registry->find(s.id);
        if (!r || !same_view(*r, s)) return inadmissible("sender view disagrees with the registry");
        for (const auto& p : proof.sender.coded_parents) {
            const auto* rp = registry->find(p.id);
            if (!rp || rp->pk != p.pk) return inadmissible("parent key disagrees with the registry");
        }
    }
    if (sys.protocol == pip::Protocol::LogPip && !s.is_source && proof.transcript.empty())
        return inadmissible("no challenge transcript");

    ReplayChallenges replay(proof.transcript);
    const VerifyInput in{sys, proof.epoch, nullptr, proof.sender, proof.verifier};
    if (auto v = verify_after_attest(proof.packet, in, replay, nullptr)) {
        if (v->kind == pip::ViolationKind::BadMerklePath && v->detail.rfind("no response", 0) == 0)
            return inadmissible("transcript lacks the challenged opening");
        return {Ruling::Guilty, std::move(v), {}};
    }
    return {Ruling::Innocent, std::nullopt, {}};
}

}  // namespace rlnc::node
