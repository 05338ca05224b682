#pragma once

#include "rlnc/node/verify.hpp"

namespace rlnc::node {

/// Self-contained evidence that `packet.sender` misbehaved toward `verifier`.
struct MisbehaviorProof {
    Packet packet;
    std::vector<pip::ChallengeProof> transcript;  // Log-PIP only
    validity::SourceEpochParams epoch;
    SenderView sender;
    crypto::NodeId verifier;
};

MisbehaviorProof build_misbehavior_proof(const Packet& packet, std::vector<pip::ChallengeProof> transcript,
                                         const validity::SourceEpochParams& epoch, SenderView sender);

enum class Ruling { Guilty, Innocent, Inadmissible };

std::string_view to_string(Ruling r);

struct Judgement {
    Ruling ruling;
    std::optional<pip::Violation> violation;  // set when Guilty
    std::string reason;                       // set when Inadmissible
};

/// Re-runs the verification pipeline from the proof alone. Inadmissible when
/// the attest, certificates, or epoch signature fail, when the proof's view
/// of the sender disagrees with `registry` (if given), or when a Log-PIP proof
/// lacks a transcript.
Judgement adjudicate(const MisbehaviorProof& proof, const SystemParams& sys, const Registry* registry = nullptr);

}  // namespace rlnc::node
