#pragma once

#include <functional>
#include <vector>

#include "rlnc/node/coefficient.hpp"
#include "rlnc/node/packet.hpp"
#include "rlnc/node/registry.hpp"

namespace rlnc::node {

/// Deployment-wide constants every verifier shares.
struct SystemParams {
    pip::Protocol protocol = pip::Protocol::Pip;
    crypto::HashSpec hash;
    crypto::Seed seed{Bytes(16, 0)};
    crypto::PublicKey master_pk;
    crypto::PublicKey authority_pk;
    bool per_child_coefficients = false;
    std::size_t challenges = 1;  // Log-PIP t
};

/// What a verifier knows about the sender of a packet.
struct SenderView {
    NodeRecord sender;
    std::vector<NodeRecord> coded_parents;  // records for sender.coded_set, same order
};

SenderView sender_view(const Registry& reg, const crypto::NodeId& sender);

/// Chooses which leaves to challenge and fetches the openings.
class ChallengeSource {
public:
    virtual ~ChallengeSource() = default;
    virtual std::vector<std::size_t> indices(std::size_t leaf_count) = 0;
    virtual std::optional<pip::ChallengeProof> fetch(std::size_t index) = 0;
};

using Responder = std::function<std::optional<pip::ChallengeProof>(std::size_t index)>;

/// t distinct uniform indices; proofs come from the live sender.
class LiveChallenges final : public ChallengeSource {
public:
    LiveChallenges(Rng& rng, std::size_t t, Responder responder) : rng_(rng), t_(t), responder_(std::move(responder)) {}
    std::vector<std::size_t> indices(std::size_t leaf_count) override;
    std::optional<pip::ChallengeProof> fetch(std::size_t index) override;

private:
    Rng& rng_;
    std::size_t t_;
    Responder responder_;
};

/// Replays a recorded transcript (third-party adjudication).
class ReplayChallenges final : public ChallengeSource {
public:
    explicit ReplayChallenges(const std::vector<pip::ChallengeProof>& transcript) : transcript_(transcript) {}
    std::vector<std::size_t> indices(std::size_t leaf_count) override;
    std::optional<pip::ChallengeProof> fetch(std::size_t index) override;

private:
    const std::vector<pip::ChallengeProof>& transcript_;
};

/// t indices sampled without replacement from [0, d).
std::vector<std::size_t> sample_indices(Rng& rng, std::size_t d, std::size_t t);

/// PRF coefficients a verifier expects from `sender` toward `receiver`.
std::vector<pip::ExpectedParent> expected_parents(const SystemParams& sys, const validity::SourceEpochParams& epoch,
                                                  const SenderView& view, const crypto::NodeId& receiver);

struct VerifyInput {
    const SystemParams& sys;
    const validity::SourceEpochParams& epoch;
    const validity::SourceEpochParams* previous = nullptr;
    const SenderView& view;
    crypto::NodeId receiver;
};

/// Everything after the attest check: epoch reference, validity, VerifTest
/// (skipped for the source and under Protocol::None), helper token.
/// Log-PIP openings that were checked are appended to `transcript`.
pip::CheckResult verify_after_attest(const Packet& p, const VerifyInput& in, ChallengeSource& challenges,
                                     std::vector<pip::ChallengeProof>* transcript);

/// The coding checks alone: required-set policy, VerifTest, helper token.
/// No-op under Protocol::None. Assumes the packet already passed validity.
pip::CheckResult verify_coding(const Packet& p, const VerifyInput& in, ChallengeSource& challenges,
                               std::vector<pip::ChallengeProof>* transcript);

/// Full receiver-side pipeline: attest first, then verify_after_attest.
pip::CheckResult verify_packet(const Packet& p, const VerifyInput& in, ChallengeSource& challenges,
                               std::vector<pip::ChallengeProof>* transcript);

}  // namespace rlnc::node
