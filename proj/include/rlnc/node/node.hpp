#pragma once

#include <map>
#include <memory>

#include "rlnc/node/verify.hpp"

namespace rlnc::node {

struct ReceivedPacket {
    Packet packet;
    pip::CheckResult result;
    std::vector<pip::ChallengeProof> transcript;
};

struct RoundOutput {
    std::map<crypto::NodeId, Packet> outgoing;  // by child
    std::vector<ReceivedPacket> received;       // every incoming packet with its verdict
    std::vector<crypto::NodeId> missing;        // coded-set parents without an accepted packet
    bool degraded = false;
};

/// Hands out a responder for challenges against the sender of a packet.
using ResponderFor = std::function<Responder(const Packet&)>;

/// One coding node. Owns its keys, epoch parameters, and retained Merkle
/// trees; reads membership from a registry owned elsewhere.
class Node {
public:
    Node(crypto::NodeIdentity identity, std::shared_ptr<const SystemParams> sys, const Registry& registry);

    const crypto::NodeIdentity& identity() const noexcept { return id_; }
    const crypto::NodeId& id() const noexcept { return id_.id; }
    const SystemParams& system() const noexcept { return *sys_; }
    const validity::SourceEpochParams* epoch() const noexcept { return current_ ? &*current_ : nullptr; }
    const validity::SourceEpochParams* previous_epoch() const noexcept { return previous_ ? &*previous_ : nullptr; }

    /// Verifies the master signature, keeps the old epoch for replay diagnosis,
    /// and drops retained trees.
    void begin_epoch(const validity::SourceEpochParams& params);

    ReceivedPacket verify(const Packet& p, ChallengeSource& challenges) const;
    std::vector<ReceivedPacket> verify_all(const std::vector<Packet>& incoming, const ResponderFor& responders,
                                           Rng& rng) const;

    /// Accepted packets from coded-set parents, one per parent, in canonical order.
    std::vector<const Packet*> coding_inputs(const std::vector<ReceivedPacket>& received,
                                             std::vector<crypto::NodeId>* missing) const;

    BigInt coefficient(const crypto::NodeId& parent, const crypto::NodeId& child) const;

    /// Adds token, helper, epoch reference, and attest to (e, sigma).
    /// `entries` are the per-parent token contributions; Log-PIP trees are retained.
    Packet emit(const crypto::NodeId& child, gf::CodedVector e, validity::Sigma sigma,
                std::vector<pip::ParentContribution> entries);

    /// Honest coding with PRF coefficients over `inputs`.
    Packet code_honest(const crypto::NodeId& child, const std::vector<const Packet*>& inputs);

    RoundOutput process_round(const std::vector<Packet>& incoming, const ResponderFor& responders, Rng& rng);

    std::optional<pip::ChallengeProof> respond(const crypto::NodeId& child, std::size_t index) const;
    const pip::MerkleTreeState* retained(const crypto::NodeId& child) const;

private:
    crypto::NodeIdentity id_;
    std::shared_ptr<const SystemParams> sys_;
    const Registry* registry_;
    std::optional<validity::SourceEpochParams> current_;
    std::optional<validity::SourceEpochParams> previous_;
    std::map<crypto::NodeId, pip::MerkleTreeState> trees_;
};

/// The source: publishes epoch parameters and emits originals.
class Source {
public:
    Source(crypto::NodeIdentity identity, std::shared_ptr<const SystemParams> sys, const Registry& registry,
           validity::DlGroup group);

    const crypto::NodeId& id() const noexcept { return id_.id; }
    const crypto::NodeIdentity& identity() const noexcept { return id_; }

    const validity::SourceEpochParams& begin_epoch(std::vector<gf::CodedVector> originals, std::uint64_t k, Rng& rng);
    const validity::SourceEpochParams& epoch() const;
    const std::vector<gf::CodedVector>& originals() const noexcept { return originals_; }

    /// Child i (canonical order) receives original i mod m.
    std::map<crypto::NodeId, Packet> emit() const;

private:
    crypto::NodeIdentity id_;
    std::shared_ptr<const SystemParams> sys_;
    const Registry* registry_;
    validity::DlGroup group_;
    std::vector<gf::CodedVector> originals_;
    std::optional<validity::SourceEpochParams> epoch_;
};

/// Random payloads of n chunks for m originals over Z_q.
std::vector<gf::CodedVector> random_originals(std::size_t n, std::size_t m, const BigInt& q, Rng& rng);

}  // namespace rlnc::node
