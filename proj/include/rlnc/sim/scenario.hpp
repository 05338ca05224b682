#pragma once

#include <memory>

#include "rlnc/node/node.hpp"
#include "rlnc/sim/topology.hpp"

namespace rlnc::sim {

struct FaninConfig {
    std::size_t parents = 3;
    std::size_t m = 2;
    std::size_t n = 4;
    pip::Protocol protocol = pip::Protocol::Pip;
    std::string profile = "test";
    std::optional<crypto::HashSpec> hash;  // overrides the profile's hash
    std::size_t challenges = 1;
    bool per_child_coefficients = false;
    std::uint64_t seed = 1;
};

/// S -> P00..P(d-1) -> R -> C. Keys are generated once; each epoch the
/// parents code honestly into R, which verifies them. Callers then craft
/// R's packet to C and verify it at C.
class Fanin {
public:
    explicit Fanin(FaninConfig config);
    // Nodes keep pointers into the registry member.
    Fanin(const Fanin&) = delete;
    Fanin& operator=(const Fanin&) = delete;

    const FaninConfig& config() const noexcept { return cfg_; }
    const Topology& topology() const noexcept { return topo_; }
    const node::SystemParams& system() const noexcept { return *sys_; }
    const node::Registry& registry() const noexcept { return reg_; }
    node::Registry& registry() noexcept { return reg_; }
    const validity::DlGroup& group() const noexcept { return group_; }
    const validity::SourceEpochParams& epoch() const { return source_->epoch(); }
    node::Node& relay() noexcept { return *relay_; }
    node::Node& child() noexcept { return *child_; }
    const crypto::NodeId& child_id() const noexcept { return child_->id(); }
    Rng& rng() noexcept { return rng_; }

    void next_epoch();

    /// Verified packets R codes over (canonical order).
    const std::vector<const node::Packet*>& inputs() const noexcept { return inputs_; }

    /// `span` is the downstream span a NonInnovative relay targets.
    node::Packet relay_packet(const Behavior& b, gf::Matrix span = {});
    node::ReceivedPacket verify_at_child(const node::Packet& p);
    node::Responder responder() const;

private:
    FaninConfig cfg_;
    Topology topo_;
    validity::DlGroup group_;
    Rng rng_;
    std::shared_ptr<node::SystemParams> sys_;
    node::Registry reg_;
    std::unique_ptr<node::Source> source_;
    std::vector<std::unique_ptr<node::Node>> parents_;
    std::unique_ptr<node::Node> relay_;
    std::unique_ptr<node::Node> child_;
    std::vector<node::ReceivedPacket> relay_received_;
    std::vector<const node::Packet*> inputs_;
    std::uint64_t k_ = 0;
};

}  // namespace rlnc::sim
