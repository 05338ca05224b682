#pragma once

#include "rlnc/node/node.hpp"
#include "rlnc/sim/topology.hpp"

namespace rlnc::sim {

/// Inputs an adversarial node sees when producing the packet for one child.
struct AdversaryInput {
    node::Node& node;
    const std::vector<const node::Packet*>& inputs;  // verified, canonical order
    const crypto::NodeId& child;
    Rng& rng;
    /// Coding vectors the child's downstream already holds or will receive
    /// from others this epoch (only NonInnovative reads it).
    gf::Matrix downstream_span;
};

/// The packet a node with behavior `b` sends to `in.child`. ReplayOld is
/// handled by the simulator and codes honestly here.
node::Packet adversarial_packet(const Behavior& b, const AdversaryInput& in);

/// Coefficients keeping the output inside `target` rows; nullopt when the
/// inputs' span meets `target` only in zero.
std::optional<std::vector<BigInt>> non_innovative_coefficients(const std::vector<gf::CodedVector>& inputs,
                                                               const gf::Matrix& target, const gf::PrimeField& field,
                                                               Rng& rng);

}  // namespace rlnc::sim
