#pragma once

#include <optional>
#include <string>

#include "rlnc/node/adjudicate.hpp"
#include "rlnc/sim/topology.hpp"

namespace rlnc::sim {

struct SimConfig {
    pip::Protocol protocol = pip::Protocol::Pip;
    std::string profile = "test";
    std::size_t m = 2;        // source packets per epoch
    std::size_t n = 4;        // payload chunks per packet
    std::size_t rounds = 0;   // 0 = diameter + m
    std::size_t epochs = 1;
    std::size_t challenges = 1;
    bool per_child_coefficients = true;
    bool drop_failed_links = true;
    bool adjudicate = true;
    std::uint64_t seed = 1;
};

struct DetectionEvent {
    std::uint64_t epoch;
    std::size_t step;  // time step at which the packet reached the verifier
    crypto::NodeId verifier;
    crypto::NodeId culprit;
    pip::ViolationKind kind;
    std::optional<node::Ruling> ruling;
};

struct SinkReport {
    crypto::NodeId id;
    std::size_t rank = 0;
    bool decoded = false;  // full rank and payloads equal the originals
};

struct TransmissionReport {
    std::vector<SinkReport> sinks;  // last epoch
    std::vector<DetectionEvent> detections;
    std::size_t rounds = 0;
    std::size_t verifications = 0;
    std::size_t failed_verifications = 0;
    std::size_t degraded_nodes = 0;

    std::size_t detections_of(const crypto::NodeId& culprit) const;
    const SinkReport& sink(const crypto::NodeId& id) const;
};

/// Each epoch: the source publishes fresh parameters and emits originals;
/// nodes run in topological order (a node at depth > rounds stays silent),
/// verify what they received, and code per their behavior.
TransmissionReport run_simulation(const Topology& topology, const SimConfig& config);

}  // namespace rlnc::sim
