#pragma once

#include <iosfwd>

#include "rlnc/sim/simulation.hpp"

namespace rlnc::sim {

struct SweepConfig {
    std::size_t nodes = 50;
    std::size_t edges = 1000;
    std::size_t m = 5;
    std::size_t n = 2;
    std::size_t min_cut_from = 1;
    std::size_t min_cut_to = 10;
    std::size_t seeds = 20;
    std::uint64_t base_seed = 1;
    std::size_t byzantine = 1;
    std::size_t rounds = 0;
    pip::Protocol protocol = pip::Protocol::None;
    std::string profile = "test";
};

/// Mode 1 = NonInnovative, 2 = ForwardOnly, 3 = Honest.
Behavior mode_behavior(int mode);

struct SweepRow {
    std::uint64_t seed;
    std::size_t min_cut;
    int mode;
    crypto::NodeId sink_id;
    std::size_t rank;
    std::size_t detections;
    bool operator==(const SweepRow&) const = default;
};

struct SweepSummary {
    std::size_t min_cut;
    int mode;
    double mean_rank;
    double mean_detections;
};

struct SweepFailure {
    std::uint64_t seed;
    std::size_t min_cut;
    std::string reason;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<SweepFailure> failures;  // infeasible topologies, per seed
};

/// One row per (cut, seed, mode, sink); trials run in parallel.
SweepResult mode_sweep(const SweepConfig& config);

namespace serial {
SweepResult mode_sweep(const SweepConfig& config);
}

std::vector<SweepSummary> summarize(const std::vector<SweepRow>& rows);

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows);
/// Throws std::runtime_error on a malformed header or row.
std::vector<SweepRow> read_csv(std::istream& is);
void write_summary_csv(std::ostream& os, const std::vector<SweepSummary>& summary);

}  // namespace rlnc::sim
