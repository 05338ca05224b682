#pragma once

#include <chrono>

#include "rlnc/pip/sizes.hpp"
#include "rlnc/sim/scenario.hpp"

namespace rlnc::sim {

/// Parent counts audited by default.
inline const std::vector<std::size_t> kAuditParentCounts{1, 2, 3, 5, 7, 10, 15, 50};

struct SizeRow {
    pip::Protocol protocol;
    std::size_t d;
    std::size_t sigma_bits;
    std::size_t sig_bits;
    std::size_t hash_bits;
    std::size_t formula_bits;  // ceil(log2 d) convention
    double ideal_bits;         // real log2 d
    std::size_t measured_bytes;
    std::size_t framing_bytes;
    bool match() const { return measured_bytes * 8 == formula_bits + framing_bytes * 8; }
};

/// Builds real tokens on a fan-in of d parents and measures them.
/// PIP: token + helper. Log-PIP: root hash + the opening of leaf 0.
/// "test" gives |sigma| = |h| = 160; "production" gives 1024 with a
/// 1024-bit SHAKE256 so |h| = |sigma|.
std::vector<SizeRow> size_audit(const std::string& profile, const std::vector<std::size_t>& parent_counts,
                                std::uint64_t seed);

struct VerifyTiming {
    pip::Protocol protocol;
    std::size_t d;
    std::size_t n;
    std::chrono::nanoseconds prep;    // coding, token, helper, attest
    std::chrono::nanoseconds verify;  // full receiver pipeline
    std::chrono::nanoseconds coding;  // policy, VerifTest, helper only
};

/// Median over `reps` packets on one fan-in.
VerifyTiming time_verification(pip::Protocol protocol, std::size_t d, std::size_t n, std::size_t reps,
                               std::uint64_t seed, const std::string& profile = "test");

}  // namespace rlnc::sim
