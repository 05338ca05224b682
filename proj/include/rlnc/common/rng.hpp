#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "rlnc/common/bigint.hpp"

namespace rlnc {

/// Deterministic generator used everywhere a seed must reproduce a run.
/// Bounded sampling is done here by rejection instead of through
/// <random> distributions, whose output differs between standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, bound). bound must be nonzero.
    std::uint64_t uniform(std::uint64_t bound);

    /// Uniform in [0, bound). bound must be positive.
    BigInt uniform_below(const BigInt& bound);

    double unit();  // [0, 1)

    void fill(std::span<std::uint8_t> out);

    /// Independent stream derived from this generator's seed material and `stream`.
    Rng fork(std::uint64_t stream);

private:
    std::mt19937_64 engine_;
};

/// splitmix64 finalizer; used to derive seeds from (seed, index) pairs.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace rlnc
