#include "rlnc/common/rng.hpp"

#include <stdexcept>

namespace rlnc {

std::uint64_t Rng::uniform(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform: zero bound");
    // Reject the top partial block so every residue is equally likely.
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    for (;;) {
        std::uint64_t x = engine_();
        if (x < limit) return x % bound;
    }
}

BigInt Rng::uniform_below(const BigInt& bound) {
    if (sgn(bound) <= 0) throw std::invalid_argument("uniform_below: bound must be positive");
    const std::size_t bits = bit_length(bound - 1);
    if (bits == 0) return 0;
    const std::size_t words = (bits + 63) / 64;
    const std::size_t top_bits = bits - (words - 1) * 64;
    const std::uint64_t top_mask = top_bits == 64 ? UINT64_MAX : ((std::uint64_t{1} << top_bits) - 1);
    BigInt v;
    for (;;) {
        v = 0;
        for (std::size_t i = 0; i < words; ++i) {
            std::uint64_t w = engine_();
            if (i == 0) w &= top_mask;
            v <<= 64;
            v += BigInt(std::to_string(w));
        }
        if (v < bound) return v;
    }
}

double Rng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

void Rng::fill(std::span<std::uint8_t> out) {
    std::size_t i = 0;
    while (i < out.size()) {
        std::uint64_t w = engine_();
        for (int b = 0; b < 8 && i < out.size(); ++b, ++i) out[i] = static_cast<std::uint8_t>(w >> (8 * b));
    }
}

Rng Rng::fork(std::uint64_t stream) { return Rng(mix_seed(engine_(), stream)); }

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace rlnc
