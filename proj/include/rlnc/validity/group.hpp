#pragma once

#include <string>

#include "rlnc/common/bigint.hpp"
#include "rlnc/common/rng.hpp"
#include "rlnc/crypto/hash.hpp"

namespace rlnc::validity {

/// Prime-order subgroup of Z_p^*: q prime, q | p - 1.
struct DlGroup {
    BigInt p;
    BigInt q;

    std::size_t element_bytes() const { return byte_width(p); }
    std::size_t scalar_bytes() const { return byte_width(q); }
    bool operator==(const DlGroup&) const = default;
};

/// Deterministic search: q = next prime above a seeded random q_bits value,
/// then p = k*q + 1 for seeded random k until p is prime with p_bits bits.
DlGroup generate_group(std::size_t p_bits, std::size_t q_bits, std::uint64_t seed);

/// Throws std::invalid_argument unless p, q are prime and q | p - 1.
void check_group(const DlGroup& g);

/// Uniform element of order q (never the identity).
BigInt random_subgroup_element(const DlGroup& g, Rng& rng);
bool in_subgroup(const DlGroup& g, const BigInt& x);

/// Named parameter sets.
///   toy:        p = 23, q = 11
///   test:       |p| = 160, |q| = 64
///   production: |p| = 1024, |q| = 160
struct Profile {
    std::string name;
    DlGroup group;
    crypto::HashSpec hash;
};

const Profile& profile(const std::string& name);

}  // namespace rlnc::validity
