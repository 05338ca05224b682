#pragma once

#include <optional>
#include <vector>

#include "rlnc/common/bigint.hpp"
#include "rlnc/common/rng.hpp"

namespace rlnc::gf {

/// Prime field Z_q. Construction checks primality (probabilistic, 40 rounds).
class PrimeField {
public:
    explicit PrimeField(BigInt q);

    const BigInt& modulus() const noexcept { return q_; }
    /// True when q < 2^63 and the uint64 kernels apply.
    bool word_sized() const noexcept { return word_; }
    std::uint64_t modulus_u64() const noexcept { return q64_; }
    std::size_t element_bytes() const noexcept { return bytes_; }

    BigInt reduce(const BigInt& v) const;
    BigInt add(const BigInt& a, const BigInt& b) const;
    BigInt sub(const BigInt& a, const BigInt& b) const;
    BigInt mul(const BigInt& a, const BigInt& b) const;
    BigInt inv(const BigInt& a) const;  // throws std::domain_error on 0
    bool contains(const BigInt& v) const { return sgn(v) >= 0 && v < q_; }

    bool operator==(const PrimeField& o) const { return q_ == o.q_; }

private:
    BigInt q_;
    bool word_ = false;
    std::uint64_t q64_ = 0;
    std::size_t bytes_ = 0;
};

/// Uniform over [1, q). Accepts q = 2.
BigInt random_nonzero(const BigInt& q, Rng& rng);

/// Uniform over [0, q).
BigInt random_element(const BigInt& q, Rng& rng);

}  // namespace rlnc::gf
