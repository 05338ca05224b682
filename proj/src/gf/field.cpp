#include "rlnc/gf/field.hpp"

#include <stdexcept>
#include <vector>

namespace rlnc::gf {

namespace {

bool is_prime_cached(const BigInt& q) {
    thread_local std::vector<BigInt> known;
    for (const auto& k : known)
        if (k == q) return true;
    if (mpz_probab_prime_p(q.get_mpz_t(), 40) == 0) return false;
    if (known.size() >= 8) known.erase(known.begin());
    known.push_back(q);
    return true;
}

}  // namespace

PrimeField::PrimeField(BigInt q) : q_(std::move(q)) {
    if (q_ < 3) throw std::invalid_argument("field modulus must be >= 3");
    if (!is_prime_cached(q_)) throw std::invalid_argument("field modulus is not prime");
    word_ = bit_length(q_) <= 63;
    if (word_) q64_ = mpz_get_ui(q_.get_mpz_t());
    bytes_ = byte_width(q_);
}

BigInt PrimeField::reduce(const BigInt& v) const {
    BigInt r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), q_.get_mpz_t());
    return r;
}

BigInt PrimeField::add(const BigInt& a, const BigInt& b) const {
    BigInt r = a + b;
    if (r >= q_) r -= q_;
    return r;
}

BigInt PrimeField::sub(const BigInt& a, const BigInt& b) const {
    BigInt r = a - b;
    if (sgn(r) < 0) r += q_;
    return r;
}

BigInt PrimeField::mul(const BigInt& a, const BigInt& b) const { return reduce(a * b); }

BigInt PrimeField::inv(const BigInt& a) const {
    BigInt r;
    if (sgn(a) == 0 || mpz_invert(r.get_mpz_t(), a.get_mpz_t(), q_.get_mpz_t()) == 0)
        throw std::domain_error("zero has no inverse");
    return r;
}

BigInt random_nonzero(const BigInt& q, Rng& rng) {
    if (q < 2) throw std::invalid_argument("modulus must be >= 2");
    return rng.uniform_below(q - 1) + 1;
}

BigInt random_element(const BigInt& q, Rng& rng) { return rng.uniform_below(q); }

}  // namespace rlnc::gf
