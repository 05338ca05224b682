#include "rlnc/validity/group.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace rlnc::validity {

namespace {

bool is_prime(const BigInt& v) { return mpz_probab_prime_p(v.get_mpz_t(), 40) != 0; }

BigInt random_bits(Rng& rng, std::size_t bits) {
    BigInt v = rng.uniform_below(BigInt(1) << static_cast<mp_bitcnt_t>(bits - 1));
    mpz_setbit(v.get_mpz_t(), bits - 1);
    return v;
}

}  // namespace

DlGroup generate_group(std::size_t p_bits, std::size_t q_bits, std::uint64_t seed) {
    if (q_bits < 2 || p_bits <= q_bits) throw std::invalid_argument("generate_group: need p_bits > q_bits >= 2");
    Rng rng(seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
        BigInt q;
        mpz_nextprime(q.get_mpz_t(), random_bits(rng, q_bits).get_mpz_t());
        if (bit_length(q) != q_bits) continue;
        const std::size_t k_bits = p_bits - q_bits;
        for (int tries = 0; tries < 100000; ++tries) {
            BigInt k = random_bits(rng, k_bits);
            if (k % 2 != 0) k += 1;
            BigInt p = k * q + 1;
            if (bit_length(p) != p_bits) continue;
            if (is_prime(p)) return {p, q};
        }
    }
    throw std::runtime_error("generate_group: search exhausted");
}

void check_group(const DlGroup& g) {
    if (!is_prime(g.q) || !is_prime(g.p)) throw std::invalid_argument("group moduli must be prime");
    if ((g.p - 1) % g.q != 0) throw std::invalid_argument("q must divide p - 1");
}

BigInt random_subgroup_element(const DlGroup& g, Rng& rng) {
    const BigInt cofactor = (g.p - 1) / g.q;
    for (;;) {
        BigInt r = rng.uniform_below(g.p - 2) + 2;
        BigInt x;
        mpz_powm(x.get_mpz_t(), r.get_mpz_t(), cofactor.get_mpz_t(), g.p.get_mpz_t());
        if (x != 1) return x;
    }
}

bool in_subgroup(const DlGroup& g, const BigInt& x) {
    if (x < 1 || x >= g.p) return false;
    BigInt y;
    mpz_powm(y.get_mpz_t(), x.get_mpz_t(), g.q.get_mpz_t(), g.p.get_mpz_t());
    return y == 1;
}

const Profile& profile(const std::string& name) {
    static std::mutex mu;
    static std::map<std::string, Profile> cache;
    std::lock_guard lock(mu);
    if (auto it = cache.find(name); it != cache.end()) return it->second;
    Profile p;
    if (name == "toy") {
        p = {name, {23, 11}, crypto::HashSpec::sha1()};
    } else if (name == "test") {
        p = {name, generate_group(160, 64, 0x7e57), crypto::HashSpec::sha1()};
    } else if (name == "production") {
        p = {name, generate_group(1024, 160, 0x9a0d), crypto::HashSpec::sha1()};
    } else {
        throw std::invalid_argument("unknown profile: " + name);
    }
    return cache.emplace(name, std::move(p)).first->second;
}

}  // namespace rlnc::validity
