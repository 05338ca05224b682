// Independent oracles shared by the test binaries.
#pragma once

#include <set>
#include <vector>

#include "rlnc/crypto/hash.hpp"
#include "rlnc/validity/group.hpp"

namespace testutil {

// Rank over GF(5) by counting the distinct vectors in the row span.
inline std::size_t span_rank_gf5(const std::vector<std::vector<int>>& rows) {
    if (rows.empty()) return 0;
    const std::size_t k = rows.size(), cols = rows[0].size();
    std::set<std::vector<int>> span;
    std::vector<int> coeff(k, 0);
    for (;;) {
        std::vector<int> v(cols, 0);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < cols; ++j) v[j] = (v[j] + coeff[i] * rows[i][j]) % 5;
        span.insert(v);
        std::size_t i = 0;
        while (i < k && ++coeff[i] == 5) coeff[i++] = 0;
        if (i == k) break;
    }
    std::size_t r = 0;
    for (std::size_t s = span.size(); s > 1; s /= 5) ++r;
    return r;
}

// Merkle root: leaves tagged 0x00, nodes 0x01, odd node promoted.
inline rlnc::crypto::Digest merkle_root_oracle(const std::vector<rlnc::Bytes>& leaves) {
    using namespace rlnc;
    std::vector<Bytes> level;
    for (const auto& l : leaves) {
        Bytes in{0x00};
        append(in, l);
        level.push_back(crypto::hash(in).h);
    }
    while (level.size() > 1) {
        std::vector<Bytes> next;
        for (std::size_t i = 0; i < level.size(); i += 2) {
            if (i + 1 == level.size()) {
                next.push_back(level[i]);
                continue;
            }
            Bytes in{0x01};
            append(in, level[i]);
            append(in, level[i + 1]);
            next.push_back(crypto::hash(in).h);
        }
        level = std::move(next);
    }
    return {level.front()};
}

inline rlnc::BigInt powm(const rlnc::BigInt& b, const rlnc::BigInt& e, const rlnc::BigInt& p) {
    rlnc::BigInt r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r;
}

inline rlnc::Bytes hex_bytes(const std::string& hex) {
    rlnc::Bytes out;
    for (std::size_t i = 0; i + 1 < hex.size(); i += 2) out.push_back(static_cast<std::uint8_t>(std::stoi(hex.substr(i, 2), nullptr, 16)));
    return out;
}

}  // namespace testutil
