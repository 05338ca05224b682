#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "rlnc/gf/linalg.hpp"
#include "test_util.hpp"

using namespace rlnc;
using gf::CodedVector;

namespace {

// Naive combine over int64 for small q.
CodedVector naive_combine(const std::vector<CodedVector>& vs, const std::vector<long>& cs, long q) {
    CodedVector out;
    out.payload.assign(vs[0].n(), 0);
    out.coding.assign(vs[0].m(), 0);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        for (std::size_t j = 0; j < vs[i].n(); ++j)
            out.payload[j] = (out.payload[j] + cs[i] * vs[i].payload[j].get_si()) % q;
        for (std::size_t j = 0; j < vs[i].m(); ++j)
            out.coding[j] = (out.coding[j] + cs[i] * vs[i].coding[j].get_si()) % q;
    }
    return out;
}

}  // namespace

TEST_CASE("linear_combine: hand-computed example over GF(13)") {
    const gf::PrimeField f(13);
    const CodedVector e1{{1, 2}, {1, 0}}, e2{{3, 4}, {0, 1}};
    const auto out = gf::linear_combine({e1, e2}, {2, 3}, f);
    CHECK(out == CodedVector{{11, 3}, {2, 3}});
}

TEST_CASE("linear_combine: identity and zero coefficients") {
    const gf::PrimeField f(13);
    const CodedVector e{{5, 7, 12}, {1, 9}};
    CHECK(gf::linear_combine({e}, {1}, f) == e);
    const auto z = gf::linear_combine({e}, {0}, f);
    CHECK(z == CodedVector{{0, 0, 0}, {0, 0}});
    CHECK(z.coding_is_zero());
}

TEST_CASE("linear_combine: rejects mismatched inputs") {
    const gf::PrimeField f(13);
    const CodedVector a{{1, 2}, {1}}, b{{1}, {1}};
    CHECK_THROWS_AS(gf::linear_combine({a, b}, {1, 1}, f), std::invalid_argument);
    CHECK_THROWS_AS(gf::linear_combine({a}, {1, 1}, f), std::invalid_argument);
}

TEST_CASE("linear_combine: agrees with a naive oracle and the serial kernel") {
    Rng rng(11);
    for (long q : {5L, 13L, 251L, 65521L}) {
        const gf::PrimeField f(q);
        for (int trial = 0; trial < 50; ++trial) {
            const std::size_t k = 1 + rng.uniform(5), n = 1 + rng.uniform(40), m = 1 + rng.uniform(6);
            std::vector<CodedVector> vs(k);
            std::vector<long> cs;
            std::vector<BigInt> bcs;
            for (auto& v : vs) {
                for (std::size_t j = 0; j < n; ++j) v.payload.push_back(static_cast<long>(rng.uniform(q)));
                for (std::size_t j = 0; j < m; ++j) v.coding.push_back(static_cast<long>(rng.uniform(q)));
                cs.push_back(static_cast<long>(rng.uniform(q)));
                bcs.push_back(cs.back());
            }
            const auto par = gf::linear_combine(vs, bcs, f);
            CHECK(par == naive_combine(vs, cs, q));
            CHECK(par == gf::serial::linear_combine(vs, bcs, f));
        }
    }
}

TEST_CASE("linear_combine: big-field path matches the serial kernel") {
    const auto& prof = validity::profile("production");
    const gf::PrimeField f(prof.group.q);
    CHECK_FALSE(f.word_sized());
    Rng rng(5);
    std::vector<CodedVector> vs(4);
    std::vector<BigInt> cs;
    for (auto& v : vs) {
        for (int j = 0; j < 300; ++j) v.payload.push_back(gf::random_element(f.modulus(), rng));
        for (int j = 0; j < 4; ++j) v.coding.push_back(gf::random_element(f.modulus(), rng));
        cs.push_back(gf::random_nonzero(f.modulus(), rng));
    }
    CHECK(gf::linear_combine(vs, cs, f) == gf::serial::linear_combine(vs, cs, f));
}

TEST_CASE("rank: small examples") {
    CHECK(gf::rank({CodedVector{{}, {1, 0}}, CodedVector{{}, {0, 1}}}, gf::PrimeField(13)) == 2);
    CHECK(gf::rank({CodedVector{{}, {1, 2}}, CodedVector{{}, {2, 4}}}, gf::PrimeField(5)) == 1);
    CHECK(gf::rank({}, gf::PrimeField(5)) == 0);
    CHECK(gf::rank({CodedVector{{}, {0, 0, 0}}}, gf::PrimeField(7)) == 0);
}

TEST_CASE("rank: invariant under row permutation and row scaling") {
    Rng rng(3);
    const gf::PrimeField f(7);
    for (int trial = 0; trial < 200; ++trial) {
        gf::Matrix rows(1 + rng.uniform(5), gf::Row(1 + rng.uniform(5)));
        for (auto& r : rows)
            for (auto& x : r) x = static_cast<long>(rng.uniform(7));
        const auto r0 = gf::rank_matrix(rows, f);
        auto shuffled = rows;
        std::reverse(shuffled.begin(), shuffled.end());
        CHECK(gf::rank_matrix(shuffled, f) == r0);
        for (auto& x : shuffled[0]) x = f.mul(x, 3);
        CHECK(gf::rank_matrix(shuffled, f) == r0);
    }
}

TEST_CASE("rank: word and big kernels agree") {
    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        gf::Matrix rows(1 + rng.uniform(6), gf::Row(1 + rng.uniform(6)));
        for (auto& r : rows)
            for (auto& x : r) x = static_cast<long>(rng.uniform(3) == 0 ? 0 : rng.uniform(11));
        CHECK(gf::detail::rank_word(rows, 11) == gf::detail::rank_big(rows, 11));
    }
}

TEST_CASE("rank: matches span enumeration over GF(5) on random 4x4 matrices") {
    Rng rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<std::vector<int>> m(4, std::vector<int>(4));
        gf::Matrix big(4, gf::Row(4));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) big[i][j] = m[i][j] = static_cast<int>(rng.uniform(5));
        CHECK(gf::rank_matrix(big, gf::PrimeField(5)) == testutil::span_rank_gf5(m));
    }
}

TEST_CASE("left_null_space: every basis vector annihilates the rows") {
    Rng rng(29);
    const gf::PrimeField f(13);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t k = 1 + rng.uniform(6), m = 1 + rng.uniform(4);
        gf::Matrix rows(k, gf::Row(m));
        for (auto& r : rows)
            for (auto& x : r) x = static_cast<long>(rng.uniform(13));
        const auto basis = gf::left_null_space(rows, f);
        CHECK(basis.size() == k - gf::rank_matrix(rows, f));
        for (const auto& b : basis)
            for (std::size_t j = 0; j < m; ++j) {
                BigInt acc = 0;
                for (std::size_t i = 0; i < k; ++i) acc += b[i] * rows[i][j];
                CHECK(f.reduce(acc) == 0);
            }
    }
}

TEST_CASE("decode: recovers originals from a full-rank random mix") {
    Rng rng(31);
    const gf::PrimeField f(65521);
    const std::size_t m = 4;
    std::vector<CodedVector> originals;
    for (std::size_t j = 0; j < m; ++j) {
        gf::Row payload;
        for (int c = 0; c < 6; ++c) payload.push_back(gf::random_element(f.modulus(), rng));
        originals.push_back(gf::original_packet(payload, j, m));
    }
    std::vector<CodedVector> mixed;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<BigInt> cs;
        for (std::size_t j = 0; j < m; ++j) cs.push_back(gf::random_nonzero(f.modulus(), rng));
        mixed.push_back(gf::linear_combine(originals, cs, f));
    }
    REQUIRE(gf::rank(mixed, f) == m);
    const auto out = gf::decode(mixed, f);
    REQUIRE(out);
    for (std::size_t j = 0; j < m; ++j) CHECK((*out)[j] == originals[j].payload);

    mixed.pop_back();
    CHECK_FALSE(gf::decode(mixed, f));
}

TEST_CASE("random_nonzero: range and degenerate fields") {
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
        const auto v = gf::random_nonzero(3, rng);
        CHECK((v == 1 || v == 2));
        CHECK(gf::random_nonzero(2, rng) == 1);
    }
}

TEST_CASE("random_nonzero: uniform over GF(13)* within 5 sigma") {
    Rng rng(99);
    const int draws = 10000;
    std::map<long, int> counts;
    for (int i = 0; i < draws; ++i) ++counts[gf::random_nonzero(13, rng).get_si()];
    CHECK(counts.size() == 12);
    const double p = 1.0 / 12, mean = draws * p, sd = std::sqrt(draws * p * (1 - p));
    for (const auto& [v, c] : counts) {
        CHECK(v >= 1);
        CHECK(v <= 12);
        CHECK(std::abs(c - mean) < 5 * sd);
    }
}

TEST_CASE("PrimeField: rejects composites and inverts") {
    CHECK_THROWS(gf::PrimeField(15));
    CHECK_THROWS(gf::PrimeField(1));
    const gf::PrimeField f(13);
    for (long a = 1; a < 13; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK_THROWS_AS(f.inv(0), std::domain_error);
}
