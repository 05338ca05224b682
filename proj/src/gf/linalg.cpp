#include "rlnc/gf/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace rlnc::gf {

namespace {

void check_shapes(const std::vector<CodedVector>& vectors, const std::vector<BigInt>& coeffs) {
    if (vectors.empty()) throw std::invalid_argument("linear_combine: empty input");
    if (vectors.size() != coeffs.size()) throw std::invalid_argument("linear_combine: coefficient count mismatch");
    const std::size_t n = vectors.front().n(), m = vectors.front().m();
    for (const auto& v : vectors)
        if (v.n() != n || v.m() != m) throw std::invalid_argument("linear_combine: dimension mismatch");
}

__extension__ typedef unsigned __int128 u128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % q);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t q) {
    std::uint64_t r = 1 % q;
    while (e) {
        if (e & 1) r = mulmod(r, a, q);
        a = mulmod(a, a, q);
        e >>= 1;
    }
    return r;
}

// Reduced row echelon form in place; returns pivot column per pivot row.
std::vector<std::size_t> rref(Matrix& a, const PrimeField& f) {
    std::vector<std::size_t> pivots;
    if (a.empty()) return pivots;
    const std::size_t cols = a.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && sgn(a[p][c]) == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[r]);
        const BigInt inv = f.inv(a[r][c]);
        for (auto& x : a[r]) x = f.mul(x, inv);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || sgn(a[i][c]) == 0) continue;
            const BigInt factor = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] = f.sub(a[i][j], f.mul(factor, a[r][j]));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

bool CodedVector::coding_is_zero() const {
    return std::all_of(coding.begin(), coding.end(), [](const BigInt& c) { return sgn(c) == 0; });
}

CodedVector original_packet(Row payload, std::size_t j, std::size_t m) {
    if (j >= m) throw std::out_of_range("original_packet: index out of range");
    CodedVector v{std::move(payload), Row(m, 0)};
    v.coding[j] = 1;
    return v;
}

CodedVector linear_combine(const std::vector<CodedVector>& vectors, const std::vector<BigInt>& coeffs,
                           const PrimeField& field) {
    check_shapes(vectors, coeffs);
    const std::size_t n = vectors.front().n(), m = vectors.front().m();
    const std::size_t total = n + m;
    CodedVector out{Row(n), Row(m)};
    const BigInt& q = field.modulus();
#pragma omp parallel for schedule(static) if (total * vectors.size() > 4096)
    for (std::size_t j = 0; j < total; ++j) {
        BigInt acc = 0;
        for (std::size_t i = 0; i < vectors.size(); ++i) {
            const BigInt& e = j < n ? vectors[i].payload[j] : vectors[i].coding[j - n];
            mpz_addmul(acc.get_mpz_t(), coeffs[i].get_mpz_t(), e.get_mpz_t());
        }
        mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), q.get_mpz_t());
        (j < n ? out.payload[j] : out.coding[j - n]) = std::move(acc);
    }
    return out;
}

namespace serial {

CodedVector linear_combine(const std::vector<CodedVector>& vectors, const std::vector<BigInt>& coeffs,
                           const PrimeField& field) {
    check_shapes(vectors, coeffs);
    CodedVector out{Row(vectors.front().n(), 0), Row(vectors.front().m(), 0)};
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        for (std::size_t j = 0; j < out.n(); ++j)
            out.payload[j] = field.add(out.payload[j], field.mul(coeffs[i], vectors[i].payload[j]));
        for (std::size_t j = 0; j < out.m(); ++j)
            out.coding[j] = field.add(out.coding[j], field.mul(coeffs[i], vectors[i].coding[j]));
    }
    return out;
}

}  // namespace serial

namespace detail {

std::size_t rank_word(const Matrix& rows, std::uint64_t q) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    std::vector<std::vector<std::uint64_t>> a(rows.size(), std::vector<std::uint64_t>(cols));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            BigInt r;
            mpz_fdiv_r_ui(r.get_mpz_t(), rows[i][j].get_mpz_t(), q);
            a[i][j] = mpz_get_ui(r.get_mpz_t());
        }
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[r]);
        const std::uint64_t inv = powmod(a[r][c], q - 2, q);
        for (std::size_t i = r + 1; i < a.size(); ++i) {
            if (a[i][c] == 0) continue;
            const std::uint64_t factor = mulmod(a[i][c], inv, q);
            for (std::size_t j = c; j < cols; ++j) {
                const std::uint64_t t = mulmod(factor, a[r][j], q);
                a[i][j] = a[i][j] >= t ? a[i][j] - t : a[i][j] + (q - t);
            }
        }
        ++r;
    }
    return r;
}

std::size_t rank_big(const Matrix& rows, const BigInt& q) {
    Matrix a = rows;
    PrimeField f(q);
    for (auto& row : a)
        for (auto& x : row) x = f.reduce(x);
    return rref(a, f).size();
}

}  // namespace detail

std::size_t rank_matrix(const Matrix& rows, const PrimeField& field) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    for (const auto& r : rows)
        if (r.size() != cols) throw std::invalid_argument("rank: ragged matrix");
    return field.word_sized() ? detail::rank_word(rows, field.modulus_u64()) : detail::rank_big(rows, field.modulus());
}

std::size_t rank(const std::vector<CodedVector>& vectors, const PrimeField& field) {
    Matrix rows;
    rows.reserve(vectors.size());
    for (const auto& v : vectors) rows.push_back(v.coding);
    return rank_matrix(rows, field);
}

Matrix left_null_space(const Matrix& rows, const PrimeField& field) {
    const std::size_t k = rows.size();
    if (k == 0) return {};
    const std::size_t cols = rows.front().size();
    // Solve A^T x = 0 where A has the given rows.
    Matrix t(cols, Row(k));
    for (std::size_t i = 0; i < k; ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("left_null_space: ragged matrix");
        for (std::size_t j = 0; j < cols; ++j) t[j][i] = field.reduce(rows[i][j]);
    }
    const auto pivots = rref(t, field);
    std::vector<bool> is_pivot(k, false);
    for (auto c : pivots) is_pivot[c] = true;
    Matrix basis;
    for (std::size_t free = 0; free < k; ++free) {
        if (is_pivot[free]) continue;
        Row x(k, 0);
        x[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = field.sub(0, t[r][free]);
        basis.push_back(std::move(x));
    }
    return basis;
}

std::optional<std::vector<Row>> decode(const std::vector<CodedVector>& vectors, const PrimeField& field) {
    if (vectors.empty()) return std::nullopt;
    const std::size_t n = vectors.front().n(), m = vectors.front().m();
    Matrix a;
    for (const auto& v : vectors) {
        if (v.n() != n || v.m() != m) throw std::invalid_argument("decode: dimension mismatch");
        Row row;
        row.reserve(n + m);
        for (const auto& c : v.coding) row.push_back(field.reduce(c));
        for (const auto& e : v.payload) row.push_back(field.reduce(e));
        a.push_back(std::move(row));
    }
    const auto pivots = rref(a, field);
    std::size_t coding_pivots = 0;
    for (auto c : pivots)
        if (c < m) ++coding_pivots;
    if (coding_pivots < m) return std::nullopt;
    std::vector<Row> out(m);
    for (std::size_t r = 0; r < m; ++r) out[pivots[r]] = Row(a[r].begin() + static_cast<std::ptrdiff_t>(m), a[r].end());
    return out;
}

}  // namespace rlnc::gf
