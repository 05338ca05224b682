#pragma once

#include <optional>
#include <vector>

#include "rlnc/gf/field.hpp"

namespace rlnc::gf {

using Row = std::vector<BigInt>;
using Matrix = std::vector<Row>;

/// Packet vector E = payload (n chunks) followed by coding vector (m chunks).
struct CodedVector {
    Row payload;
    Row coding;

    std::size_t n() const noexcept { return payload.size(); }
    std::size_t m() const noexcept { return coding.size(); }
    bool coding_is_zero() const;
    bool operator==(const CodedVector&) const = default;
};

/// Original packet j of a generation: the given payload with unit vector e_j.
CodedVector original_packet(Row payload, std::size_t j, std::size_t m);

/// sum_i coeffs[i] * vectors[i], parallel over chunk positions.
CodedVector linear_combine(const std::vector<CodedVector>& vectors, const std::vector<BigInt>& coeffs,
                           const PrimeField& field);

/// Rank of the coding vectors. Empty input gives 0.
std::size_t rank(const std::vector<CodedVector>& vectors, const PrimeField& field);
std::size_t rank_matrix(const Matrix& rows, const PrimeField& field);

/// Basis of { x : sum_i x_i * rows[i] = 0 }.
Matrix left_null_space(const Matrix& rows, const PrimeField& field);

/// Recovers the m original payloads when the coding vectors have full rank.
std::optional<std::vector<Row>> decode(const std::vector<CodedVector>& vectors, const PrimeField& field);

namespace serial {
CodedVector linear_combine(const std::vector<CodedVector>& vectors, const std::vector<BigInt>& coeffs,
                           const PrimeField& field);
}  // namespace serial

namespace detail {
std::size_t rank_word(const Matrix& rows, std::uint64_t q);
std::size_t rank_big(const Matrix& rows, const BigInt& q);
}  // namespace detail

}  // namespace rlnc::gf
