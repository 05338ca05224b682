#pragma once

#include <cstddef>

#include "rlnc/pip/pip.hpp"

namespace rlnc::pip {

/// ceil(log2 d) for d >= 1.
std::size_t ceil_log2(std::size_t d);

/// Closed-form per-packet verification overhead in bits.
///   PIP:     d * (|sigma| + |sig|) + |sig|
///   Log-PIP: |h| + |sigma| + |sig| + 2 * |sigma| * ceil(log2 d)
/// Log-PIP counts the token plus the data returned for one challenge.
std::size_t token_size_bits(Protocol protocol, std::size_t d, std::size_t sigma_bits, std::size_t sig_bits,
                            std::size_t hash_bits);

/// Same formula with the real-valued log2 d.
double token_size_bits_ideal(Protocol protocol, std::size_t d, std::size_t sigma_bits, std::size_t sig_bits,
                             std::size_t hash_bits);

/// Bytes a PIP token spends outside the formula: count prefix, ids, coefficients.
std::size_t pip_framing_bytes(const PipTestToken& token, const Widths& widths);

/// Bytes a challenge proof spends outside the formula: index, leaf count, coefficient.
std::size_t proof_framing_bytes(const Widths& widths);

}  // namespace rlnc::pip
