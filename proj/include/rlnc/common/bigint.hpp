#pragma once

#include <gmpxx.h>

#include <cstddef>

#include "rlnc/common/bytes.hpp"

namespace rlnc {

using BigInt = mpz_class;

std::size_t bit_length(const BigInt& v);

/// Bytes needed to hold any residue modulo `modulus` (ceil(bits/8)).
std::size_t byte_width(const BigInt& modulus);

/// Big-endian, left-padded to exactly `width` bytes. Throws std::length_error
/// when `v` does not fit; negative values are rejected.
Bytes to_fixed_bytes(const BigInt& v, std::size_t width);
void write_fixed(ByteWriter& w, const BigInt& v, std::size_t width);

BigInt from_bytes(ByteView be);

}  // namespace rlnc
