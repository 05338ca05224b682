#include "rlnc/common/bigint.hpp"

#include <stdexcept>

namespace rlnc {

std::size_t bit_length(const BigInt& v) {
    if (v == 0) return 0;
    return mpz_sizeinbase(v.get_mpz_t(), 2);
}

std::size_t byte_width(const BigInt& modulus) { return (bit_length(modulus) + 7) / 8; }

Bytes to_fixed_bytes(const BigInt& v, std::size_t width) {
    if (sgn(v) < 0) throw std::invalid_argument("negative value cannot be encoded");
    std::size_t need = (bit_length(v) + 7) / 8;
    if (need > width) throw std::length_error("value wider than " + std::to_string(width) + " bytes");
    Bytes out(width, 0);
    if (need > 0) {
        std::size_t written = 0;
        mpz_export(out.data() + (width - need), &written, 1, 1, 1, 0, v.get_mpz_t());
    }
    return out;
}

void write_fixed(ByteWriter& w, const BigInt& v, std::size_t width) { w.put_bytes(to_fixed_bytes(v, width)); }

BigInt from_bytes(ByteView be) {
    BigInt v;
    if (!be.empty()) mpz_import(v.get_mpz_t(), be.size(), 1, 1, 1, 0, be.data());
    return v;
}

}  // namespace rlnc
