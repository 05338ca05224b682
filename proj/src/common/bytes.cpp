#include "rlnc/common/bytes.hpp"

#include <limits>

namespace rlnc {

DecodeError::DecodeError(const std::string& what, std::size_t offset)
    : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

void ByteWriter::put_u8(std::uint8_t v) { buf_.push_back(v); }

void ByteWriter::put_u16(std::uint16_t v) {
    buf_.push_back(static_cast<std::uint8_t>(v >> 8));
    buf_.push_back(static_cast<std::uint8_t>(v));
}

void ByteWriter::put_u32(std::uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8) buf_.push_back(static_cast<std::uint8_t>(v >> shift));
}

void ByteWriter::put_u64(std::uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8) buf_.push_back(static_cast<std::uint8_t>(v >> shift));
}

void ByteWriter::put_bytes(ByteView v) { buf_.insert(buf_.end(), v.begin(), v.end()); }

void ByteWriter::put_short_string(std::string_view s) {
    if (s.size() > std::numeric_limits<std::uint8_t>::max())
        throw std::length_error("string longer than 255 bytes");
    put_u8(static_cast<std::uint8_t>(s.size()));
    buf_.insert(buf_.end(), s.begin(), s.end());
}

void ByteReader::need(std::size_t n) const {
    if (n > remaining()) throw DecodeError("truncated input (need " + std::to_string(n) + " bytes)", pos_);
}

std::uint8_t ByteReader::u8() {
    need(1);
    return in_[pos_++];
}

std::uint16_t ByteReader::u16() {
    need(2);
    std::uint16_t v = static_cast<std::uint16_t>((in_[pos_] << 8) | in_[pos_ + 1]);
    pos_ += 2;
    return v;
}

std::uint32_t ByteReader::u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | in_[pos_ + i];
    pos_ += 4;
    return v;
}

std::uint64_t ByteReader::u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | in_[pos_ + i];
    pos_ += 8;
    return v;
}

ByteView ByteReader::bytes(std::size_t n) {
    need(n);
    ByteView out = in_.subspan(pos_, n);
    pos_ += n;
    return out;
}

std::string ByteReader::short_string() {
    std::size_t len = u8();
    ByteView raw = bytes(len);
    return {raw.begin(), raw.end()};
}

void ByteReader::expect_end() const {
    if (remaining() != 0) throw DecodeError("trailing bytes", pos_);
}

Bytes to_bytes(std::string_view s) { return {s.begin(), s.end()}; }

std::string to_hex(ByteView v) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(v.size() * 2);
    for (std::uint8_t b : v) {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 0xf]);
    }
    return out;
}

}  // namespace rlnc
