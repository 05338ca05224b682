#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rlnc {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/// Raised by every decoder in the library. `offset()` is the byte position
/// at which the input stopped making sense.
class DecodeError : public std::runtime_error {
public:
    DecodeError(const std::string& what, std::size_t offset);
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Big-endian append-only writer.
class ByteWriter {
public:
    void put_u8(std::uint8_t v);
    void put_u16(std::uint16_t v);
    void put_u32(std::uint32_t v);
    void put_u64(std::uint64_t v);
    void put_bytes(ByteView v);
    /// u8 length prefix followed by the raw characters.
    void put_short_string(std::string_view s);

    std::size_t size() const noexcept { return buf_.size(); }
    const Bytes& bytes() const noexcept { return buf_; }
    Bytes take() noexcept { return std::move(buf_); }

private:
    Bytes buf_;
};

/// Bounds-checked reader over a borrowed buffer. Never reads past the end;
/// throws DecodeError instead.
class ByteReader {
public:
    explicit ByteReader(ByteView in) : in_(in) {}

    std::uint8_t u8();
    std::uint16_t u16();
    std::uint32_t u32();
    std::uint64_t u64();
    ByteView bytes(std::size_t n);
    std::string short_string();

    std::size_t offset() const noexcept { return pos_; }
    std::size_t remaining() const noexcept { return in_.size() - pos_; }
    void expect_end() const;

private:
    void need(std::size_t n) const;

    ByteView in_;
    std::size_t pos_ = 0;
};

Bytes to_bytes(std::string_view s);
std::string to_hex(ByteView v);

inline void append(Bytes& dst, ByteView src) { dst.insert(dst.end(), src.begin(), src.end()); }

}  // namespace rlnc
