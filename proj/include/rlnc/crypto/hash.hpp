#pragma once

#include <cstddef>
#include <memory>

#include "rlnc/common/bytes.hpp"

namespace rlnc::crypto {

enum class HashAlg { Sha1, Sha256, Shake256 };

/// Hash selection plus output length. SHA-1 (160 bits) is the default;
/// SHAKE256 allows any byte-aligned length, which the size audits use.
struct HashSpec {
    HashAlg alg = HashAlg::Sha1;
    std::size_t bits = 160;

    static HashSpec sha1() { return {HashAlg::Sha1, 160}; }
    static HashSpec sha256() { return {HashAlg::Sha256, 256}; }
    static HashSpec shake256(std::size_t bits);

    std::size_t bytes() const noexcept { return bits / 8; }
    bool operator==(const HashSpec&) const = default;
};

struct Digest {
    Bytes h;
    bool operator==(const Digest&) const = default;
};

/// Incremental hasher over OpenSSL EVP.
class Hasher {
public:
    explicit Hasher(HashSpec spec = {});
    ~Hasher();
    Hasher(const Hasher&) = delete;
    Hasher& operator=(const Hasher&) = delete;

    Hasher& update(ByteView data);
    Hasher& update_u8(std::uint8_t b);
    Digest finish();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    HashSpec spec_;
};

Digest hash(ByteView data, HashSpec spec = {});

}  // namespace rlnc::crypto
