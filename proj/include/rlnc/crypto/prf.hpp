#pragma once

#include "rlnc/common/bytes.hpp"
#include "rlnc/crypto/hash.hpp"

namespace rlnc::crypto {

/// Public system seed. At least 16 bytes.
class Seed {
public:
    explicit Seed(Bytes s);
    ByteView bytes() const noexcept { return s_; }

private:
    Bytes s_;
};

/// HMAC-SHA1 keyed with the public seed. 160-bit output.
Digest prf(const Seed& seed, ByteView input);

}  // namespace rlnc::crypto
