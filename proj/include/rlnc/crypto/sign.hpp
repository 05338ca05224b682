#pragma once

#include <optional>
#include <string>

#include "rlnc/common/bytes.hpp"
#include "rlnc/common/rng.hpp"

namespace rlnc::crypto {

/// Ed25519 (libsodium). Signatures are 64 bytes.
inline constexpr std::size_t kPublicKeyBytes = 32;
inline constexpr std::size_t kSignatureBytes = 64;
inline constexpr std::size_t kSignatureBits = kSignatureBytes * 8;

struct PublicKey {
    Bytes k;
    bool operator==(const PublicKey&) const = default;
};

struct SecretKey {
    Bytes k;
};

using Signature = Bytes;

struct KeyPair {
    PublicKey pk;
    SecretKey sk;
};

KeyPair keygen(Rng& rng);
Signature sign(const SecretKey& sk, ByteView message);
/// False on any malformed key or signature; never throws.
bool verify(const PublicKey& pk, ByteView message, ByteView sig);

using NodeId = std::string;

enum class Priority : std::uint8_t { Normal = 0, High = 1 };

struct Certificate {
    Priority priority = Priority::Normal;
    Signature sig;
};

struct NodeIdentity {
    NodeId id;
    PublicKey pk;
    std::optional<SecretKey> sk;
    std::optional<Certificate> cert;
};

NodeIdentity make_identity(NodeId id, Rng& rng);

Bytes cert_message(const PublicKey& pk, const NodeId& id, Priority priority);
Certificate certify(const SecretKey& authority_sk, const PublicKey& pk, const NodeId& id,
                    Priority priority = Priority::Normal);
bool verify_cert(const Certificate& cert, const PublicKey& pk, const NodeId& id, const PublicKey& authority_pk);

}  // namespace rlnc::crypto
