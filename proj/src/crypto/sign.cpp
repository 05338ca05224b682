#include "rlnc/crypto/sign.hpp"

#include <sodium.h>

#include <array>
#include <stdexcept>

namespace rlnc::crypto {

namespace {

void ensure_sodium() {
    static const bool ready = [] {
        if (sodium_init() < 0) throw std::runtime_error("sodium_init failed");
        return true;
    }();
    (void)ready;
}

constexpr std::string_view kCertContext{"rlnc-cert-v1\0", 13};

}  // namespace

KeyPair keygen(Rng& rng) {
    ensure_sodium();
    std::array<std::uint8_t, crypto_sign_SEEDBYTES> seed{};
    rng.fill(seed);
    KeyPair kp{{Bytes(crypto_sign_PUBLICKEYBYTES)}, {Bytes(crypto_sign_SECRETKEYBYTES)}};
    crypto_sign_seed_keypair(kp.pk.k.data(), kp.sk.k.data(), seed.data());
    sodium_memzero(seed.data(), seed.size());
    return kp;
}

Signature sign(const SecretKey& sk, ByteView message) {
    ensure_sodium();
    if (sk.k.size() != crypto_sign_SECRETKEYBYTES) throw std::invalid_argument("malformed secret key");
    Signature sig(crypto_sign_BYTES);
    crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(), sk.k.data());
    return sig;
}

bool verify(const PublicKey& pk, ByteView message, ByteView sig) {
    ensure_sodium();
    if (pk.k.size() != crypto_sign_PUBLICKEYBYTES || sig.size() != crypto_sign_BYTES) return false;
    return crypto_sign_verify_detached(sig.data(), message.data(), message.size(), pk.k.data()) == 0;
}

NodeIdentity make_identity(NodeId id, Rng& rng) {
    KeyPair kp = keygen(rng);
    return NodeIdentity{std::move(id), std::move(kp.pk), std::move(kp.sk), std::nullopt};
}

Bytes cert_message(const PublicKey& pk, const NodeId& id, Priority priority) {
    ByteWriter w;
    w.put_bytes(ByteView(reinterpret_cast<const std::uint8_t*>(kCertContext.data()), kCertContext.size()));
    w.put_u8(static_cast<std::uint8_t>(priority));
    w.put_short_string(id);
    w.put_bytes(pk.k);
    return w.take();
}

Certificate certify(const SecretKey& authority_sk, const PublicKey& pk, const NodeId& id, Priority priority) {
    return Certificate{priority, sign(authority_sk, cert_message(pk, id, priority))};
}

bool verify_cert(const Certificate& cert, const PublicKey& pk, const NodeId& id, const PublicKey& authority_pk) {
    if (id.size() > 255) return false;
    return verify(authority_pk, cert_message(pk, id, cert.priority), cert.sig);
}

}  // namespace rlnc::crypto
