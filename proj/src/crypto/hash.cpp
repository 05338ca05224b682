#include "rlnc/crypto/hash.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace rlnc::crypto {

HashSpec HashSpec::shake256(std::size_t bits) {
    if (bits == 0 || bits % 8 != 0) throw std::invalid_argument("shake256 output must be a positive multiple of 8 bits");
    return {HashAlg::Shake256, bits};
}

struct Hasher::Impl {
    EVP_MD_CTX* ctx = nullptr;
    ~Impl() { EVP_MD_CTX_free(ctx); }
};

namespace {
const EVP_MD* md_for(HashAlg alg) {
    switch (alg) {
        case HashAlg::Sha1: return EVP_sha1();
        case HashAlg::Sha256: return EVP_sha256();
        case HashAlg::Shake256: return EVP_shake256();
    }
    throw std::logic_error("unknown hash");
}
}  // namespace

Hasher::Hasher(HashSpec spec) : impl_(std::make_unique<Impl>()), spec_(spec) {
    if (spec.alg == HashAlg::Sha1 && spec.bits != 160) throw std::invalid_argument("SHA-1 is 160 bits");
    if (spec.alg == HashAlg::Sha256 && spec.bits != 256) throw std::invalid_argument("SHA-256 is 256 bits");
    impl_->ctx = EVP_MD_CTX_new();
    if (!impl_->ctx || EVP_DigestInit_ex(impl_->ctx, md_for(spec.alg), nullptr) != 1)
        throw std::runtime_error("EVP_DigestInit_ex failed");
}

Hasher::~Hasher() = default;

Hasher& Hasher::update(ByteView data) {
    if (!data.empty() && EVP_DigestUpdate(impl_->ctx, data.data(), data.size()) != 1)
        throw std::runtime_error("EVP_DigestUpdate failed");
    return *this;
}

Hasher& Hasher::update_u8(std::uint8_t b) { return update(ByteView(&b, 1)); }

Digest Hasher::finish() {
    Digest d{Bytes(spec_.bytes())};
    int ok = 0;
    if (spec_.alg == HashAlg::Shake256) {
        ok = EVP_DigestFinalXOF(impl_->ctx, d.h.data(), d.h.size());
    } else {
        unsigned int len = 0;
        ok = EVP_DigestFinal_ex(impl_->ctx, d.h.data(), &len);
    }
    if (ok != 1) throw std::runtime_error("digest finalization failed");
    return d;
}

Digest hash(ByteView data, HashSpec spec) { return Hasher(spec).update(data).finish(); }

}  // namespace rlnc::crypto
