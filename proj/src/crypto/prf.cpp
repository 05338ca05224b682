#include "rlnc/crypto/prf.hpp"

#include <openssl/core_names.h>
#include <openssl/evp.h>

#include <algorithm>
#include <memory>
#include <stdexcept>

namespace rlnc::crypto {

Seed::Seed(Bytes s) : s_(std::move(s)) {
    if (s_.size() < 16) throw std::invalid_argument("seed must be at least 16 bytes");
}

namespace {

struct MacFree {
    void operator()(EVP_MAC* m) const { EVP_MAC_free(m); }
    void operator()(EVP_MAC_CTX* c) const { EVP_MAC_CTX_free(c); }
};

// A keyed HMAC-SHA1 template per thread, duplicated for each call.
// Re-initialising with a null key is unreliable on OpenSSL 3.0.
class KeyedMac {
public:
    KeyedMac() {
        mac_.reset(EVP_MAC_fetch(nullptr, "HMAC", nullptr));
        if (!mac_) throw std::runtime_error("HMAC unavailable");
    }

    std::unique_ptr<EVP_MAC_CTX, MacFree> for_key(ByteView key) {
        if (!ctx_ || !std::equal(key.begin(), key.end(), key_.begin(), key_.end())) rekey(key);
        std::unique_ptr<EVP_MAC_CTX, MacFree> c(EVP_MAC_CTX_dup(ctx_.get()));
        if (!c) throw std::runtime_error("HMAC dup failed");
        return c;
    }

private:
    void rekey(ByteView key) {
        ctx_.reset(EVP_MAC_CTX_new(mac_.get()));
        char digest[] = "SHA1";
        const OSSL_PARAM params[] = {OSSL_PARAM_construct_utf8_string(OSSL_MAC_PARAM_DIGEST, digest, 0),
                                     OSSL_PARAM_construct_end()};
        if (!ctx_ || !EVP_MAC_init(ctx_.get(), key.data(), key.size(), params))
            throw std::runtime_error("HMAC init failed");
        key_.assign(key.begin(), key.end());
    }

    std::unique_ptr<EVP_MAC, MacFree> mac_;
    std::unique_ptr<EVP_MAC_CTX, MacFree> ctx_;
    Bytes key_;
};

}  // namespace

Digest prf(const Seed& seed, ByteView input) {
    thread_local KeyedMac mac;
    const auto ctx = mac.for_key(seed.bytes());
    Digest d{Bytes(EVP_MAX_MD_SIZE)};
    std::size_t len = 0;
    if (!EVP_MAC_update(ctx.get(), input.data(), input.size()) || !EVP_MAC_final(ctx.get(), d.h.data(), &len, d.h.size()))
        throw std::runtime_error("HMAC failed");
    d.h.resize(len);
    return d;
}

}  // namespace rlnc::crypto
