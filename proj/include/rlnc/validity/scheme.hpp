#pragma once

#include <vector>

#include "rlnc/crypto/hash.hpp"
#include "rlnc/crypto/sign.hpp"
#include "rlnc/gf/linalg.hpp"
#include "rlnc/validity/group.hpp"

namespace rlnc::validity {

/// Validity signature: an element of the order-q subgroup.
struct Sigma {
    BigInt v;
    bool operator==(const Sigma&) const = default;
};

/// Per-epoch public parameters published by the source.
struct SourceEpochParams {
    std::uint64_t k = 0;
    DlGroup group;
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<BigInt> generators;       // n + m
    std::vector<BigInt> original_hashes;  // m
    Bytes epoch_pk;
    crypto::Digest epoch_id;  // epoch_digest(epoch_pk)
    crypto::Signature master_sig;
};

/// k (u64) || p || q || generators || original hashes, fixed width |p|.
Bytes encode_epoch_pk(std::uint64_t k, const DlGroup& group, const std::vector<BigInt>& generators,
                      const std::vector<BigInt>& original_hashes);

/// Fixed-size SHA-256 name for an epoch key, so per-packet work does not scale with n.
crypto::Digest epoch_digest(ByteView epoch_pk);

SourceEpochParams epoch_setup(const crypto::SecretKey& master_sk, const DlGroup& group,
                              const std::vector<gf::CodedVector>& originals, std::uint64_t k, Rng& rng);

/// Master signature, byte encoding, epoch id, and subgroup membership of every element.
bool verify_epoch(const SourceEpochParams& params, const crypto::PublicKey& master_pk);

/// prod g_i^{e_i} mod p. Throws std::invalid_argument on a dimension mismatch.
Sigma sign_validity(const SourceEpochParams& params, const gf::CodedVector& e);

/// True iff sigma = prod g_i^{e_i} and sigma = prod h_j^{c_j}. Never throws.
bool verify_validity(const SourceEpochParams& params, const gf::CodedVector& e, const Sigma& sigma);

/// prod sigma_i^{a_i} mod p.
Sigma combine_validity(const std::vector<Sigma>& sigmas, const std::vector<BigInt>& coeffs, const DlGroup& group);

Sigma identity_sigma();

namespace serial {
Sigma sign_validity(const SourceEpochParams& params, const gf::CodedVector& e);
}

}  // namespace rlnc::validity
