#pragma once

#include <optional>

#include "rlnc/common/bigint.hpp"
#include "rlnc/crypto/prf.hpp"
#include "rlnc/crypto/sign.hpp"

namespace rlnc::node {

/// alpha* = F_s(parent || node [|| child] || epoch_digest(epoch_pk)), mapped to
/// [1, q) by rejection sampling over a counter appended to the input.
BigInt derive_coefficient(const crypto::Seed& seed, const crypto::NodeId& parent, const crypto::NodeId& node,
                          const std::optional<crypto::NodeId>& child, ByteView epoch_pk, const BigInt& q);

/// Same value, given the precomputed epoch digest.
BigInt derive_coefficient(const crypto::Seed& seed, const crypto::NodeId& parent, const crypto::NodeId& node,
                          const std::optional<crypto::NodeId>& child, const crypto::Digest& epoch_id, const BigInt& q);

}  // namespace rlnc::node
