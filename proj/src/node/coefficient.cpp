#include "rlnc/node/coefficient.hpp"

#include <stdexcept>

#include "rlnc/validity/scheme.hpp"

namespace rlnc::node {

BigInt derive_coefficient(const crypto::Seed& seed, const crypto::NodeId& parent, const crypto::NodeId& node,
                          const std::optional<crypto::NodeId>& child, ByteView epoch_pk, const BigInt& q) {
    return derive_coefficient(seed, parent, node, child, validity::epoch_digest(epoch_pk), q);
}

BigInt derive_coefficient(const crypto::Seed& seed, const crypto::NodeId& parent, const crypto::NodeId& node,
                          const std::optional<crypto::NodeId>& child, const crypto::Digest& epoch_id, const BigInt& q) {
    if (parent.empty() || node.empty() || (child && child->empty()))
        throw std::invalid_argument("derive_coefficient: empty id");
    if (q < 2) throw std::invalid_argument("derive_coefficient: modulus must be >= 2");

    ByteWriter base;
    base.put_bytes(to_bytes("rlnc-coef-v1"));
    base.put_short_string(parent);
    base.put_short_string(node);
    base.put_u8(child ? 1 : 0);
    if (child) base.put_short_string(*child);
    base.put_bytes(epoch_id.h);

    const BigInt range = q - 1;  // output is 1 + uniform [0, q-1)
    const std::size_t bits = bit_length(range);
    const std::size_t bytes_needed = (bits + 7) / 8;
    for (std::uint32_t counter = 0;; ++counter) {
        Bytes stream;
        for (std::uint32_t block = 0; stream.size() < bytes_needed; ++block) {
            ByteWriter in;
            in.put_bytes(base.bytes());
            in.put_u32(counter);
            in.put_u32(block);
            append(stream, crypto::prf(seed, in.bytes()).h);
        }
        stream.resize(bytes_needed);
        BigInt v = from_bytes(stream);
        v >>= static_cast<mp_bitcnt_t>(bytes_needed * 8 - bits);
        if (v < range) return v + 1;
    }
}

}  // namespace rlnc::node
