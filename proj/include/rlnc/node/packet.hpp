#pragma once

#include <variant>

#include "rlnc/pip/logpip.hpp"

namespace rlnc::node {

struct EpochRef {
    std::uint64_t k = 0;
    crypto::Signature master_sig;
    bool operator==(const EpochRef&) const = default;
};

using TestToken = std::variant<std::monostate, pip::PipTestToken, pip::LogPipTestToken>;

/// Wire layout, all big-endian:
///   "RL" | version u8 | token kind u8 | widths alpha,sigma,sig,hash u16 | n u32 | m u32
///   | payload n*alpha | coding m*alpha | sigma | token | helper flag u8 [+ sig]
///   | epoch k u64 | master sig | sender str8 | receiver str8 | attest flag u8 [+ sig]
/// The attest signature covers every byte before the attest flag.
struct Packet {
    pip::Widths widths;
    gf::CodedVector e;
    validity::Sigma sigma;
    TestToken token;
    std::optional<pip::HelperToken> helper;
    EpochRef epoch;
    crypto::NodeId sender;
    crypto::NodeId receiver;
    std::optional<crypto::Signature> attest;

    bool operator==(const Packet&) const = default;
};

inline constexpr std::uint8_t kPacketVersion = 1;

Bytes packet_body(const Packet& p);
Bytes serialize_packet(const Packet& p);
/// Throws DecodeError with the failing offset; never reads out of bounds.
Packet deserialize_packet(ByteView bytes);

crypto::Signature attest_packet(const crypto::SecretKey& sk, const Packet& p);
bool verify_attest(const crypto::PublicKey& pk, const Packet& p);

/// Bytes outside payload, coding vector, and the protocol overhead counted by
/// the size formulas: header, sigma, epoch reference, ids, flags, attest,
/// plus the token framing reported by pip_framing_bytes/proof_framing_bytes.
std::size_t packet_fixed_overhead(const Packet& p);

}  // namespace rlnc::node
