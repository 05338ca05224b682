#include "rlnc/node/packet.hpp"

#include <stdexcept>

#include "rlnc/pip/sizes.hpp"

namespace rlnc::node {

namespace {

constexpr std::uint8_t kMagic0 = 'R';
constexpr std::uint8_t kMagic1 = 'L';
constexpr std::size_t kHeaderBytes = 2 + 1 + 1 + 4 * 2 + 4 + 4;

void put_sig(ByteWriter& w, const crypto::Signature& s, std::size_t width) {
    if (s.size() != width) throw std::length_error("signature width mismatch");
    w.put_bytes(s);
}

void encode_body(ByteWriter& w, const Packet& p) {
    const auto& wd = p.widths;
    w.put_u8(kMagic0);
    w.put_u8(kMagic1);
    w.put_u8(kPacketVersion);
    w.put_u8(static_cast<std::uint8_t>(p.token.index()));
    w.put_u16(wd.alpha);
    w.put_u16(wd.sigma);
    w.put_u16(wd.sig);
    w.put_u16(wd.hash);
    w.put_u32(static_cast<std::uint32_t>(p.e.n()));
    w.put_u32(static_cast<std::uint32_t>(p.e.m()));
    for (const auto& x : p.e.payload) write_fixed(w, x, wd.alpha);
    for (const auto& x : p.e.coding) write_fixed(w, x, wd.alpha);
    write_fixed(w, p.sigma.v, wd.sigma);
    if (const auto* t = std::get_if<pip::PipTestToken>(&p.token)) {
        pip::encode_pip_token(w, *t, wd);
    } else if (const auto* t = std::get_if<pip::LogPipTestToken>(&p.token)) {
        if (t->root.h.size() != wd.hash) throw std::length_error("root hash width mismatch");
        w.put_bytes(t->root.h);
    }
    w.put_u8(p.helper ? 1 : 0);
    if (p.helper) put_sig(w, p.helper->sig, wd.sig);
    w.put_u64(p.epoch.k);
    put_sig(w, p.epoch.master_sig, wd.sig);
    w.put_short_string(p.sender);
    w.put_short_string(p.receiver);
}

Bytes read_sig(ByteReader& r, std::size_t width) {
    auto v = r.bytes(width);
    return {v.begin(), v.end()};
}

}  // namespace

Bytes packet_body(const Packet& p) {
    ByteWriter w;
    encode_body(w, p);
    return w.take();
}

Bytes serialize_packet(const Packet& p) {
    ByteWriter w;
    encode_body(w, p);
    w.put_u8(p.attest ? 1 : 0);
    if (p.attest) put_sig(w, *p.attest, p.widths.sig);
    return w.take();
}

Packet deserialize_packet(ByteView bytes) {
    ByteReader r(bytes);
    Packet p;
    if (r.u8() != kMagic0 || r.u8() != kMagic1) throw DecodeError("bad magic", 0);
    if (const auto v = r.u8(); v != kPacketVersion) throw DecodeError("unsupported version " + std::to_string(v), 2);
    const std::size_t kind_at = r.offset();
    const std::uint8_t kind = r.u8();
    if (kind > 2) throw DecodeError("unknown token kind", kind_at);
    p.widths.alpha = r.u16();
    p.widths.sigma = r.u16();
    p.widths.sig = r.u16();
    p.widths.hash = r.u16();
    if (p.widths.alpha == 0 || p.widths.sigma == 0 || p.widths.sig == 0)
        throw DecodeError("zero field width", r.offset());
    const std::size_t n = r.u32();
    const std::size_t m = r.u32();
    const std::size_t vec_at = r.offset();
    // Reject sizes the remaining input cannot hold before allocating.
    if ((n + m) > r.remaining() / p.widths.alpha) throw DecodeError("vector lengths exceed input", vec_at);
    p.e.payload.reserve(n);
    p.e.coding.reserve(m);
    for (std::size_t i = 0; i < n; ++i) p.e.payload.push_back(from_bytes(r.bytes(p.widths.alpha)));
    for (std::size_t i = 0; i < m; ++i) p.e.coding.push_back(from_bytes(r.bytes(p.widths.alpha)));
    p.sigma.v = from_bytes(r.bytes(p.widths.sigma));
    if (kind == 1) {
        p.token = pip::decode_pip_token(r, p.widths);
    } else if (kind == 2) {
        auto h = r.bytes(p.widths.hash);
        p.token = pip::LogPipTestToken{crypto::Digest{Bytes(h.begin(), h.end())}};
    }
    const std::size_t helper_at = r.offset();
    switch (r.u8()) {
        case 0: break;
        case 1: p.helper = pip::HelperToken{read_sig(r, p.widths.sig)}; break;
        default: throw DecodeError("bad helper flag", helper_at);
    }
    p.epoch.k = r.u64();
    p.epoch.master_sig = read_sig(r, p.widths.sig);
    p.sender = r.short_string();
    p.receiver = r.short_string();
    const std::size_t attest_at = r.offset();
    switch (r.u8()) {
        case 0: break;
        case 1: p.attest = read_sig(r, p.widths.sig); break;
        default: throw DecodeError("bad attest flag", attest_at);
    }
    r.expect_end();
    return p;
}

crypto::Signature attest_packet(const crypto::SecretKey& sk, const Packet& p) { return crypto::sign(sk, packet_body(p)); }

bool verify_attest(const crypto::PublicKey& pk, const Packet& p) {
    if (!p.attest) return false;
    Bytes body;
    try {
        body = packet_body(p);
    } catch (const std::exception&) {
        return false;
    }
    return crypto::verify(pk, body, *p.attest);
}

std::size_t packet_fixed_overhead(const Packet& p) {
    std::size_t bytes = kHeaderBytes + p.widths.sigma;
    if (const auto* t = std::get_if<pip::PipTestToken>(&p.token)) bytes += pip::pip_framing_bytes(*t, p.widths);
    bytes += 1;                      // helper flag
    bytes += 8 + p.widths.sig;       // epoch reference
    bytes += 2 + p.sender.size() + p.receiver.size();
    bytes += 1 + (p.attest ? p.widths.sig : 0);
    return bytes;
}

}  // namespace rlnc::node
