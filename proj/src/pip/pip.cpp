#include "rlnc/pip/pip.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace rlnc::pip {

std::string_view to_string(Protocol p) {
    switch (p) {
        case Protocol::None: return "none";
        case Protocol::Pip: return "pip";
        case Protocol::LogPip: return "logpip";
    }
    return "?";
}

Protocol protocol_from_string(std::string_view s) {
    if (s == "none") return Protocol::None;
    if (s == "pip") return Protocol::Pip;
    if (s == "logpip") return Protocol::LogPip;
    throw std::invalid_argument("unknown protocol: " + std::string(s));
}

Widths Widths::from(const validity::DlGroup& group, const crypto::HashSpec& hash) {
    Widths w;
    w.alpha = static_cast<std::uint16_t>(group.scalar_bytes());
    w.sigma = static_cast<std::uint16_t>(group.element_bytes());
    w.hash = static_cast<std::uint16_t>(hash.bytes());
    return w;
}

bool id_less(const crypto::NodeId& a, const crypto::NodeId& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](char x, char y) { return static_cast<unsigned char>(x) < static_cast<unsigned char>(y); });
}

PipTestToken pip_combine(std::vector<ParentContribution> parents) {
    std::sort(parents.begin(), parents.end(), [](const auto& a, const auto& b) { return id_less(a.parent_id, b.parent_id); });
    for (std::size_t i = 1; i < parents.size(); ++i)
        if (parents[i].parent_id == parents[i - 1].parent_id)
            throw std::invalid_argument("pip_combine: duplicate parent " + parents[i].parent_id);
    PipTestToken t;
    for (auto& p : parents)
        t.entries.push_back({std::move(p.parent_id), std::move(p.coefficient), std::move(p.sigma), std::move(p.helper)});
    return t;
}

CheckResult pip_verif_test(const validity::Sigma& sigma_n, const PipTestToken& token,
                           std::vector<ExpectedParent> expected, const crypto::NodeId& sender,
                           const validity::DlGroup& group) {
    std::sort(expected.begin(), expected.end(), [](const auto& a, const auto& b) { return id_less(a.id, b.id); });
    std::map<crypto::NodeId, const PipEntry*> by_id;
    for (const auto& e : token.entries) {
        if (!by_id.emplace(e.parent_id, &e).second)
            return make_violation(ViolationKind::MissingEntry, sender, "duplicate entry for " + e.parent_id,
                                  to_bytes(e.parent_id));
    }
    for (const auto& want : expected) {
        auto it = by_id.find(want.id);
        if (it == by_id.end())
            return make_violation(ViolationKind::MissingEntry, sender, "no entry for parent " + want.id, to_bytes(want.id));
        const PipEntry& e = *it->second;
        if (!helper_verifies(e.helper, e.sigma, group, want.pk, want.id, sender))
            return make_violation(ViolationKind::BadHelperSig, sender, "helper of parent " + want.id + " does not verify",
                                  to_bytes(want.id));
        if (sgn(e.alpha) == 0)
            return make_violation(ViolationKind::ZeroCoefficient, sender, "zero coefficient for parent " + want.id,
                                  to_bytes(want.id));
        if (e.alpha >= group.q || e.alpha != want.coefficient)
            return make_violation(ViolationKind::WrongCoefficient, sender, "coefficient for parent " + want.id,
                                  to_bytes(want.id));
    }
    for (const auto& e : token.entries) {
        const bool known = std::any_of(expected.begin(), expected.end(), [&](const auto& x) { return x.id == e.parent_id; });
        if (!known)
            return make_violation(ViolationKind::BadHelperSig, sender, "entry for unknown parent " + e.parent_id,
                                  to_bytes(e.parent_id));
    }
    if (token.entries.empty())
        return make_violation(ViolationKind::MissingEntry, sender, "empty token");
    std::vector<validity::Sigma> sigmas;
    std::vector<BigInt> alphas;
    for (const auto& e : token.entries) {
        sigmas.push_back(e.sigma);
        alphas.push_back(e.alpha);
    }
    if (validity::combine_validity(sigmas, alphas, group) != sigma_n)
        return make_violation(ViolationKind::SignatureCombineMismatch, sender, "combined signature differs from packet");
    return std::nullopt;
}

void encode_pip_token(ByteWriter& w, const PipTestToken& token, const Widths& widths) {
    if (token.entries.size() > 0xffff) throw std::length_error("token too large");
    w.put_u16(static_cast<std::uint16_t>(token.entries.size()));
    for (const auto& e : token.entries) {
        w.put_short_string(e.parent_id);
        write_fixed(w, e.alpha, widths.alpha);
        write_fixed(w, e.sigma.v, widths.sigma);
        if (e.helper.sig.size() != widths.sig) throw std::length_error("helper signature width");
        w.put_bytes(e.helper.sig);
    }
}

PipTestToken decode_pip_token(ByteReader& r, const Widths& widths) {
    PipTestToken t;
    const std::size_t count = r.u16();
    for (std::size_t i = 0; i < count; ++i) {
        PipEntry e;
        e.parent_id = r.short_string();
        e.alpha = from_bytes(r.bytes(widths.alpha));
        e.sigma.v = from_bytes(r.bytes(widths.sigma));
        auto sig = r.bytes(widths.sig);
        e.helper.sig.assign(sig.begin(), sig.end());
        t.entries.push_back(std::move(e));
    }
    return t;
}

}  // namespace rlnc::pip
