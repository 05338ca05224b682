#include "rlnc/sim/adversary.hpp"

#include <stdexcept>

namespace rlnc::sim {

std::optional<std::vector<BigInt>> non_innovative_coefficients(const std::vector<gf::CodedVector>& inputs,
                                                               const gf::Matrix& target, const gf::PrimeField& field,
                                                               Rng& rng) {
    if (inputs.empty() || target.empty()) return std::nullopt;
    gf::Matrix rows;
    for (const auto& v : inputs) rows.push_back(v.coding);
    for (const auto& t : target) rows.push_back(t);
    const auto basis = gf::left_null_space(rows, field);
    if (basis.empty()) return std::nullopt;
    const std::size_t k = inputs.size(), m = inputs.front().m();
    for (int attempt = 0; attempt < 16; ++attempt) {
        std::vector<BigInt> x(k, 0);
        for (const auto& b : basis) {
            const BigInt r = gf::random_element(field.modulus(), rng);
            for (std::size_t i = 0; i < k; ++i) x[i] = field.add(x[i], field.mul(r, b[i]));
        }
        bool nonzero = false;
        for (std::size_t j = 0; j < m && !nonzero; ++j) {
            BigInt acc = 0;
            for (std::size_t i = 0; i < k; ++i) acc += x[i] * inputs[i].coding[j];
            nonzero = field.reduce(acc) != 0;
        }
        if (nonzero) return x;
    }
    return std::nullopt;
}

node::Packet adversarial_packet(const Behavior& b, const AdversaryInput& in) {
    auto& nd = in.node;
    if (in.inputs.empty()) throw std::invalid_argument("adversarial_packet: no inputs");
    if (b.kind == BehaviorKind::Honest || b.kind == BehaviorKind::ReplayOld) return nd.code_honest(in.child, in.inputs);

    const auto& ep = *nd.epoch();
    const gf::PrimeField field(ep.group.q);
    const std::size_t k = in.inputs.size();
    const std::size_t t = b.target % k;
    const bool pip = nd.system().protocol == pip::Protocol::Pip;

    std::vector<BigInt> star;
    std::vector<gf::CodedVector> vectors;
    std::vector<validity::Sigma> sigmas;
    for (const auto* p : in.inputs) {
        star.push_back(nd.coefficient(p->sender, in.child));
        vectors.push_back(p->e);
        sigmas.push_back(p->sigma);
    }
    const auto entry = [&](std::size_t i, BigInt alpha) {
        const auto* p = in.inputs[i];
        return pip::ParentContribution{p->sender, std::move(alpha), p->sigma, p->helper.value_or(pip::HelperToken{})};
    };
    const auto emit = [&](const std::vector<BigInt>& code, std::vector<pip::ParentContribution> entries) {
        auto e = gf::linear_combine(vectors, code, field);
        auto sigma = validity::combine_validity(sigmas, code, ep.group);
        return nd.emit(in.child, std::move(e), std::move(sigma), std::move(entries));
    };
    const auto all_entries = [&](const std::vector<BigInt>& alphas) {
        std::vector<pip::ParentContribution> out;
        for (std::size_t i = 0; i < k; ++i) out.push_back(entry(i, alphas[i]));
        return out;
    };
    const auto forward = [&]() {
        std::vector<BigInt> code(k, 0);
        code[0] = 1;
        if (pip) return emit(code, {entry(0, 1)});
        return emit(code, all_entries(code));
    };

    switch (b.kind) {
        case BehaviorKind::SkipParent: {
            auto code = star;
            code[t] = 0;
            if (!pip) return emit(code, all_entries(code));
            std::vector<pip::ParentContribution> entries;
            for (std::size_t i = 0; i < k; ++i)
                if (i != t) entries.push_back(entry(i, star[i]));
            return emit(code, std::move(entries));
        }
        case BehaviorKind::ZeroCoefficient: {
            auto code = star;
            code[t] = 0;
            return emit(code, all_entries(code));
        }
        case BehaviorKind::WrongCoefficient: {
            auto code = star;
            code[t] = field.add(code[t], 1);
            if (code[t] == 0) code[t] = 1;
            if (code[t] == star[t]) code[t] = field.add(code[t], 1);
            return emit(code, all_entries(code));
        }
        case BehaviorKind::ForgeToken: {
            auto code = star;
            code[t] = 0;
            auto entries = all_entries(star);
            entries[t].sigma = validity::identity_sigma();
            entries[t].helper.sig.assign(crypto::kSignatureBytes, 0);
            in.rng.fill(entries[t].helper.sig);
            return emit(code, std::move(entries));
        }
        case BehaviorKind::ForwardOnly: return forward();
        case BehaviorKind::NonInnovative: {
            auto x = non_innovative_coefficients(vectors, in.downstream_span, field, in.rng);
            if (!x) return forward();
            return emit(*x, all_entries(*x));
        }
        case BehaviorKind::Honest:
        case BehaviorKind::ReplayOld: break;
    }
    return nd.code_honest(in.child, in.inputs);
}

}  // namespace rlnc::sim
