#include "rlnc/sim/audit.hpp"

#include <algorithm>
#include <stdexcept>

namespace rlnc::sim {

std::vector<SizeRow> size_audit(const std::string& profile, const std::vector<std::size_t>& parent_counts,
                                std::uint64_t seed) {
    const auto& prof = validity::profile(profile);
    const std::size_t sigma_bytes = prof.group.element_bytes();
    const auto hash = sigma_bytes * 8 == prof.hash.bits ? prof.hash : crypto::HashSpec::shake256(sigma_bytes * 8);

    std::vector<SizeRow> rows;
    for (auto proto : {pip::Protocol::Pip, pip::Protocol::LogPip}) {
        for (auto d : parent_counts) {
            FaninConfig cfg;
            cfg.parents = d;
            cfg.m = 2;
            cfg.n = 2;
            cfg.protocol = proto;
            cfg.profile = profile;
            cfg.hash = hash;
            cfg.seed = mix_seed(seed, d);
            Fanin f(cfg);
            const auto p = f.relay_packet({});
            const auto w = p.widths;

            SizeRow row{proto, d, w.sigma * 8u, w.sig * 8u, w.hash * 8u, 0, 0.0, 0, 0};
            row.formula_bits = pip::token_size_bits(proto, d, row.sigma_bits, row.sig_bits, row.hash_bits);
            row.ideal_bits = pip::token_size_bits_ideal(proto, d, row.sigma_bits, row.sig_bits, row.hash_bits);
            ByteWriter bw;
            if (proto == pip::Protocol::Pip) {
                const auto& tok = std::get<pip::PipTestToken>(p.token);
                pip::encode_pip_token(bw, tok, w);
                row.measured_bytes = bw.size() + p.helper.value().sig.size();
                row.framing_bytes = pip::pip_framing_bytes(tok, w);
            } else {
                const auto& tok = std::get<pip::LogPipTestToken>(p.token);
                const auto proof = f.relay().respond(f.child_id(), 0);
                if (!proof) throw std::logic_error("size_audit: no opening for leaf 0");
                pip::encode_proof(bw, *proof, w);
                row.measured_bytes = tok.root.h.size() + bw.size();
                row.framing_bytes = pip::proof_framing_bytes(w);
            }
            rows.push_back(row);
        }
    }
    return rows;
}

VerifyTiming time_verification(pip::Protocol protocol, std::size_t d, std::size_t n, std::size_t reps,
                               std::uint64_t seed, const std::string& profile) {
    if (reps == 0) throw std::invalid_argument("time_verification: reps must be >= 1");
    FaninConfig cfg;
    cfg.parents = d;
    cfg.n = n;
    cfg.protocol = protocol;
    cfg.profile = profile;
    cfg.seed = seed;
    Fanin f(cfg);
    using clock = std::chrono::steady_clock;
    std::vector<clock::duration> prep, verify, coding;
    const auto view = node::sender_view(f.registry(), f.relay().id());
    for (std::size_t i = 0; i < reps; ++i) {
        const auto t0 = clock::now();
        const auto p = f.relay_packet({});
        const auto t1 = clock::now();
        const auto r = f.verify_at_child(p);
        const auto t2 = clock::now();
        if (r.result) throw std::logic_error("time_verification: honest packet rejected: " + r.result->detail);
        node::LiveChallenges ch(f.rng(), cfg.challenges, f.responder());
        const node::VerifyInput in{f.system(), f.epoch(), nullptr, view, f.child_id()};
        const auto t3 = clock::now();
        const auto c = node::verify_coding(p, in, ch, nullptr);
        const auto t4 = clock::now();
        if (c) throw std::logic_error("time_verification: coding check rejected an honest packet");
        prep.push_back(t1 - t0);
        verify.push_back(t2 - t1);
        coding.push_back(t4 - t3);
    }
    const auto median = [](std::vector<clock::duration>& v) {
        std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2), v.end());
        return std::chrono::duration_cast<std::chrono::nanoseconds>(v[v.size() / 2]);
    };
    return {protocol, d, n, median(prep), median(verify), median(coding)};
}

}  // namespace rlnc::sim
