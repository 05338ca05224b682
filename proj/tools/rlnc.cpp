// rlnc: demos, simulations, size audits and micro-benchmarks.
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rlnc/sim/audit.hpp"
#include "rlnc/sim/sweep.hpp"

using namespace rlnc;

namespace {

struct Options {
    std::string protocol = "pip";
    std::string topology = "random";
    std::size_t nodes = 50;
    std::size_t edges = 1000;
    std::string mincut = "1-10";
    std::size_t byzantine = 1;
    std::size_t packets = 5;
    std::size_t rounds = 0;
    std::size_t trials = 20;
    std::uint64_t seed = 1;
    std::size_t challenges = 1;
    std::string out;
    std::string profile = "test";
};

std::string effective_profile(const Options& o) {
    if (const char* env = std::getenv("RLNC_PROFILE"); env && *env) return env;
    return o.profile;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& s) {
    const auto dash = s.find('-');
    try {
        if (dash == std::string::npos) {
            const auto v = std::stoul(s);
            return {v, v};
        }
        return {std::stoul(s.substr(0, dash)), std::stoul(s.substr(dash + 1))};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--mincut", "expected N or A-B, got " + s);
    }
}

void print_sinks(std::ostream& os, const std::string& label, const sim::TransmissionReport& r) {
    os << label << ':';
    for (const auto& s : r.sinks) os << ' ' << s.id << " rank=" << s.rank;
    os << '\n';
}

int cmd_demo(const Options& o) {
    const auto proto = pip::protocol_from_string(o.protocol);
    if (proto == pip::Protocol::None) {
        std::cerr << "demo: --protocol must be pip or logpip\n";
        return 2;
    }
    sim::SimConfig cfg;
    cfg.profile = effective_profile(o);
    cfg.m = 2;
    cfg.seed = o.seed;
    cfg.challenges = o.challenges;

    auto topo = sim::butterfly_topology();
    const auto n1 = topo.index_of("N1");
    std::cout << "butterfly: S -> R1,R2 -> N1 -> N4 -> N2,N3; R1 -> N2; R2 -> N3\n";

    cfg.protocol = pip::Protocol::None;
    const auto honest = sim::run_simulation(topo, cfg);
    print_sinks(std::cout, "1. all honest, no verification", honest);

    topo.nodes[n1].behavior = {sim::BehaviorKind::ForwardOnly, 0};
    const auto forwarded = sim::run_simulation(topo, cfg);
    print_sinks(std::cout, "2. N1 forwards only, no verification", forwarded);

    cfg.protocol = proto;
    const auto checked = sim::run_simulation(topo, cfg);
    print_sinks(std::cout, "3. N1 forwards only, " + std::string(to_string(proto)), checked);
    bool guilty = false;
    for (const auto& d : checked.detections) {
        std::cout << "   " << d.verifier << " detected " << d.culprit << ": " << to_string(d.kind);
        if (d.ruling) {
            std::cout << ", misbehavior proof " << to_string(*d.ruling);
            guilty |= *d.ruling == node::Ruling::Guilty && d.culprit == "N1";
        }
        std::cout << '\n';
    }

    bool ok = guilty;
    for (const auto& s : honest.sinks) ok &= s.rank == 2;
    ok &= forwarded.sink("N2").rank + forwarded.sink("N3").rank == 3;
    if (!ok) std::cerr << "demo: unexpected outcome\n";
    return ok ? 0 : 1;
}

sim::Topology load_topology_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open topology file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return sim::parse_topology(ss.str());
}

void emit_rows(const Options& o, const std::vector<sim::SweepRow>& rows) {
    if (o.out.empty()) return;
    std::ofstream f(o.out);
    if (!f) throw std::runtime_error("cannot write " + o.out);
    sim::write_csv(f, rows);
}

int cmd_simulate(const Options& o) {
    const auto proto = pip::protocol_from_string(o.protocol);
    const auto profile = effective_profile(o);
    std::vector<sim::SweepRow> rows;

    if (o.topology == "random") {
        const auto [lo, hi] = parse_range(o.mincut);
        sim::SweepConfig sc;
        sc.nodes = o.nodes;
        sc.edges = o.edges;
        sc.m = o.packets;
        sc.min_cut_from = lo;
        sc.min_cut_to = hi;
        sc.seeds = o.trials;
        sc.base_seed = o.seed;
        sc.byzantine = o.byzantine;
        sc.rounds = o.rounds;
        sc.protocol = proto;
        sc.profile = profile;
        auto result = sim::mode_sweep(sc);
        for (const auto& f : result.failures)
            std::cerr << "seed " << f.seed << " min-cut " << f.min_cut << ": " << f.reason << '\n';
        rows = std::move(result.rows);
    } else {
        sim::Topology topo;
        if (o.topology == "butterfly") {
            topo = sim::butterfly_topology();
        } else {
            try {
                topo = load_topology_file(o.topology);
            } catch (const sim::TopologyParseError& e) {
                std::cerr << o.topology << ':' << e.line() << ": " << e.what() << '\n';
                return 2;
            }
        }
        sim::SimConfig cfg;
        cfg.protocol = proto;
        cfg.profile = profile;
        cfg.m = o.packets;
        cfg.rounds = o.rounds;
        cfg.challenges = o.challenges;
        cfg.adjudicate = false;
        const bool butterfly = o.topology == "butterfly";
        for (std::size_t t = 0; t < o.trials; ++t) {
            cfg.seed = o.seed + t;
            for (int mode : butterfly ? std::vector<int>{1, 2, 3} : std::vector<int>{0}) {
                auto run = topo;
                if (butterfly) run.nodes[run.index_of("N1")].behavior = sim::mode_behavior(mode);
                const auto report = sim::run_simulation(run, cfg);
                std::size_t det = 0;
                for (auto b : run.byzantine()) det += report.detections_of(run.nodes[b].id);
                for (const auto& s : report.sinks)
                    rows.push_back({cfg.seed, sim::min_cut(run, run.source(), run.index_of(s.id)), mode, s.id, s.rank,
                                    det});
            }
        }
    }
    emit_rows(o, rows);
    sim::write_summary_csv(std::cout, sim::summarize(rows));
    return 0;
}

int cmd_sizes(const Options& o) {
    bool all_match = true;
    std::cout << "closed forms with |sig| = 320, |h| = 160:\n";
    for (std::size_t sigma : {160u, 1024u}) {
        for (auto d : sim::kAuditParentCounts) {
            const auto pip_bits = pip::token_size_bits(pip::Protocol::Pip, d, sigma, 320, 160);
            const auto log_bits = pip::token_size_bits(pip::Protocol::LogPip, d, sigma, 320, 160);
            const bool ok = pip_bits == d * (sigma + 320) + 320 &&
                            log_bits == 480 + sigma + 2 * sigma * pip::ceil_log2(d);
            all_match &= ok;
            std::cout << "  |sigma|=" << std::setw(4) << sigma << " d=" << std::setw(2) << d << "  pip=" << pip_bits
                      << "  logpip=" << log_bits << " (ceil log2 d = " << pip::ceil_log2(d) << ", real log2: "
                      << pip::token_size_bits_ideal(pip::Protocol::LogPip, d, sigma, 320, 160) << ")"
                      << (ok ? "" : "  MISMATCH") << '\n';
        }
    }
    std::cout << "\nmeasured tokens (Ed25519, |sig| = 512):\n";
    std::cout << "protocol,d,sigma_bits,hash_bits,formula_bits,ideal_bits,measured_bytes,framing_bytes,match\n";
    for (const auto& profile : {std::string("test"), std::string("production")}) {
        for (const auto& r : sim::size_audit(profile, sim::kAuditParentCounts, o.seed)) {
            all_match &= r.match();
            std::cout << to_string(r.protocol) << ',' << r.d << ',' << r.sigma_bits << ',' << r.hash_bits << ','
                      << r.formula_bits << ',' << r.ideal_bits << ',' << r.measured_bytes << ',' << r.framing_bytes
                      << ',' << (r.match() ? "ok" : "MISMATCH") << '\n';
        }
    }
    return all_match ? 0 : 1;
}

int cmd_bench(const Options& o) {
    const auto ms = [](std::chrono::nanoseconds t) { return std::chrono::duration<double, std::milli>(t).count(); };
    const auto profile = effective_profile(o);
    std::cout << "protocol,d,n,prep_ms,verify_ms,coding_ms,coding_ratio_vs_n10\n";
    std::vector<std::size_t> ds;
    for (std::size_t d = 1; d <= 15; ++d) ds.push_back(d);
    ds.push_back(50);
    for (auto proto : {pip::Protocol::Pip, pip::Protocol::LogPip}) {
        for (auto d : ds) {
            double base = 0;
            for (std::size_t n : {10u, 100u, 1000u}) {
                const auto t = sim::time_verification(proto, d, n, 5, o.seed, profile);
                if (n == 10) base = ms(t.coding);
                std::cout << to_string(proto) << ',' << d << ',' << n << ',' << std::fixed << std::setprecision(3)
                          << ms(t.prep) << ',' << ms(t.verify) << ',' << ms(t.coding) << ',' << ms(t.coding) / base
                          << '\n'
                          << std::defaultfloat;
            }
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random linear network coding with verifiable coding (PIP / Log-PIP)"};
    app.require_subcommand(1);
    Options o;

    const auto common = [&o](CLI::App* sc) {
        sc->add_option("--protocol", o.protocol, "pip, logpip or none")
            ->check(CLI::IsMember({"pip", "logpip", "none"}));
        sc->add_option("--seed", o.seed, "RNG seed");
        sc->add_option("--profile", o.profile, "group size profile (RLNC_PROFILE overrides)")
            ->check(CLI::IsMember({"toy", "test", "production"}));
        sc->add_option("--challenges", o.challenges, "Log-PIP challenges per packet")->check(CLI::PositiveNumber);
    };

    auto* demo = app.add_subcommand("demo", "butterfly walkthrough: throughput loss and its detection");
    common(demo);

    auto* simulate = app.add_subcommand("simulate", "throughput sweep over adversary modes; CSV output");
    common(simulate);
    simulate->add_option("--topology", o.topology, "butterfly, random, or a topology file");
    simulate->add_option("--nodes", o.nodes, "random topology node count");
    simulate->add_option("--edges", o.edges, "random topology edge count");
    simulate->add_option("--mincut", o.mincut, "min-cut N or range A-B");
    simulate->add_option("--byzantine", o.byzantine, "Byzantine nodes on the cut");
    simulate->add_option("--packets", o.packets, "source packets per epoch (m)")->check(CLI::PositiveNumber);
    simulate->add_option("--rounds", o.rounds, "time steps (0 = diameter + m)");
    simulate->add_option("--trials", o.trials, "seeds per point")->check(CLI::PositiveNumber);
    simulate->add_option("--out", o.out, "per-trial CSV path");

    auto* sizes = app.add_subcommand("sizes", "token size formulas against serialized tokens");
    sizes->add_option("--seed", o.seed, "RNG seed");

    auto* bench = app.add_subcommand("bench", "prep and verification timings across payload sizes");
    common(bench);

    CLI11_PARSE(app, argc, argv);
    try {
        if (*demo) return cmd_demo(o);
        if (*simulate) return cmd_simulate(o);
        if (*sizes) return cmd_sizes(o);
        if (*bench) return cmd_bench(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
