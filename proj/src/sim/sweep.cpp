#include "rlnc/sim/sweep.hpp"

#include <charconv>
#include <exception>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rlnc::sim {

Behavior mode_behavior(int mode) {
    switch (mode) {
        case 1: return {BehaviorKind::NonInnovative, 0};
        case 2: return {BehaviorKind::ForwardOnly, 0};
        case 3: return {BehaviorKind::Honest, 0};
        default: throw std::invalid_argument("mode must be 1, 2 or 3");
    }
}

namespace {

constexpr int kModes[] = {1, 2, 3};
constexpr const char* kHeader = "seed,min_cut,mode,sink_id,rank,detections";

std::size_t trial_count(const SweepConfig& c) {
    if (c.min_cut_from < 1 || c.min_cut_to < c.min_cut_from) throw std::invalid_argument("bad min-cut range");
    return (c.min_cut_to - c.min_cut_from + 1) * c.seeds;
}

struct Trial {
    std::vector<SweepRow> rows;
    std::optional<SweepFailure> failure;
};

std::size_t trial_cut(const SweepConfig& c, std::size_t trial) { return c.min_cut_from + trial / c.seeds; }
std::uint64_t trial_seed(const SweepConfig& c, std::size_t trial) { return c.base_seed + trial % c.seeds; }

std::vector<SweepRow> run_trial(const SweepConfig& c, std::size_t trial) {
    const std::size_t cut = trial_cut(c, trial);
    const std::uint64_t seed = trial_seed(c, trial);
    SimConfig sc;
    sc.protocol = c.protocol;
    sc.profile = c.profile;
    sc.m = c.m;
    sc.n = c.n;
    sc.rounds = c.rounds;
    sc.adjudicate = false;
    sc.seed = mix_seed(seed, cut);
    std::vector<SweepRow> rows;
    for (int mode : kModes) {
        const auto topo = random_topology(c.nodes, c.edges, cut, c.byzantine, seed, mode_behavior(mode));
        const auto report = run_simulation(topo, sc);
        for (const auto& s : report.sinks) {
            std::size_t det = 0;
            for (auto b : topo.byzantine()) det += report.detections_of(topo.nodes[b].id);
            rows.push_back({seed, cut, mode, s.id, s.rank, det});
        }
    }
    return rows;
}

// Infeasible topologies become per-seed failures; anything else propagates.
Trial guarded_trial(const SweepConfig& c, std::size_t trial) {
    try {
        return {run_trial(c, trial), std::nullopt};
    } catch (const std::invalid_argument& e) {
        return {{}, SweepFailure{trial_seed(c, trial), trial_cut(c, trial), e.what()}};
    } catch (const std::runtime_error& e) {
        return {{}, SweepFailure{trial_seed(c, trial), trial_cut(c, trial), e.what()}};
    }
}

SweepResult flatten(std::vector<Trial>& parts) {
    SweepResult out;
    for (auto& p : parts) {
        out.rows.insert(out.rows.end(), p.rows.begin(), p.rows.end());
        if (p.failure) out.failures.push_back(std::move(*p.failure));
    }
    return out;
}

template <typename T>
T parse_field(const std::string& s) {
    T v{};
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) throw std::runtime_error("csv: bad number '" + s + "'");
    return v;
}

}  // namespace

SweepResult mode_sweep(const SweepConfig& config) {
    const std::size_t trials = trial_count(config);
    std::vector<Trial> parts(trials);
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t t = 0; t < trials; ++t) {
        try {
            parts[t] = guarded_trial(config, t);
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return flatten(parts);
}

SweepResult serial::mode_sweep(const SweepConfig& config) {
    const std::size_t trials = trial_count(config);
    std::vector<Trial> parts(trials);
    for (std::size_t t = 0; t < trials; ++t) parts[t] = guarded_trial(config, t);
    return flatten(parts);
}

std::vector<SweepSummary> summarize(const std::vector<SweepRow>& rows) {
    struct Acc {
        double rank = 0, det = 0;
        std::size_t n = 0;
    };
    std::map<std::pair<std::size_t, int>, Acc> acc;
    for (const auto& r : rows) {
        auto& a = acc[{r.min_cut, r.mode}];
        a.rank += static_cast<double>(r.rank);
        a.det += static_cast<double>(r.detections);
        ++a.n;
    }
    std::vector<SweepSummary> out;
    for (const auto& [key, a] : acc)
        out.push_back({key.first, key.second, a.rank / static_cast<double>(a.n), a.det / static_cast<double>(a.n)});
    return out;
}

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << kHeader << '\n';
    for (const auto& r : rows)
        os << r.seed << ',' << r.min_cut << ',' << r.mode << ',' << r.sink_id << ',' << r.rank << ',' << r.detections
           << '\n';
}

std::vector<SweepRow> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kHeader) throw std::runtime_error("csv: missing header");
    std::vector<SweepRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
        if (f.size() != 6) throw std::runtime_error("csv: expected 6 fields: " + line);
        rows.push_back({parse_field<std::uint64_t>(f[0]), parse_field<std::size_t>(f[1]), parse_field<int>(f[2]), f[3],
                        parse_field<std::size_t>(f[4]), parse_field<std::size_t>(f[5])});
    }
    return rows;
}

void write_summary_csv(std::ostream& os, const std::vector<SweepSummary>& summary) {
    os << "min_cut,mode,mean_rank,mean_detections\n";
    for (const auto& s : summary) os << s.min_cut << ',' << s.mode << ',' << s.mean_rank << ',' << s.mean_detections << '\n';
}

}  // namespace rlnc::sim
