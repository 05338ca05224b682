// Parallel kernels against their serial references, plus payload-size ratios.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

#include "rlnc/sim/audit.hpp"
#include "rlnc/sim/sweep.hpp"
#include "rlnc/validity/scheme.hpp"

using namespace rlnc;
using clock_type = std::chrono::steady_clock;

static double time_ms(const std::function<void()>& f, int reps) {
    f();  // warm-up
    const auto t0 = clock_type::now();
    for (int i = 0; i < reps; ++i) f();
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count() / reps;
}

static void row(const char* name, double par, double ser, bool same) {
    std::printf("%-34s %10.3f %10.3f %8.2fx  %s\n", name, par, ser, ser / par, same ? "same" : "DIFFERENT");
}

int main() {
    std::printf("threads: %d\n\n", omp_get_max_threads());
    std::printf("%-34s %10s %10s %9s\n", "kernel", "omp ms", "serial ms", "speedup");
    Rng rng(7);

    {
        const auto& prof = validity::profile("test");
        const gf::PrimeField field(prof.group.q);
        std::vector<gf::CodedVector> vs;
        std::vector<BigInt> cs;
        for (int i = 0; i < 16; ++i) {
            gf::CodedVector v;
            for (int j = 0; j < 20000; ++j) v.payload.push_back(gf::random_element(field.modulus(), rng));
            for (int j = 0; j < 16; ++j) v.coding.push_back(gf::random_element(field.modulus(), rng));
            vs.push_back(std::move(v));
            cs.push_back(gf::random_nonzero(field.modulus(), rng));
        }
        gf::CodedVector a, b;
        const double par = time_ms([&] { a = gf::linear_combine(vs, cs, field); }, 5);
        const double ser = time_ms([&] { b = gf::serial::linear_combine(vs, cs, field); }, 5);
        row("linear_combine 16 x 20000", par, ser, a == b);
    }
    {
        const auto& prof = validity::profile("production");
        const auto master = crypto::keygen(rng);
        const std::size_t m = 64;
        std::vector<gf::CodedVector> originals;
        for (std::size_t j = 0; j < m; ++j) originals.push_back(gf::original_packet({1}, j, m));
        const auto params = validity::epoch_setup(master.sk, prof.group, originals, 1, rng);
        gf::CodedVector e;
        e.payload = {1};
        for (std::size_t j = 0; j < m; ++j) e.coding.push_back(gf::random_element(prof.group.q, rng));
        validity::Sigma a, b;
        const double par = time_ms([&] { a = validity::sign_validity(params, e); }, 5);
        const double ser = time_ms([&] { b = validity::serial::sign_validity(params, e); }, 5);
        row("sign_validity m=64, 1024-bit", par, ser, a == b);
    }
    {
        sim::SweepConfig sc;
        sc.nodes = 30;
        sc.edges = 200;
        sc.min_cut_from = 2;
        sc.min_cut_to = 4;
        sc.seeds = 2;
        sim::SweepResult a, b;
        const double par = time_ms([&] { a = sim::mode_sweep(sc); }, 1);
        const double ser = time_ms([&] { b = sim::serial::mode_sweep(sc); }, 1);
        row("mode_sweep 30 nodes, 6 trials", par, ser, a.rows == b.rows);
    }

    std::printf("\npayload independence, n=1000 vs n=10 (coding checks | full pipeline incl. validity)\n");
    for (auto proto : {pip::Protocol::Pip, pip::Protocol::LogPip}) {
        for (std::size_t d : {3u, 10u}) {
            const auto small = sim::time_verification(proto, d, 10, 15, 3);
            const auto large = sim::time_verification(proto, d, 1000, 15, 3);
            const auto ratio = [](auto a, auto b) { return static_cast<double>(a.count()) / static_cast<double>(b.count()); };
            std::printf("%-7s d=%-3zu coding %7.3f -> %7.3f ms (x%.2f) | full %7.3f -> %7.3f ms (x%.2f)\n",
                        std::string(to_string(proto)).c_str(), d,
                        std::chrono::duration<double, std::milli>(small.coding).count(),
                        std::chrono::duration<double, std::milli>(large.coding).count(), ratio(large.coding, small.coding),
                        std::chrono::duration<double, std::milli>(small.verify).count(),
                        std::chrono::duration<double, std::milli>(large.verify).count(), ratio(large.verify, small.verify));
        }
    }
    return 0;
}
