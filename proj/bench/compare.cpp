// Times the OpenMP kernels against their serial reference paths and checks
// both produce identical results. KKP_THREADS is flipped in-process, so run
// this binary alone.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "kkp/exact.hpp"
#include "kkp/fptas.hpp"
#include "kkp/generate.hpp"
#include "kkp/growth.hpp"
#include "kkp/ptas.hpp"

namespace {

using namespace kkp;
using Clock = std::chrono::steady_clock;

double run_ms(const std::function<void()>& fn) {
    const auto t0 = Clock::now();
    fn();
    return std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(Clock::now() -
                                                                                 t0)
        .count();
}

struct Row {
    const char* name;
    double serial_ms;
    double parallel_ms;
    bool equal;
};

template <typename Fn, typename Out>
Row compare(const char* name, Fn fn, Out& serial_out, Out& parallel_out,
            bool (*eq)(const Out&, const Out&)) {
    setenv("KKP_THREADS", "0", 1);
    const double serial_ms = run_ms([&] { serial_out = fn(); });
    unsetenv("KKP_THREADS");
    const double parallel_ms = run_ms([&] { parallel_out = fn(); });
    return {name, serial_ms, parallel_ms, eq(serial_out, parallel_out)};
}

} // namespace

int main() {
    std::printf("threads available: %d\n", omp_get_max_threads());
    std::printf("%-22s %12s %12s %9s %6s\n", "kernel", "serial_ms", "parallel_ms", "speedup",
                "equal");

    std::vector<Row> rows;

    {
        GeneratorSpec spec;
        spec.kind = GeneratorKind::Uniform;
        spec.n = 22;
        spec.k = 8;
        spec.seed = 11;
        const Instance inst = normalize(generate(spec).instance).instance;
        OracleResult a, b;
        rows.push_back(compare(
            "exact-enum n=22", [&] { return solve_exact_enum(inst); }, a, b,
            +[](const OracleResult& x, const OracleResult& y) {
                return x.opt_value == y.opt_value && x.witness.selected == y.witness.selected;
            }));
    }
    {
        // Depth 5 enumeration keeps the per-prefix completion loop busy.
        GeneratorSpec spec;
        spec.kind = GeneratorKind::Uniform;
        spec.n = 4000;
        spec.k = 7;
        spec.seed = 12;
        const Instance inst = normalize(generate(spec).instance).instance;
        SolveReport a, b;
        rows.push_back(compare(
            "ptas n=4000 k=7 eps=1/7", [&] { return ptas_solve(inst, make_rat(1, 7)); }, a, b,
            +[](const SolveReport& x, const SolveReport& y) {
                return x.value == y.value && x.item_ids == y.item_ids;
            }));
    }
    {
        GeneratorSpec spec;
        spec.kind = GeneratorKind::Uniform;
        spec.n = 30000;
        spec.k = 200;
        spec.seed = 13;
        const Instance inst = normalize(generate(spec).instance).instance;
        SolveReport a, b;
        rows.push_back(compare(
            "fptas n=30000 eps=1/8", [&] { return fptas_solve(inst, make_rat(1, 8)); }, a, b,
            +[](const SolveReport& x, const SolveReport& y) {
                return x.value == y.value && x.item_ids == y.item_ids;
            }));
    }
    {
        CountOptions opts;
        opts.collect_sums = false;
        CountReport a, b;
        rows.push_back(compare(
            "lattice count eps=1/12",
            [&] { return count_lattice(make_rat(1, 12), lattice_dim_limit(make_rat(1, 12)), opts); },
            a, b, +[](const CountReport& x, const CountReport& y) {
                return x.lattice_count == y.lattice_count;
            }));
    }

    bool all_equal = true;
    for (const Row& r : rows) {
        std::printf("%-22s %12.2f %12.2f %8.2fx %6s\n", r.name, r.serial_ms, r.parallel_ms,
                    r.serial_ms / std::max(r.parallel_ms, 1e-9), r.equal ? "yes" : "NO");
        all_equal = all_equal && r.equal;
    }
    return all_equal ? 0 : 1;
}
