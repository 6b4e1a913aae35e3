#include <sys/resource.h>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kkp/exact.hpp"
#include "kkp/fptas.hpp"
#include "kkp/generate.hpp"
#include "kkp/growth.hpp"
#include "kkp/instance.hpp"
#include "kkp/lp_half.hpp"
#include "kkp/ptas.hpp"
#include "kkp/report.hpp"
#include "kkp/rounding.hpp"

namespace {

using namespace kkp;

std::int64_t max_rss_kb() {
    rusage usage{};
    getrusage(RUSAGE_SELF, &usage);
    return static_cast<std::int64_t>(usage.ru_maxrss);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit_report(const SolveReport& report, bool as_json) {
    if (as_json) {
        nlohmann::json j = nlohmann::json::parse(report.to_json());
        j["max_rss_kb"] = max_rss_kb();
        std::cout << j.dump() << '\n';
    } else {
        std::cout << report.to_text();
    }
}

SolveReport trivial_report(const std::string& alg, const Instance& inst) {
    SolveReport report;
    report.algorithm = alg;
    const Solution all = take_all(inst);
    report.value = all.profit_total;
    report.item_ids = all.selected;
    report.feasible = true;
    report.certified_lower_bound = all.profit_total;
    report.opt_if_known = all.profit_total;
    report.counters.emplace_back("trivial", 1);
    return report;
}

int run_solve(const std::string& input, const std::string& alg, const std::string& eps_text,
              bool as_json, const std::string& dump_pairs, bool residual_literal) {
    const Instance raw = read_instance_file(input);
    const Normalized norm = normalize(raw);
    const Instance& inst = norm.instance;

    SolveReport report;
    if (norm.log.trivially_solvable) {
        report = trivial_report(alg, inst);
    } else if (alg == "ptas") {
        require(!eps_text.empty(), "ptas needs --eps");
        PtasOptions opts;
        opts.literal_residual = residual_literal;
        report = ptas_solve(inst, parse_ratio(eps_text), opts);
    } else if (alg == "fptas") {
        require(!eps_text.empty(), "fptas needs --eps");
        FptasOptions opts;
        opts.dump_pairs_path = dump_pairs;
        report = fptas_solve(inst, parse_ratio(eps_text), opts);
    } else if (alg == "half") {
        const auto t0 = std::chrono::steady_clock::now();
        const HalfResult h = half_approx(inst);
        report.algorithm = "half";
        report.value = h.value;
        report.item_ids = h.solution.selected;
        report.feasible = true;
        report.certified_lower_bound = h.value;
        report.counters.emplace_back("p_max", h.p_max);
        report.wall_ns = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(
                std::chrono::steady_clock::now() - t0)
                .count());
    } else if (alg == "exact-enum" || alg == "exact-dp") {
        const auto t0 = std::chrono::steady_clock::now();
        const OracleResult o =
            alg == "exact-enum" ? solve_exact_enum(inst) : solve_exact_dp(inst);
        report.algorithm = alg;
        report.value = o.opt_value;
        report.item_ids = o.witness.selected;
        report.feasible = true;
        report.certified_lower_bound = o.opt_value;
        report.opt_if_known = o.opt_value;
        report.wall_ns = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(
                std::chrono::steady_clock::now() - t0)
                .count());
    } else {
        throw InputError("unknown algorithm '" + alg + "'");
    }
    check_report(report, inst);
    emit_report(report, as_json);
    return 0;
}

int run_reduce(const std::string& input, std::int64_t gamma, const std::string& eps_text) {
    const Instance raw = read_instance_file(input);
    const Normalized norm = normalize(raw);
    require(!norm.log.trivially_solvable, "instance is trivially solvable; nothing to reduce");
    const Instance& inst = norm.instance;
    require(gamma >= 1 && gamma <= inst.cardinality_bound,
            "gamma must lie in [1, k]");
    const Rat eps = parse_ratio(eps_text);
    const HalfResult anchor = half_approx(inst);
    const ReducedSet reduced = parallel_reduce(inst, {eps, gamma, anchor.value});

    nlohmann::json classes = nlohmann::json::array();
    for (const ReducedClass& cls : reduced.classes) {
        nlohmann::json kept = nlohmann::json::array();
        for (const Item& it : cls.kept) kept.push_back(it.id);
        classes.push_back({{"index", cls.class_index},
                           {"cap", cls.cap},
                           {"seen", cls.seen},
                           {"kept_ids", kept}});
    }
    const HybridSequence& seq = reduced.sequence;
    nlohmann::json j{{"eps", to_string(eps)},
                     {"gamma", gamma},
                     {"p_h", anchor.value},
                     {"a1", to_string(seq.base)},
                     {"arith_count", seq.arith_count},
                     {"alpha", seq.alpha},
                     {"beta", seq.beta},
                     {"psi", seq.psi},
                     {"total", reduced.total},
                     {"dropped_small", reduced.dropped_small},
                     {"dropped_caps", reduced.dropped_caps},
                     {"classes", classes}};
    std::cout << j.dump() << '\n';
    return 0;
}

int run_gen(const GeneratorSpec& spec, const std::string& out_path, const std::string& format) {
    const Generated gen = generate(spec);
    require(format == "text" || format == "json", "format must be text or json");
    write_instance_file(gen.instance, out_path, format == "json");
    nlohmann::json j{{"n", gen.instance.n()},
                     {"c", gen.instance.capacity},
                     {"k", gen.instance.cardinality_bound},
                     {"scale", gen.scale},
                     {"scaled_p_h", gen.scaled_p_h},
                     {"out", out_path}};
    std::cout << j.dump() << '\n';
    return 0;
}

int run_count(const std::string& eps_text, int dim, const std::string& csv_path,
              std::int64_t ceiling, bool no_sums) {
    const Rat eps = parse_ratio(eps_text);
    const int d_max = lattice_dim_limit(eps);
    const int upto = dim > 0 ? dim : d_max;

    std::ostringstream csv;
    csv << "eps,d,d_max,count,distinct,volume,expbound,injective\n";
    for (int d = 1; d <= upto; ++d) {
        CountOptions opts;
        opts.ceiling = ceiling;
        opts.collect_sums = !no_sums;
        const CountReport rep = count_lattice(eps, d, opts);
        csv << to_string(eps) << ',' << d << ',' << rep.d_max << ',' << rep.lattice_count << ',';
        if (rep.distinct_sums >= 0) csv << rep.distinct_sums;
        csv << ',';
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.10g", rep.volume_bound);
        csv << buf << ',';
        std::snprintf(buf, sizeof(buf), "%.10g", rep.exp_bound);
        csv << buf << ',';
        if (rep.distinct_sums >= 0) csv << (rep.injective ? "1" : "0");
        csv << '\n';
    }
    if (csv_path.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream out(csv_path, std::ios::binary);
        require(out.good(), "cannot write " + csv_path);
        out << csv.str();
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-item knapsack workbench"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "run one algorithm on an instance file");
    std::string solve_input, solve_alg, solve_eps, solve_dump_pairs;
    bool solve_json = false, solve_residual_literal = false;
    solve->add_option("--input", solve_input, "instance file (text or JSON)")->required();
    solve->add_option("--alg", solve_alg, "exact-enum|exact-dp|half|ptas|fptas")->required();
    solve->add_option("--eps", solve_eps, "accuracy as N/D");
    solve->add_flag("--json", solve_json, "emit the report as JSON");
    solve->add_option("--dump-pairs", solve_dump_pairs, "write the fptas pair table CSV");
    solve->add_flag("--residual-literal", solve_residual_literal,
                    "use the cruder k-ell completion bound in the ptas");

    // reduce
    auto* reduce = app.add_subcommand("reduce", "dump the reduced item set as JSON");
    std::string reduce_input, reduce_eps;
    std::int64_t reduce_gamma = 1;
    reduce->add_option("--input", reduce_input)->required();
    reduce->add_option("--gamma", reduce_gamma)->required();
    reduce->add_option("--eps", reduce_eps)->required();

    // gen
    auto* gen = app.add_subcommand("gen", "generate an instance file");
    GeneratorSpec spec;
    std::string gen_kind = "uniform", gen_out, gen_eps, gen_format = "text";
    gen->add_option("--kind", gen_kind, "uniform|weakly-correlated|arith-tight|geo-tight|theorem4");
    gen->add_option("--n", spec.n);
    gen->add_option("--k", spec.k);
    gen->add_option("--c", spec.c);
    gen->add_option("--pmin", spec.profit_lo);
    gen->add_option("--pmax", spec.profit_hi);
    gen->add_option("--wmin", spec.weight_lo);
    gen->add_option("--wmax", spec.weight_hi);
    gen->add_option("--noise", spec.noise);
    gen->add_option("--gamma", spec.gamma);
    gen->add_option("--ph", spec.p_h);
    gen->add_option("--eps", gen_eps);
    gen->add_option("--seed", spec.seed);
    gen->add_option("--out", gen_out)->required();
    gen->add_option("--format", gen_format, "text|json");

    // count
    auto* count = app.add_subcommand("count", "lattice growth experiments");
    std::string count_eps, count_csv;
    int count_dim = 0;
    std::int64_t count_ceiling = 1'000'000'000;
    bool count_no_sums = false;
    count->add_option("--eps", count_eps)->required();
    count->add_option("--dim", count_dim);
    count->add_option("--csv", count_csv);
    count->add_option("--ceiling", count_ceiling);
    count->add_flag("--no-sums", count_no_sums, "skip distinct-sum collection");

    // bench
    auto* bench = app.add_subcommand("bench", "run a suite and write a CSV report");
    std::string bench_suite_path, bench_out;
    bench->add_option("--suite", bench_suite_path)->required();
    bench->add_option("--out", bench_out)->required();

    try {
        app.parse(argc, argv);
        if (solve->parsed())
            return run_solve(solve_input, solve_alg, solve_eps, solve_json, solve_dump_pairs,
                             solve_residual_literal);
        if (reduce->parsed()) return run_reduce(reduce_input, reduce_gamma, reduce_eps);
        if (gen->parsed()) {
            spec.kind = generator_kind_from_name(gen_kind);
            if (!gen_eps.empty()) spec.epsilon = parse_ratio(gen_eps);
            return run_gen(spec, gen_out, gen_format);
        }
        if (count->parsed())
            return run_count(count_eps, count_dim, count_csv, count_ceiling, count_no_sums);
        if (bench->parsed()) {
            const std::string csv = kkp::bench_suite(slurp(bench_suite_path));
            std::ofstream out(bench_out, std::ios::binary);
            require(out.good(), "cannot write " + bench_out);
            out << csv;
            return 0;
        }
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e); // prints usage or help text
        return code == 0 ? 0 : 1;
    } catch (const kkp::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const kkp::InternalError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
}
