#include "kkp/generate.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "kkp/exact.hpp"
#include "kkp/fptas.hpp"
#include "kkp/growth.hpp"
#include "kkp/lp_half.hpp"
#include "kkp/parallel.hpp"
#include "kkp/ptas.hpp"
#include "kkp/rng.hpp"

namespace kkp {

namespace {

std::int64_t derive_capacity(const GeneratorSpec& spec, const Instance& inst) {
    if (spec.c > 0) return spec.c;
    std::int64_t max_w = 1;
    for (const Item& it : inst.items) max_w = std::max(max_w, it.weight);
    return std::max(inst.total_weight() / 2, max_w);
}

void draw_weights(Instance& inst, const GeneratorSpec& spec, SplitMix64& rng) {
    require(spec.weight_lo >= 1 && spec.weight_hi >= spec.weight_lo, "bad weight range");
    for (Item& it : inst.items) it.weight = rng.range(spec.weight_lo, spec.weight_hi);
}

Generated tight_instance(const GeneratorSpec& spec, bool geometric) {
    require(spec.gamma >= 1, "tight generator needs gamma >= 1");
    require(spec.p_h >= 1, "tight generator needs an anchor value");
    require(spec.epsilon > 0 && spec.epsilon < 1, "epsilon must lie in (0,1)");
    const std::int64_t k = spec.k == 0 ? spec.gamma : spec.k;
    require(spec.gamma <= k, "inconsistent spec: gamma > k");

    const Rat base = spec.epsilon * spec.p_h / spec.gamma;
    std::vector<Rat> levels;
    if (geometric) {
        const Rat ratio = Rat(1) / (Rat(1) - spec.epsilon);
        Rat v = base;
        const Rat top(static_cast<long>(spec.p_h));
        while (v <= top) {
            levels.push_back(v);
            v *= ratio;
        }
    } else {
        const std::int64_t count = floor_i64(Rat(spec.gamma) / spec.epsilon);
        for (std::int64_t i = 1; i <= count; ++i) levels.push_back(base * i);
    }
    require(!levels.empty(), "tight construction has no profit levels");

    Int scale = 1;
    for (const Rat& v : levels) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), v.get_den_mpz_t());

    Generated out;
    out.scale = to_i64(scale);
    const Int anchor_z = Int(spec.p_h) * scale;
    require(anchor_z.fits_slong_p(), "scaling overflow: anchor too large");
    out.scaled_p_h = anchor_z.get_si();

    SplitMix64 rng(spec.seed);
    ItemId id = 0;
    for (const Rat& v : levels) {
        const Rat scaled = v * scale;
        internal_check(scaled.get_den() == 1, "scaled level is not integral");
        require(scaled.get_num().fits_slong_p() && scaled.get_num().get_si() <= 1'000'000'000,
                "scaling overflow: profit too large");
        for (std::int64_t t = 0; t < spec.gamma; ++t)
            out.instance.items.push_back({id++, scaled.get_num().get_si(), 1});
    }
    draw_weights(out.instance, spec, rng);
    out.instance.cardinality_bound = k;
    out.instance.capacity = derive_capacity(spec, out.instance);
    return out;
}

} // namespace

GeneratorKind generator_kind_from_name(const std::string& name) {
    if (name == "uniform") return GeneratorKind::Uniform;
    if (name == "weakly-correlated") return GeneratorKind::WeaklyCorrelated;
    if (name == "arith-tight") return GeneratorKind::ArithTight;
    if (name == "geo-tight") return GeneratorKind::GeoTight;
    if (name == "theorem4") return GeneratorKind::Theorem4;
    throw InputError("unknown generator kind '" + name + "'");
}

std::string generator_kind_name(GeneratorKind kind) {
    switch (kind) {
        case GeneratorKind::Uniform: return "uniform";
        case GeneratorKind::WeaklyCorrelated: return "weakly-correlated";
        case GeneratorKind::ArithTight: return "arith-tight";
        case GeneratorKind::GeoTight: return "geo-tight";
        case GeneratorKind::Theorem4: return "theorem4";
    }
    throw InternalError("unhandled generator kind");
}

Generated generate(const GeneratorSpec& spec) {
    switch (spec.kind) {
        case GeneratorKind::Uniform: {
            require(spec.n >= 1, "uniform generator needs n >= 1");
            require(spec.profit_lo >= 1 && spec.profit_hi >= spec.profit_lo, "bad profit range");
            Generated out;
            SplitMix64 rng(spec.seed);
            for (std::int64_t i = 0; i < spec.n; ++i) {
                Item it;
                it.id = static_cast<ItemId>(i);
                it.profit = rng.range(spec.profit_lo, spec.profit_hi);
                it.weight = rng.range(spec.weight_lo, spec.weight_hi);
                out.instance.items.push_back(it);
            }
            out.instance.cardinality_bound =
                spec.k > 0 ? spec.k : std::max<std::int64_t>(1, spec.n / 2);
            out.instance.capacity = derive_capacity(spec, out.instance);
            return out;
        }
        case GeneratorKind::WeaklyCorrelated: {
            require(spec.n >= 1, "generator needs n >= 1");
            require(spec.noise >= 0, "noise must be >= 0");
            Generated out;
            SplitMix64 rng(spec.seed);
            for (std::int64_t i = 0; i < spec.n; ++i) {
                Item it;
                it.id = static_cast<ItemId>(i);
                it.weight = rng.range(spec.weight_lo, spec.weight_hi);
                it.profit = std::max<std::int64_t>(1, it.weight + rng.range(-spec.noise, spec.noise));
                out.instance.items.push_back(it);
            }
            out.instance.cardinality_bound =
                spec.k > 0 ? spec.k : std::max<std::int64_t>(1, spec.n / 2);
            out.instance.capacity = derive_capacity(spec, out.instance);
            return out;
        }
        case GeneratorKind::ArithTight:
            return tight_instance(spec, false);
        case GeneratorKind::GeoTight:
            return tight_instance(spec, true);
        case GeneratorKind::Theorem4: {
            require(spec.p_h >= 1, "theorem4 generator needs an anchor value");
            require(spec.k >= 1, "theorem4 generator needs k");
            Generated out;
            out.instance = build_theorem4_instance(spec.epsilon, spec.p_h, spec.k, &out.scale);
            out.scaled_p_h = spec.p_h * out.scale;
            return out;
        }
    }
    throw InternalError("unhandled generator kind");
}

GeneratorSpec parse_generator_spec_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("bad generator spec: ") + e.what());
    }
    GeneratorSpec spec;
    require(j.contains("kind"), "generator spec needs a kind");
    spec.kind = generator_kind_from_name(j.at("kind").get<std::string>());
    if (j.contains("n")) spec.n = j.at("n").get<std::int64_t>();
    if (j.contains("k")) spec.k = j.at("k").get<std::int64_t>();
    if (j.contains("c")) spec.c = j.at("c").get<std::int64_t>();
    if (j.contains("profit_lo")) spec.profit_lo = j.at("profit_lo").get<std::int64_t>();
    if (j.contains("profit_hi")) spec.profit_hi = j.at("profit_hi").get<std::int64_t>();
    if (j.contains("weight_lo")) spec.weight_lo = j.at("weight_lo").get<std::int64_t>();
    if (j.contains("weight_hi")) spec.weight_hi = j.at("weight_hi").get<std::int64_t>();
    if (j.contains("noise")) spec.noise = j.at("noise").get<std::int64_t>();
    if (j.contains("gamma")) spec.gamma = j.at("gamma").get<std::int64_t>();
    if (j.contains("p_h")) spec.p_h = j.at("p_h").get<std::int64_t>();
    if (j.contains("eps")) spec.epsilon = parse_ratio(j.at("eps").get<std::string>());
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    return spec;
}

namespace {

struct BenchRun {
    std::string instance_id;
    std::string alg;
    std::string eps; // empty when not applicable
    std::size_t instance_idx;
};

std::string format_ratio(std::int64_t value, std::int64_t opt) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9f",
                  static_cast<double>(value) / static_cast<double>(opt));
    return buf;
}

} // namespace

std::string bench_suite(const std::string& suite_json) {
    nlohmann::json suite;
    try {
        suite = nlohmann::json::parse(suite_json);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("bad suite file: ") + e.what());
    }

    std::vector<Instance> instances;
    std::vector<std::string> ids;
    if (suite.contains("instances")) {
        std::size_t idx = 0;
        for (const auto& ispec : suite.at("instances")) {
            GeneratorSpec spec = parse_generator_spec_json(ispec.dump());
            Generated gen = generate(spec);
            instances.push_back(normalize(gen.instance).instance);
            ids.push_back(ispec.contains("id") ? ispec.at("id").get<std::string>()
                                               : "g" + std::to_string(idx));
            ++idx;
        }
    }
    std::vector<std::string> eps_list;
    if (suite.contains("eps"))
        for (const auto& e : suite.at("eps")) eps_list.push_back(e.get<std::string>());
    std::vector<std::string> algs;
    if (suite.contains("algs"))
        for (const auto& a : suite.at("algs")) algs.push_back(a.get<std::string>());

    std::vector<BenchRun> runs;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        for (const std::string& alg : algs) {
            if (alg == "ptas" || alg == "fptas") {
                require(!eps_list.empty(), "suite lists a scheme but no eps values");
                for (const std::string& e : eps_list) runs.push_back({ids[i], alg, e, i});
            } else {
                runs.push_back({ids[i], alg, "", i});
            }
        }
    }

    // Oracle values once per instance, where the enumeration accepts the size.
    std::vector<std::int64_t> opt(instances.size(), -1);
    for (std::size_t i = 0; i < instances.size(); ++i) {
        if (instances[i].n() <= 22) opt[i] = solve_exact_enum(instances[i]).opt_value;
    }

    std::vector<std::string> rows(runs.size());
    const int threads = thread_count();
#pragma omp parallel for num_threads(threads) schedule(dynamic, 1) if (threads > 1)
    for (std::int64_t r = 0; r < static_cast<std::int64_t>(runs.size()); ++r) {
        const BenchRun& run = runs[static_cast<std::size_t>(r)];
        const Instance& inst = instances[run.instance_idx];
        SolveReport rep;
        const auto t0 = std::chrono::steady_clock::now();
        if (run.alg == "ptas") {
            rep = ptas_solve(inst, parse_ratio(run.eps));
        } else if (run.alg == "fptas") {
            rep = fptas_solve(inst, parse_ratio(run.eps));
        } else if (run.alg == "half") {
            const HalfResult h = half_approx(inst);
            rep.value = h.value;
            rep.item_ids = h.solution.selected;
            rep.feasible = true;
        } else if (run.alg == "exact-enum") {
            const OracleResult o = solve_exact_enum(inst);
            rep.value = o.opt_value;
            rep.item_ids = o.witness.selected;
            rep.feasible = true;
        } else if (run.alg == "exact-dp") {
            const OracleResult o = solve_exact_dp(inst);
            rep.value = o.opt_value;
            rep.item_ids = o.witness.selected;
            rep.feasible = true;
        } else {
            throw InputError("unknown algorithm '" + run.alg + "' in suite");
        }
        if (rep.wall_ns == 0)
            rep.wall_ns = static_cast<std::uint64_t>(
                std::chrono::duration_cast<std::chrono::nanoseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count());

        std::ostringstream row;
        row << run.instance_id << ',' << run.alg << ',' << run.eps << ',' << rep.value << ',';
        const std::int64_t o = opt[run.instance_idx];
        if (o >= 0) row << o;
        row << ',';
        if (o > 0) row << format_ratio(rep.value, o);
        row << ',' << rep.wall_ns << ',';
        for (std::size_t ci = 0; ci < rep.counters.size(); ++ci) {
            if (ci) row << '|';
            row << rep.counters[ci].first << '=' << rep.counters[ci].second;
        }
        rows[static_cast<std::size_t>(r)] = row.str();
    }

    std::sort(rows.begin(), rows.end());
    std::ostringstream csv;
    csv << "instance_id,alg,eps,value,opt,ratio,wall_ns,counters\n";
    for (const std::string& row : rows) csv << row << '\n';
    return csv.str();
}

} // namespace kkp
