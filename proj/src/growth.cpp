#include "kkp/growth.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <vector>

#include "kkp/parallel.hpp"

namespace kkp {

namespace {

struct LatticeProblem {
    std::vector<Int> terms; // scaled: terms[i] = nu (de+nu)^i de^(d-1-i)
    Int budget;             // de^d; constraint is Σ c_i terms[i] < budget
    int dim = 0;
};

LatticeProblem scale_lattice(const Rat& epsilon, int dim) {
    const Int nu = epsilon.get_num();
    const Int de = epsilon.get_den();
    LatticeProblem prob;
    prob.dim = dim;
    Int grow = nu;        // nu (de+nu)^i
    Int budget = 1;
    std::vector<Int> shrink(static_cast<std::size_t>(dim)); // de^(d-1-i)
    for (int i = 0; i < dim; ++i) budget *= de;
    Int de_pow = 1;
    for (int i = dim - 1; i >= 0; --i) {
        shrink[static_cast<std::size_t>(i)] = de_pow;
        de_pow *= de;
    }
    for (int i = 0; i < dim; ++i) {
        prob.terms.push_back(grow * shrink[static_cast<std::size_t>(i)]);
        grow *= (de + nu);
    }
    prob.budget = budget;
    return prob;
}

struct DfsState {
    const LatticeProblem* prob;
    bool collect;
    std::int64_t ceiling;
    std::atomic<std::int64_t>* global_count;
    std::atomic<bool>* abort;

    std::int64_t local_count = 0;
    std::vector<Int> sums;

    void flush() {
        global_count->fetch_add(local_count, std::memory_order_relaxed);
        local_count = 0;
        if (global_count->load(std::memory_order_relaxed) > ceiling)
            abort->store(true, std::memory_order_relaxed);
    }

    // Counts vectors over coordinates [0, level] with `rem` budget left.
    void run(int level, const Int& rem, const Int& acc) {
        if (abort->load(std::memory_order_relaxed)) return;
        if (level < 0) {
            ++local_count;
            if (collect) sums.push_back(acc);
            if ((local_count & 0x3FFF) == 0) flush();
            return;
        }
        const Int& t = prob->terms[static_cast<std::size_t>(level)];
        Int r = rem;
        Int a = acc;
        while (r > 0) {
            run(level - 1, r, a);
            r -= t;
            a += t;
        }
    }
};

} // namespace

int lattice_dim_limit(const Rat& epsilon) {
    require(epsilon > 0 && epsilon < 1, "epsilon must lie in (0,1)");
    const Int nu = epsilon.get_num();
    const Int de = epsilon.get_den();
    // smallest m with nu (de+nu)^m >= de^(m+1)
    int m = 0;
    Int lhs = nu;
    Int rhs = de;
    while (lhs < rhs) {
        lhs *= (de + nu);
        rhs *= de;
        ++m;
    }
    return m;
}

CountReport count_lattice(const Rat& epsilon, int dim, const CountOptions& options) {
    require(epsilon > 0 && epsilon < 1, "epsilon must lie in (0,1)");
    require(dim >= 1, "dimension must be >= 1");

    CountReport rep;
    rep.epsilon = epsilon;
    rep.dim = dim;
    rep.d_max = lattice_dim_limit(epsilon);
    rep.volume_bound = tetrahedron_volume(epsilon, dim);
    rep.exp_bound = exponential_bound(epsilon).second;

    // Coordinates at or beyond d_max are forced to zero, so enumerating the
    // truncated problem counts the same set.
    const int d_eff = std::max(1, std::min(dim, rep.d_max));
    LatticeProblem prob = scale_lattice(epsilon, d_eff);

    std::atomic<std::int64_t> global_count{0};
    std::atomic<bool> abort{false};

    // Frontier of partial assignments over the top coordinates, expanded until
    // there is enough parallel slack.
    struct Node {
        int level;
        Int rem, acc;
    };
    std::vector<Node> frontier{{d_eff - 1, prob.budget, Int(0)}};
    const int threads = thread_count();
    while (static_cast<int>(frontier.size()) < 8 * threads) {
        // Expand the deepest-level node list by one coordinate.
        bool expandable = false;
        for (const Node& n : frontier)
            if (n.level >= 0) expandable = true;
        if (!expandable) break;
        std::vector<Node> next;
        for (Node& n : frontier) {
            if (n.level < 0) {
                next.push_back(std::move(n));
                continue;
            }
            const Int& t = prob.terms[static_cast<std::size_t>(n.level)];
            Int r = n.rem;
            Int a = n.acc;
            while (r > 0) {
                next.push_back({n.level - 1, r, a});
                r -= t;
                a += t;
            }
        }
        frontier = std::move(next);
        require(static_cast<std::int64_t>(frontier.size()) <= options.ceiling,
                "lattice frontier exceeded the ceiling");
    }

    std::vector<DfsState> states(
        static_cast<std::size_t>(threads),
        DfsState{&prob, options.collect_sums, options.ceiling, &global_count, &abort});

#pragma omp parallel for num_threads(threads) schedule(dynamic, 1) if (threads > 1)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(frontier.size()); ++i) {
        DfsState& st = states[static_cast<std::size_t>(omp_get_thread_num())];
        const Node& n = frontier[static_cast<std::size_t>(i)];
        st.run(n.level, n.rem, n.acc);
    }

    std::int64_t total = global_count.load();
    for (DfsState& st : states) total += st.local_count;
    if (abort.load() || total > options.ceiling) throw CeilingExceeded(total);

    rep.lattice_count = total;
    if (options.collect_sums) {
        std::vector<Int> all;
        all.reserve(static_cast<std::size_t>(total));
        for (DfsState& st : states)
            all.insert(all.end(), std::make_move_iterator(st.sums.begin()),
                       std::make_move_iterator(st.sums.end()));
        std::sort(all.begin(), all.end());
        rep.distinct_sums =
            static_cast<std::int64_t>(std::unique(all.begin(), all.end()) - all.begin());
        rep.injective = rep.distinct_sums == rep.lattice_count;
    }
    return rep;
}

double tetrahedron_volume(const Rat& epsilon, int dim) {
    require(epsilon > 0 && epsilon < 1, "epsilon must lie in (0,1)");
    require(dim >= 1, "dimension must be >= 1");
    Rat denom = 1;
    for (int i = 2; i <= dim; ++i) denom *= i; // d!
    denom *= pow_rat(epsilon, static_cast<std::uint64_t>(dim));
    denom *= pow_rat(Rat(1) + epsilon,
                     static_cast<std::uint64_t>(dim) * static_cast<std::uint64_t>(dim - 1) / 2);
    return to_double(Rat(1) / denom);
}

std::pair<int, double> exponential_bound(const Rat& epsilon) {
    require(epsilon > 0 && epsilon < 1, "epsilon must lie in (0,1)");
    const BoundConstants k;
    const std::int64_t d = floor_i64(make_rat(2784, 10000) / epsilon);
    const double bound = k.c * std::exp(k.b / to_double(epsilon));
    return {static_cast<int>(std::max<std::int64_t>(1, d)), bound};
}

bool injectivity_check(const Rat& epsilon, int dim) {
    CountOptions opts;
    opts.collect_sums = true;
    const CountReport rep = count_lattice(epsilon, dim, opts);
    return rep.injective;
}

Instance build_theorem4_instance(const Rat& epsilon, std::int64_t p_h, std::int64_t k,
                                 std::int64_t* scale_out) {
    require(epsilon > 0 && epsilon < 1, "epsilon must lie in (0,1)");
    require(p_h >= 1, "anchor value must be >= 1");
    const Int inv_ceil = -floor_int(-(Rat(1) / epsilon));
    require(k >= to_i64(inv_ceil), "cardinality bound below ⌈1/eps⌉");

    const std::int64_t lambda = std::min<std::int64_t>(k, floor_i64(Rat(2) / epsilon));
    const Rat base = epsilon * p_h / lambda;
    const Rat ratio = Rat(1) / (Rat(1) - epsilon);
    const Rat anchor(static_cast<long>(p_h));

    std::vector<Rat> levels;
    Rat value = base;
    while (value <= anchor) {
        levels.push_back(value);
        value *= ratio;
    }
    internal_check(!levels.empty(), "no geometric levels at or below the anchor");

    Int scale = 1;
    for (const Rat& v : levels) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), v.get_den_mpz_t());

    Instance inst;
    const Int cap_z = Int(p_h) * scale;
    require(cap_z.fits_slong_p() && cap_z.get_si() <= 1'000'000'000'000'000,
            "scaling overflow: capacity too large");
    inst.capacity = cap_z.get_si();
    inst.cardinality_bound = k;

    ItemId id = 0;
    for (const Rat& v : levels) {
        const Rat scaled = v * scale;
        internal_check(scaled.get_den() == 1, "scaled level is not integral");
        const Int value_z = scaled.get_num();
        require(value_z.fits_slong_p() && value_z.get_si() <= 1'000'000'000,
                "scaling overflow: item value too large");
        const std::int64_t pv = value_z.get_si();
        const std::int64_t copies = inst.capacity / pv; // ⌊P^H/a_i⌋ after scaling
        for (std::int64_t t = 0; t < copies; ++t) {
            inst.items.push_back({id++, pv, pv});
        }
    }
    if (scale_out != nullptr) *scale_out = to_i64(scale);
    return inst;
}

} // namespace kkp
