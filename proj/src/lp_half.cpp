#include "kkp/lp_half.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

namespace kkp {
namespace {

using I128 = __int128;

Int int_from_i128(I128 v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    Int r = static_cast<std::uint64_t>(u >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(u);
    if (neg) r = -r;
    return r;
}

struct Pool {
    std::vector<std::int64_t> p, w;
    std::vector<ItemId> id;
    std::int64_t c = 0;
    std::int64_t k = 0;

    int n() const { return static_cast<int>(p.size()); }
};

// Optimal face of  max Σ(p-mu)x : wx <= c, 0 <= x <= 1  at one penalty mu.
struct Face {
    Rat g;            // Lagrangian value, including + mu*k
    Rat n_min, n_max; // total-mass range across the face
    bool capacity_tight = false;
    Rat rho;                 // critical adjusted ratio (inner dual u)
    std::vector<int> strict; // positions taken fully in every face point
    std::vector<int> ties;   // boundary positions, sorted by (weight, id)
    std::int64_t strict_weight = 0;
    std::int64_t strict_count = 0;
    std::int64_t fill_weight = 0; // weight left for the ties (integer, exact)
};

// Mass needed to absorb exactly `fill` weight from the tie set, filling
// lightest-first (maximal mass) or heaviest-first (minimal mass).
Rat tie_fill_mass(const Pool& pool, const std::vector<int>& ties, std::int64_t fill,
                  bool lightest_first, bool cap_at_all) {
    Rat mass = 0;
    std::int64_t used = 0;
    const int m = static_cast<int>(ties.size());
    for (int t = 0; t < m; ++t) {
        const int pos = lightest_first ? ties[t] : ties[m - 1 - t];
        const std::int64_t wt = pool.w[pos];
        if (used + wt <= fill) {
            used += wt;
            mass += 1;
        } else {
            mass += make_rat(fill - used, wt);
            return mass;
        }
    }
    internal_check(cap_at_all || used == fill, "tie fill fell short of target weight");
    return mass;
}

template <typename Q, typename Cross>
Face eval_face_impl(const Pool& pool, const Rat& mu, const std::vector<Q>& qn,
                    const Int& den, Cross cross) {
    Face f;
    const int n = pool.n();
    std::vector<int> positive;
    std::vector<int> zero;
    positive.reserve(n);
    for (int j = 0; j < n; ++j) {
        if (qn[j] > 0) positive.push_back(j);
        else if (qn[j] == 0) zero.push_back(j);
    }
    auto ratio_order = [&](int a, int b) {
        const int s = cross(a, b); // sign of q_a*w_b - q_b*w_a
        if (s != 0) return s > 0;
        return pool.id[a] < pool.id[b];
    };
    std::sort(positive.begin(), positive.end(), ratio_order);

    std::int64_t acc_w = 0;
    int split = -1;
    for (std::size_t t = 0; t < positive.size(); ++t) {
        const int pos = positive[t];
        if (acc_w + pool.w[pos] > pool.c) {
            split = static_cast<int>(t);
            break;
        }
        acc_w += pool.w[pos];
    }

    const auto weight_order = [&](int a, int b) {
        if (pool.w[a] != pool.w[b]) return pool.w[a] < pool.w[b];
        return pool.id[a] < pool.id[b];
    };

    Q strict_q_sum{0};
    if (split < 0) {
        // Every positive item fits: boundary is the zero-adjusted-profit set.
        f.capacity_tight = false;
        f.rho = 0;
        f.strict = positive;
        for (int pos : f.strict) {
            f.strict_weight += pool.w[pos];
            strict_q_sum += qn[pos];
        }
        f.strict_count = static_cast<std::int64_t>(f.strict.size());
        f.fill_weight = pool.c - f.strict_weight;
        f.ties = zero;
        std::sort(f.ties.begin(), f.ties.end(), weight_order);
        f.n_min = f.strict_count;
        f.n_max = Rat(static_cast<long>(f.strict_count)) +
                  tie_fill_mass(pool, f.ties, f.fill_weight, true, true);
    } else {
        f.capacity_tight = true;
        // Expand the ratio-tie group around the split item; it is contiguous.
        int lo = split, hi = split + 1;
        while (lo > 0 && cross(positive[lo - 1], positive[split]) == 0) --lo;
        while (hi < static_cast<int>(positive.size()) &&
               cross(positive[hi], positive[split]) == 0)
            ++hi;
        f.strict.assign(positive.begin(), positive.begin() + lo);
        f.ties.assign(positive.begin() + lo, positive.begin() + hi);
        std::sort(f.ties.begin(), f.ties.end(), weight_order);
        for (int pos : f.strict) {
            f.strict_weight += pool.w[pos];
            strict_q_sum += qn[pos];
        }
        f.strict_count = static_cast<std::int64_t>(f.strict.size());
        f.fill_weight = pool.c - f.strict_weight;
        const int sp = positive[split];
        f.rho = Rat(Int(qn[sp]), Int(pool.w[sp]) * den);
        f.rho.canonicalize();
        f.n_min = Rat(static_cast<long>(f.strict_count)) +
                  tie_fill_mass(pool, f.ties, f.fill_weight, false, false);
        f.n_max = Rat(static_cast<long>(f.strict_count)) +
                  tie_fill_mass(pool, f.ties, f.fill_weight, true, false);
    }

    Rat strict_sum(Int(strict_q_sum), den);
    strict_sum.canonicalize();
    f.g = strict_sum + f.rho * f.fill_weight + mu * pool.k;
    return f;
}

// Specialization glue: Q = int64 with __int128 cross products when the
// penalty's numerator/denominator are small, exact big integers otherwise.
Face eval_face(const Pool& pool, const Rat& mu) {
    const Int num_z = mu.get_num();
    const Int den_z = mu.get_den();
    const bool fast = num_z.fits_slong_p() && den_z.fits_slong_p() &&
                      den_z.get_si() <= (1LL << 31) && num_z.get_si() <= (1LL << 61);
    if (fast) {
        const std::int64_t num = num_z.get_si();
        const std::int64_t den = den_z.get_si();
        std::vector<std::int64_t> qn(pool.p.size());
        for (std::size_t j = 0; j < pool.p.size(); ++j) qn[j] = pool.p[j] * den - num;
        auto cross = [&](int a, int b) {
            const I128 lhs = static_cast<I128>(qn[a]) * pool.w[b];
            const I128 rhs = static_cast<I128>(qn[b]) * pool.w[a];
            return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
        };
        return eval_face_impl<std::int64_t>(pool, mu, qn, den_z, cross);
    }
    std::vector<Int> qn(pool.p.size());
    for (std::size_t j = 0; j < pool.p.size(); ++j)
        qn[j] = Int(pool.p[j]) * den_z - num_z;
    auto cross = [&](int a, int b) {
        return mpz_cmp(Int(qn[a] * pool.w[b]).get_mpz_t(), Int(qn[b] * pool.w[a]).get_mpz_t());
    };
    return eval_face_impl<Int>(pool, mu, qn, den_z, cross);
}

struct XEntry {
    int pos;
    Rat x;
};

// Fill the tie set with total weight exactly `fill` using lightest items
// first; at most one fractional entry.
std::vector<XEntry> fill_lightest(const Pool& pool, const std::vector<int>& ties,
                                  std::int64_t fill) {
    std::vector<XEntry> out;
    std::int64_t used = 0;
    for (int pos : ties) {
        if (used == fill) break;
        const std::int64_t wt = pool.w[pos];
        if (used + wt <= fill) {
            out.push_back({pos, Rat(1)});
            used += wt;
        } else {
            out.push_back({pos, make_rat(fill - used, wt)});
            return out;
        }
    }
    internal_check(used == fill, "lightest-first fill missed the weight target");
    return out;
}

// Fill with mass exactly `mass` and weight exactly `fill`; at most two
// fractional entries. Walks single swaps from the lightest mass-sized
// subset upward, so exact integral hits are taken when the walk meets one.
std::vector<XEntry> fill_exact(const Pool& pool, const std::vector<int>& ties,
                               std::int64_t fill, std::int64_t mass) {
    const int m = static_cast<int>(ties.size());
    internal_check(mass >= 0 && mass <= m, "fill mass out of range");
    if (mass == 0) {
        internal_check(fill == 0, "zero-mass fill with nonzero weight");
        return {};
    }
    std::vector<XEntry> out;
    const int K = static_cast<int>(mass);
    std::vector<int> sel(K);
    std::iota(sel.begin(), sel.end(), 0); // indices into ties (weight-sorted)
    std::int64_t cur = 0;
    for (int i : sel) cur += pool.w[ties[i]];
    internal_check(cur <= fill, "exact fill below reachable range");

    auto emit_full = [&]() {
        for (int i : sel) out.push_back({ties[i], Rat(1)});
        return out;
    };
    if (cur == fill) return emit_full();

    if (m <= 4096) {
        // Fine walk: advance one slot at a time, highest slot first.
        for (int s = K - 1; s >= 0; --s) {
            const int limit = (s == K - 1) ? m : sel[s + 1];
            while (sel[s] + 1 < limit) {
                const std::int64_t delta =
                    pool.w[ties[sel[s] + 1]] - pool.w[ties[sel[s]]];
                if (cur + delta <= fill) {
                    cur += delta;
                    ++sel[s];
                    if (cur == fill) return emit_full();
                } else {
                    for (int t = 0; t < K; ++t)
                        if (t != s) out.push_back({ties[sel[t]], Rat(1)});
                    const Rat theta = make_rat(fill - cur, delta);
                    out.push_back({ties[sel[s]], Rat(1) - theta});
                    out.push_back({ties[sel[s] + 1], theta});
                    return out;
                }
            }
        }
    } else {
        // Coarse walk for huge tie sets: swap lightest-in for heaviest-out.
        for (int t = 0; t < K; ++t) {
            const int out_idx = K - 1 - t, in_idx = m - 1 - t;
            if (in_idx <= out_idx) break;
            const std::int64_t delta = pool.w[ties[in_idx]] - pool.w[ties[out_idx]];
            if (delta == 0) break;
            if (cur + delta <= fill) {
                cur += delta;
                sel[out_idx] = in_idx;
                if (cur == fill) return emit_full();
            } else {
                for (int u = 0; u < K; ++u)
                    if (u != out_idx) out.push_back({ties[sel[u]], Rat(1)});
                const Rat theta = make_rat(fill - cur, delta);
                out.push_back({ties[sel[out_idx]], Rat(1) - theta});
                out.push_back({ties[in_idx], theta});
                return out;
            }
        }
    }
    internal_check(false, "exact fill above reachable range");
    return out;
}

struct CoreResult {
    Rat objective;
    std::vector<std::pair<int, Rat>> x; // position -> value, only x > 0
    Rat u, v;                           // certified optimal duals
};

void certify(const Pool& pool, const CoreResult& res) {
    Rat weight = 0, mass = 0, obj = 0;
    for (const auto& [pos, x] : res.x) {
        internal_check(x > 0 && x <= 1, "lp value outside [0,1]");
        weight += x * pool.w[pos];
        mass += x;
        obj += x * pool.p[pos];
    }
    internal_check(weight <= pool.c, "lp weight constraint violated");
    internal_check(mass <= pool.k, "lp cardinality constraint violated");
    internal_check(obj == res.objective, "lp objective mismatch");

    // Exact dual objective: c*u + k*v + Σ max(0, p_j - u*w_j - v).
    const Int un = res.u.get_num(), ud = res.u.get_den();
    const Int vn = res.v.get_num(), vd = res.v.get_den();
    Rat dual = res.u * pool.c + res.v * pool.k;
    const bool fast = un.fits_slong_p() && ud.fits_slong_p() && vn.fits_slong_p() &&
                      vd.fits_slong_p() && ud.get_si() <= (1 << 20) &&
                      vd.get_si() <= (1 << 20) && un.get_si() <= (1LL << 50) &&
                      vn.get_si() <= (1LL << 50);
    if (fast) {
        const std::int64_t una = un.get_si(), uda = ud.get_si();
        const std::int64_t vna = vn.get_si(), vda = vd.get_si();
        I128 sum = 0;
        for (int j = 0; j < pool.n(); ++j) {
            const I128 term = static_cast<I128>(pool.p[j]) * uda * vda -
                              static_cast<I128>(una) * pool.w[j] * vda -
                              static_cast<I128>(vna) * uda;
            if (term > 0) sum += term;
        }
        Rat slack(int_from_i128(sum), Int(uda) * vda);
        slack.canonicalize();
        dual += slack;
    } else {
        for (int j = 0; j < pool.n(); ++j) {
            Rat term = Rat(pool.p[j]) - res.u * pool.w[j] - res.v;
            if (term > 0) dual += term;
        }
    }
    internal_check(dual == res.objective, "lp duality gap is nonzero");
}

CoreResult lp_core(const Pool& pool) {
    internal_check(pool.n() >= 1 && pool.k >= 1, "lp on empty pool");
    const Rat k_rat(static_cast<long>(pool.k));

    Face face = eval_face(pool, Rat(0));
    Rat mu = 0;
    if (k_rat < face.n_min) {
        std::int64_t p_max = 0;
        for (std::int64_t p : pool.p) p_max = std::max(p_max, p);
        Rat lo = 0, hi(static_cast<long>(p_max));
        Face flo = face;
        Face fhi = eval_face(pool, hi);
        if (k_rat >= fhi.n_min && k_rat <= fhi.n_max) {
            face = fhi;
            mu = hi;
        } else {
            internal_check(fhi.n_max < k_rat, "penalty bracket failed to initialize");
            for (int iter = 0;; ++iter) {
                internal_check(iter < 10000, "penalty search did not converge");
                const Rat s_lo = k_rat - flo.n_min; // < 0
                const Rat s_hi = k_rat - fhi.n_max; // > 0
                Rat cand = (fhi.g - flo.g + s_lo * lo - s_hi * hi) / (s_lo - s_hi);
                cand.canonicalize();
                internal_check(cand > lo && cand < hi, "penalty step left the bracket");
                Face f = eval_face(pool, cand);
                if (k_rat >= f.n_min && k_rat <= f.n_max) {
                    face = f;
                    mu = cand;
                    break;
                }
                if (f.n_min > k_rat) {
                    lo = cand;
                    flo = f;
                } else {
                    hi = cand;
                    fhi = f;
                }
            }
        }
    }

    CoreResult res;
    res.v = mu;
    res.u = face.capacity_tight ? face.rho : Rat(0);
    for (int pos : face.strict) res.x.emplace_back(pos, Rat(1));

    std::vector<XEntry> fill;
    if (mu == 0) {
        if (face.capacity_tight) {
            if (face.n_max <= k_rat) {
                fill = fill_lightest(pool, face.ties, face.fill_weight);
            } else {
                fill = fill_exact(pool, face.ties, face.fill_weight,
                                  pool.k - face.strict_count);
            }
        }
        // Not capacity-tight at zero penalty: strict set alone is optimal.
    } else {
        // Positive penalty: cardinality must be tight at mass k.
        const std::int64_t mass = pool.k - face.strict_count;
        if (face.capacity_tight) {
            fill = fill_exact(pool, face.ties, face.fill_weight, mass);
        } else {
            std::int64_t used = 0;
            for (int t = 0; t < mass; ++t) {
                const int pos = face.ties[t];
                used += pool.w[pos];
                fill.push_back({pos, Rat(1)});
            }
            internal_check(used <= face.fill_weight, "zero-ratio fill exceeded capacity");
        }
    }
    for (const XEntry& e : fill)
        if (e.x > 0) res.x.emplace_back(e.pos, e.x);

    res.objective = 0;
    for (const auto& [pos, x] : res.x) res.objective += x * pool.p[pos];
    std::sort(res.x.begin(), res.x.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    certify(pool, res);
    return res;
}

Pool make_pool(std::span<const Item> items, std::int64_t c, std::int64_t k) {
    Pool pool;
    pool.c = c;
    pool.k = k;
    pool.p.reserve(items.size());
    pool.w.reserve(items.size());
    pool.id.reserve(items.size());
    for (const Item& it : items) {
        pool.p.push_back(it.profit);
        pool.w.push_back(it.weight);
        pool.id.push_back(it.id);
    }
    return pool;
}

} // namespace

LpSolution solve_lp(const Instance& inst) {
    Pool pool = make_pool(inst.items, inst.capacity,
                          std::min<std::int64_t>(inst.cardinality_bound, inst.n()));
    CoreResult core = lp_core(pool);
    LpSolution out;
    out.objective = core.objective;
    out.values.assign(inst.items.size(), Rat(0));
    for (const auto& [pos, x] : core.x) {
        out.values[pos] = x;
        if (x < 1) out.fractional_ids.push_back(inst.items[pos].id);
    }
    internal_check(out.fractional_ids.size() <= 2, "more than two fractional lp values");
    return out;
}

HalfResult half_fill(std::span<const Item> pool_items, std::int64_t capacity,
                     std::int64_t cardinality) {
    HalfResult out;
    out.solution.feasible = true;
    if (capacity <= 0 || cardinality <= 0) return out;

    std::vector<Item> fit;
    fit.reserve(pool_items.size());
    std::int64_t total_w = 0;
    for (const Item& it : pool_items) {
        if (it.weight <= capacity) {
            fit.push_back(it);
            total_w += it.weight;
        }
    }
    if (fit.empty()) return out;

    const Item* best_single = &fit[0];
    for (const Item& it : fit) {
        if (it.profit > best_single->profit ||
            (it.profit == best_single->profit && it.id < best_single->id))
            best_single = &it;
    }
    out.p_max = best_single->profit;

    auto finalize = [&](std::vector<ItemId> ids, std::int64_t profit, std::int64_t weight) {
        std::sort(ids.begin(), ids.end());
        out.solution.selected = std::move(ids);
        out.solution.profit_total = profit;
        out.solution.weight_total = weight;
        out.solution.feasible = true;
        out.value = profit;
    };

    if (total_w <= capacity && static_cast<std::int64_t>(fit.size()) <= cardinality) {
        std::vector<ItemId> ids;
        std::int64_t p = 0;
        for (const Item& it : fit) {
            ids.push_back(it.id);
            p += it.profit;
        }
        finalize(std::move(ids), p, total_w);
        return out;
    }

    Pool pool = make_pool(fit, capacity,
                          std::min<std::int64_t>(cardinality, static_cast<std::int64_t>(fit.size())));
    CoreResult core = lp_core(pool);

    struct Candidate {
        std::vector<ItemId> ids;
        std::int64_t profit = 0, weight = 0, count = 0;
    };
    std::vector<Candidate> cands;

    Candidate integral;
    std::vector<int> frac_pos;
    for (const auto& [pos, x] : core.x) {
        if (x == 1) {
            integral.ids.push_back(pool.id[pos]);
            integral.profit += pool.p[pos];
            integral.weight += pool.w[pos];
            ++integral.count;
        } else {
            frac_pos.push_back(pos);
        }
    }
    cands.push_back(integral);

    if (frac_pos.size() == 2) {
        Rat xs = 0;
        for (const auto& [pos, x] : core.x)
            if (x < 1) xs += x;
        if (xs == 1) {
            int lighter = frac_pos[0];
            if (pool.w[frac_pos[1]] < pool.w[lighter] ||
                (pool.w[frac_pos[1]] == pool.w[lighter] &&
                 pool.id[frac_pos[1]] < pool.id[lighter]))
                lighter = frac_pos[1];
            Candidate c = integral;
            c.ids.push_back(pool.id[lighter]);
            c.profit += pool.p[lighter];
            c.weight += pool.w[lighter];
            ++c.count;
            internal_check(c.weight <= capacity && c.count <= cardinality,
                           "rounded-lp candidate infeasible");
            cands.push_back(std::move(c));
        }
    }

    Candidate single;
    single.ids.push_back(best_single->id);
    single.profit = best_single->profit;
    single.weight = best_single->weight;
    single.count = 1;
    cands.push_back(std::move(single));

    std::size_t best = 0;
    for (std::size_t i = 1; i < cands.size(); ++i) {
        auto sorted_ids = [&](std::size_t idx) {
            auto v = cands[idx].ids;
            std::sort(v.begin(), v.end());
            return v;
        };
        if (cands[i].profit > cands[best].profit ||
            (cands[i].profit == cands[best].profit && sorted_ids(i) < sorted_ids(best)))
            best = i;
    }
    internal_check(cands[best].weight <= capacity && cands[best].count <= cardinality,
                   "half-approximation produced an infeasible set");
    finalize(std::move(cands[best].ids), cands[best].profit, cands[best].weight);

    // Contract: value >= z - p_max and 2*value >= z against the exact optimum.
    internal_check(Rat(static_cast<long>(out.value + out.p_max)) >= core.objective,
                   "half-approximation lost more than p_max");
    internal_check(Rat(2 * static_cast<long>(out.value)) >= core.objective,
                   "half-approximation below half the lp bound");
    return out;
}

HalfResult half_approx(const Instance& inst) {
    return half_fill(inst.items, inst.capacity, inst.cardinality_bound);
}

} // namespace kkp
