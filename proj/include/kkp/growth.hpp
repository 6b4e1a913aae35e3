#pragma once

#include <cstdint>
#include <utility>

#include "kkp/instance.hpp"
#include "kkp/rational.hpp"

namespace kkp {

// Constants of the exponential lower bound: A maximizes
// f(x) = -x ln x - x^2/2, B = f(A), C = e^(-B/A).
struct BoundConstants {
    double a = 0.2784;
    double b = 0.3172;
    double c = 0.3200;
};

struct CountReport {
    Rat epsilon;
    int dim = 0;
    int d_max = 0;                  // coordinates beyond this are forced to zero
    std::int64_t lattice_count = 0; // #{c >= 0 : Σ c_i eps (1+eps)^i < 1}
    std::int64_t distinct_sums = -1; // -1 when sum collection was disabled
    double volume_bound = 0;         // Vol(T_eps^dim)
    double exp_bound = 0;            // C e^(B/eps)
    bool injective = false;          // meaningful only when sums were collected
};

struct CountOptions {
    std::int64_t ceiling = 1'000'000'000;
    bool collect_sums = true;
};

struct CeilingExceeded : InputError {
    std::int64_t partial_count;
    explicit CeilingExceeded(std::int64_t partial)
        : InputError("lattice ceiling exceeded; counted " + std::to_string(partial) +
                     " points so far"),
          partial_count(partial) {}
};

// Exhaustive enumeration of Σ c_i eps (1+eps)^i < 1 over non-negative integer
// vectors of the given dimension, in exact scaled-integer arithmetic.
CountReport count_lattice(const Rat& epsilon, int dim, const CountOptions& options = {});

// Smallest m with eps (1+eps)^m >= 1, computed exactly.
int lattice_dim_limit(const Rat& epsilon);

// [d! eps^d (1+eps)^(d(d-1)/2)]^(-1), evaluated exactly then converted.
double tetrahedron_volume(const Rat& epsilon, int dim);

// (d = max(1, ⌊A/eps⌋), C e^(B/eps)).
std::pair<int, double> exponential_bound(const Rat& epsilon);

// True iff distinct vectors give distinct sums at this dimension.
bool injectivity_check(const Rat& epsilon, int dim);

// Worst-case instance: for each geometric level a_i, ⌊P^H/a_i⌋ copies of an
// item with profit = weight = a_i, scaled to integers; capacity = scaled P^H.
// Emits the applied scale factor. Requires k >= ⌈1/eps⌉.
Instance build_theorem4_instance(const Rat& epsilon, std::int64_t p_h, std::int64_t k,
                                 std::int64_t* scale_out = nullptr);

} // namespace kkp
