#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "kkp/errors.hpp"

namespace kkp {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(std::int64_t num, std::int64_t den) {
    require(den != 0, "rational with zero denominator");
    Rat q{Int(num), Int(den)};
    q.canonicalize();
    return q;
}

// Accepts "N" or "N/D" with decimal integers.
Rat parse_ratio(const std::string& text);

// ⌊q⌋ for arbitrary sign.
inline Int floor_int(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline std::int64_t to_i64(const Int& v) {
    internal_check(v.fits_slong_p(), "integer out of 64-bit range");
    return static_cast<std::int64_t>(v.get_si());
}

inline std::int64_t floor_i64(const Rat& q) { return to_i64(floor_int(q)); }

// Largest integer strictly below q: use for "p < q" cutoffs over integers.
inline Int strict_floor_int(const Rat& q) {
    Int f = floor_int(q);
    if (q == Rat(f)) f -= 1;
    return f;
}

Rat pow_rat(const Rat& base, std::uint64_t exp);

inline double to_double(const Rat& q) { return q.get_d(); }

std::string to_string(const Rat& q);

} // namespace kkp
