#pragma once

#include <gmpxx.h>

#include <string>

namespace fedlab {

/// Exact rational scalar. All coefficient arithmetic in the engine is exact.
using Rational = mpq_class;

/// Canonicalized rational from a numerator/denominator pair.
inline Rational rat(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline std::string to_string(const Rational& r) { return r.get_str(); }

} // namespace fedlab
