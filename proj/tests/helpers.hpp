#pragma once

#include <random>
#include <vector>

#include "fedlab/polynomial.hpp"
#include "fedlab/rational_function.hpp"
#include "fedlab/weyl.hpp"

namespace fedtest {

using namespace fedlab;

inline Rational random_rational(std::mt19937& rng, int span = 6) {
    std::uniform_int_distribution<int> num(-span, span);
    std::uniform_int_distribution<int> den(1, 4);
    return rat(num(rng), den(rng));
}

inline Polynomial random_polynomial(std::mt19937& rng, unsigned nvars, unsigned max_deg, unsigned nterms) {
    Polynomial p(nvars);
    std::uniform_int_distribution<unsigned> deg(0, max_deg);
    for (unsigned t = 0; t < nterms; ++t) {
        Mono m;
        unsigned budget = deg(rng);
        for (unsigned v = 0; v < nvars && budget; ++v) {
            std::uniform_int_distribution<unsigned> e(0, budget);
            unsigned ev = e(rng);
            m = m.with(v, ev);
            budget -= ev;
        }
        p.add_term(m, random_rational(rng));
    }
    return p;
}

inline Polynomial random_nonzero_polynomial(std::mt19937& rng, unsigned nvars, unsigned max_deg, unsigned nterms) {
    for (;;) {
        Polynomial p = random_polynomial(rng, nvars, max_deg, nterms);
        if (!p.is_zero()) return p;
    }
}

inline RationalFunction random_ratfun(std::mt19937& rng, unsigned nvars, unsigned max_deg = 2, unsigned nterms = 2) {
    Polynomial num = random_polynomial(rng, nvars, max_deg, nterms);
    Polynomial den = random_nonzero_polynomial(rng, nvars, max_deg, nterms);
    return RationalFunction(num, den);
}

inline std::vector<Rational> random_point(std::mt19937& rng, unsigned nvars) {
    std::vector<Rational> p;
    for (unsigned v = 0; v < nvars; ++v) p.push_back(random_rational(rng, 12));
    return p;
}

/// Random Weyl element with bounded term data; coefficients are polynomials
/// so the element is exact and cheap.
inline WeylElement random_weyl(std::mt19937& rng, unsigned dim, std::uint32_t order, unsigned nterms,
                               unsigned max_fiber = 3, unsigned max_nu = 1, unsigned coeff_deg = 2) {
    WeylElement a(dim, order);
    std::uniform_int_distribution<unsigned> fib(0, max_fiber);
    std::uniform_int_distribution<unsigned> nu(0, max_nu);
    std::uniform_int_distribution<std::uint32_t> wedge(0, (1u << dim) - 1);
    for (unsigned t = 0; t < nterms; ++t) {
        WeylKey k;
        k.nu = nu(rng);
        unsigned budget = fib(rng);
        for (unsigned v = 0; v < dim && budget; ++v) {
            std::uniform_int_distribution<unsigned> e(0, budget);
            unsigned ev = e(rng);
            k.fiber = k.fiber.with(v, ev);
            budget -= ev;
        }
        k.wedge = wedge(rng);
        a.add_term(k, RationalFunction(random_polynomial(rng, dim, coeff_deg, 2)));
    }
    return a;
}

} // namespace fedtest
