#pragma once

#include "fedlab/calculus.hpp"
#include "fedlab/geometry.hpp"

namespace fedtest {

using namespace fedlab;

inline RationalFunction fx() { return RationalFunction::variable(2, 0); }
inline RationalFunction fy() { return RationalFunction::variable(2, 1); }
inline RationalFunction fc(long n, long d = 1) { return RationalFunction::constant(2, rat(n, d)); }

inline Christoffel zero_gamma(unsigned n) {
    return Christoffel(n, RfMatrix(n, std::vector<RationalFunction>(n, RationalFunction(n))));
}

/// Flat R^2 with omega = dx ^ dy and the trivial connection.
inline GeometryPtr flat_chart() {
    RfMatrix omega = zero_two_form(2);
    omega[0][1] = fc(1);
    omega[1][0] = fc(-1);
    return std::make_shared<const ChartGeometry>(std::vector<std::string>{"x", "y"}, omega, zero_gamma(2));
}

/// Stereographic chart of the sphere: omega = (1+x^2+y^2)^-2 dx ^ dy with
/// the Levi-Civita connection of the round metric (conformal factor
/// phi = -log(1+x^2+y^2)).
inline GeometryPtr sphere_chart() {
    RationalFunction u = fc(1) + fx() * fx() + fy() * fy();
    RfMatrix omega = zero_two_form(2);
    omega[0][1] = u.pow(-2);
    omega[1][0] = -omega[0][1];
    RationalFunction phix = fc(-2) * fx() / u;
    RationalFunction phiy = fc(-2) * fy() / u;
    Christoffel g = zero_gamma(2);
    g[0][0][0] = phix;
    g[0][0][1] = g[0][1][0] = phiy;
    g[0][1][1] = -phix;
    g[1][0][0] = -phiy;
    g[1][0][1] = g[1][1][0] = phix;
    g[1][1][1] = phiy;
    return std::make_shared<const ChartGeometry>(std::vector<std::string>{"x", "y"}, omega, g);
}

inline VectorField make_field(RationalFunction c1, RationalFunction c2) {
    return VectorField{{std::move(c1), std::move(c2)}};
}

/// Omega = nu * omega (the chart's symplectic form at order nu^1).
inline TwoFormSeries nu_omega(const ChartGeometry& g) {
    TwoFormSeries f(g.dim());
    f.set_coeff(1, g.omega());
    return f;
}

/// Rotation about the origin, oriented so that it is the Hamiltonian field
/// of (x^2+y^2)/2 on the flat chart.
inline VectorField rotation_field() { return make_field(fy(), -fx()); }

/// so(3) generators in the stereographic chart, oriented so that
/// [X_i, X_j] = -X_{[e_i, e_j]} with [e1,e2] = e3 cyclically.
inline std::vector<VectorField> so3_fields() {
    RationalFunction half = fc(1, 2);
    VectorField x1 = make_field(half * (fc(1) + fx() * fx() - fy() * fy()), fx() * fy());
    VectorField x2 = make_field(fx() * fy(), half * (fc(1) + fy() * fy() - fx() * fx()));
    VectorField x3 = make_field(-fy(), fx());
    return {x1, x2, x3};
}

} // namespace fedtest
