#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fedlab/errors.hpp"
#include "fedlab/fedosov.hpp"
#include "fixtures.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace fedlab;
using namespace fedtest;

namespace {

FedosovSetup flat_setup(std::uint32_t n) {
    auto g = flat_chart();
    return FedosovSetup({g, TwoFormSeries(2), WeylElement(2), n});
}

FedosovSetup flat_nu_omega_setup(std::uint32_t n) {
    auto g = flat_chart();
    return FedosovSetup({g, nu_omega(*g), WeylElement(2), n});
}

FedosovSetup sphere_setup(std::uint32_t n) {
    auto g = sphere_chart();
    return FedosovSetup({g, TwoFormSeries(2), WeylElement(2), n});
}

} // namespace

TEST_CASE("flat chart with trivial data has r = 0") {
    FedosovSetup s = flat_setup(6);
    CHECK(s.r().is_zero());
    CHECK(s.genr_residual().is_zero());
}

TEST_CASE("flat chart with Omega = nu omega") {
    FedosovSetup s = flat_nu_omega_setup(6);
    CHECK_FALSE(s.r().is_zero());
    CHECK(s.r().min_total_degree() == 3);
    // minimal part is nu delta_inv(1 (x) omega)
    WeylElement omega_elem = antisym_embed(s.geometry().omega(), s.working_order());
    WeylElement expect = delta_inv(omega_elem).shifted_nu(1);
    CHECK(truncate(s.r(), 3) == expect);
    CHECK(s.genr_residual().is_zero());
}

TEST_CASE("sphere chart r and residual") {
    FedosovSetup s = sphere_setup(5);
    CHECK_FALSE(s.r().is_zero());
    CHECK(s.r().min_total_degree() == 3);
    CHECK(s.genr_residual().is_zero());
    CHECK(equal_mod(delta_inv(s.r()), WeylElement(2), s.working_order()));
}

TEST_CASE("r is the unique fixed point: perturbed starts reconverge") {
    FedosovSetup s = flat_nu_omega_setup(6);
    const std::uint32_t w = s.working_order();
    WeylElement r_elem = curvature_element(s.geometry(), w);
    WeylElement omega_w = antisym_embed(s.omega2(), w);
    // independent iteration of the recursion from a nonzero start
    WeylElement r = fiber_mul(WeylElement::scalar(2, w, fx()), 0);
    r = wedge_mul_left(fiber_mul(r, 1), 1).shifted_nu(1); // arbitrary degs-2 dega-1 junk
    for (std::uint32_t it = 0; it <= w + 2; ++it) {
        WeylElement rr = divide_by_nu(circ(lift_order(r, w + 2), lift_order(r, w + 2), s.lambda()));
        WeylElement rhs = nabla(r, s.geometry()) - truncate(rr, w) + r_elem + omega_w;
        r = delta_inv(rhs); // s = 0 here so delta(s) drops
    }
    CHECK(r == s.r());
}

TEST_CASE("fedosov derivation basics") {
    FedosovSetup s = sphere_setup(4);
    const std::uint32_t w = s.working_order();
    CHECK(s.fedosov_d(WeylElement::scalar(2, w, fc(1))).is_zero());
    std::mt19937 rng(401);
    for (int i = 0; i < 6; ++i) {
        WeylElement a = random_weyl(rng, 2, w, 3, 2, 1, 1);
        // D^2 = 0 modulo the certified window
        CHECK(truncate(s.fedosov_d(s.fedosov_d(a)), s.order()).is_zero());
        // super-Leibniz
        WeylElement b = random_weyl(rng, 2, w, 3, 2, 1, 1);
        WeylElement lhs = s.fedosov_d(circ(a, b, s.lambda()));
        WeylElement rhs = circ(s.fedosov_d(a), b, s.lambda()) +
                          circ(even_part(a), s.fedosov_d(b), s.lambda()) -
                          circ(odd_part(a), s.fedosov_d(b), s.lambda());
        CHECK(equal_mod(lhs, rhs, s.order()));
    }
}

TEST_CASE("fedosov homotopy operator") {
    FedosovSetup s = sphere_setup(4);
    const std::uint32_t w = s.working_order();
    CHECK(s.fedosov_d_inv(WeylElement(2, w)).is_zero());
    std::mt19937 rng(402);
    for (int i = 0; i < 6; ++i) {
        WeylElement raw = random_weyl(rng, 2, w, 3, 2, 1, 1);
        // restrict to positive antisymmetric degree
        WeylElement pos(2, w);
        for (const auto& [k, c] : raw.terms())
            if (k.form_degree() >= 1) pos.add_term(k, c);
        if (pos.is_zero()) continue;
        WeylElement lhs = s.fedosov_d(s.fedosov_d_inv(pos)) + s.fedosov_d_inv(s.fedosov_d(pos));
        CHECK(equal_mod(lhs, pos, s.order()));
        CHECK(sigma_project(s.fedosov_d_inv(pos)).is_zero());
    }
}

TEST_CASE("taylor series on the flat chart") {
    FedosovSetup s = flat_setup(6);
    const std::uint32_t w = s.working_order();
    // tau(x^i) = x^i + y^i
    WeylElement tx = s.taylor(fx());
    WeylElement expect = WeylElement::scalar(2, w, fx()) + fiber_mul(WeylElement::scalar(2, w, fc(1)), 0);
    CHECK(tx == expect);
    // flat Taylor oracle for polynomials and a rational function
    std::mt19937 rng(403);
    for (int i = 0; i < 5; ++i) {
        RationalFunction f(random_polynomial(rng, 2, 4, 3));
        CHECK(s.taylor(f) == flat_taylor(f, w));
    }
    RationalFunction f = fc(1) / (fc(1) + fx() * fx());
    CHECK(s.taylor(f) == flat_taylor(f, w));
    // tau(1) = 1
    CHECK(s.taylor(fc(1)) == WeylElement::scalar(2, w, fc(1)));
}

TEST_CASE("taylor series is D-flat and sigma-normalized") {
    for (FedosovSetup s : {flat_nu_omega_setup(4), sphere_setup(4)}) {
        std::mt19937 rng(404);
        for (int i = 0; i < 4; ++i) {
            RationalFunction f(random_polynomial(rng, 2, 2, 2));
            WeylElement tau = s.taylor(f);
            CHECK(sigma_project(tau) == FormalFunction(f));
            CHECK(truncate(s.fedosov_d(tau), s.order()).is_zero());
        }
    }
}

TEST_CASE("star product against the Moyal oracle") {
    FedosovSetup s = flat_setup(8);
    StarResult xy = s.star(fx(), fy());
    CHECK(xy.certified_order == 4);
    // x*y = xy + nu/2
    FormalFunction expect = FormalFunction(fx() * fy()) + FormalFunction::nu_term(1, fc(1, 2));
    CHECK(xy.value == expect);
    // normative flat commutator: x*y - y*x = nu
    FormalFunction comm = s.star(fx(), fy()).value - s.star(fy(), fx()).value;
    CHECK(comm == FormalFunction::nu_term(1, fc(1)));
    // x^2 * y^2 = x^2 y^2 + 2 nu x y + nu^2 / 2
    StarResult x2y2 = s.star(fx() * fx(), fy() * fy());
    FormalFunction expect2 = FormalFunction(fx() * fx() * fy() * fy()) +
                             FormalFunction::nu_term(1, fc(2) * fx() * fy()) + FormalFunction::nu_term(2, fc(1, 2));
    CHECK(x2y2.value == expect2);
    // full oracle on random polynomial pairs
    std::mt19937 rng(405);
    for (int i = 0; i < 8; ++i) {
        FormalFunction f{RationalFunction(random_polynomial(rng, 2, 3, 3))};
        FormalFunction g{RationalFunction(random_polynomial(rng, 2, 3, 3))};
        CHECK(s.star(f, g).value == moyal_star(f, g, rat(1), s.certified_nu_order()));
    }
    // unit
    CHECK(s.star(fx() * fy(), fc(1)).value == FormalFunction(fx() * fy()));
    CHECK(s.star(fc(1), fx() * fy()).value == FormalFunction(fx() * fy()));
}

TEST_CASE("correspondence principle") {
    for (FedosovSetup s : {flat_nu_omega_setup(4), sphere_setup(4)}) {
        std::mt19937 rng(406);
        for (int i = 0; i < 4; ++i) {
            RationalFunction f(random_polynomial(rng, 2, 2, 2));
            RationalFunction g(random_polynomial(rng, 2, 2, 2));
            FormalFunction fg = s.star(f, g).value;
            // f*g - fg = O(nu)
            FormalFunction diff = fg - FormalFunction(f * g);
            CHECK((diff.is_zero() || diff.min_order() >= 1));
            // f*g - g*f - nu {f,g} = O(nu^2)
            FormalFunction comm = fg - s.star(g, f).value - FormalFunction::nu_term(1, s.geometry().poisson(f, g));
            CHECK((comm.is_zero() || comm.min_order() >= 2));
        }
    }
}

TEST_CASE("star associativity samples") {
    for (FedosovSetup s : {flat_setup(6), flat_nu_omega_setup(6), sphere_setup(4)}) {
        std::mt19937 rng(407);
        for (int i = 0; i < 3; ++i) {
            FormalFunction f{RationalFunction(random_polynomial(rng, 2, 2, 2))};
            FormalFunction g{RationalFunction(random_polynomial(rng, 2, 2, 2))};
            FormalFunction h{RationalFunction(random_polynomial(rng, 2, 2, 2))};
            FormalFunction lhs = s.star(s.star(f, g).value, h).value;
            FormalFunction rhs = s.star(f, s.star(g, h).value).value;
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("derivations from closed one-forms") {
    FedosovSetup s = flat_setup(6);
    // A = dy: h_A = -y^2 and the derivation matches the quasi-inner one of y
    OneFormSeries a(2);
    a.set_coeff(0, OneForm{fc(0), fc(1)});
    auto handle = s.derivation_from_one_form(a);
    WeylElement expect_h = -fiber_mul(WeylElement::scalar(2, s.working_order(), fc(1)), 1);
    CHECK(handle.h == expect_h);
    CHECK(s.apply_derivation(handle, FormalFunction(fx())) == s.star_ad(FormalFunction(fy()), FormalFunction(fx())));
    CHECK(s.apply_derivation(handle, FormalFunction(fx())) == -FormalFunction(fc(1)));
    // Leibniz on random pairs
    std::mt19937 rng(408);
    for (int i = 0; i < 6; ++i) {
        FormalFunction f{RationalFunction(random_polynomial(rng, 2, 2, 2))};
        FormalFunction g{RationalFunction(random_polynomial(rng, 2, 2, 2))};
        FormalFunction lhs = s.apply_derivation(handle, s.star(f, g).value);
        FormalFunction rhs = s.star(s.apply_derivation(handle, f), g).value +
                             s.star(f, s.apply_derivation(handle, g)).value;
        CHECK(lhs == rhs);
    }
    // A = 0
    auto zero_handle = s.derivation_from_one_form(OneFormSeries(2));
    CHECK(s.apply_derivation(zero_handle, FormalFunction(fx() * fy())).is_zero());
    // A = df is quasi-inner: D_df = (1/nu) ad_*(f)
    RationalFunction f = fx() * fx() + fy();
    OneFormSeries df(2);
    df.set_coeff(0, exterior_d(f));
    auto hdf = s.derivation_from_one_form(df);
    for (int i = 0; i < 4; ++i) {
        FormalFunction probe{RationalFunction(random_polynomial(rng, 2, 2, 2))};
        CHECK(s.apply_derivation(hdf, probe) == s.star_ad(FormalFunction(f), probe));
    }
    // distinct closed one-forms act distinctly on a probe set
    OneFormSeries a2(2);
    a2.set_coeff(0, OneForm{fc(1), fc(0)});
    auto h2 = s.derivation_from_one_form(a2);
    bool differ = false;
    for (const RationalFunction& probe : {fx(), fy()})
        if (!(s.apply_derivation(handle, FormalFunction(probe)) == s.apply_derivation(h2, FormalFunction(probe))))
            differ = true;
    CHECK(differ);
    // non-closed A rejected
    OneFormSeries bad(2);
    bad.set_coeff(0, OneForm{fy(), fc(0)});
    CHECK_THROWS_AS(s.derivation_from_one_form(bad), ValidationError);
}

TEST_CASE("connection difference") {
    auto ga = flat_chart();
    CHECK(connection_difference(*ga, *ga).t.is_zero());

    // flat connection shifted by the symmetric tensor of sigma = x (dx)^3
    std::vector<RationalFunction> sigma3(8, RationalFunction(2));
    sigma3[0] = fx(); // sigma_{111} = x
    Christoffel gamma = zero_gamma(2);
    for (unsigned k = 0; k < 2; ++k)
        for (unsigned i = 0; i < 2; ++i)
            for (unsigned j = 0; j < 2; ++j) {
                RationalFunction v(2);
                for (unsigned z = 0; z < 2; ++z) v += ga->lambda()[k][z] * sigma3[(i * 2 + j) * 2 + z];
                gamma[k][i][j] = gamma[k][i][j] - v;
            }
    auto gb = std::make_shared<const ChartGeometry>(ga->coords(), ga->omega(), gamma);
    ConnectionDifference cd = connection_difference(*ga, *gb);
    CHECK_FALSE(cd.t.is_zero());
    CHECK(delta(cd.t).is_zero());
    CHECK(degree_spectrum(cd.t, DegreeKind::Sym) == std::set<unsigned>{2});
    CHECK(degree_spectrum(cd.t, DegreeKind::Form) == std::set<unsigned>{1});
    // (1/nu) ad(T) reproduces nabla_A - nabla_B on random elements
    std::mt19937 rng(409);
    for (int i = 0; i < 6; ++i) {
        WeylElement x = random_weyl(rng, 2, WeylElement::kUnbounded, 3, 2, 1, 1);
        WeylElement lhs = ad_div_nu(cd.t, x, ga->lambda());
        WeylElement rhs = nabla(x, *ga) - nabla(x, *gb);
        CHECK(lhs == rhs);
    }
    // round trip through the tensor components
    CHECK(sym_tensor3_components(sym3_embed(sigma3, 2, WeylElement::kUnbounded)) == sigma3);
}

TEST_CASE("triple equivalence") {
    auto g = flat_chart();
    FedosovSetup a({g, nu_omega(*g), WeylElement(2), 6});
    // identical setups
    auto same = triple_equivalence(a, a);
    CHECK(same.equivalent);
    CHECK(same.vartheta.is_zero());

    // Omega' = 0, s' = vartheta (x) 1 with nu omega = d vartheta, vartheta = nu x dy
    WeylElement s2(2, 6);
    {
        WeylKey k;
        k.nu = 1;
        k.fiber = Mono{}.with(1, 1);
        s2.add_term(k, fx());
    }
    FedosovSetup b({g, TwoFormSeries(2), s2, 6});
    auto eq = triple_equivalence(a, b);
    CHECK(eq.equivalent);
    // the two star products coincide exactly
    std::mt19937 rng(410);
    for (int i = 0; i < 6; ++i) {
        RationalFunction f(random_polynomial(rng, 2, 2, 2));
        RationalFunction gg(random_polynomial(rng, 2, 2, 2));
        CHECK(a.star(f, gg).value == b.star(f, gg).value);
    }

    // with s adjusted inconsistently the triples differ
    FedosovSetup c({g, TwoFormSeries(2), WeylElement(2), 6});
    CHECK_FALSE(triple_equivalence(a, c).equivalent);
}

TEST_CASE("normalize triple") {
    auto g = flat_chart();
    // already normalized: identity
    FedosovSetup a({g, nu_omega(*g), WeylElement(2), 6});
    NormalizedTriple na = normalize_triple(a);
    CHECK(na.vartheta.is_zero());
    CHECK(na.setup.s().is_zero());
    CHECK(triple_equivalence(a, na.setup).equivalent);

    // s = nu y^1 is absorbed into vartheta
    WeylElement s1(2, 6);
    {
        WeylKey k;
        k.nu = 1;
        k.fiber = Mono{}.with(0, 1);
        s1.add_term(k, fc(1));
    }
    FedosovSetup b({g, nu_omega(*g), s1, 6});
    NormalizedTriple nb = normalize_triple(b);
    CHECK(nb.setup.s().is_zero());
    CHECK_FALSE(nb.vartheta.is_zero());
    CHECK(nb.vartheta.coeff(1) == OneForm{fc(-1), fc(0)});
    CHECK(triple_equivalence(b, nb.setup).equivalent);
    std::mt19937 rng(411);
    for (int i = 0; i < 4; ++i) {
        RationalFunction f(random_polynomial(rng, 2, 2, 2));
        RationalFunction h(random_polynomial(rng, 2, 2, 2));
        CHECK(b.star(f, h).value == nb.setup.star(f, h).value);
    }

    // a mixed s with degs-1, pure-cubic and a surviving part
    WeylElement s3(2, 6);
    {
        WeylKey k1; // nu y^2
        k1.nu = 1;
        k1.fiber = Mono{}.with(1, 1);
        s3.add_term(k1, fy());
        WeylKey k2; // cubic x (y^1)^3
        k2.fiber = Mono{}.with(0, 3);
        s3.add_term(k2, fx());
        WeylKey k3; // nu (y^1)^2, already normalized shape
        k3.nu = 1;
        k3.fiber = Mono{}.with(0, 2);
        s3.add_term(k3, fc(1));
    }
    FedosovSetup d({g, nu_omega(*g), s3, 6});
    NormalizedTriple nd = normalize_triple(d);
    CHECK(is_normalized(nd.setup.s()));
    CHECK(nd.setup.s().min_total_degree() >= 4);
    CHECK(triple_equivalence(d, nd.setup).equivalent);
    for (int i = 0; i < 4; ++i) {
        RationalFunction f(random_polynomial(rng, 2, 2, 2));
        RationalFunction h(random_polynomial(rng, 2, 2, 2));
        CHECK(d.star(f, h).value == nd.setup.star(f, h).value);
    }
}

TEST_CASE("setup validation") {
    auto g = flat_chart();
    // Omega starting at nu^0
    TwoFormSeries bad(2);
    bad.set_coeff(0, g->omega());
    CHECK_THROWS_AS(FedosovSetup({g, bad, WeylElement(2), 4}), ValidationError);
    // s with sigma(s) != 0
    WeylElement s = WeylElement::scalar(2, 4, fx()).shifted_nu(2);
    CHECK_THROWS_AS(FedosovSetup({g, TwoFormSeries(2), s, 4}), ValidationError);
    // s below W_3
    WeylElement s2(2, 4);
    {
        WeylKey k;
        k.fiber = Mono{}.with(0, 1);
        s2.add_term(k, fc(1));
    }
    CHECK_THROWS_AS(FedosovSetup({g, TwoFormSeries(2), s2, 4}), ValidationError);
}
