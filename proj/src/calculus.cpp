#include "fedlab/calculus.hpp"

#include "fedlab/errors.hpp"

namespace fedlab {

WeylElement delta(const WeylElement& a) {
    WeylElement r(a.dim(), a.order());
    for (unsigned i = 0; i < a.dim(); ++i) r += wedge_mul_left(fiber_partial(a, i), i);
    return r;
}

WeylElement delta_inv(const WeylElement& a) {
    WeylElement r(a.dim(), a.order());
    for (const auto& [k, c] : a.terms()) {
        unsigned ks = k.sym_degree();
        unsigned l = k.form_degree();
        if (ks + l == 0) continue;
        WeylElement t(a.dim(), a.order());
        t.add_term(k, c.scaled(rat(1, long(ks + l))));
        for (unsigned i = 0; i < a.dim(); ++i)
            if (k.wedge & (1u << i)) r += fiber_mul(wedge_insert_partial(t, i), i);
    }
    return r;
}

FormalFunction sigma_project(const WeylElement& a) {
    FormalFunction f(a.dim());
    for (const auto& [k, c] : a.terms())
        if (k.sym_degree() == 0 && k.wedge == 0) f.set_coeff(k.nu, c);
    return f;
}

WeylElement insert_sym(const VectorField& x, const WeylElement& a) {
    WeylElement r(a.dim(), a.order());
    for (unsigned i = 0; i < a.dim(); ++i) {
        if (x.comp[i].is_zero()) continue;
        r += fiber_partial(a, i).scaled(x.comp[i]);
    }
    return r;
}

WeylElement insert_antisym(const VectorField& x, const WeylElement& a) {
    WeylElement r(a.dim(), a.order());
    for (unsigned i = 0; i < a.dim(); ++i) {
        if (x.comp[i].is_zero()) continue;
        r += wedge_insert_partial(a, i).scaled(x.comp[i]);
    }
    return r;
}

namespace {

/// Derivative of the coefficients only.
WeylElement coeff_partial(const WeylElement& a, unsigned i) {
    WeylElement r(a.dim(), a.order());
    for (const auto& [k, c] : a.terms()) r.add_term(k, c.partial(i));
    return r;
}


} // namespace

WeylElement nabla(const WeylElement& a, const ChartGeometry& g) {
    const unsigned n = a.dim();
    WeylElement r(n, a.order());
    for (unsigned i = 0; i < n; ++i) {
        WeylElement part = coeff_partial(a, i);
        // covariant action on the symmetric factor: y^k -> -Gamma^k_ij y^j
        for (unsigned k = 0; k < n; ++k) {
            WeylElement da = fiber_partial(a, k);
            if (da.is_zero()) continue;
            for (unsigned j = 0; j < n; ++j) {
                const RationalFunction& gkj = g.gamma(k, i, j);
                if (gkj.is_zero()) continue;
                part -= fiber_mul(da, j).scaled(gkj);
            }
        }
        // covariant action on the wedge factor: dx^s -> -Gamma^s_ij dx^j
        for (unsigned s = 0; s < n; ++s) {
            WeylElement rem = wedge_insert_partial(a, s);
            if (rem.is_zero()) continue;
            for (unsigned j = 0; j < n; ++j) {
                const RationalFunction& gsj = g.gamma(s, i, j);
                if (gsj.is_zero()) continue;
                part -= wedge_mul_left(rem, j).scaled(gsj);
            }
        }
        r += wedge_mul_left(part, i);
    }
    return r;
}

WeylElement curvature_element(const ChartGeometry& g, std::uint32_t order) {
    const unsigned n = g.dim();
    WeylElement r(n, order);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            for (unsigned k = 0; k < n; ++k)
                for (unsigned l = 0; l < n; ++l) {
                    if (k == l) continue;
                    RationalFunction c(n);
                    for (unsigned t = 0; t < n; ++t) c += g.omega()[i][t] * g.curvature(t, j, k, l);
                    if (c.is_zero()) continue;
                    WeylElement piece = WeylElement::scalar(n, order, c.scaled(rat(1, 4)));
                    piece = fiber_mul(fiber_mul(piece, i), j);
                    piece = wedge_mul_left(wedge_mul_left(piece, l), k);
                    r += piece;
                }
    return r;
}

WeylElement lie_derivative(const VectorField& x, const WeylElement& a) {
    const unsigned n = a.dim();
    WeylElement r(n, a.order());
    for (unsigned i = 0; i < n; ++i) {
        if (x.comp[i].is_zero()) continue;
        r += coeff_partial(a, i).scaled(x.comp[i]);
    }
    // y^k -> (d_j X^k) y^j and dx^s -> (d_j X^s) dx^j
    for (unsigned k = 0; k < n; ++k) {
        WeylElement da = fiber_partial(a, k);
        WeylElement ra = wedge_insert_partial(a, k);
        for (unsigned j = 0; j < n; ++j) {
            RationalFunction dxk = x.comp[k].partial(j);
            if (dxk.is_zero()) continue;
            if (!da.is_zero()) r += fiber_mul(da, j).scaled(dxk);
            if (!ra.is_zero()) r += wedge_mul_left(ra, j).scaled(dxk);
        }
    }
    return r;
}

WeylElement sym_cov_derivative(const OneForm& theta, const ChartGeometry& g, std::uint32_t order) {
    const unsigned n = g.dim();
    WeylElement r(n, order);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned k = 0; k < n; ++k) {
            RationalFunction c = theta[k].partial(i);
            for (unsigned l = 0; l < n; ++l) c -= g.gamma(l, i, k) * theta[l];
            if (c.is_zero()) continue;
            WeylElement piece = WeylElement::scalar(n, order, c);
            r += fiber_mul(fiber_mul(piece, i), k);
        }
    return r;
}

SymplecticCheck check_symplectic(const VectorField& x, const ChartGeometry& g) {
    SymplecticCheck res{true, contract(x, g.omega()), lie_derivative(x, g.omega())};
    res.is_symplectic = is_zero(res.lie_omega);
    // Cartan: for the closed validated omega, Lie_X omega = d(i_X omega).
    if (!(exterior_d(res.theta) == res.lie_omega))
        throw InternalError("lie derivative of omega disagrees with d(theta_X)");
    return res;
}

WeylElement sym_embed(const OneForm& th, std::uint32_t order) {
    const unsigned n = unsigned(th.size());
    WeylElement r(n, order);
    for (unsigned k = 0; k < n; ++k) {
        if (th[k].is_zero()) continue;
        r += fiber_mul(WeylElement::scalar(n, order, th[k]), k);
    }
    return r;
}

WeylElement sym_embed(const OneFormSeries& th, std::uint32_t order) {
    WeylElement r(th.dim(), order);
    for (const auto& [k, a] : th.coeffs()) r += sym_embed(a, order).shifted_nu(k);
    return r;
}

WeylElement antisym_embed(const OneForm& a, std::uint32_t order) {
    const unsigned n = unsigned(a.size());
    WeylElement r(n, order);
    for (unsigned k = 0; k < n; ++k) {
        if (a[k].is_zero()) continue;
        r += wedge_mul_left(WeylElement::scalar(n, order, a[k]), k);
    }
    return r;
}

WeylElement antisym_embed(const OneFormSeries& a, std::uint32_t order) {
    WeylElement r(a.dim(), order);
    for (const auto& [k, c] : a.coeffs()) r += antisym_embed(c, order).shifted_nu(k);
    return r;
}

WeylElement antisym_embed(const TwoForm& f, std::uint32_t order) {
    const unsigned n = unsigned(f.size());
    WeylElement r(n, order);
    for (unsigned k = 0; k < n; ++k)
        for (unsigned l = k + 1; l < n; ++l) {
            if (f[k][l].is_zero()) continue;
            WeylElement piece = WeylElement::scalar(n, order, f[k][l]);
            r += wedge_mul_left(wedge_mul_left(piece, l), k);
        }
    return r;
}

WeylElement antisym_embed(const TwoFormSeries& f, std::uint32_t order) {
    WeylElement r(f.dim(), order);
    for (const auto& [k, c] : f.coeffs()) r += antisym_embed(c, order).shifted_nu(k);
    return r;
}

OneFormSeries differential(const FormalFunction& f) {
    OneFormSeries df(f.nvars());
    for (const auto& [k, c] : f.coeffs()) df.set_coeff(k, exterior_d(c));
    return df;
}

OneFormSeries sym_extract_one_form(const WeylElement& a) {
    OneFormSeries th(a.dim());
    for (const auto& [k, c] : a.terms()) {
        if (k.wedge != 0 || k.sym_degree() != 1)
            throw InternalError("element is not of pure symmetric degree one");
        for (unsigned v = 0; v < a.dim(); ++v)
            if (k.fiber.get(v) == 1) {
                OneForm comp = th.coeff(k.nu);
                comp[v] += c;
                th.set_coeff(k.nu, std::move(comp));
            }
    }
    return th;
}

} // namespace fedlab
