#include "fedlab/fedosov.hpp"

#include <algorithm>

#include "fedlab/errors.hpp"

namespace fedlab {

namespace {

/// (1/nu)(a o b) computed two degrees above the operand order so the
/// division loses nothing below the truncation.
WeylElement circ_div_nu(const WeylElement& a, const WeylElement& b, const RfMatrix& lambda) {
    std::uint32_t order = std::min(a.order(), b.order());
    if (order == WeylElement::kUnbounded) return divide_by_nu(circ(a, b, lambda));
    WeylElement al = lift_order(a, order + 2);
    WeylElement bl = lift_order(b, order + 2);
    return truncate(divide_by_nu(circ(al, bl, lambda)), order);
}

} // namespace

FedosovSetup::FedosovSetup(FedosovInputs in) : in_(std::move(in)) {
    validate();
    const std::uint32_t w = working_order();
    s_ = truncate(lift_order(in_.s, w), w);
    r_elem_ = curvature_element(geometry(), w);
    omega_w_ = antisym_embed(in_.omega2, w);
    solve_r();
}

void FedosovSetup::validate() const {
    if (!in_.geometry) throw ValidationError("geometry missing", "setup needs a chart geometry");
    const unsigned n = in_.geometry->dim();
    if (in_.s.dim() != n) throw MismatchError("s lives on a different chart");
    if (in_.omega2.dim() != n) throw MismatchError("Omega lives on a different chart");
    if (in_.omega2.coeffs().count(0))
        throw ValidationError("Omega starts at nu^0", "Omega must lie in nu Z^2_dR[[nu]]");
    for (const auto& [k, f] : in_.omega2.coeffs()) {
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j)
                if (!(f[i][j] + f[j][i]).is_zero())
                    throw ValidationError("Omega not antisymmetric", "Omega coefficient is not a two-form");
        if (!is_closed(f)) throw ValidationError("Omega not closed", "each nu-coefficient of Omega must be closed");
    }
    for (const auto& [k, c] : in_.s.terms()) {
        if (k.form_degree() != 0) throw ValidationError("s not in W", "s must have antisymmetric degree 0");
        if (k.sym_degree() == 0) throw ValidationError("sigma(s) nonzero", "s must satisfy sigma(s) = 0");
        if (k.total_degree() < 3) throw ValidationError("s below W_3", "s must have total degree >= 3");
    }
}

void FedosovSetup::solve_r() {
    const std::uint32_t w = working_order();
    const WeylElement ds = delta(s_);
    WeylElement r(dim(), w);
    bool stable = false;
    // Each pass determines the next total degree; w+2 passes are enough at
    // working order w, the extra iteration certifies stabilization.
    for (std::uint32_t iter = 0; iter <= w + 2; ++iter) {
        WeylElement rhs = nabla(r, geometry()) - circ_div_nu(r, r, lambda()) + r_elem_ + omega_w_;
        WeylElement next = ds + delta_inv(rhs);
        if (next == r) {
            stable = true;
            break;
        }
        r = std::move(next);
    }
    if (!stable) throw InternalError("fedosov r recursion failed to stabilize");
    for (const auto& [k, c] : r.terms()) {
        if (k.form_degree() != 1) throw InternalError("solved r has terms outside W (x) Lambda^1");
        if (k.total_degree() < 2) throw InternalError("solved r has total degree below 2");
    }
    // normalization condition delta_inv r = s
    if (!equal_mod(delta_inv(r), s_, w)) throw InternalError("solved r violates delta_inv r = s");
    r_ = std::move(r);
    // residual of the defining equation, exact below the working order
    if (!genr_residual(w >= 1 ? w - 1 : 0).is_zero())
        throw InternalError("fedosov r recursion left a nonzero residual");
}

WeylElement FedosovSetup::genr_residual(std::uint32_t at_order) const {
    WeylElement lhs = delta(r_);
    WeylElement rhs = nabla(r_, geometry()) - circ_div_nu(r_, r_, lambda()) + r_elem_ + omega_w_;
    return truncate(lhs - rhs, at_order);
}

WeylElement FedosovSetup::fedosov_d(const WeylElement& a) const {
    std::uint32_t ord = std::min(a.order(), working_order());
    WeylElement al = truncate(a, ord);
    WeylElement rl = truncate(r_, ord);
    return -delta(al) + nabla(al, geometry()) - ad_div_nu(rl, al, lambda());
}

WeylElement FedosovSetup::fedosov_d_inv(const WeylElement& a) const {
    std::uint32_t ord = std::min(a.order(), working_order());
    WeylElement acc = truncate(a, ord);
    WeylElement term = acc;
    WeylElement rl = truncate(r_, ord);
    auto op = [&](const WeylElement& x) {
        // super-anticommutator [delta_inv, nabla - (1/nu) ad(r)] of two odd operators
        WeylElement lx = nabla(x, geometry()) - ad_div_nu(rl, x, lambda());
        return delta_inv(lx) + nabla(delta_inv(x), geometry()) - ad_div_nu(rl, delta_inv(x), lambda());
    };
    for (std::uint32_t guard = 0; !term.is_zero(); ++guard) {
        if (guard > ord + 2) throw InternalError("fedosov homotopy series failed to terminate");
        term = op(term);
        acc += term;
    }
    return -delta_inv(acc);
}

WeylElement FedosovSetup::taylor(const RationalFunction& f) const {
    {
        std::lock_guard<std::mutex> lock(cache_->mutex);
        auto it = cache_->map.find(f);
        if (it != cache_->map.end()) return it->second;
    }
    const std::uint32_t w = working_order();
    const WeylElement f0 = WeylElement::scalar(dim(), w, f);
    WeylElement tau = f0;
    bool stable = false;
    for (std::uint32_t iter = 0; iter <= w + 2; ++iter) {
        WeylElement next = f0 + delta_inv(nabla(tau, geometry()) - ad_div_nu(r_, tau, lambda()));
        if (next == tau) {
            stable = true;
            break;
        }
        tau = std::move(next);
    }
    if (!stable) throw InternalError("fedosov-taylor recursion failed to stabilize");
    if (!(sigma_project(tau) == FormalFunction(f))) throw InternalError("sigma(tau(f)) != f");
    // Independent route: tau(f) = f - D_inv(1 (x) df).
    WeylElement via_dinv = f0 - fedosov_d_inv(antisym_embed(exterior_d(f), w));
    if (!(tau == via_dinv)) throw InternalError("taylor recursion disagrees with the D_inv formula");
    std::lock_guard<std::mutex> lock(cache_->mutex);
    return cache_->map.emplace(f, std::move(tau)).first->second;
}

WeylElement FedosovSetup::taylor(const FormalFunction& f) const {
    const std::uint32_t w = working_order();
    WeylElement acc(dim(), w);
    for (const auto& [k, c] : f.coeffs()) {
        if (2 * k > w) continue; // beyond the working order entirely
        acc += taylor(c).shifted_nu(k);
    }
    return acc;
}

StarResult FedosovSetup::star(const FormalFunction& f, const FormalFunction& g) const {
    WeylElement prod = circ(taylor(f), taylor(g), lambda());
    return {sigma_project(prod).truncated_nu(certified_nu_order()), certified_nu_order()};
}

StarResult FedosovSetup::star(const RationalFunction& f, const RationalFunction& g) const {
    return star(FormalFunction(f), FormalFunction(g));
}

FormalFunction FedosovSetup::star_ad(const FormalFunction& f, const FormalFunction& g) const {
    FormalFunction fg = star(f, g).value;
    FormalFunction gf = star(g, f).value;
    return (fg - gf).divided_by_nu();
}

FedosovSetup::DerivationHandle FedosovSetup::derivation_from_one_form(const OneFormSeries& a) const {
    for (const auto& [k, c] : a.coeffs())
        if (!is_closed(c)) throw ValidationError("A not closed", "every nu-coefficient of A must be closed");
    const std::uint32_t w = working_order();
    WeylElement one_a = antisym_embed(a, w);
    WeylElement h = fedosov_d_inv(one_a);
    if (!sigma_project(h).is_zero()) throw InternalError("h_A has a nonzero sigma part");
    if (!equal_mod(fedosov_d(h), one_a, w - 2)) throw InternalError("D h_A != 1 (x) A");
    return {a, h};
}

FormalFunction FedosovSetup::apply_derivation(const DerivationHandle& d, const FormalFunction& f) const {
    WeylElement t = taylor(f);
    WeylElement res = -ad_div_nu(d.h, t, lambda());
    return sigma_project(res).truncated_nu(certified_nu_order());
}

ConnectionDifference connection_difference(const ChartGeometry& a, const ChartGeometry& b, std::uint32_t order) {
    if (!a.same_omega(b)) throw ValidationError("omega mismatch", "connection difference needs a common omega");
    const unsigned n = a.dim();
    std::vector<RationalFunction> s(std::size_t(n) * n * n, RationalFunction(n));
    auto sk = [&](unsigned k, unsigned i, unsigned j) -> RationalFunction& { return s[(k * n + i) * n + j]; };
    for (unsigned k = 0; k < n; ++k)
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) sk(k, i, j) = a.gamma(k, i, j) - b.gamma(k, i, j);

    std::vector<RationalFunction> sigma3(std::size_t(n) * n * n, RationalFunction(n));
    auto sg = [&](unsigned x, unsigned y, unsigned z) -> RationalFunction& { return sigma3[(x * n + y) * n + z]; };
    for (unsigned x = 0; x < n; ++x)
        for (unsigned y = 0; y < n; ++y)
            for (unsigned z = 0; z < n; ++z) {
                RationalFunction v(n);
                for (unsigned t = 0; t < n; ++t) v += sk(t, x, y) * a.omega()[t][z];
                sg(x, y, z) = v;
            }

    // T(Z,Y;X) = sigma(X,Y,Z): symmetric slots (Z,Y) -> y^a y^b, wedge slot X -> dx^c.
    WeylElement t(n, order);
    for (unsigned aidx = 0; aidx < n; ++aidx)
        for (unsigned bidx = 0; bidx < n; ++bidx)
            for (unsigned c = 0; c < n; ++c) {
                const RationalFunction& v = sg(c, bidx, aidx);
                if (v.is_zero()) continue;
                WeylElement piece = WeylElement::scalar(n, order, v);
                piece = fiber_mul(fiber_mul(piece, aidx), bidx);
                t += wedge_mul_left(piece, c);
            }

    // Stated identities of the difference tensor, checked exactly.
    if (!delta(t).is_zero()) throw InternalError("delta T != 0 for a connection difference");
    WeylElement ra = curvature_element(a, order);
    WeylElement rb = curvature_element(b, order);
    WeylElement tt = circ_div_nu(t, t, a.lambda());
    if (!(nabla(t, a) == rb - ra + tt)) throw InternalError("nabla T identity failed");
    if (!(nabla(t, b) == rb - ra - tt)) throw InternalError("nabla' T identity failed");
    return {t, sigma3};
}

bool is_normalized(const WeylElement& s) {
    for (const auto& [k, c] : s.terms())
        if (k.sym_degree() == 1 || k.total_degree() < 4) return false;
    return true;
}

std::vector<RationalFunction> sym_tensor3_components(const WeylElement& cubic) {
    const unsigned n = cubic.dim();
    std::vector<RationalFunction> sigma3(std::size_t(n) * n * n, RationalFunction(n));
    for (const auto& [k, c] : cubic.terms()) {
        if (k.nu != 0 || k.wedge != 0 || k.sym_degree() != 3)
            throw InternalError("element is not a pure nu^0 cubic fiber polynomial");
        // multiplicity alpha!/3! restores tensor components from the monomial
        Rational fact(1);
        for (unsigned v = 0; v < n; ++v)
            for (unsigned e = 2; e <= k.fiber.get(v); ++e) fact *= e;
        fact /= 6;
        std::vector<unsigned> idx;
        for (unsigned v = 0; v < n; ++v)
            for (unsigned e = 0; e < k.fiber.get(v); ++e) idx.push_back(v);
        std::sort(idx.begin(), idx.end());
        do {
            sigma3[(idx[0] * n + idx[1]) * n + idx[2]] += c.scaled(fact);
        } while (std::next_permutation(idx.begin(), idx.end()));
    }
    return sigma3;
}

WeylElement sym3_embed(const std::vector<RationalFunction>& sigma3, unsigned dim, std::uint32_t order) {
    WeylElement r(dim, order);
    for (unsigned x = 0; x < dim; ++x)
        for (unsigned y = 0; y < dim; ++y)
            for (unsigned z = 0; z < dim; ++z) {
                const RationalFunction& v = sigma3[(x * dim + y) * dim + z];
                if (v.is_zero()) continue;
                WeylElement piece = WeylElement::scalar(dim, order, v);
                r += fiber_mul(fiber_mul(fiber_mul(piece, x), y), z);
            }
    return r;
}

EquivalenceResult triple_equivalence(const FedosovSetup& a, const FedosovSetup& b) {
    if (!a.geometry().same_omega(b.geometry()))
        throw ValidationError("omega mismatch", "triple equivalence needs a common omega");
    if (a.order() != b.order()) throw MismatchError("setups at different truncation orders");
    ConnectionDifference cd = connection_difference(a.geometry(), b.geometry(), a.working_order());
    WeylElement e = sym3_embed(cd.sigma3, a.dim(), a.working_order()) - a.s() + b.s();
    OneFormSeries vartheta(a.dim());
    for (const auto& [k, c] : e.terms())
        if (k.sym_degree() != 1 || k.wedge != 0 || k.nu == 0) return {false, vartheta};
    if (!e.is_zero()) vartheta = sym_extract_one_form(e);
    TwoFormSeries diff = a.omega2() - b.omega2();
    if (!(diff == exterior_d(vartheta))) return {false, OneFormSeries(a.dim())};
    return {true, vartheta};
}

NormalizedTriple normalize_triple(const FedosovSetup& setup) {
    const unsigned n = setup.dim();
    const std::uint32_t w = setup.working_order();
    WeylElement s1(n, w), s30(n, w), rest(n, w);
    for (const auto& [k, c] : setup.s().terms()) {
        if (k.sym_degree() == 1)
            s1.add_term(k, c);
        else if (k.sym_degree() == 3 && k.nu == 0)
            s30.add_term(k, c);
        else
            rest.add_term(k, c);
    }
    // s = s' + sigma (x) 1 - vartheta (x) 1 with s' = rest
    OneFormSeries vartheta(n);
    if (!s1.is_zero()) {
        OneFormSeries minus = sym_extract_one_form(s1);
        vartheta = OneFormSeries(n) - minus;
    }
    std::vector<RationalFunction> sigma3 = s30.is_zero()
                                               ? std::vector<RationalFunction>(std::size_t(n) * n * n, RationalFunction(n))
                                               : sym_tensor3_components(s30);

    // nabla' = nabla - S^sigma with S^k_ij = Lambda^{kz} sigma_ijz
    Christoffel gamma = setup.geometry().gamma();
    for (unsigned k = 0; k < n; ++k)
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) {
                RationalFunction v(n);
                for (unsigned z = 0; z < n; ++z)
                    v += setup.geometry().lambda()[k][z] * sigma3[(i * n + j) * n + z];
                gamma[k][i][j] -= v;
            }
    auto geom = std::make_shared<const ChartGeometry>(setup.geometry().coords(), setup.geometry().omega(), gamma);

    TwoFormSeries omega2 = setup.omega2() - exterior_d(vartheta);
    WeylElement snew = rest;
    if (!is_normalized(snew) && !snew.is_zero()) throw InternalError("normalization left a bad s");
    FedosovSetup out(FedosovInputs{geom, omega2, snew, setup.order()});
    return {std::move(out), vartheta, sigma3};
}

} // namespace fedlab
