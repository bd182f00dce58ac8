#pragma once

#include <map>
#include <mutex>

#include "fedlab/calculus.hpp"
#include "fedlab/geometry.hpp"

namespace fedlab {

struct FedosovInputs {
    GeometryPtr geometry;
    TwoFormSeries omega2; // formal series of closed two-forms, starts at nu^1
    WeylElement s;        // normalization element: sigma(s) = 0, total degree >= 3
    std::uint32_t order;  // truncation order N
};

/// Result of a star product together with the nu-order through which its
/// coefficients are certified at the setup's truncation order.
struct StarResult {
    FormalFunction value;
    unsigned certified_order;
};

/// One Fedosov star product: a validated triple (nabla, Omega, s) with the
/// element r solved at a working order a few degrees above the requested
/// truncation, so that every certified quantity is exact.
class FedosovSetup {
public:
    static constexpr std::uint32_t kMargin = 4;

    explicit FedosovSetup(FedosovInputs in);

    const ChartGeometry& geometry() const { return *in_.geometry; }
    const GeometryPtr& geometry_ptr() const { return in_.geometry; }
    const TwoFormSeries& omega2() const { return in_.omega2; }
    const WeylElement& s() const { return s_; }
    std::uint32_t order() const { return in_.order; }
    std::uint32_t working_order() const { return in_.order + kMargin; }
    unsigned certified_nu_order() const { return in_.order / 2; }
    unsigned dim() const { return in_.geometry->dim(); }
    const RfMatrix& lambda() const { return in_.geometry->lambda(); }

    const WeylElement& r() const { return r_; }
    const WeylElement& curvature_weyl() const { return r_elem_; }

    /// Fedosov derivation -delta + nabla - (1/nu) ad(r).
    WeylElement fedosov_d(const WeylElement& a) const;

    /// Homotopy operator of the Fedosov derivation (geometric series of
    /// [delta_inv, nabla - (1/nu) ad(r)] followed by -delta_inv).
    WeylElement fedosov_d_inv(const WeylElement& a) const;

    /// Fedosov-Taylor series of a function, memoized per setup. Computed by
    /// the degree recursion and cross-checked against f - D_inv(1 (x) df).
    WeylElement taylor(const RationalFunction& f) const;
    WeylElement taylor(const FormalFunction& f) const;

    /// sigma(tau(f) o tau(g)), truncated at the certified nu-order.
    StarResult star(const FormalFunction& f, const FormalFunction& g) const;
    StarResult star(const RationalFunction& f, const RationalFunction& g) const;

    /// (1/nu) ad_*(f) g, the quasi-inner derivation generated by f.
    FormalFunction star_ad(const FormalFunction& f, const FormalFunction& g) const;

    struct DerivationHandle {
        OneFormSeries a;
        WeylElement h; // D h = 1 (x) A, sigma(h) = 0
    };

    /// Derivation of * attached to a formal series of closed one-forms.
    DerivationHandle derivation_from_one_form(const OneFormSeries& a) const;
    FormalFunction apply_derivation(const DerivationHandle& d, const FormalFunction& f) const;

    /// Residual of the r-equation delta r = nabla r - (1/nu) r o r + R + 1(x)Omega,
    /// truncated at the given order (defaults to N).
    WeylElement genr_residual(std::uint32_t at_order) const;
    WeylElement genr_residual() const { return genr_residual(order()); }

private:
    void validate() const;
    void solve_r();

    // Memoized Fedosov-Taylor series. The setup is immutable once built, so
    // copies may share the cache; access is serialized by the mutex.
    struct TauCache {
        std::mutex mutex;
        std::map<RationalFunction, WeylElement> map;
    };

    FedosovInputs in_;
    WeylElement s_;       // lifted to the working order
    WeylElement r_elem_;  // curvature element R at working order
    WeylElement omega_w_; // 1 (x) Omega at working order
    WeylElement r_;
    std::shared_ptr<TauCache> cache_ = std::make_shared<TauCache>();
};

/// Difference tensor of two symplectic torsion-free connections over the
/// same omega: T in degs 2, dega 1 with (1/nu) ad(T) = nabla_A - nabla_B,
/// and the totally symmetric sigma3[a][b][c] = omega(S(d_a, d_b), d_c).
struct ConnectionDifference {
    WeylElement t;
    std::vector<RationalFunction> sigma3; // flattened dim^3
};

ConnectionDifference connection_difference(const ChartGeometry& a, const ChartGeometry& b,
                                           std::uint32_t order = WeylElement::kUnbounded);

struct EquivalenceResult {
    bool equivalent;
    OneFormSeries vartheta; // meaningful when equivalent
};

/// Decides whether two triples over the same omega produce the identical
/// Fedosov derivation (hence the identical star product).
EquivalenceResult triple_equivalence(const FedosovSetup& a, const FedosovSetup& b);

struct NormalizedTriple {
    FedosovSetup setup;
    OneFormSeries vartheta;
    std::vector<RationalFunction> sigma3;
};

/// Removes the redundancy in (nabla, Omega, s): returns an equivalent setup
/// whose s lies in W_4 and has no symmetric-degree-one part.
NormalizedTriple normalize_triple(const FedosovSetup& s);

/// True when s has no symmetric-degree-one terms and minimal degree >= 4.
bool is_normalized(const WeylElement& s);

/// Totally symmetric 3-tensor components of a pure degs-3, nu^0 element.
std::vector<RationalFunction> sym_tensor3_components(const WeylElement& cubic);
/// Embedding sum_{abc} sigma_{abc} y^a y^b y^c.
WeylElement sym3_embed(const std::vector<RationalFunction>& sigma3, unsigned dim, std::uint32_t order);

} // namespace fedlab
