#pragma once

#include "fedlab/geometry.hpp"
#include "fedlab/weyl.hpp"

namespace fedlab {

/// Fiber differential delta = (1 (x) dx^i) i_s(d_i); squares to zero.
WeylElement delta(const WeylElement& a);

/// Homotopy of delta: (1/(k+l)) (dx^i (x) 1) i_a(d_i) on the (degs=k, dega=l)
/// components with k+l > 0, zero on the k+l=0 part.
WeylElement delta_inv(const WeylElement& a);

/// Projection onto symmetric and antisymmetric degree zero.
FormalFunction sigma_project(const WeylElement& a);

/// Symmetric insertion i_s(X) = X^i d/dy^i.
WeylElement insert_sym(const VectorField& x, const WeylElement& a);

/// Antisymmetric insertion i_a(X) into the leading wedge slot.
WeylElement insert_antisym(const VectorField& x, const WeylElement& a);

/// The connection derivation nabla = (1 (x) dx^i) nabla_{d_i} acting on both
/// tensor factors; satisfies [delta, nabla] = 0 and
/// nabla^2 = -(1/nu) ad(R) for the curvature element R.
WeylElement nabla(const WeylElement& a, const ChartGeometry& g);

/// Curvature element R = (1/4) omega_it R^t_jkl dx^i v dx^j (x) dx^k ^ dx^l.
WeylElement curvature_element(const ChartGeometry& g, std::uint32_t order = WeylElement::kUnbounded);

/// Tensorial Lie derivative along an arbitrary vector field; preserves all
/// three degrees.
WeylElement lie_derivative(const VectorField& x, const WeylElement& a);

/// Symmetric covariant derivative D theta = dx^i v nabla_{d_i} theta of a
/// one-form, returned as the degs-2 element (D theta (x) 1).
WeylElement sym_cov_derivative(const OneForm& theta, const ChartGeometry& g,
                               std::uint32_t order = WeylElement::kUnbounded);

struct SymplecticCheck {
    bool is_symplectic;
    OneForm theta;    // theta_X = i_X omega
    TwoForm lie_omega;
};

/// Computes Lie_X omega componentwise and theta_X = i_X omega; for a closed
/// omega the two agree through Lie_X omega = d theta_X, which is asserted.
SymplecticCheck check_symplectic(const VectorField& x, const ChartGeometry& g);

// Embeddings of forms into the Weyl algebra.
WeylElement sym_embed(const OneForm& th, std::uint32_t order);        // theta (x) 1
WeylElement sym_embed(const OneFormSeries& th, std::uint32_t order);
WeylElement antisym_embed(const OneForm& a, std::uint32_t order);     // 1 (x) A
WeylElement antisym_embed(const OneFormSeries& a, std::uint32_t order);
WeylElement antisym_embed(const TwoForm& f, std::uint32_t order);     // 1 (x) Omega
WeylElement antisym_embed(const TwoFormSeries& f, std::uint32_t order);

/// Inverse of sym_embed on degs-1, dega-0 elements: component j collects the
/// nu-series multiplying y^j. Throws when other term shapes are present.
OneFormSeries sym_extract_one_form(const WeylElement& a);

/// Exterior differential of a formal function, per nu-order.
OneFormSeries differential(const FormalFunction& f);

} // namespace fedlab
