#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fedlab/rational_function.hpp"
#include "fedlab/weyl.hpp"

namespace fedlab {

/// Covariant one-form components alpha_i.
using OneForm = std::vector<RationalFunction>;
/// Two-form as an antisymmetric component matrix omega_{ij}.
using TwoForm = RfMatrix;
/// Christoffel symbols gamma[k][i][j] = Gamma^k_ij.
using Christoffel = std::vector<RfMatrix>;

/// Formal series of one-forms (per nu power).
class OneFormSeries {
public:
    explicit OneFormSeries(unsigned dim = 0) : dim_(dim) {}
    unsigned dim() const { return dim_; }
    const std::map<unsigned, OneForm>& coeffs() const { return c_; }
    OneForm coeff(unsigned k) const;
    void set_coeff(unsigned k, OneForm a);
    bool is_zero() const { return c_.empty(); }
    OneFormSeries operator+(const OneFormSeries& o) const;
    OneFormSeries operator-(const OneFormSeries& o) const;
    OneFormSeries shifted_nu(unsigned k) const;
    bool operator==(const OneFormSeries& o) const = default;

private:
    unsigned dim_;
    std::map<unsigned, OneForm> c_;
};

/// Formal series of two-forms (per nu power).
class TwoFormSeries {
public:
    explicit TwoFormSeries(unsigned dim = 0) : dim_(dim) {}
    unsigned dim() const { return dim_; }
    const std::map<unsigned, TwoForm>& coeffs() const { return c_; }
    TwoForm coeff(unsigned k) const;
    void set_coeff(unsigned k, TwoForm f);
    bool is_zero() const { return c_.empty(); }
    TwoFormSeries operator+(const TwoFormSeries& o) const;
    TwoFormSeries operator-(const TwoFormSeries& o) const;
    bool operator==(const TwoFormSeries& o) const = default;

private:
    unsigned dim_;
    std::map<unsigned, TwoForm> c_;
};

struct VectorField {
    std::vector<RationalFunction> comp;
    unsigned dim() const { return unsigned(comp.size()); }
    bool is_zero() const;
    VectorField operator-() const;
};

/// Commutator of vector fields [X,Y]^k = X^i d_i Y^k - Y^i d_i X^k.
VectorField field_bracket(const VectorField& x, const VectorField& y);

RationalFunction det(const RfMatrix& m);
/// Exact inverse; throws ValidationError("matrix singular") when det == 0.
RfMatrix invert(const RfMatrix& m);

OneForm zero_one_form(unsigned dim);
TwoForm zero_two_form(unsigned dim);
bool is_zero(const OneForm& a);
bool is_zero(const TwoForm& a);
OneForm add(const OneForm& a, const OneForm& b);
OneForm sub(const OneForm& a, const OneForm& b);
TwoForm sub(const TwoForm& a, const TwoForm& b);

OneForm exterior_d(const RationalFunction& f);
TwoForm exterior_d(const OneForm& a);
bool is_closed(const OneForm& a);
bool is_closed(const TwoForm& f);
TwoFormSeries exterior_d(const OneFormSeries& a);
bool is_closed(const TwoFormSeries& f);

/// i_X of a two-form: (i_X f)_j = X^i f_{ij}.
OneForm contract(const VectorField& x, const TwoForm& f);
OneFormSeries contract(const VectorField& x, const TwoFormSeries& f);
/// f(X, Y) = f_{ij} X^i Y^j.
RationalFunction pair_eval(const TwoForm& f, const VectorField& x, const VectorField& y);
FormalFunction pair_eval(const TwoFormSeries& f, const VectorField& x, const VectorField& y);

TwoForm lie_derivative(const VectorField& x, const TwoForm& f);
TwoFormSeries lie_derivative(const VectorField& x, const TwoFormSeries& f);

/// A symplectic coordinate chart: symplectic matrix, Poisson matrix and a
/// torsion-free symplectic connection. All structural invariants are
/// validated at construction; violations raise ValidationError with the
/// name of the failing identity.
class ChartGeometry {
public:
    ChartGeometry(std::vector<std::string> coords, RfMatrix omega, Christoffel gamma);

    unsigned dim() const { return dim_; }
    const std::vector<std::string>& coords() const { return coords_; }
    const RfMatrix& omega() const { return omega_; }
    const RfMatrix& lambda() const { return lambda_; }
    const Christoffel& gamma() const { return gamma_; }
    const RationalFunction& gamma(unsigned k, unsigned i, unsigned j) const { return gamma_[k][i][j]; }

    /// Curvature tensor R^t_{jkl} of the connection, in the convention
    /// R^t_jkl = d_k G^t_lj - d_l G^t_kj + G^t_km G^m_lj - G^t_lm G^m_kj.
    const RationalFunction& curvature(unsigned t, unsigned j, unsigned k, unsigned l) const;

    bool is_flat() const;
    bool same_omega(const ChartGeometry& o) const { return omega_ == o.omega_; }

    /// Hamiltonian vector field of f: the X with i_X omega = df.
    VectorField hamiltonian_field(const RationalFunction& f) const;
    /// Poisson bracket {f, g} = Lambda^{ij} d_i f d_j g.
    RationalFunction poisson(const RationalFunction& f, const RationalFunction& g) const;
    FormalFunction poisson(const FormalFunction& f, const FormalFunction& g) const;

private:
    void validate() const;

    unsigned dim_;
    std::vector<std::string> coords_;
    RfMatrix omega_;
    RfMatrix lambda_;
    Christoffel gamma_;
    std::vector<RationalFunction> curv_; // flattened t,j,k,l
};

using GeometryPtr = std::shared_ptr<const ChartGeometry>;

} // namespace fedlab
