#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fedlab/formal_series.hpp"
#include "fedlab/monomial.hpp"
#include "fedlab/rational_function.hpp"

namespace fedlab {

/// Key of a Weyl term: power of nu, fiber monomial in the formal variables
/// y^1..y^n (the symmetric tensor factor), and a strictly increasing wedge
/// subset of coordinate indices stored as a bitmask (the antisymmetric
/// factor dx^{j_1} ^ ... ^ dx^{j_k}).
struct WeylKey {
    std::uint32_t nu = 0;
    Mono fiber;
    std::uint32_t wedge = 0;

    unsigned sym_degree() const { return fiber.total_degree(); }
    unsigned form_degree() const { return unsigned(__builtin_popcount(wedge)); }
    /// Total degree: symmetric degree plus twice the nu-power.
    unsigned total_degree() const { return sym_degree() + 2 * nu; }

    auto operator<=>(const WeylKey&) const = default;
};

/// Truncated element of the formal Weyl algebra tensor forms. A finite,
/// canonical sum of WeylKey terms with rational-function coefficients.
/// Elements with order kUnbounded are exact (nothing is ever dropped);
/// elements with a finite truncation order silently drop terms of total
/// degree above the order, realizing computation modulo W_{N+1}.
///
/// Equality compares the chart dimension and the terms; the truncation
/// order is bookkeeping, not part of the value.
class WeylElement {
public:
    static constexpr std::uint32_t kUnbounded = 0xffffffffu;

    explicit WeylElement(unsigned dim = 0, std::uint32_t order = kUnbounded);

    static WeylElement scalar(unsigned dim, std::uint32_t order, RationalFunction f);
    static WeylElement from_function(const FormalFunction& f, std::uint32_t order);

    unsigned dim() const { return dim_; }
    std::uint32_t order() const { return order_; }
    const std::map<WeylKey, RationalFunction>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    RationalFunction coeff(const WeylKey& k) const;
    void add_term(const WeylKey& k, const RationalFunction& c);

    /// Smallest total degree present; kUnbounded when zero.
    std::uint32_t min_total_degree() const;
    std::uint32_t max_sym_degree() const;

    WeylElement operator-() const;
    WeylElement operator+(const WeylElement& o) const;
    WeylElement operator-(const WeylElement& o) const;
    WeylElement& operator+=(const WeylElement& o);
    WeylElement& operator-=(const WeylElement& o);

    WeylElement scaled(const Rational& c) const;
    WeylElement scaled(const RationalFunction& c) const;
    WeylElement shifted_nu(unsigned k) const;

    bool operator==(const WeylElement& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }

private:
    unsigned dim_;
    std::uint32_t order_;
    std::map<WeylKey, RationalFunction> terms_;
};

using RfMatrix = std::vector<std::vector<RationalFunction>>;

/// Pointwise super-commutative product (fiber monomials multiply, wedge
/// factors concatenate with the shuffle sign).
WeylElement mul(const WeylElement& a, const WeylElement& b);

/// Fibrewise Weyl product: mul composed with
/// exp((nu/2) Lambda^{ij} i_s(d_i) (x) i_s(d_j)). The series terminates at
/// the smaller symmetric degree of the factors.
WeylElement circ(const WeylElement& a, const WeylElement& b, const RfMatrix& lambda);

/// Form-degree graded super-commutator with respect to circ.
WeylElement commutator(const WeylElement& a, const WeylElement& b, const RfMatrix& lambda);

/// (1/nu) ad(h) a. Divisibility of the commutator by nu is structural; the
/// product is internally computed two degrees above the operand truncation
/// so the division loses nothing.
WeylElement ad_div_nu(const WeylElement& h, const WeylElement& a, const RfMatrix& lambda);

enum class DegreeKind { Sym, Form, Nu, Total };

/// Exact set of degrees of the given kind occurring in a.
std::set<unsigned> degree_spectrum(const WeylElement& a, DegreeKind kind);

/// Drop all terms of total degree above n; the result's order is
/// min(a.order(), n).
WeylElement truncate(const WeylElement& a, std::uint32_t n);

/// Equality modulo terms of total degree above n.
bool equal_mod(const WeylElement& a, const WeylElement& b, std::uint32_t n);

/// Central elements are exactly those of symmetric degree zero.
bool is_central(const WeylElement& a);

/// i_s(d_i): derivative in the fiber variable y^i.
WeylElement fiber_partial(const WeylElement& a, unsigned i);

/// i_a(d_i): antisymmetric insertion into the leading wedge slot.
WeylElement wedge_insert_partial(const WeylElement& a, unsigned i);

/// Multiply by the fiber variable y^i.
WeylElement fiber_mul(const WeylElement& a, unsigned i);

/// Left wedge with dx^i.
WeylElement wedge_mul_left(const WeylElement& a, unsigned i);

/// Divide by nu; every term must carry nu >= 1.
WeylElement divide_by_nu(const WeylElement& a);

/// Retag with a (typically larger) truncation order; terms are unchanged.
WeylElement lift_order(const WeylElement& a, std::uint32_t order);

/// Parts of even / odd form degree.
WeylElement even_part(const WeylElement& a);
WeylElement odd_part(const WeylElement& a);

std::string to_string(const WeylElement& a, const std::vector<std::string>& coords);

} // namespace fedlab
