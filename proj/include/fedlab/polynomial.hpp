#pragma once

#include <utility>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fedlab/monomial.hpp"
#include "fedlab/rational.hpp"

namespace fedlab {

/// Multivariate polynomial over the rationals in a fixed number of chart
/// coordinates. Terms are kept sorted lexicographically (leading term
/// last); zero coefficients are never stored, so structural equality is
/// mathematical equality.
class Polynomial {
public:
    using Term = std::pair<Mono, Rational>;
    using TermMap = std::vector<Term>;

    explicit Polynomial(unsigned nvars = 0);

    static Polynomial constant(unsigned nvars, Rational c);
    static Polynomial variable(unsigned nvars, unsigned var, unsigned power = 1);

    unsigned nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_one() const;
    /// Constant term (zero if absent); for is_constant() polynomials this is the value.
    Rational constant_value() const;

    /// Total degree; -1 for the zero polynomial.
    int degree() const;
    int degree_in(unsigned var) const;
    bool depends_on(unsigned var) const { return degree_in(var) > 0; }

    /// Lexicographically leading term (largest monomial). Polynomial must be nonzero.
    const Term& leading() const;

    void add_term(const Mono& m, const Rational& c);
    /// Push a term known to be lexicographically above everything stored.
    void append_term(const Mono& m, Rational c);

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);

    Polynomial scaled(const Rational& c) const;
    Polynomial pow(unsigned e) const;

    Polynomial partial(unsigned var) const;
    Rational eval(const std::vector<Rational>& point) const;

    /// Rational content: the positive-or-negative scalar c (sign of the leading
    /// coefficient) such that *this / c has coprime integer coefficients.
    /// Zero polynomial has content 0.
    Rational content() const;

    bool operator==(const Polynomial& o) const = default;

    /// Deterministic total order (for use as a map key).
    static int compare(const Polynomial& a, const Polynomial& b);

private:
    unsigned nvars_;
    TermMap terms_;
};

/// Exact quotient a / b, or nullopt when b does not divide a. b must be nonzero.
std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);

/// Primitive greatest common divisor, normalized to coprime integer
/// coefficients with positive leading (lex) coefficient. gcd(0,0) = 0;
/// any nonzero constant input makes the gcd 1.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Advisory registry of denominator factor bases. Registered square-free
/// bases let gcd peel common power factors by cheap trial division before
/// falling back to the generic chain; correctness never depends on it.
/// The registry is append-only, so base ids stay valid for the process
/// lifetime.
void note_denominator_factor(const Polynomial& den);

/// Snapshot of the registered bases (immutable, append-only prefix order).
std::shared_ptr<const std::vector<Polynomial>> denominator_bases();

/// Cached expanded power base^exp of a registered base.
Polynomial denominator_base_power(std::uint32_t id, std::uint32_t exp);

/// Canonical rendering: lex-descending terms, `^` powers, `*` products.
std::string to_string(const Polynomial& p, const std::vector<std::string>& names);

} // namespace fedlab
