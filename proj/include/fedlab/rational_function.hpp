#pragma once

#include <string>
#include <vector>

#include "fedlab/polynomial.hpp"

namespace fedlab {

/// Exact rational function in the chart coordinates: a quotient of
/// multivariate polynomials over the rationals, kept in canonical form
/// (numerator and denominator coprime, denominator a primitive integer
/// polynomial with positive leading coefficient). Structural equality is
/// mathematical equality.
class RationalFunction {
public:
    explicit RationalFunction(unsigned nvars = 0);
    RationalFunction(Polynomial num); // NOLINT: implicit lift is intended
    RationalFunction(Polynomial num, Polynomial den);

    static RationalFunction constant(unsigned nvars, Rational c);
    static RationalFunction variable(unsigned nvars, unsigned var, unsigned power = 1);

    unsigned nvars() const { return num_.nvars(); }
    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    Rational constant_value() const { return num_.constant_value(); }

    RationalFunction operator-() const;
    RationalFunction operator+(const RationalFunction& o) const;
    RationalFunction operator-(const RationalFunction& o) const;
    RationalFunction operator*(const RationalFunction& o) const;
    RationalFunction operator/(const RationalFunction& o) const;
    RationalFunction& operator+=(const RationalFunction& o);
    RationalFunction& operator-=(const RationalFunction& o);

    RationalFunction scaled(const Rational& c) const;
    RationalFunction pow(int e) const;

    /// Quotient-rule partial derivative, canonical.
    RationalFunction partial(unsigned var) const;

    /// Exact evaluation; throws PoleError when the denominator vanishes.
    Rational eval(const std::vector<Rational>& point) const;

    bool operator==(const RationalFunction& o) const = default;
    bool operator<(const RationalFunction& o) const;

    /// Exact sum of a batch. Groups the parts by structurally equal
    /// denominators, merges numerators polynomially, and canonicalizes once
    /// per group; far fewer gcd runs than folding with operator+.
    static RationalFunction sum(unsigned nvars, std::vector<RationalFunction> parts);

private:
    void canonicalize();
    void try_factor_denominator();

    Polynomial num_, den_;
    // Denominator factored over the global base registry as (base id, exp),
    // sorted by id; valid only when fac_known_. Pure acceleration: products
    // and sums of two factored values need no generic gcd at all, because a
    // canonical numerator is coprime to every base of its own denominator.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> fac_;
    bool fac_known_ = false;
};

std::string to_string(const RationalFunction& f, const std::vector<std::string>& names);

} // namespace fedlab
