#pragma once

#include <map>
#include <string>

#include "fedlab/rational_function.hpp"

namespace fedlab {

/// Formal series in the deformation parameter nu with rational-function
/// coefficients; only finitely many orders are ever populated.
class FormalFunction {
public:
    explicit FormalFunction(unsigned nvars = 0) : nvars_(nvars) {}
    FormalFunction(RationalFunction f0); // NOLINT: order-zero embedding
    static FormalFunction nu_term(unsigned k, RationalFunction f);

    unsigned nvars() const { return nvars_; }
    const std::map<unsigned, RationalFunction>& coeffs() const { return c_; }
    RationalFunction coeff(unsigned k) const;
    void set_coeff(unsigned k, RationalFunction f);

    bool is_zero() const { return c_.empty(); }
    /// Largest populated nu-order, or -1 when zero.
    int max_order() const { return c_.empty() ? -1 : int(c_.rbegin()->first); }
    int min_order() const { return c_.empty() ? -1 : int(c_.begin()->first); }

    FormalFunction operator-() const;
    FormalFunction operator+(const FormalFunction& o) const;
    FormalFunction operator-(const FormalFunction& o) const;
    FormalFunction operator*(const FormalFunction& o) const;
    FormalFunction scaled(const Rational& c) const;
    FormalFunction scaled(const RationalFunction& c) const;

    FormalFunction shifted_nu(unsigned k) const; // multiply by nu^k
    /// Divide by nu; requires a vanishing order-zero coefficient.
    FormalFunction divided_by_nu() const;
    FormalFunction truncated_nu(unsigned max_order) const;
    FormalFunction partial(unsigned var) const;

    bool operator==(const FormalFunction& o) const = default;
    bool operator<(const FormalFunction& o) const;

private:
    unsigned nvars_;
    std::map<unsigned, RationalFunction> c_;
};

std::string to_string(const FormalFunction& f, const std::vector<std::string>& names);

/// Formal series in nu with exact rational (constant) coefficients.
class ScalarSeries {
public:
    ScalarSeries() = default;
    ScalarSeries(Rational c0); // NOLINT
    static ScalarSeries nu_term(unsigned k, Rational c);

    const std::map<unsigned, Rational>& coeffs() const { return c_; }
    Rational coeff(unsigned k) const;
    void set_coeff(unsigned k, Rational c);

    bool is_zero() const { return c_.empty(); }

    ScalarSeries operator-() const;
    ScalarSeries operator+(const ScalarSeries& o) const;
    ScalarSeries operator-(const ScalarSeries& o) const;
    ScalarSeries scaled(const Rational& c) const;

    bool operator==(const ScalarSeries& o) const = default;
    bool operator<(const ScalarSeries& o) const;

    /// Lift to a constant formal function on an nvars-dimensional chart.
    FormalFunction as_function(unsigned nvars) const;

private:
    std::map<unsigned, Rational> c_;
};

std::string to_string(const ScalarSeries& s);

} // namespace fedlab
