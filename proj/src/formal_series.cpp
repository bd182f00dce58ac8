#include "fedlab/formal_series.hpp"

#include <sstream>

#include "fedlab/errors.hpp"

namespace fedlab {

FormalFunction::FormalFunction(RationalFunction f0) : nvars_(f0.nvars()) {
    set_coeff(0, std::move(f0));
}

FormalFunction FormalFunction::nu_term(unsigned k, RationalFunction f) {
    FormalFunction r(f.nvars());
    r.set_coeff(k, std::move(f));
    return r;
}

RationalFunction FormalFunction::coeff(unsigned k) const {
    auto it = c_.find(k);
    return it == c_.end() ? RationalFunction(nvars_) : it->second;
}

void FormalFunction::set_coeff(unsigned k, RationalFunction f) {
    if (f.is_zero())
        c_.erase(k);
    else
        c_[k] = std::move(f);
}

FormalFunction FormalFunction::operator-() const {
    FormalFunction r(nvars_);
    for (const auto& [k, f] : c_) r.c_.emplace(k, -f);
    return r;
}

FormalFunction FormalFunction::operator+(const FormalFunction& o) const {
    FormalFunction r = *this;
    for (const auto& [k, f] : o.c_) r.set_coeff(k, r.coeff(k) + f);
    return r;
}

FormalFunction FormalFunction::operator-(const FormalFunction& o) const { return *this + (-o); }

FormalFunction FormalFunction::operator*(const FormalFunction& o) const {
    FormalFunction r(nvars_);
    for (const auto& [ka, fa] : c_)
        for (const auto& [kb, fb] : o.c_) r.set_coeff(ka + kb, r.coeff(ka + kb) + fa * fb);
    return r;
}

FormalFunction FormalFunction::scaled(const Rational& c) const {
    FormalFunction r(nvars_);
    if (fedlab::is_zero(c)) return r;
    for (const auto& [k, f] : c_) r.c_.emplace(k, f.scaled(c));
    return r;
}

FormalFunction FormalFunction::scaled(const RationalFunction& c) const {
    FormalFunction r(nvars_);
    if (c.is_zero()) return r;
    for (const auto& [k, f] : c_) r.set_coeff(k, f * c);
    return r;
}

FormalFunction FormalFunction::shifted_nu(unsigned k) const {
    FormalFunction r(nvars_);
    for (const auto& [j, f] : c_) r.c_.emplace(j + k, f);
    return r;
}

FormalFunction FormalFunction::divided_by_nu() const {
    if (c_.count(0)) throw InternalError("nu-division of a series with nonzero constant order");
    FormalFunction r(nvars_);
    for (const auto& [j, f] : c_) r.c_.emplace(j - 1, f);
    return r;
}

FormalFunction FormalFunction::truncated_nu(unsigned max_order) const {
    FormalFunction r(nvars_);
    for (const auto& [j, f] : c_)
        if (j <= max_order) r.c_.emplace(j, f);
    return r;
}

FormalFunction FormalFunction::partial(unsigned var) const {
    FormalFunction r(nvars_);
    for (const auto& [j, f] : c_) r.set_coeff(j, f.partial(var));
    return r;
}

bool FormalFunction::operator<(const FormalFunction& o) const {
    auto ia = c_.begin(), ib = o.c_.begin();
    for (; ia != c_.end() && ib != o.c_.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first;
        if (ia->second != ib->second) return ia->second < ib->second;
    }
    return ib != o.c_.end();
}

std::string to_string(const FormalFunction& f, const std::vector<std::string>& names) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : f.coeffs()) {
        if (!first) os << " + ";
        first = false;
        std::string cs = to_string(c, names);
        if (k == 0) {
            os << cs;
            continue;
        }
        bool simple = c.is_polynomial() && c.num().terms().size() == 1 && sgn(c.num().leading().second) > 0 &&
                      c.num().leading().second.get_den() == 1;
        if (c.is_one())
            os << "nu";
        else if (simple)
            os << cs << "*nu";
        else
            os << "(" << cs << ")*nu";
        if (k > 1) os << "^" << k;
    }
    return os.str();
}

ScalarSeries::ScalarSeries(Rational c0) { set_coeff(0, std::move(c0)); }

ScalarSeries ScalarSeries::nu_term(unsigned k, Rational c) {
    ScalarSeries r;
    r.set_coeff(k, std::move(c));
    return r;
}

Rational ScalarSeries::coeff(unsigned k) const {
    auto it = c_.find(k);
    return it == c_.end() ? Rational(0) : it->second;
}

void ScalarSeries::set_coeff(unsigned k, Rational c) {
    if (fedlab::is_zero(c))
        c_.erase(k);
    else
        c_[k] = std::move(c);
}

ScalarSeries ScalarSeries::operator-() const {
    ScalarSeries r;
    for (const auto& [k, c] : c_) r.c_.emplace(k, -c);
    return r;
}

ScalarSeries ScalarSeries::operator+(const ScalarSeries& o) const {
    ScalarSeries r = *this;
    for (const auto& [k, c] : o.c_) r.set_coeff(k, r.coeff(k) + c);
    return r;
}

ScalarSeries ScalarSeries::operator-(const ScalarSeries& o) const { return *this + (-o); }

ScalarSeries ScalarSeries::scaled(const Rational& c) const {
    ScalarSeries r;
    if (fedlab::is_zero(c)) return r;
    for (const auto& [k, v] : c_) r.c_.emplace(k, v * c);
    return r;
}

bool ScalarSeries::operator<(const ScalarSeries& o) const {
    auto ia = c_.begin(), ib = o.c_.begin();
    for (; ia != c_.end() && ib != o.c_.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first;
        int c = cmp(ia->second, ib->second);
        if (c != 0) return c < 0;
    }
    return ib != o.c_.end();
}

FormalFunction ScalarSeries::as_function(unsigned nvars) const {
    FormalFunction f(nvars);
    for (const auto& [k, c] : c_) f.set_coeff(k, RationalFunction::constant(nvars, c));
    return f;
}

std::string to_string(const ScalarSeries& s) {
    if (s.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : s.coeffs()) {
        if (!first) os << " + ";
        first = false;
        if (k == 0) {
            os << c.get_str();
        } else {
            if (c == 1)
                os << "nu";
            else
                os << "(" << c.get_str() << ")*nu";
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

} // namespace fedlab
