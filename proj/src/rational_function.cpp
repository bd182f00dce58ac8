#include "fedlab/rational_function.hpp"

#include <algorithm>

#include "fedlab/errors.hpp"

namespace fedlab {

namespace {

using Factors = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

bool factors_contain(const Factors& f, std::uint32_t id) {
    for (const auto& [fid, e] : f)
        if (fid == id) return true;
    return false;
}

/// Exponent-wise merge of two factored denominators.
Factors merge_factors(const Factors& a, const Factors& b) {
    Factors out;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->first < ib->first)
            out.push_back(*ia++);
        else if (ib->first < ia->first)
            out.push_back(*ib++);
        else {
            out.emplace_back(ia->first, ia->second + ib->second);
            ++ia;
            ++ib;
        }
    }
    out.insert(out.end(), ia, a.end());
    out.insert(out.end(), ib, b.end());
    return out;
}

Polynomial expand_factors(unsigned nvars, const Factors& f) {
    Polynomial den = Polynomial::constant(nvars, 1);
    for (const auto& [id, e] : f) {
        if (e == 0) continue;
        den = den.is_one() ? denominator_base_power(id, e) : den * denominator_base_power(id, e);
    }
    return den;
}

} // namespace

RationalFunction::RationalFunction(unsigned nvars)
    : num_(nvars), den_(Polynomial::constant(nvars, 1)), fac_known_(true) {}

RationalFunction::RationalFunction(Polynomial num)
    : num_(std::move(num)), den_(Polynomial::constant(num_.nvars(), 1)), fac_known_(true) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
    canonicalize();
}

RationalFunction RationalFunction::constant(unsigned nvars, Rational c) {
    return RationalFunction(Polynomial::constant(nvars, std::move(c)));
}

RationalFunction RationalFunction::variable(unsigned nvars, unsigned var, unsigned power) {
    return RationalFunction(Polynomial::variable(nvars, var, power));
}

void RationalFunction::canonicalize() {
    fac_.clear();
    fac_known_ = false;
    if (num_.is_zero()) {
        den_ = Polynomial::constant(num_.nvars(), 1);
        fac_known_ = true;
        return;
    }
    if (den_.is_constant()) {
        Rational c = den_.constant_value();
        if (c != 1) num_ = num_.scaled(Rational(1) / c);
        den_ = Polynomial::constant(num_.nvars(), 1);
        fac_known_ = true;
        return;
    }
    Polynomial g = gcd(num_, den_);
    if (!g.is_one()) {
        num_ = *divide_exact(num_, g);
        den_ = *divide_exact(den_, g);
    }
    if (den_.is_constant()) {
        canonicalize();
        return;
    }
    Rational c = den_.content();
    if (c != 1) {
        num_ = num_.scaled(Rational(1) / c);
        den_ = *divide_exact(den_, Polynomial::constant(den_.nvars(), c));
    }
    note_denominator_factor(den_);
    try_factor_denominator();
}

void RationalFunction::try_factor_denominator() {
    fac_.clear();
    fac_known_ = false;
    if (den_.is_one()) {
        fac_known_ = true;
        return;
    }
    auto bases = denominator_bases();
    Polynomial rest = den_;
    for (std::uint32_t id = 0; id < bases->size(); ++id) {
        const Polynomial& q = (*bases)[id];
        if (q.nvars() != den_.nvars()) continue;
        std::uint32_t e = 0;
        while (!rest.is_constant()) {
            auto quot = divide_exact(rest, q);
            if (!quot) break;
            rest = std::move(*quot);
            ++e;
        }
        if (e) fac_.emplace_back(id, e);
    }
    if (rest.is_one()) {
        fac_known_ = true;
    } else {
        fac_.clear();
    }
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
    RationalFunction r(nvars());
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (den_.is_one() && o.den_.is_one()) {
        r.num_ = num_ + o.num_;
        return r;
    }
    if (fac_known_ && o.fac_known_) {
        // Factored Henrici: the common part g of the denominators is read
        // off the exponents, and the only cancellation candidates are the
        // bases of g.
        Factors gf, la, lb, lcm;
        {
            auto ia = fac_.begin();
            auto ib = o.fac_.begin();
            while (ia != fac_.end() || ib != o.fac_.end()) {
                if (ib == o.fac_.end() || (ia != fac_.end() && ia->first < ib->first)) {
                    la.push_back(*ia);
                    lcm.push_back(*ia);
                    ++ia;
                } else if (ia == fac_.end() || ib->first < ia->first) {
                    lb.push_back(*ib);
                    lcm.push_back(*ib);
                    ++ib;
                } else {
                    std::uint32_t m = std::min(ia->second, ib->second);
                    gf.emplace_back(ia->first, m);
                    if (ia->second > m) la.emplace_back(ia->first, ia->second - m);
                    if (ib->second > m) lb.emplace_back(ib->first, ib->second - m);
                    lcm.emplace_back(ia->first, std::max(ia->second, ib->second));
                    ++ia;
                    ++ib;
                }
            }
        }
        // num = n1 * (d2/g) + n2 * (d1/g)
        Polynomial n = num_ * expand_factors(nvars(), lb) + o.num_ * expand_factors(nvars(), la);
        if (n.is_zero()) return RationalFunction(nvars());
        if (gf.empty()) {
            // coprime denominators: the result is canonical as it stands
            r.num_ = std::move(n);
            r.den_ = den_ * o.den_;
            r.fac_ = std::move(lcm);
            r.fac_known_ = true;
            return r;
        }
        auto bases = denominator_bases();
        for (auto& [id, e] : gf) {
            const Polynomial& base = (*bases)[id];
            std::uint32_t peeled = 0;
            while (peeled < e) {
                auto quot = divide_exact(n, base);
                if (!quot) break;
                n = std::move(*quot);
                ++peeled;
            }
            if (peeled) {
                for (auto& [lid, le] : lcm)
                    if (lid == id) le -= peeled;
            }
            if (!gcd(n, base).is_constant()) {
                // a composite base splits across the terms; fall back
                return RationalFunction(std::move(n), expand_factors(nvars(), lcm));
            }
        }
        lcm.erase(std::remove_if(lcm.begin(), lcm.end(), [](const auto& p) { return p.second == 0; }), lcm.end());
        r.num_ = std::move(n);
        r.den_ = expand_factors(nvars(), lcm);
        r.fac_ = std::move(lcm);
        r.fac_known_ = true;
        return r;
    }
    // Generic Henrici: with coprime canonical inputs a/b + c/d, only
    // gcd(b, d) can survive into a common factor of the result.
    if (den_ == o.den_) {
        Polynomial n = num_ + o.num_;
        if (n.is_zero()) return RationalFunction(nvars());
        Polynomial g = gcd(n, den_);
        r.num_ = g.is_one() ? n : *divide_exact(n, g);
        r.den_ = g.is_one() ? den_ : *divide_exact(den_, g);
        r.try_factor_denominator();
        return r;
    }
    Polynomial g = gcd(den_, o.den_);
    if (g.is_one()) {
        r.num_ = num_ * o.den_ + o.num_ * den_;
        r.den_ = den_ * o.den_;
        if (r.num_.is_zero()) return RationalFunction(nvars());
        r.try_factor_denominator();
        return r;
    }
    Polynomial db = *divide_exact(den_, g);
    Polynomial dd = *divide_exact(o.den_, g);
    Polynomial n = num_ * dd + o.num_ * db;
    if (n.is_zero()) return RationalFunction(nvars());
    Polynomial h = gcd(n, g);
    if (h.is_one()) {
        r.num_ = n;
        r.den_ = den_ * dd;
    } else {
        r.num_ = *divide_exact(n, h);
        r.den_ = *divide_exact(den_, h) * dd;
    }
    r.try_factor_denominator();
    return r;
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const { return *this + (-o); }

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
    *this = *this + o;
    return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) {
    *this = *this - o;
    return *this;
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
    if (is_zero() || o.is_zero()) return RationalFunction(nvars());
    if (den_.is_one() && o.den_.is_one()) {
        RationalFunction r(nvars());
        r.num_ = num_ * o.num_;
        return r;
    }
    if (fac_known_ && o.fac_known_) {
        Polynomial n = num_ * o.num_;
        Factors powers = merge_factors(fac_, o.fac_);
        auto bases = denominator_bases();
        for (auto& [id, e] : powers) {
            // Bases of both inputs are coprime to both numerators, hence to
            // the product; only one-sided bases can cancel.
            if (factors_contain(fac_, id) && factors_contain(o.fac_, id)) continue;
            const Polynomial& base = (*bases)[id];
            while (e > 0) {
                auto quot = divide_exact(n, base);
                if (!quot) break;
                n = std::move(*quot);
                --e;
            }
            if (e > 0 && !gcd(n, base).is_constant())
                return RationalFunction(std::move(n), expand_factors(nvars(), powers));
        }
        powers.erase(std::remove_if(powers.begin(), powers.end(), [](const auto& p) { return p.second == 0; }),
                     powers.end());
        RationalFunction r(nvars());
        r.num_ = std::move(n);
        r.den_ = expand_factors(nvars(), powers);
        r.fac_ = std::move(powers);
        r.fac_known_ = true;
        return r;
    }
    // Cross-cancel; the product of the reduced parts is then canonical.
    Polynomial g1 = gcd(num_, o.den_);
    Polynomial g2 = gcd(o.num_, den_);
    Polynomial n1 = g1.is_one() ? num_ : *divide_exact(num_, g1);
    Polynomial d2 = g1.is_one() ? o.den_ : *divide_exact(o.den_, g1);
    Polynomial n2 = g2.is_one() ? o.num_ : *divide_exact(o.num_, g2);
    Polynomial d1 = g2.is_one() ? den_ : *divide_exact(den_, g2);
    RationalFunction r(nvars());
    r.num_ = n1 * n2;
    r.den_ = d1 * d2;
    r.try_factor_denominator();
    return r;
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
    if (o.is_zero()) throw DivisionByZero("division by zero rational function");
    RationalFunction inv(o.den_, o.num_);
    return *this * inv;
}

RationalFunction RationalFunction::scaled(const Rational& c) const {
    RationalFunction r = *this;
    if (fedlab::is_zero(c)) return RationalFunction(nvars());
    r.num_ = r.num_.scaled(c);
    return r;
}

RationalFunction RationalFunction::pow(int e) const {
    if (e == 0) return constant(nvars(), 1);
    RationalFunction base = *this;
    if (e < 0) {
        if (is_zero()) throw DivisionByZero("negative power of zero");
        base = RationalFunction(den_, num_);
        e = -e;
    }
    RationalFunction acc = constant(nvars(), 1);
    while (e) {
        if (e & 1) acc = acc * base;
        base = (e >>= 1) ? base * base : base;
    }
    return acc;
}

RationalFunction RationalFunction::partial(unsigned var) const {
    if (den_.is_one()) return RationalFunction(num_.partial(var));
    if (fac_known_ && fac_.size() == 1) {
        // single-base quotient rule: (p / b^e)' = (p' b - e p b') / b^{e+1}
        auto bases = denominator_bases();
        const Polynomial& base = (*bases)[fac_.front().first];
        const std::uint32_t e = fac_.front().second;
        Polynomial n = num_.partial(var) * base - num_ * base.partial(var).scaled(Rational(e));
        if (n.is_zero()) return RationalFunction(nvars());
        Factors powers{{fac_.front().first, e + 1}};
        std::uint32_t left = e + 1;
        while (left > 0) {
            auto quot = divide_exact(n, base);
            if (!quot) break;
            n = std::move(*quot);
            --left;
        }
        if (left > 0 && !gcd(n, base).is_constant())
            return RationalFunction(std::move(n), denominator_base_power(fac_.front().first, left));
        powers.front().second = left;
        RationalFunction r(nvars());
        r.num_ = std::move(n);
        if (left == 0) {
            r.fac_known_ = true;
            return r;
        }
        r.den_ = expand_factors(nvars(), powers);
        r.fac_ = std::move(powers);
        r.fac_known_ = true;
        return r;
    }
    Polynomial n = num_.partial(var) * den_ - num_ * den_.partial(var);
    return RationalFunction(std::move(n), den_ * den_);
}

Rational RationalFunction::eval(const std::vector<Rational>& point) const {
    Rational d = den_.eval(point);
    if (sgn(d) == 0) throw PoleError("rational function evaluated at a pole");
    return num_.eval(point) / d;
}

bool RationalFunction::operator<(const RationalFunction& o) const {
    int c = Polynomial::compare(den_, o.den_);
    if (c != 0) return c < 0;
    return Polynomial::compare(num_, o.num_) < 0;
}

RationalFunction RationalFunction::sum(unsigned nvars, std::vector<RationalFunction> parts) {
    if (parts.empty()) return RationalFunction(nvars);
    if (parts.size() == 1) return std::move(parts.front());
    std::sort(parts.begin(), parts.end(), [](const RationalFunction& x, const RationalFunction& y) {
        return Polynomial::compare(x.den_, y.den_) < 0;
    });
    RationalFunction acc(nvars);
    std::size_t i = 0;
    while (i < parts.size()) {
        Polynomial num = std::move(parts[i].num_);
        std::size_t j = i + 1;
        while (j < parts.size() && parts[j].den_ == parts[i].den_) {
            num += parts[j].num_;
            ++j;
        }
        if (!num.is_zero()) {
            if (parts[i].fac_known_) {
                // the merged numerator over a factored denominator only
                // needs base peeling, not a generic gcd
                RationalFunction part(nvars);
                part.num_ = std::move(num);
                part.den_ = std::move(parts[i].den_);
                part.fac_ = std::move(parts[i].fac_);
                part.fac_known_ = true;
                auto bases = denominator_bases();
                bool bailed = false;
                for (auto& [id, e] : part.fac_) {
                    const Polynomial& base = (*bases)[id];
                    while (e > 0) {
                        auto quot = divide_exact(part.num_, base);
                        if (!quot) break;
                        part.num_ = std::move(*quot);
                        --e;
                    }
                    if (e > 0 && !gcd(part.num_, base).is_constant()) {
                        bailed = true;
                        break;
                    }
                }
                if (bailed) {
                    acc += RationalFunction(std::move(part.num_), std::move(part.den_));
                } else {
                    part.fac_.erase(
                        std::remove_if(part.fac_.begin(), part.fac_.end(), [](const auto& p) { return p.second == 0; }),
                        part.fac_.end());
                    part.den_ = expand_factors(nvars, part.fac_);
                    acc += part;
                }
            } else {
                acc += RationalFunction(std::move(num), std::move(parts[i].den_));
            }
        }
        i = j;
    }
    return acc;
}

std::string to_string(const RationalFunction& f, const std::vector<std::string>& names) {
    if (f.is_polynomial()) return to_string(f.num(), names);
    return "(" + to_string(f.num(), names) + ")/(" + to_string(f.den(), names) + ")";
}

} // namespace fedlab
