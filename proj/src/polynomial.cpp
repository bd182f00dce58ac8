#include "fedlab/polynomial.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <map>
#include <sstream>

#include "fedlab/errors.hpp"

namespace fedlab {

namespace {

/// Order-preserving single-term product: (m, c) * p.
Polynomial scaled_shifted(const Polynomial& p, const Mono& m, const Rational& c) {
    Polynomial r(p.nvars());
    for (const auto& [mp, cp] : p.terms()) r.append_term(mp + m, cp * c);
    return r;
}

} // namespace

Polynomial::Polynomial(unsigned nvars) : nvars_(nvars) {
    if (nvars > Mono::kMaxVars) throw LimitError("too many variables for packed monomials");
}

Polynomial Polynomial::constant(unsigned nvars, Rational c) {
    Polynomial p(nvars);
    p.add_term(Mono{}, c);
    return p;
}

Polynomial Polynomial::variable(unsigned nvars, unsigned var, unsigned power) {
    Polynomial p(nvars);
    if (power == 0) {
        p.add_term(Mono{}, 1);
    } else {
        p.add_term(Mono{}.with(var, power), 1);
    }
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.front().first.is_unit());
}

bool Polynomial::is_one() const {
    return terms_.size() == 1 && terms_.front().first.is_unit() && terms_.front().second == 1;
}

Rational Polynomial::constant_value() const {
    if (!terms_.empty() && terms_.front().first.is_unit()) return terms_.front().second;
    return Rational(0);
}

int Polynomial::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, int(m.total_degree()));
    return d;
}

int Polynomial::degree_in(unsigned var) const {
    int d = is_zero() ? -1 : 0;
    for (const auto& [m, c] : terms_) d = std::max(d, int(m.get(var)));
    return d;
}

const Polynomial::Term& Polynomial::leading() const {
    if (terms_.empty()) throw InternalError("leading term of zero polynomial");
    return terms_.back();
}

void Polynomial::append_term(const Mono& m, Rational c) {
    if (fedlab::is_zero(c)) return;
    terms_.emplace_back(m, std::move(c));
}

void Polynomial::add_term(const Mono& m, const Rational& c) {
    if (fedlab::is_zero(c)) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Mono& key) { return t.first < key; });
    if (it != terms_.end() && it->first == m) {
        it->second += c;
        if (fedlab::is_zero(it->second)) terms_.erase(it);
    } else {
        terms_.emplace(it, m, c);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial r(nvars_);
    r.terms_.reserve(terms_.size());
    for (const auto& [m, c] : terms_) r.terms_.emplace_back(m, -c);
    return r;
}

namespace {

/// Merge two sorted term lists, combining equal monomials (b scaled by sgn).
Polynomial::TermMap merge_terms(const Polynomial::TermMap& a, const Polynomial::TermMap& b, int sign) {
    Polynomial::TermMap out;
    out.reserve(a.size() + b.size());
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->first < ib->first) {
            out.push_back(*ia++);
        } else if (ib->first < ia->first) {
            out.emplace_back(ib->first, sign < 0 ? Rational(-ib->second) : ib->second);
            ++ib;
        } else {
            Rational c = sign < 0 ? Rational(ia->second - ib->second) : Rational(ia->second + ib->second);
            if (sgn(c) != 0) out.emplace_back(ia->first, std::move(c));
            ++ia;
            ++ib;
        }
    }
    for (; ia != a.end(); ++ia) out.push_back(*ia);
    for (; ib != b.end(); ++ib) out.emplace_back(ib->first, sign < 0 ? Rational(-ib->second) : ib->second);
    return out;
}

} // namespace

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r(nvars_);
    r.terms_ = merge_terms(terms_, o.terms_, +1);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    Polynomial r(nvars_);
    r.terms_ = merge_terms(terms_, o.terms_, -1);
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    terms_ = merge_terms(terms_, o.terms_, +1);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    terms_ = merge_terms(terms_, o.terms_, -1);
    return *this;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial r(nvars_);
    if (terms_.empty() || o.terms_.empty()) return r;
    if (terms_.size() == 1) return scaled_shifted(o, terms_.front().first, terms_.front().second);
    if (o.terms_.size() == 1) return scaled_shifted(*this, o.terms_.front().first, o.terms_.front().second);
    TermMap prods;
    prods.reserve(terms_.size() * o.terms_.size());
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) prods.emplace_back(ma + mb, ca * cb);
    std::sort(prods.begin(), prods.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
    r.terms_.reserve(prods.size());
    for (auto& t : prods) {
        if (!r.terms_.empty() && r.terms_.back().first == t.first) {
            r.terms_.back().second += t.second;
            if (fedlab::is_zero(r.terms_.back().second)) r.terms_.pop_back();
        } else {
            r.terms_.push_back(std::move(t));
        }
    }
    return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
    Polynomial r(nvars_);
    if (fedlab::is_zero(c)) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& [m, v] : terms_) r.terms_.emplace_back(m, v * c);
    return r;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial acc = constant(nvars_, 1);
    Polynomial base = *this;
    while (e) {
        if (e & 1u) acc = acc * base;
        base = (e >>= 1) ? base * base : base;
    }
    return acc;
}

Polynomial Polynomial::partial(unsigned var) const {
    // Lowering one fixed exponent preserves the lexicographic term order.
    Polynomial r(nvars_);
    r.terms_.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
        unsigned e = m.get(var);
        if (e == 0) continue;
        r.terms_.emplace_back(m.with(var, e - 1), c * e);
    }
    return r;
}

Rational Polynomial::eval(const std::vector<Rational>& point) const {
    if (point.size() < nvars_) throw InternalError("evaluation point arity mismatch");
    Rational acc(0);
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (unsigned v = 0; v < nvars_; ++v) {
            unsigned e = m.get(v);
            for (unsigned k = 0; k < e; ++k) t *= point[v];
        }
        acc += t;
    }
    return acc;
}

Rational Polynomial::content() const {
    if (is_zero()) return Rational(0);
    mpz_class num_gcd(0), den_lcm(1);
    for (const auto& [m, c] : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    }
    Rational c(num_gcd, den_lcm);
    c.canonicalize();
    if (sgn(leading().second) < 0) c = -c;
    return c;
}

int Polynomial::compare(const Polynomial& a, const Polynomial& b) {
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
        int c = cmp(ia->second, ib->second);
        if (c != 0) return c;
    }
    if (ia != a.terms_.end()) return 1;
    if (ib != b.terms_.end()) return -1;
    return 0;
}

std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw DivisionByZero("exact division by zero polynomial");
    Polynomial q(a.nvars());
    Polynomial r = a;
    const auto& [mb, cb] = b.leading();
    while (!r.is_zero()) {
        const auto& [mr, cr] = r.leading();
        if (!mb.divides(mr)) return std::nullopt;
        Mono mq = mr - mb;
        Rational cq = cr / cb;
        q.add_term(mq, cq);
        r -= scaled_shifted(b, mq, cq);
    }
    return q;
}

namespace {

/// View of p as a univariate polynomial in `var` with polynomial coefficients
/// (the coefficients have degree 0 in `var`).
std::map<unsigned, Polynomial> univariate_view(const Polynomial& p, unsigned var) {
    std::map<unsigned, Polynomial> v;
    for (const auto& [m, c] : p.terms()) {
        unsigned d = m.get(var);
        auto [it, inserted] = v.emplace(d, Polynomial(p.nvars()));
        it->second.add_term(m.with(var, 0), c);
    }
    return v;
}

Polynomial leading_coeff_in(const Polynomial& p, unsigned var) {
    auto v = univariate_view(p, var);
    return v.rbegin()->second;
}

/// Normalize a nonzero polynomial to its primitive integer representative
/// with positive leading coefficient.
Polynomial normalize_primitive(const Polynomial& p) {
    Rational c = p.content();
    return p.scaled(Rational(1) / c);
}

/// Pseudo-remainder of a by b with respect to var, up to a scalar factor:
/// intermediate rows are rescaled to primitive integer form to keep the
/// coefficient growth of long reduction chains linear.
Polynomial prem(Polynomial a, const Polynomial& b, unsigned var) {
    const int db = b.degree_in(var);
    const Polynomial lcb = leading_coeff_in(b, var);
    while (!a.is_zero() && a.degree_in(var) >= db) {
        const int da = a.degree_in(var);
        const Polynomial lca = leading_coeff_in(a, var);
        Polynomial shift = Polynomial::variable(a.nvars(), var, unsigned(da - db));
        a = a * lcb - b * (lca * shift);
        if (!a.is_zero()) a = normalize_primitive(a);
    }
    return a;
}

Polynomial content_in(const Polynomial& p, unsigned var);

/// Strip both the polynomial content in var and the rational content, so
/// PRS chain elements stay primitive over the integers (otherwise the
/// coefficient growth of the naive Euclidean chain is exponential).
Polynomial primitive_in(const Polynomial& p, unsigned var) {
    Polynomial c = content_in(p, var);
    return normalize_primitive(*divide_exact(p, c));
}

Polynomial gcd_inner(const Polynomial& a, const Polynomial& b);

/// Evaluate every variable except `keep`.
Polynomial substitute_all_but(const Polynomial& p, unsigned keep, const Rational& value) {
    Polynomial r(p.nvars());
    for (const auto& [m, c] : p.terms()) {
        Rational v = c;
        for (unsigned var = 0; var < p.nvars(); ++var) {
            if (var == keep) continue;
            for (unsigned e = 0; e < m.get(var); ++e) v *= value;
        }
        r.add_term(Mono{}.with(keep, m.get(keep)), v);
    }
    return r;
}

/// Decide deg_var(gcd(a, b)) = 0 from a univariate image: substituting the
/// other variables at a point where the leading var-coefficient of `a`
/// survives, a constant image gcd certifies that no common divisor depends
/// on var. The inconclusive answer just falls back to the full chain.
bool certainly_coprime_in(const Polynomial& a, const Polynomial& b, unsigned var) {
    static const long kProbes[] = {2, 3, -2, 5, 7, -3, 11, 13};
    Polynomial lca = leading_coeff_in(a, var);
    for (long p0 : kProbes) {
        Rational val(p0);
        {
            std::vector<Rational> point(a.nvars(), val);
            if (sgn(lca.eval(point)) == 0) continue;
        }
        Polynomial ia = substitute_all_but(a, var, val);
        Polynomial ib = substitute_all_but(b, var, val);
        if (ib.is_zero()) continue;
        return gcd_inner(ia, ib).is_constant();
    }
    return false;
}

Polynomial gcd_inner(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return b.is_zero() ? a : normalize_primitive(b);
    if (b.is_zero()) return normalize_primitive(a);
    if (a.is_constant() || b.is_constant()) return Polynomial::constant(a.nvars(), 1);
    if (a == b) return normalize_primitive(a);

    // Cheap exact-division probes cover the power-of-common-factor cases that
    // dominate denominator bookkeeping.
    if (divide_exact(a, b)) return normalize_primitive(b);
    if (divide_exact(b, a)) return normalize_primitive(a);

    unsigned var = 0;
    unsigned effective = 0;
    for (unsigned v = 0; v < a.nvars(); ++v)
        if (a.degree_in(v) > 0 || b.degree_in(v) > 0) {
            var = v;
            ++effective;
        }

    if (effective >= 2 && a.degree_in(var) > 0 && certainly_coprime_in(a, b, var))
        return gcd_inner(content_in(a, var), content_in(b, var));

    Polynomial ca = content_in(a, var);
    Polynomial cb = content_in(b, var);
    Polynomial cg = gcd_inner(ca, cb);
    Polynomial pa = normalize_primitive(*divide_exact(a, ca));
    Polynomial pb = normalize_primitive(*divide_exact(b, cb));

    if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);
    Polynomial g(a.nvars());
    while (true) {
        if (pb.degree_in(var) == 0) {
            // Nonzero remainder free of var: the primitive parts are coprime.
            g = Polynomial::constant(a.nvars(), 1);
            break;
        }
        Polynomial r = prem(pa, pb, var);
        if (r.is_zero()) {
            g = pb;
            break;
        }
        pa = std::move(pb);
        pb = primitive_in(r, var);
    }
    return normalize_primitive(cg * g);
}

Polynomial content_in(const Polynomial& p, unsigned var) {
    Polynomial c(p.nvars());
    for (const auto& [d, coeff] : univariate_view(p, var)) c = gcd_inner(c, coeff);
    return c;
}

/// Denominator factor bases, shared across the process. Monotone and small;
/// the vector itself is immutable, updates swap in a fresh copy.
std::mutex g_bases_mutex;
std::shared_ptr<const std::vector<Polynomial>> g_bases = std::make_shared<std::vector<Polynomial>>();

std::shared_ptr<const std::vector<Polynomial>> bases_snapshot() {
    std::lock_guard<std::mutex> lock(g_bases_mutex);
    return g_bases;
}

/// Divide out every registered base as often as possible.
Polynomial peel_bases(Polynomial p, const std::vector<Polynomial>& bases) {
    for (const auto& q : bases) {
        if (q.nvars() != p.nvars()) continue;
        while (!p.is_constant())
            if (auto quot = divide_exact(p, q))
                p = std::move(*quot);
            else
                break;
    }
    return p;
}

} // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero() || a.is_constant() || b.is_constant()) return gcd_inner(a, b);
    auto bases = bases_snapshot();
    Polynomial common = Polynomial::constant(a.nvars(), 1);
    Polynomial ra = a, rb = b;
    for (const auto& q : *bases) {
        if (q.nvars() != a.nvars()) continue;
        for (;;) {
            auto qa = divide_exact(ra, q);
            if (!qa) break;
            auto qb = divide_exact(rb, q);
            if (!qb) break;
            ra = std::move(*qa);
            rb = std::move(*qb);
            common = common * q;
        }
    }
    return normalize_primitive(common * gcd_inner(ra, rb));
}

std::shared_ptr<const std::vector<Polynomial>> denominator_bases() { return bases_snapshot(); }

Polynomial denominator_base_power(std::uint32_t id, std::uint32_t exp) {
    static std::mutex cache_mutex;
    static std::map<std::pair<std::uint32_t, std::uint32_t>, Polynomial> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find({id, exp});
    if (it != cache.end()) return it->second;
    Polynomial p = (*bases_snapshot())[id].pow(exp);
    return cache.emplace(std::make_pair(id, exp), std::move(p)).first->second;
}

void note_denominator_factor(const Polynomial& den) {
    if (den.is_zero() || den.is_constant()) return;
    Polynomial rest = peel_bases(normalize_primitive(den), *bases_snapshot());
    while (!rest.is_constant()) {
        // square-free reduction of what is left, one variable at a time
        Polynomial sf = rest;
        for (unsigned v = 0; v < rest.nvars(); ++v) {
            Polynomial d = sf.partial(v);
            if (d.is_zero()) continue;
            Polynomial g = gcd_inner(sf, d);
            if (!g.is_constant()) sf = *divide_exact(sf, g);
        }
        sf = normalize_primitive(sf);
        if (sf.is_constant()) break;
        {
            std::lock_guard<std::mutex> lock(g_bases_mutex);
            if (g_bases->size() >= 64) return;
            bool known = false;
            bool admissible = true;
            for (const auto& q : *g_bases) {
                if (q == sf) {
                    known = true;
                    break;
                }
                // The factored fast paths rely on pairwise coprime bases;
                // a candidate overlapping an existing base is not added.
                if (q.nvars() == sf.nvars() && !gcd_inner(q, sf).is_constant()) admissible = false;
            }
            if (!known) {
                if (!admissible) return;
                auto next_bases = std::make_shared<std::vector<Polynomial>>(*g_bases);
                next_bases->push_back(sf);
                g_bases = std::move(next_bases);
            }
        }
        Polynomial next = peel_bases(rest, {sf});
        if (next == rest) break;
        rest = std::move(next);
    }
}

std::string to_string(const Polynomial& p, const std::vector<std::string>& names) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    // Lex-descending: leading term first.
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        Rational ac = abs(c);
        if (first) {
            if (sgn(c) < 0) os << "-";
            first = false;
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        bool coeff_shown = false;
        if (m.is_unit() || ac != 1) {
            os << ac.get_str();
            coeff_shown = true;
        }
        for (unsigned v = 0; v < p.nvars(); ++v) {
            unsigned e = m.get(v);
            if (e == 0) continue;
            if (coeff_shown) os << "*";
            os << names[v];
            if (e > 1) os << "^" << e;
            coeff_shown = true;
        }
    }
    return os.str();
}

} // namespace fedlab
