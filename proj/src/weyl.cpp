#include "fedlab/weyl.hpp"

#include <functional>
#include <sstream>

#include "fedlab/errors.hpp"

namespace fedlab {

namespace {

/// Sign of sorting the concatenation dx^S ^ dx^T, or 0 when the subsets meet.
int wedge_concat_sign(std::uint32_t s, std::uint32_t t) {
    if (s & t) return 0;
    unsigned inversions = 0;
    for (std::uint32_t rest = t; rest;) {
        unsigned bit = unsigned(__builtin_ctz(rest));
        rest &= rest - 1;
        inversions += unsigned(__builtin_popcount(s >> (bit + 1)));
    }
    return (inversions & 1u) ? -1 : 1;
}

std::uint32_t merged_order(const WeylElement& a, const WeylElement& b) {
    if (a.dim() != b.dim()) throw MismatchError("weyl operands on different charts");
    if (a.order() == WeylElement::kUnbounded) return b.order();
    if (b.order() == WeylElement::kUnbounded) return a.order();
    if (a.order() != b.order()) throw MismatchError("weyl operands at different truncation orders");
    return a.order();
}

/// Iterated fiber derivative with the falling-factorial multiplicities.
WeylElement fiber_derivative(const WeylElement& a, const Mono& gamma) {
    WeylElement r(a.dim(), a.order());
    for (const auto& [k, c] : a.terms()) {
        Rational mult(1);
        bool dead = false;
        Mono fib = k.fiber;
        for (unsigned v = 0; v < a.dim() && !dead; ++v) {
            unsigned g = gamma.get(v);
            if (g == 0) continue;
            unsigned e = fib.get(v);
            if (e < g) {
                dead = true;
                break;
            }
            for (unsigned t = 0; t < g; ++t) mult *= (e - t);
            fib = fib.with(v, e - g);
        }
        if (dead) continue;
        WeylKey nk = k;
        nk.fiber = fib;
        r.add_term(nk, c.scaled(mult));
    }
    return r;
}

} // namespace

WeylElement::WeylElement(unsigned dim, std::uint32_t order) : dim_(dim), order_(order) {}

WeylElement WeylElement::scalar(unsigned dim, std::uint32_t order, RationalFunction f) {
    WeylElement r(dim, order);
    r.add_term(WeylKey{}, f);
    return r;
}

WeylElement WeylElement::from_function(const FormalFunction& f, std::uint32_t order) {
    WeylElement r(f.nvars(), order);
    for (const auto& [k, c] : f.coeffs()) r.add_term(WeylKey{.nu = k, .fiber = {}, .wedge = 0}, c);
    return r;
}

RationalFunction WeylElement::coeff(const WeylKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? RationalFunction(dim_) : it->second;
}

void WeylElement::add_term(const WeylKey& k, const RationalFunction& c) {
    if (c.is_zero()) return;
    if (order_ != kUnbounded && k.total_degree() > order_) return;
    auto [it, inserted] = terms_.emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

std::uint32_t WeylElement::min_total_degree() const {
    std::uint32_t d = kUnbounded;
    for (const auto& [k, c] : terms_) d = std::min(d, k.total_degree());
    return d;
}

std::uint32_t WeylElement::max_sym_degree() const {
    std::uint32_t d = 0;
    for (const auto& [k, c] : terms_) d = std::max(d, k.sym_degree());
    return d;
}

WeylElement WeylElement::operator-() const {
    WeylElement r(dim_, order_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
}

WeylElement WeylElement::operator+(const WeylElement& o) const {
    WeylElement r(dim_, merged_order(*this, o));
    r.terms_ = terms_;
    for (const auto& [k, c] : o.terms_) r.add_term(k, c);
    return r;
}

WeylElement WeylElement::operator-(const WeylElement& o) const {
    WeylElement r(dim_, merged_order(*this, o));
    r.terms_ = terms_;
    for (const auto& [k, c] : o.terms_) r.add_term(k, -c);
    return r;
}

WeylElement& WeylElement::operator+=(const WeylElement& o) {
    *this = *this + o;
    return *this;
}

WeylElement& WeylElement::operator-=(const WeylElement& o) {
    *this = *this - o;
    return *this;
}

WeylElement WeylElement::scaled(const Rational& c) const {
    WeylElement r(dim_, order_);
    if (fedlab::is_zero(c)) return r;
    for (const auto& [k, v] : terms_) r.terms_.emplace(k, v.scaled(c));
    return r;
}

WeylElement WeylElement::scaled(const RationalFunction& c) const {
    WeylElement r(dim_, order_);
    if (c.is_zero()) return r;
    for (const auto& [k, v] : terms_) r.add_term(k, v * c);
    return r;
}

WeylElement WeylElement::shifted_nu(unsigned k) const {
    WeylElement r(dim_, order_);
    for (const auto& [key, v] : terms_) {
        WeylKey nk = key;
        nk.nu += k;
        r.add_term(nk, v);
    }
    return r;
}

namespace {

/// Batched accumulator: contributions are collected as uncanonicalized
/// rational functions per term key and combined with RationalFunction::sum,
/// which canonicalizes once per denominator group instead of once per
/// product and collision.
struct Accum {
    unsigned dim;
    std::uint32_t order;
    std::map<WeylKey, std::vector<RationalFunction>> slots;

    void add(const WeylKey& k, RationalFunction c) {
        if (c.is_zero()) return;
        if (order != WeylElement::kUnbounded && k.total_degree() > order) return;
        slots[k].push_back(std::move(c));
    }

    WeylElement finish() {
        WeylElement r(dim, order);
        for (auto& [k, parts] : slots) r.add_term(k, RationalFunction::sum(dim, std::move(parts)));
        return r;
    }
};

/// mu(a, b) scaled by `extra` and nu^shift, accumulated into acc.
void mul_into(Accum& acc, const WeylElement& a, const WeylElement& b, const RationalFunction* extra,
              unsigned nu_shift) {
    for (const auto& [ka, ca] : a.terms()) {
        RationalFunction left = extra ? ca * *extra : ca;
        if (left.is_zero()) continue;
        for (const auto& [kb, cb] : b.terms()) {
            int sign = wedge_concat_sign(ka.wedge, kb.wedge);
            if (sign == 0) continue;
            WeylKey k{.nu = ka.nu + kb.nu + nu_shift, .fiber = ka.fiber + kb.fiber, .wedge = ka.wedge | kb.wedge};
            if (acc.order != WeylElement::kUnbounded && k.total_degree() > acc.order) continue;
            RationalFunction c = left * cb;
            acc.add(k, sign < 0 ? -c : std::move(c));
        }
    }
}

} // namespace

WeylElement mul(const WeylElement& a, const WeylElement& b) {
    Accum acc{a.dim(), merged_order(a, b), {}};
    mul_into(acc, a, b, nullptr, 0);
    return acc.finish();
}

WeylElement circ(const WeylElement& a, const WeylElement& b, const RfMatrix& lambda) {
    Accum acc{a.dim(), merged_order(a, b), {}};
    mul_into(acc, a, b, nullptr, 0);
    const unsigned n = a.dim();

    // Nonzero Poisson entries; the contraction series is organized as a sum
    // over multisets of such entries (pairings of symmetric insertions).
    struct Entry {
        unsigned i, j;
        const RationalFunction* l;
    };
    std::vector<Entry> support;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            if (!lambda[i][j].is_zero()) support.push_back({i, j, &lambda[i][j]});

    const unsigned kmax = std::min(a.max_sym_degree(), b.max_sym_degree());
    std::map<Mono, WeylElement> da, db;
    auto deriv = [](std::map<Mono, WeylElement>& cache, const WeylElement& src, const Mono& g) -> const WeylElement& {
        auto it = cache.find(g);
        if (it == cache.end()) it = cache.emplace(g, fiber_derivative(src, g)).first;
        return it->second;
    };

    // A multiset m over the support contributes
    //   (nu/2)^k * prod (Lambda^{ij})^{m_ij} / m_ij! * mul(d^gamma a, d^delta b)
    // where gamma/delta are the row/column marginals of m and k = |m|.
    std::vector<unsigned> counts(support.size(), 0);
    auto emit = [&](unsigned k) {
        Mono gamma, delta;
        RationalFunction cm = RationalFunction::constant(n, 1);
        Rational factor(1);
        for (unsigned t = 0; t < support.size(); ++t) {
            unsigned m = counts[t];
            if (m == 0) continue;
            gamma = gamma.with(support[t].i, gamma.get(support[t].i) + m);
            delta = delta.with(support[t].j, delta.get(support[t].j) + m);
            cm = cm * support[t].l->pow(int(m));
            for (unsigned q = 2; q <= m; ++q) factor /= q;
        }
        for (unsigned q = 0; q < k; ++q) factor /= 2;
        const WeylElement& pa = deriv(da, a, gamma);
        if (pa.is_zero()) return;
        const WeylElement& pb = deriv(db, b, delta);
        if (pb.is_zero()) return;
        cm = cm.scaled(factor);
        mul_into(acc, pa, pb, &cm, k);
    };
    std::function<void(unsigned, unsigned, unsigned)> go = [&](unsigned idx, unsigned rem, unsigned k) {
        if (idx + 1 == support.size()) {
            counts[idx] = rem;
            emit(k);
            counts[idx] = 0;
            return;
        }
        for (unsigned m = 0; m <= rem; ++m) {
            counts[idx] = m;
            go(idx + 1, rem - m, k);
        }
        counts[idx] = 0;
    };
    if (!support.empty())
        for (unsigned k = 1; k <= kmax; ++k) go(0, k, k);
    return acc.finish();
}

WeylElement even_part(const WeylElement& a) {
    WeylElement r(a.dim(), a.order());
    for (const auto& [k, c] : a.terms())
        if (k.form_degree() % 2 == 0) r.add_term(k, c);
    return r;
}

WeylElement odd_part(const WeylElement& a) {
    WeylElement r(a.dim(), a.order());
    for (const auto& [k, c] : a.terms())
        if (k.form_degree() % 2 == 1) r.add_term(k, c);
    return r;
}

WeylElement commutator(const WeylElement& a, const WeylElement& b, const RfMatrix& lambda) {
    WeylElement r = circ(a, b, lambda);
    const WeylElement ae = even_part(a), ao = odd_part(a);
    const WeylElement be = even_part(b), bo = odd_part(b);
    if (!ae.is_zero()) {
        if (!be.is_zero()) r -= circ(be, ae, lambda);
        if (!bo.is_zero()) r -= circ(bo, ae, lambda);
    }
    if (!ao.is_zero()) {
        if (!be.is_zero()) r -= circ(be, ao, lambda);
        if (!bo.is_zero()) r += circ(bo, ao, lambda);
    }
    return r;
}

WeylElement ad_div_nu(const WeylElement& h, const WeylElement& a, const RfMatrix& lambda) {
    std::uint32_t order = merged_order(h, a);
    if (order == WeylElement::kUnbounded) return divide_by_nu(commutator(h, a, lambda));
    // Work two degrees higher so nothing the division pulls back below the
    // truncation was dropped.
    WeylElement hl = lift_order(h, order + 2);
    WeylElement al = lift_order(a, order + 2);
    return truncate(divide_by_nu(commutator(hl, al, lambda)), order);
}

std::set<unsigned> degree_spectrum(const WeylElement& a, DegreeKind kind) {
    std::set<unsigned> s;
    for (const auto& [k, c] : a.terms()) {
        switch (kind) {
            case DegreeKind::Sym: s.insert(k.sym_degree()); break;
            case DegreeKind::Form: s.insert(k.form_degree()); break;
            case DegreeKind::Nu: s.insert(k.nu); break;
            case DegreeKind::Total: s.insert(k.total_degree()); break;
        }
    }
    return s;
}

WeylElement truncate(const WeylElement& a, std::uint32_t n) {
    std::uint32_t order = std::min(a.order(), n);
    WeylElement r(a.dim(), order);
    for (const auto& [k, c] : a.terms())
        if (k.total_degree() <= n) r.add_term(k, c);
    return r;
}

bool equal_mod(const WeylElement& a, const WeylElement& b, std::uint32_t n) {
    return truncate(a, n) == truncate(b, n);
}

bool is_central(const WeylElement& a) {
    for (const auto& [k, c] : a.terms())
        if (k.sym_degree() != 0) return false;
    return true;
}

WeylElement fiber_partial(const WeylElement& a, unsigned i) {
    WeylElement r(a.dim(), a.order());
    for (const auto& [k, c] : a.terms()) {
        unsigned e = k.fiber.get(i);
        if (e == 0) continue;
        WeylKey nk = k;
        nk.fiber = k.fiber.with(i, e - 1);
        r.add_term(nk, c.scaled(Rational(e)));
    }
    return r;
}

WeylElement wedge_insert_partial(const WeylElement& a, unsigned i) {
    WeylElement r(a.dim(), a.order());
    const std::uint32_t bit = 1u << i;
    for (const auto& [k, c] : a.terms()) {
        if (!(k.wedge & bit)) continue;
        unsigned pos = unsigned(__builtin_popcount(k.wedge & (bit - 1)));
        WeylKey nk = k;
        nk.wedge = k.wedge & ~bit;
        r.add_term(nk, (pos & 1u) ? -c : c);
    }
    return r;
}

WeylElement fiber_mul(const WeylElement& a, unsigned i) {
    WeylElement r(a.dim(), a.order());
    for (const auto& [k, c] : a.terms()) {
        WeylKey nk = k;
        nk.fiber = k.fiber.raised(i);
        r.add_term(nk, c);
    }
    return r;
}

WeylElement wedge_mul_left(const WeylElement& a, unsigned i) {
    WeylElement r(a.dim(), a.order());
    const std::uint32_t bit = 1u << i;
    for (const auto& [k, c] : a.terms()) {
        if (k.wedge & bit) continue;
        unsigned below = unsigned(__builtin_popcount(k.wedge & (bit - 1)));
        WeylKey nk = k;
        nk.wedge = k.wedge | bit;
        r.add_term(nk, (below & 1u) ? -c : c);
    }
    return r;
}

WeylElement divide_by_nu(const WeylElement& a) {
    WeylElement r(a.dim(), a.order());
    for (const auto& [k, c] : a.terms()) {
        if (k.nu == 0) throw InternalError("nu-division of a weyl element with a nu^0 term");
        WeylKey nk = k;
        nk.nu -= 1;
        r.add_term(nk, c);
    }
    return r;
}

WeylElement lift_order(const WeylElement& a, std::uint32_t order) {
    WeylElement r(a.dim(), order);
    for (const auto& [k, c] : a.terms()) r.add_term(k, c);
    return r;
}

std::string to_string(const WeylElement& a, const std::vector<std::string>& coords) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : a.terms()) {
        if (!first) os << " + ";
        first = false;
        std::vector<std::string> pieces;
        if (!c.is_one() || (k.nu == 0 && k.fiber.is_unit() && k.wedge == 0))
            pieces.push_back("(" + to_string(c, coords) + ")");
        if (k.nu == 1)
            pieces.push_back("nu");
        else if (k.nu > 1)
            pieces.push_back("nu^" + std::to_string(k.nu));
        for (unsigned v = 0; v < a.dim(); ++v) {
            unsigned e = k.fiber.get(v);
            if (e == 0) continue;
            std::string y = "y" + std::to_string(v + 1);
            if (e > 1) y += "^" + std::to_string(e);
            pieces.push_back(y);
        }
        std::string wedge;
        for (unsigned v = 0; v < a.dim(); ++v)
            if (k.wedge & (1u << v)) {
                if (!wedge.empty()) wedge += "^";
                wedge += "dx" + std::to_string(v + 1);
            }
        if (!wedge.empty()) pieces.push_back(wedge);
        for (std::size_t p = 0; p < pieces.size(); ++p) {
            if (p) os << "*";
            os << pieces[p];
        }
    }
    return os.str();
}

} // namespace fedlab
