#pragma once

#include <compare>
#include <cstdint>

#include "fedlab/errors.hpp"

namespace fedlab {

/// Packed exponent multi-index over at most kMaxVars variables.
///
/// Exponents occupy 16-bit fields across two words with variable 0 in the
/// most significant position, so the natural word order is the
/// lexicographic order on exponent vectors.
class Mono {
public:
    static constexpr unsigned kMaxVars = 8;
    static constexpr unsigned kMaxExp = 0xfffe;

    constexpr Mono() = default;

    unsigned get(unsigned var) const {
        return unsigned((var < 4 ? hi_ : lo_) >> shift(var)) & 0xffffu;
    }

    Mono with(unsigned var, unsigned exp) const {
        if (var >= kMaxVars) throw LimitError("variable index exceeds packed monomial capacity");
        if (exp > kMaxExp) throw LimitError("exponent exceeds packed monomial capacity");
        Mono m = *this;
        std::uint64_t& w = var < 4 ? m.hi_ : m.lo_;
        w = (w & ~(0xffffull << shift(var))) | (std::uint64_t(exp) << shift(var));
        return m;
    }

    Mono raised(unsigned var, unsigned delta = 1) const { return with(var, get(var) + delta); }

    /// Componentwise sum; throws on per-variable overflow.
    Mono operator+(const Mono& o) const {
        Mono m;
        m.hi_ = hi_ + o.hi_;
        m.lo_ = lo_ + o.lo_;
        for (unsigned v = 0; v < kMaxVars; ++v)
            if (get(v) + o.get(v) > kMaxExp) throw LimitError("exponent overflow in monomial product");
        return m;
    }

    bool divides(const Mono& o) const {
        for (unsigned v = 0; v < kMaxVars; ++v)
            if (get(v) > o.get(v)) return false;
        return true;
    }

    /// Componentwise difference; caller guarantees divisibility.
    Mono operator-(const Mono& o) const {
        Mono m;
        m.hi_ = hi_ - o.hi_;
        m.lo_ = lo_ - o.lo_;
        return m;
    }

    unsigned total_degree() const {
        unsigned t = 0;
        for (unsigned v = 0; v < kMaxVars; ++v) t += get(v);
        return t;
    }

    bool is_unit() const { return hi_ == 0 && lo_ == 0; }

    auto operator<=>(const Mono& o) const = default;

private:
    static constexpr unsigned shift(unsigned var) { return 16u * (3 - (var & 3u)); }

    // operator<=> compares hi_ first: variable 0 is the most significant.
    std::uint64_t hi_ = 0;
    std::uint64_t lo_ = 0;
};

} // namespace fedlab
