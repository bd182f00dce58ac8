#include "fedlab/geometry.hpp"

#include "fedlab/errors.hpp"

namespace fedlab {

OneForm OneFormSeries::coeff(unsigned k) const {
    auto it = c_.find(k);
    return it == c_.end() ? zero_one_form(dim_) : it->second;
}

void OneFormSeries::set_coeff(unsigned k, OneForm a) {
    if (fedlab::is_zero(a))
        c_.erase(k);
    else
        c_[k] = std::move(a);
}

OneFormSeries OneFormSeries::operator+(const OneFormSeries& o) const {
    OneFormSeries r = *this;
    for (const auto& [k, a] : o.c_) r.set_coeff(k, add(r.coeff(k), a));
    return r;
}

OneFormSeries OneFormSeries::operator-(const OneFormSeries& o) const {
    OneFormSeries r = *this;
    for (const auto& [k, a] : o.c_) r.set_coeff(k, sub(r.coeff(k), a));
    return r;
}

OneFormSeries OneFormSeries::shifted_nu(unsigned k) const {
    OneFormSeries r(dim_);
    for (const auto& [j, a] : c_) r.c_.emplace(j + k, a);
    return r;
}

TwoForm TwoFormSeries::coeff(unsigned k) const {
    auto it = c_.find(k);
    return it == c_.end() ? zero_two_form(dim_) : it->second;
}

void TwoFormSeries::set_coeff(unsigned k, TwoForm f) {
    if (fedlab::is_zero(f))
        c_.erase(k);
    else
        c_[k] = std::move(f);
}

TwoFormSeries TwoFormSeries::operator+(const TwoFormSeries& o) const {
    TwoFormSeries r = *this;
    for (const auto& [k, f] : o.c_) {
        TwoForm s = r.coeff(k);
        for (unsigned i = 0; i < dim_; ++i)
            for (unsigned j = 0; j < dim_; ++j) s[i][j] += f[i][j];
        r.set_coeff(k, std::move(s));
    }
    return r;
}

TwoFormSeries TwoFormSeries::operator-(const TwoFormSeries& o) const {
    TwoFormSeries r = *this;
    for (const auto& [k, f] : o.c_) r.set_coeff(k, sub(r.coeff(k), f));
    return r;
}

bool VectorField::is_zero() const {
    for (const auto& c : comp)
        if (!c.is_zero()) return false;
    return true;
}

VectorField VectorField::operator-() const {
    VectorField r = *this;
    for (auto& c : r.comp) c = -c;
    return r;
}

VectorField field_bracket(const VectorField& x, const VectorField& y) {
    unsigned n = x.dim();
    VectorField r{std::vector<RationalFunction>(n, RationalFunction(n))};
    for (unsigned k = 0; k < n; ++k)
        for (unsigned i = 0; i < n; ++i)
            r.comp[k] += x.comp[i] * y.comp[k].partial(i) - y.comp[i] * x.comp[k].partial(i);
    return r;
}

RationalFunction det(const RfMatrix& m) {
    const unsigned n = unsigned(m.size());
    RfMatrix a = m;
    unsigned nv = n ? a[0][0].nvars() : 0;
    RationalFunction d = RationalFunction::constant(nv, 1);
    for (unsigned col = 0; col < n; ++col) {
        unsigned pivot = col;
        while (pivot < n && a[pivot][col].is_zero()) ++pivot;
        if (pivot == n) return RationalFunction(nv);
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            d = -d;
        }
        d = d * a[col][col];
        for (unsigned row = col + 1; row < n; ++row) {
            if (a[row][col].is_zero()) continue;
            RationalFunction factor = a[row][col] / a[col][col];
            for (unsigned j = col; j < n; ++j) a[row][j] -= factor * a[col][j];
        }
    }
    return d;
}

RfMatrix invert(const RfMatrix& m) {
    const unsigned n = unsigned(m.size());
    unsigned nv = n ? m[0][0].nvars() : 0;
    RfMatrix a = m;
    RfMatrix inv(n, std::vector<RationalFunction>(n, RationalFunction(nv)));
    for (unsigned i = 0; i < n; ++i) inv[i][i] = RationalFunction::constant(nv, 1);
    for (unsigned col = 0; col < n; ++col) {
        unsigned pivot = col;
        while (pivot < n && a[pivot][col].is_zero()) ++pivot;
        if (pivot == n) throw ValidationError("matrix singular", "matrix is not invertible");
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            std::swap(inv[pivot], inv[col]);
        }
        RationalFunction p = a[col][col];
        for (unsigned j = 0; j < n; ++j) {
            a[col][j] = a[col][j] / p;
            inv[col][j] = inv[col][j] / p;
        }
        for (unsigned row = 0; row < n; ++row) {
            if (row == col || a[row][col].is_zero()) continue;
            RationalFunction f = a[row][col];
            for (unsigned j = 0; j < n; ++j) {
                a[row][j] -= f * a[col][j];
                inv[row][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

OneForm zero_one_form(unsigned dim) { return OneForm(dim, RationalFunction(dim)); }

TwoForm zero_two_form(unsigned dim) {
    return TwoForm(dim, std::vector<RationalFunction>(dim, RationalFunction(dim)));
}

bool is_zero(const OneForm& a) {
    for (const auto& c : a)
        if (!c.is_zero()) return false;
    return true;
}

bool is_zero(const TwoForm& a) {
    for (const auto& row : a)
        for (const auto& c : row)
            if (!c.is_zero()) return false;
    return true;
}

OneForm add(const OneForm& a, const OneForm& b) {
    OneForm r = a;
    for (unsigned i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

OneForm sub(const OneForm& a, const OneForm& b) {
    OneForm r = a;
    for (unsigned i = 0; i < b.size(); ++i) r[i] -= b[i];
    return r;
}

TwoForm sub(const TwoForm& a, const TwoForm& b) {
    TwoForm r = a;
    for (unsigned i = 0; i < b.size(); ++i)
        for (unsigned j = 0; j < b.size(); ++j) r[i][j] -= b[i][j];
    return r;
}

OneForm exterior_d(const RationalFunction& f) {
    OneForm r = zero_one_form(f.nvars());
    for (unsigned i = 0; i < f.nvars(); ++i) r[i] = f.partial(i);
    return r;
}

TwoForm exterior_d(const OneForm& a) {
    unsigned n = unsigned(a.size());
    TwoForm r = zero_two_form(n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) r[i][j] = a[j].partial(i) - a[i].partial(j);
    return r;
}

bool is_closed(const OneForm& a) { return is_zero(exterior_d(a)); }

bool is_closed(const TwoForm& f) {
    unsigned n = unsigned(f.size());
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j)
            for (unsigned k = j + 1; k < n; ++k)
                if (!(f[j][k].partial(i) + f[k][i].partial(j) + f[i][j].partial(k)).is_zero()) return false;
    return true;
}

TwoFormSeries exterior_d(const OneFormSeries& a) {
    TwoFormSeries r(a.dim());
    for (const auto& [k, c] : a.coeffs()) r.set_coeff(k, exterior_d(c));
    return r;
}

bool is_closed(const TwoFormSeries& f) {
    for (const auto& [k, c] : f.coeffs())
        if (!is_closed(c)) return false;
    return true;
}

OneForm contract(const VectorField& x, const TwoForm& f) {
    unsigned n = x.dim();
    OneForm r = zero_one_form(n);
    for (unsigned j = 0; j < n; ++j)
        for (unsigned i = 0; i < n; ++i) r[j] += x.comp[i] * f[i][j];
    return r;
}

OneFormSeries contract(const VectorField& x, const TwoFormSeries& f) {
    OneFormSeries r(f.dim());
    for (const auto& [k, c] : f.coeffs()) r.set_coeff(k, contract(x, c));
    return r;
}

RationalFunction pair_eval(const TwoForm& f, const VectorField& x, const VectorField& y) {
    unsigned n = x.dim();
    RationalFunction r(n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) r += f[i][j] * x.comp[i] * y.comp[j];
    return r;
}

FormalFunction pair_eval(const TwoFormSeries& f, const VectorField& x, const VectorField& y) {
    FormalFunction r(f.dim());
    for (const auto& [k, c] : f.coeffs()) r = r + FormalFunction::nu_term(k, pair_eval(c, x, y));
    return r;
}

TwoForm lie_derivative(const VectorField& x, const TwoForm& f) {
    unsigned n = x.dim();
    TwoForm r = zero_two_form(n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            RationalFunction v(n);
            for (unsigned k = 0; k < n; ++k)
                v += x.comp[k] * f[i][j].partial(k) + x.comp[k].partial(i) * f[k][j] +
                     x.comp[k].partial(j) * f[i][k];
            r[i][j] = v;
        }
    return r;
}

TwoFormSeries lie_derivative(const VectorField& x, const TwoFormSeries& f) {
    TwoFormSeries r(f.dim());
    for (const auto& [k, c] : f.coeffs()) r.set_coeff(k, lie_derivative(x, c));
    return r;
}

ChartGeometry::ChartGeometry(std::vector<std::string> coords, RfMatrix omega, Christoffel gamma)
    : dim_(unsigned(coords.size())), coords_(std::move(coords)), omega_(std::move(omega)), gamma_(std::move(gamma)) {
    validate();
    RfMatrix inv = invert(omega_);
    lambda_ = zero_two_form(dim_);
    // Lambda = -omega^{-1}; orientation fixed by the flat commutator test
    // x*y - y*x = nu for omega = dx^dy.
    for (unsigned i = 0; i < dim_; ++i)
        for (unsigned j = 0; j < dim_; ++j) lambda_[i][j] = -inv[i][j];
    curv_.assign(std::size_t(dim_) * dim_ * dim_ * dim_, RationalFunction(dim_));
    for (unsigned t = 0; t < dim_; ++t)
        for (unsigned j = 0; j < dim_; ++j)
            for (unsigned k = 0; k < dim_; ++k)
                for (unsigned l = 0; l < dim_; ++l) {
                    RationalFunction v = gamma_[t][l][j].partial(k) - gamma_[t][k][j].partial(l);
                    for (unsigned m = 0; m < dim_; ++m)
                        v += gamma_[t][k][m] * gamma_[m][l][j] - gamma_[t][l][m] * gamma_[m][k][j];
                    curv_[((t * dim_ + j) * dim_ + k) * dim_ + l] = v;
                }
}

const RationalFunction& ChartGeometry::curvature(unsigned t, unsigned j, unsigned k, unsigned l) const {
    return curv_[((t * dim_ + j) * dim_ + k) * dim_ + l];
}

bool ChartGeometry::is_flat() const {
    for (const auto& c : curv_)
        if (!c.is_zero()) return false;
    return true;
}

void ChartGeometry::validate() const {
    if (dim_ == 0 || dim_ % 2 != 0) throw ValidationError("dimension not even", "chart dimension must be even and positive");
    if (dim_ > Mono::kMaxVars) throw LimitError("chart dimension exceeds engine capacity");
    if (omega_.size() != dim_) throw ValidationError("omega shape", "omega must be dim x dim");
    for (const auto& row : omega_)
        if (row.size() != dim_) throw ValidationError("omega shape", "omega must be dim x dim");
    if (gamma_.size() != dim_) throw ValidationError("connection shape", "christoffel must be dim^3");
    for (const auto& mk : gamma_) {
        if (mk.size() != dim_) throw ValidationError("connection shape", "christoffel must be dim^3");
        for (const auto& row : mk)
            if (row.size() != dim_) throw ValidationError("connection shape", "christoffel must be dim^3");
    }
    for (unsigned i = 0; i < dim_; ++i)
        for (unsigned j = 0; j < dim_; ++j)
            if (!(omega_[i][j] + omega_[j][i]).is_zero())
                throw ValidationError("omega not antisymmetric", "omega_ij + omega_ji != 0");
    if (det(omega_).is_zero()) throw ValidationError("omega degenerate", "det(omega) = 0");
    if (!is_closed(omega_)) throw ValidationError("omega not closed", "d omega != 0");
    for (unsigned k = 0; k < dim_; ++k)
        for (unsigned i = 0; i < dim_; ++i)
            for (unsigned j = i + 1; j < dim_; ++j)
                if (!(gamma_[k][i][j] - gamma_[k][j][i]).is_zero())
                    throw ValidationError("connection has torsion", "Gamma^k_ij != Gamma^k_ji");
    for (unsigned k = 0; k < dim_; ++k)
        for (unsigned i = 0; i < dim_; ++i)
            for (unsigned j = 0; j < dim_; ++j) {
                RationalFunction v = omega_[i][j].partial(k);
                for (unsigned l = 0; l < dim_; ++l)
                    v -= gamma_[l][k][i] * omega_[l][j] + gamma_[l][k][j] * omega_[i][l];
                if (!v.is_zero())
                    throw ValidationError("connection not symplectic", "nabla omega != 0");
            }
}

VectorField ChartGeometry::hamiltonian_field(const RationalFunction& f) const {
    VectorField x{std::vector<RationalFunction>(dim_, RationalFunction(dim_))};
    for (unsigned i = 0; i < dim_; ++i)
        for (unsigned j = 0; j < dim_; ++j) x.comp[i] += lambda_[i][j] * f.partial(j);
    return x;
}

RationalFunction ChartGeometry::poisson(const RationalFunction& f, const RationalFunction& g) const {
    RationalFunction r(dim_);
    for (unsigned i = 0; i < dim_; ++i)
        for (unsigned j = 0; j < dim_; ++j) r += lambda_[i][j] * f.partial(i) * g.partial(j);
    return r;
}

FormalFunction ChartGeometry::poisson(const FormalFunction& f, const FormalFunction& g) const {
    FormalFunction r(dim_);
    for (const auto& [ka, fa] : f.coeffs())
        for (const auto& [kb, gb] : g.coeffs()) r = r + FormalFunction::nu_term(ka + kb, poisson(fa, gb));
    return r;
}

} // namespace fedlab
