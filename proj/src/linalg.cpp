#include "sullivan/linalg.hpp"

#include <stdexcept>

namespace sullivan {

void QMat::append_row(const QVec& v) {
    if (ncols_ == 0 && nrows_ == 0) ncols_ = v.size();
    if (v.size() != ncols_) throw std::invalid_argument("row length mismatch");
    a_.insert(a_.end(), v.begin(), v.end());
    ++nrows_;
}

Rat dot(const QVec& a, const QVec& b) {
    Rat s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool is_zero_vec(const QVec& v) {
    for (const Rat& x : v)
        if (!is_zero(x)) return false;
    return true;
}

QVec scaled(const QVec& v, const Rat& c) {
    QVec r(v);
    for (Rat& x : r) x *= c;
    return r;
}

void add_scaled(QVec& target, const QVec& v, const Rat& c) {
    for (size_t i = 0; i < target.size(); ++i) target[i] += v[i] * c;
}

namespace {

// Integer row with implicit denominator 1; rows enter primitive.
using ZVec = std::vector<mpz_class>;

ZVec clear_denominators(const QVec& row) {
    mpz_class l(1);
    for (const Rat& q : row)
        if (sgn(q) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
    ZVec z(row.size());
    for (size_t j = 0; j < row.size(); ++j) {
        Rat v = row[j] * Rat(l);
        z[j] = v.get_num();  // denominator is 1 by construction
    }
    // reduce by content
    mpz_class g(0);
    for (const mpz_class& x : z) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
        for (mpz_class& x : z) x /= g;
    return z;
}

}  // namespace

RrefResult rref(const QMat& m) {
    const size_t nr = m.rows(), nc = m.cols();
    std::vector<ZVec> rows;
    rows.reserve(nr);
    for (size_t i = 0; i < nr; ++i) rows.push_back(clear_denominators(m.row(i)));

    // Forward fraction-free elimination (Bareiss): exact integer division by
    // the previous pivot at every step.
    std::vector<size_t> pivots;
    mpz_class prev(1);
    size_t r = 0;
    for (size_t c = 0; c < nc && r < nr; ++c) {
        size_t p = r;
        while (p < nr && rows[p][c] == 0) ++p;
        if (p == nr) continue;
        std::swap(rows[p], rows[r]);
        const mpz_class piv = rows[r][c];
        for (size_t i = r + 1; i < nr; ++i) {
            const mpz_class f = rows[i][c];
            for (size_t j = 0; j < nc; ++j) {
                mpz_class t = piv * rows[i][j] - f * rows[r][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                rows[i][j] = t;
            }
        }
        prev = piv;
        pivots.push_back(c);
        ++r;
    }
    const size_t rank = r;

    // Back-substitution on the small echelon system, in rationals.
    QMat red(rank, nc);
    for (size_t i = 0; i < rank; ++i) {
        QVec v(nc, Rat(0));
        Rat piv = Rat(rows[i][pivots[i]]);
        for (size_t j = pivots[i]; j < nc; ++j) {
            v[j] = Rat(rows[i][j]) / piv;
            v[j].canonicalize();
        }
        red.set_row(i, v);
    }
    for (size_t i = rank; i-- > 0;) {
        for (size_t k = 0; k < i; ++k) {
            Rat f = red.at(k, pivots[i]);
            if (is_zero(f)) continue;
            for (size_t j = pivots[i]; j < nc; ++j) red.at(k, j) -= f * red.at(i, j);
        }
    }
    return RrefResult{std::move(red), std::move(pivots), rank};
}

std::vector<QVec> kernel_basis(const QMat& m) {
    const size_t nc = m.cols();
    RrefResult rr = rref(m);
    std::vector<bool> is_pivot(nc, false);
    for (size_t c : rr.pivots) is_pivot[c] = true;

    std::vector<QVec> basis;
    for (size_t f = 0; f < nc; ++f) {
        if (is_pivot[f]) continue;
        QVec x(nc, Rat(0));
        x[f] = 1;
        for (size_t i = 0; i < rr.rank; ++i) x[rr.pivots[i]] = -rr.reduced.at(i, f);
        basis.push_back(std::move(x));
    }
    // canonical form for determinism
    if (basis.empty()) return basis;
    QMat stack;
    for (const QVec& v : basis) stack.append_row(v);
    RrefResult canon = rref(stack);
    std::vector<QVec> out;
    for (size_t i = 0; i < canon.rank; ++i) out.push_back(canon.reduced.row(i));
    return out;
}

std::optional<QVec> solve(const QMat& m, const QVec& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve: size mismatch");
    QMat aug(m.rows(), m.cols() + 1);
    for (size_t i = 0; i < m.rows(); ++i) {
        for (size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[i];
    }
    RrefResult rr = rref(aug);
    QVec x(m.cols(), Rat(0));
    for (size_t i = 0; i < rr.rank; ++i) {
        if (rr.pivots[i] == m.cols()) return std::nullopt;  // inconsistent
        x[rr.pivots[i]] = rr.reduced.at(i, m.cols());
    }
    return x;
}

Subspace Subspace::span(size_t ambient, const std::vector<QVec>& vectors) {
    Subspace s(ambient);
    if (vectors.empty()) return s;
    QMat m(0, ambient);
    for (const QVec& v : vectors) {
        if (v.size() != ambient) throw std::invalid_argument("span: bad vector length");
        m.append_row(v);
    }
    RrefResult rr = rref(m);
    if (rr.rank == 0) return s;
    s.basis_ = rr.reduced;
    return s;
}

Subspace Subspace::full(size_t ambient) {
    QMat id(ambient, ambient);
    for (size_t i = 0; i < ambient; ++i) id.at(i, i) = 1;
    Subspace s(ambient);
    s.basis_ = id;
    return s;
}

std::optional<QVec> Subspace::coordinates(const QVec& v) const {
    if (v.size() != ambient_) throw std::invalid_argument("coordinates: bad length");
    // Reduce v against the REEF basis; because rows are REEF the coordinate
    // of each basis row is just the entry of v at that row's pivot column.
    QVec residual = v;
    QVec coords(dim(), Rat(0));
    for (size_t i = 0; i < basis_.rows(); ++i) {
        size_t pc = 0;
        while (pc < ambient_ && is_zero(basis_.at(i, pc))) ++pc;
        if (pc == ambient_) continue;
        Rat c = residual[pc];
        if (is_zero(c)) continue;
        coords[i] = c;
        for (size_t j = 0; j < ambient_; ++j) residual[j] -= c * basis_.at(i, j);
    }
    if (!is_zero_vec(residual)) return std::nullopt;
    return coords;
}

bool Subspace::contains(const QVec& v) const { return coordinates(v).has_value(); }

bool Subspace::contains(const Subspace& other) const {
    for (size_t i = 0; i < other.basis_.rows(); ++i)
        if (!contains(other.basis_.row(i))) return false;
    return true;
}

Subspace Subspace::sum(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw std::invalid_argument("sum: ambient mismatch");
    std::vector<QVec> rows;
    for (size_t i = 0; i < basis_.rows(); ++i) rows.push_back(basis_.row(i));
    for (size_t i = 0; i < other.basis_.rows(); ++i) rows.push_back(other.basis_.row(i));
    return span(ambient_, rows);
}

Subspace Subspace::intersect(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw std::invalid_argument("intersect: ambient mismatch");
    const size_t da = dim(), db = other.dim();
    if (da == 0 || db == 0) return Subspace(ambient_);
    // x = y.A = z.B  <=>  (y, z) in ker [A^T | -B^T]
    QMat m(ambient_, da + db);
    for (size_t j = 0; j < da; ++j)
        for (size_t i = 0; i < ambient_; ++i) m.at(i, j) = basis_.at(j, i);
    for (size_t j = 0; j < db; ++j)
        for (size_t i = 0; i < ambient_; ++i) m.at(i, da + j) = -other.basis_.at(j, i);
    std::vector<QVec> vectors;
    for (const QVec& yz : kernel_basis(m)) {
        QVec x(ambient_, Rat(0));
        for (size_t j = 0; j < da; ++j)
            if (!is_zero(yz[j])) add_scaled(x, basis_.row(j), yz[j]);
        vectors.push_back(std::move(x));
    }
    return span(ambient_, vectors);
}

Subspace Subspace::complement_within(const Subspace& other) const {
    // vectors of *this orthogonal to all of `other`
    const size_t dw = dim(), du = other.dim();
    if (dw == 0) return Subspace(ambient_);
    if (du == 0) return *this;
    QMat m(du, dw);
    for (size_t i = 0; i < du; ++i)
        for (size_t j = 0; j < dw; ++j) m.at(i, j) = dot(other.basis_.row(i), basis_.row(j));
    std::vector<QVec> vectors;
    for (const QVec& y : kernel_basis(m)) {
        QVec x(ambient_, Rat(0));
        for (size_t j = 0; j < dw; ++j)
            if (!is_zero(y[j])) add_scaled(x, basis_.row(j), y[j]);
        vectors.push_back(std::move(x));
    }
    return span(ambient_, vectors);
}

}  // namespace sullivan
