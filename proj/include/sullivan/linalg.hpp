#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sullivan/rational.hpp"

namespace sullivan {

using QVec = std::vector<Rat>;

/// Dense matrix over the rationals, row-major.
class QMat {
  public:
    QMat() = default;
    QMat(size_t rows, size_t cols) : nrows_(rows), ncols_(cols), a_(rows * cols, Rat(0)) {}

    size_t rows() const { return nrows_; }
    size_t cols() const { return ncols_; }

    Rat& at(size_t i, size_t j) { return a_[i * ncols_ + j]; }
    const Rat& at(size_t i, size_t j) const { return a_[i * ncols_ + j]; }

    QVec row(size_t i) const {
        return QVec(a_.begin() + static_cast<long>(i * ncols_),
                    a_.begin() + static_cast<long>((i + 1) * ncols_));
    }
    void set_row(size_t i, const QVec& v) {
        for (size_t j = 0; j < ncols_; ++j) at(i, j) = v[j];
    }
    void append_row(const QVec& v);

    bool operator==(const QMat& o) const = default;

  private:
    size_t nrows_ = 0, ncols_ = 0;
    std::vector<Rat> a_;
};

struct RrefResult {
    QMat reduced;                 // canonical REEF, zero rows dropped
    std::vector<size_t> pivots;   // pivot column per row
    size_t rank = 0;
};

/// Reduced row-echelon form. Rows are cleared of denominators and the
/// forward pass runs fraction-free (Bareiss) over integers; the final
/// normalization divides back to leading-1 rational rows.
RrefResult rref(const QMat& m);

/// Basis of { x : M x = 0 }, canonical (REEF of the standard kernel basis).
std::vector<QVec> kernel_basis(const QMat& m);

/// A particular solution of M x = b, if one exists.
std::optional<QVec> solve(const QMat& m, const QVec& b);

Rat dot(const QVec& a, const QVec& b);
bool is_zero_vec(const QVec& v);
QVec scaled(const QVec& v, const Rat& c);
void add_scaled(QVec& target, const QVec& v, const Rat& c);

/// A linear subspace of Q^n carried by a canonical REEF basis, so equality
/// of subspaces is equality of basis matrices.
class Subspace {
  public:
    Subspace() = default;
    explicit Subspace(size_t ambient) : ambient_(ambient), basis_(0, ambient) {}

    static Subspace span(size_t ambient, const std::vector<QVec>& vectors);
    static Subspace full(size_t ambient);

    size_t ambient_dim() const { return ambient_; }
    size_t dim() const { return basis_.rows(); }
    const QMat& basis() const { return basis_; }

    bool contains(const QVec& v) const;
    bool contains(const Subspace& other) const;
    bool operator==(const Subspace& o) const = default;

    /// Coordinates of v in this basis; nullopt if v is outside the subspace.
    std::optional<QVec> coordinates(const QVec& v) const;

    Subspace sum(const Subspace& other) const;
    Subspace intersect(const Subspace& other) const;

    /// { w in *this : <w, u> = 0 for all u in other }, standard dot product.
    Subspace complement_within(const Subspace& other) const;

  private:
    size_t ambient_ = 0;
    QMat basis_;  // REEF rows
};

}  // namespace sullivan
