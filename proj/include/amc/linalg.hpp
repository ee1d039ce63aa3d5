#pragma once

// Exact dense linear algebra over Eigen containers. Everything here is
// templated on the scalar so it works for any exact field type (Rat) and, for
// the fraction-free routines, for the integer type.

#include "amc/rat.hpp"

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

namespace amc {

template <typename Scalar>
struct Echelon {
  Matrix<Scalar> reduced;              // reduced row echelon form
  std::vector<Eigen::Index> pivots;    // pivot column of each nonzero row
  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
};

/// Gauss-Jordan elimination; pivots are the first nonzero entry of a column.
template <typename Derived>
Echelon<typename Derived::Scalar> reduced_row_echelon(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> m = input;
  Echelon<Scalar> out;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r)
      if (m(r, col) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != row) m.row(piv).swap(m.row(row));
    const Scalar inv = Scalar(1) / m(row, col);
    for (Eigen::Index c = col; c < m.cols(); ++c)
      if (m(row, c) != 0) m(row, c) *= inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Scalar f = m(r, col);
      for (Eigen::Index c = col; c < m.cols(); ++c)
        if (m(row, c) != 0) m(r, c) -= f * m(row, c);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

template <typename Derived>
Eigen::Index exact_rank(const Eigen::MatrixBase<Derived>& m) {
  return reduced_row_echelon(m).rank();
}

/// Columns form a basis of {x : m x = 0}.
template <typename Derived>
Matrix<typename Derived::Scalar> nullspace(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  auto ech = reduced_row_echelon(m);
  const Eigen::Index n = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (auto p : ech.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Eigen::Index> free_cols;
  for (Eigen::Index c = 0; c < n; ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);
  Matrix<Scalar> basis = Matrix<Scalar>::Zero(n, static_cast<Eigen::Index>(free_cols.size()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const Eigen::Index fc = free_cols[k];
    const auto col = static_cast<Eigen::Index>(k);
    basis(fc, col) = 1;
    for (std::size_t r = 0; r < ech.pivots.size(); ++r)
      basis(ech.pivots[r], col) = -ech.reduced(static_cast<Eigen::Index>(r), fc);
  }
  return basis;
}

/// Some solution of a x = b, or nullopt when the system is inconsistent.
template <typename DA, typename DB>
std::optional<Vector<typename DA::Scalar>> solve_exact(const Eigen::MatrixBase<DA>& a,
                                                       const Eigen::MatrixBase<DB>& b) {
  using Scalar = typename DA::Scalar;
  Matrix<Scalar> aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  auto ech = reduced_row_echelon(aug);
  Vector<Scalar> x = Vector<Scalar>::Zero(a.cols());
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
    const Eigen::Index pc = ech.pivots[r];
    if (pc == a.cols()) return std::nullopt;
    x(pc) = ech.reduced(static_cast<Eigen::Index>(r), a.cols());
  }
  return x;
}

template <typename Derived>
std::optional<Matrix<typename Derived::Scalar>> inverse_exact(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() != a.cols()) return std::nullopt;
  const Eigen::Index n = a.rows();
  Matrix<Scalar> aug(n, 2 * n);
  aug.leftCols(n) = a;
  aug.rightCols(n) = Matrix<Scalar>::Identity(n, n);
  auto ech = reduced_row_echelon(aug);
  if (ech.rank() < n || ech.pivots[static_cast<std::size_t>(n - 1)] >= n) return std::nullopt;
  return Matrix<Scalar>(ech.reduced.rightCols(n));
}

/// Rows are scaled by the lcm of their denominators; the result is an integer
/// matrix with the same rank.
inline IntMatrix clear_denominators(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Int l = 1;
    for (Eigen::Index c = 0; c < m.cols(); ++c) l = lcm(l, denominator_of(m(r, c)));
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      out(r, c) = numerator_of(m(r, c)) * (l / denominator_of(m(r, c)));
  }
  return out;
}

/// Fraction-free (Bareiss) elimination. Returns the rank and, for square
/// input, the determinant.
template <typename Derived>
std::pair<Eigen::Index, typename Derived::Scalar> bareiss(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> m = input;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Scalar prev = 1;
  int sign = 1;
  Eigen::Index rank = 0;
  for (Eigen::Index col = 0; col < cols && rank < rows; ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = rank; r < rows; ++r)
      if (m(r, col) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != rank) {
      m.row(piv).swap(m.row(rank));
      sign = -sign;
    }
    for (Eigen::Index r = rank + 1; r < rows; ++r) {
      for (Eigen::Index c = col + 1; c < cols; ++c)
        m(r, c) = (m(rank, col) * m(r, c) - m(r, col) * m(rank, c)) / prev;
      m(r, col) = 0;
    }
    prev = m(rank, col);
    ++rank;
  }
  Scalar det = 0;
  if (rows == cols && rank == rows) det = sign * m(rows - 1, cols - 1);
  return {rank, det};
}

inline Eigen::Index fraction_free_rank(const RatMatrix& m) { return bareiss(clear_denominators(m)).first; }

inline Rat fraction_free_determinant(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw Error("determinant of a non-square matrix");
  if (m.rows() == 0) return Rat(1);
  Int scale = 1;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Int l = 1;
    for (Eigen::Index c = 0; c < m.cols(); ++c) l = lcm(l, denominator_of(m(r, c)));
    scale *= l;
  }
  auto [rank, det] = bareiss(clear_denominators(m));
  (void)rank;
  return Rat(det, scale);
}

/// Incrementally maintained row space in reduced echelon form.
template <typename Scalar>
class SpanBasis {
 public:
  explicit SpanBasis(Eigen::Index ambient) : ambient_(ambient) {}

  Eigen::Index ambient() const { return ambient_; }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(rows_.size()); }

  /// Reduce against the current basis; zero iff v lies in the span.
  Vector<Scalar> reduce(Vector<Scalar> v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Scalar f = v(pivots_[k]);
      if (f != 0)
        for (Eigen::Index c = pivots_[k]; c < ambient_; ++c)
          if (rows_[k](c) != 0) v(c) -= f * rows_[k](c);
    }
    return v;
  }

  bool contains(const Vector<Scalar>& v) const { return reduce(v).isZero(); }

  /// Returns true when v was independent of the span (and is now part of it).
  bool insert(const Vector<Scalar>& v) {
    Vector<Scalar> r = reduce(v);
    Eigen::Index piv = -1;
    for (Eigen::Index c = 0; c < ambient_; ++c)
      if (r(c) != 0) {
        piv = c;
        break;
      }
    if (piv < 0) return false;
    const Scalar inv = Scalar(1) / r(piv);
    for (Eigen::Index c = piv; c < ambient_; ++c)
      if (r(c) != 0) r(c) *= inv;
    for (auto& row : rows_) {
      const Scalar f = row(piv);
      if (f != 0)
        for (Eigen::Index c = piv; c < ambient_; ++c)
          if (r(c) != 0) row(c) -= f * r(c);
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv);
    const auto idx = pos - pivots_.begin();
    pivots_.insert(pos, piv);
    rows_.insert(rows_.begin() + idx, std::move(r));
    return true;
  }

  const std::vector<Vector<Scalar>>& rows() const { return rows_; }
  const std::vector<Eigen::Index>& pivots() const { return pivots_; }

 private:
  Eigen::Index ambient_;
  std::vector<Vector<Scalar>> rows_;
  std::vector<Eigen::Index> pivots_;
};

/// Coordinates of vectors in the row space of a matrix with independent rows.
template <typename Scalar>
class CoordinateSolver {
 public:
  CoordinateSolver() = default;
  explicit CoordinateSolver(const Matrix<Scalar>& rows) : n_(rows.cols()), m_(rows.rows()) {
    Matrix<Scalar> aug(m_, n_ + m_);
    aug.leftCols(n_) = rows;
    aug.rightCols(m_) = Matrix<Scalar>::Identity(m_, m_);
    auto ech = reduced_row_echelon(aug);
    if (ech.rank() < m_ || (m_ > 0 && ech.pivots.back() >= n_)) throw Error("rows are linearly dependent");
    reduced_ = ech.reduced.leftCols(n_);
    transform_ = ech.reduced.rightCols(m_);
    pivots_ = std::move(ech.pivots);
  }

  Eigen::Index dim() const { return m_; }
  Eigen::Index ambient() const { return n_; }

  /// c with c^T rows = v, or nullopt when v is outside the span.
  std::optional<Vector<Scalar>> coords(const Vector<Scalar>& v) const {
    if (v.size() != n_) throw Error("vector length mismatch");
    Vector<Scalar> residual = v;
    Vector<Scalar> c(m_);
    for (Eigen::Index r = 0; r < m_; ++r) {
      c(r) = v(pivots_[static_cast<std::size_t>(r)]);
      if (c(r) != 0) residual -= c(r) * reduced_.row(r).transpose();
    }
    if (!residual.isZero()) return std::nullopt;
    return Vector<Scalar>(transform_.transpose() * c);
  }

  bool contains(const Vector<Scalar>& v) const { return coords(v).has_value(); }

 private:
  Eigen::Index n_ = 0, m_ = 0;
  Matrix<Scalar> reduced_, transform_;
  std::vector<Eigen::Index> pivots_;
};

}  // namespace amc
