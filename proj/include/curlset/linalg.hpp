#ifndef CURLSET_LINALG_HPP
#define CURLSET_LINALG_HPP

#include "curlset/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

// Exact dense linear algebra over any field Scalar (Rational in practice).
// Every routine compares against Scalar(0) exactly; no pivot tolerances.

namespace curlset {

template <typename Scalar>
struct RowEchelon {
  MatrixX<Scalar> reduced;             // reduced row echelon form
  std::vector<Eigen::Index> pivots;    // pivot column of each nonzero row
  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
};

template <typename Derived>
RowEchelon<typename Derived::Scalar> rowReduce(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  RowEchelon<Scalar> out;
  MatrixX<Scalar>& m = out.reduced;
  m = input;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index pivot = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (m(i, c) != Scalar(0)) { pivot = i; break; }
    if (pivot < 0) continue;
    if (pivot != r) m.row(pivot).swap(m.row(r));
    const Scalar inv = Scalar(1) / m(r, c);
    for (Eigen::Index j = c; j < cols; ++j) m(r, j) *= inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == Scalar(0)) continue;
      const Scalar f = m(i, c);
      for (Eigen::Index j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  return out;
}

template <typename Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& m) {
  return rowReduce(m).rank();
}

/// Basis of {x : m x = 0}, one basis vector per column.
template <typename Derived>
MatrixX<typename Derived::Scalar> nullSpace(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const auto ech = rowReduce(m);
  const Eigen::Index cols = m.cols();
  std::vector<bool> isPivot(cols, false);
  for (auto p : ech.pivots) isPivot[p] = true;
  MatrixX<Scalar> basis(cols, cols - ech.rank());
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < cols; ++free) {
    if (isPivot[free]) continue;
    VectorX<Scalar> v = VectorX<Scalar>::Zero(cols);
    v(free) = Scalar(1);
    for (Eigen::Index r = 0; r < ech.rank(); ++r) v(ech.pivots[r]) = -ech.reduced(r, free);
    basis.col(k++) = v;
  }
  return basis;
}

/// Basis of the row space (the nonzero rows of the reduced form), one per row.
template <typename Derived>
MatrixX<typename Derived::Scalar> rowSpace(const Eigen::MatrixBase<Derived>& m) {
  const auto ech = rowReduce(m);
  return ech.reduced.topRows(ech.rank());
}

/// Basis (as rows) of the intersection of two row spaces given by row bases.
template <typename DerivedA, typename DerivedB>
MatrixX<typename DerivedA::Scalar> intersectRowSpaces(const Eigen::MatrixBase<DerivedA>& a,
                                                      const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  // span(A) ∩ span(B) = (null(A) + null(B))^⊥ with null taken row-wise.
  const Eigen::Index n = a.cols();
  MatrixX<Scalar> na = nullSpace(a).transpose();
  MatrixX<Scalar> nb = nullSpace(b).transpose();
  MatrixX<Scalar> stacked(na.rows() + nb.rows(), n);
  stacked << na, nb;
  if (stacked.rows() == 0) return rowSpace(a);
  return nullSpace(stacked).transpose();
}

/// Solves m x = rhs; returns nullopt when inconsistent. Picks free variables = 0.
template <typename DerivedM, typename DerivedV>
std::optional<VectorX<typename DerivedM::Scalar>> solve(const Eigen::MatrixBase<DerivedM>& m,
                                                        const Eigen::MatrixBase<DerivedV>& rhs) {
  using Scalar = typename DerivedM::Scalar;
  MatrixX<Scalar> aug(m.rows(), m.cols() + 1);
  aug << m, rhs;
  const auto ech = rowReduce(aug);
  VectorX<Scalar> x = VectorX<Scalar>::Zero(m.cols());
  for (Eigen::Index r = 0; r < ech.rank(); ++r) {
    const auto p = ech.pivots[r];
    if (p == m.cols()) return std::nullopt;
    x(p) = ech.reduced(r, m.cols());
  }
  return x;
}

template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  MatrixX<Scalar> m = input;
  const Eigen::Index n = m.rows();
  Scalar det(1);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index pivot = -1;
    for (Eigen::Index i = c; i < n; ++i)
      if (m(i, c) != Scalar(0)) { pivot = i; break; }
    if (pivot < 0) return Scalar(0);
    if (pivot != c) {
      m.row(pivot).swap(m.row(c));
      det = -det;
    }
    det *= m(c, c);
    const Scalar inv = Scalar(1) / m(c, c);
    for (Eigen::Index i = c + 1; i < n; ++i) {
      if (m(i, c) == Scalar(0)) continue;
      const Scalar f = m(i, c) * inv;
      for (Eigen::Index j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

/// Incrementally maintained span: insert vectors one at a time and track the
/// dimension. Kept in reduced form so membership tests are a single sweep.
template <typename Scalar>
class SpanBuilder {
 public:
  explicit SpanBuilder(Eigen::Index dim) : dim_(dim) {}

  /// Returns true when v enlarged the span.
  bool insert(VectorX<Scalar> v) {
    reduce(v);
    Eigen::Index p = 0;
    while (p < dim_ && v(p) == Scalar(0)) ++p;
    if (p == dim_) return false;
    const Scalar inv = Scalar(1) / v(p);
    v *= inv;
    for (auto& [row, col] : rows_) {
      if (row(p) == Scalar(0)) continue;
      const Scalar f = row(p);  // copy: row(p) changes while the update runs
      row -= f * v;
    }
    rows_.emplace_back(std::move(v), p);
    return true;
  }

  bool contains(VectorX<Scalar> v) const {
    reduce(v);
    return isZero(v);
  }

  Eigen::Index dimension() const { return static_cast<Eigen::Index>(rows_.size()); }
  Eigen::Index ambient() const { return dim_; }

 private:
  void reduce(VectorX<Scalar>& v) const {
    for (const auto& [row, col] : rows_) {
      if (v(col) == Scalar(0)) continue;
      const Scalar f = v(col);
      v -= f * row;
    }
  }

  Eigen::Index dim_;
  std::vector<std::pair<VectorX<Scalar>, Eigen::Index>> rows_;
};

/// Affine dimension of a point set (−1 for the empty set).
template <typename Scalar>
Eigen::Index affineDimension(const std::vector<VectorX<Scalar>>& points) {
  if (points.empty()) return -1;
  SpanBuilder<Scalar> span(points.front().size());
  for (std::size_t i = 1; i < points.size(); ++i) span.insert(points[i] - points.front());
  return span.dimension();
}

}  // namespace curlset

#endif  // CURLSET_LINALG_HPP
