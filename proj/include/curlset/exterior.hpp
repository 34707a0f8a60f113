#ifndef CURLSET_EXTERIOR_HPP
#define CURLSET_EXTERIOR_HPP

#include "curlset/linalg.hpp"
#include "curlset/rational.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Constant-coefficient exterior forms on R^n with the standard basis declared
// orthonormal.
//
// Layout: a k-form is stored as C(n,k) coefficients, one per increasing
// multi-index i1 < ... < ik, in lexicographic order of the multi-index. For
// n = 4, k = 2 that is 12, 13, 14, 23, 24, 34. Multi-indices are handled
// internally as bitmasks over {0, ..., n-1}.

namespace curlset {

inline constexpr int kMaxDimension = 16;

namespace detail {

struct BasisTables {
  // masks[n][k]: k-subsets of {0..n-1} in lexicographic order.
  std::array<std::array<std::vector<std::uint32_t>, kMaxDimension + 1>, kMaxDimension + 1> masks;
  // position[n][mask]: lexicographic position of mask among subsets of its size.
  std::array<std::vector<std::int32_t>, kMaxDimension + 1> position;

  BasisTables() {
    for (int n = 0; n <= kMaxDimension; ++n) {
      position[n].assign(std::size_t{1} << n, -1);
      for (int k = 0; k <= n; ++k) {
        auto& out = masks[n][k];
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
          std::uint32_t m = 0;
          for (int i : idx) m |= 1u << i;
          position[n][m] = static_cast<std::int32_t>(out.size());
          out.push_back(m);
          int i = k - 1;
          while (i >= 0 && idx[i] == n - k + i) --i;
          if (i < 0) break;
          ++idx[i];
          for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
      }
    }
  }
};

inline const BasisTables& basisTables() {
  static const BasisTables tables;
  return tables;
}

inline void checkDimension(int n) {
  if (n < 0 || n > kMaxDimension)
    throw std::invalid_argument("ambient dimension " + std::to_string(n) + " outside [0, " +
                                std::to_string(kMaxDimension) + "]");
}

}  // namespace detail

inline std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

/// k-subsets of {0..n-1} as bitmasks, lexicographic. Empty when k > n.
inline const std::vector<std::uint32_t>& basisMasks(int n, int k) {
  static const std::vector<std::uint32_t> empty;
  detail::checkDimension(n);
  if (k < 0 || k > n) return empty;
  return detail::basisTables().masks[n][k];
}

inline std::size_t basisIndex(int n, std::uint32_t mask) {
  return static_cast<std::size_t>(detail::basisTables().position[n][mask]);
}

/// Sign of e_A ∧ e_B relative to e_{A∪B}; 0 when A and B intersect.
inline int wedgeSign(std::uint32_t a, std::uint32_t b) {
  if (a & b) return 0;
  int swaps = 0;
  for (std::uint32_t rest = b; rest; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    swaps += std::popcount(a >> (j + 1));
  }
  return (swaps & 1) ? -1 : 1;
}

template <typename Scalar>
class KForm {
 public:
  using Coeffs = VectorX<Scalar>;

  KForm() : KForm(0, 0) {}

  KForm(int n, int k) : n_(n), k_(k) {
    detail::checkDimension(n);
    if (k < 0) throw std::invalid_argument("negative form degree");
    coeffs_ = Coeffs::Zero(static_cast<Eigen::Index>(binomial(n, k)));
  }

  KForm(int n, int k, Coeffs coeffs) : KForm(n, k) {
    if (coeffs.size() != coeffs_.size())
      throw std::invalid_argument("form of degree " + std::to_string(k) + " on R^" + std::to_string(n) +
                                  " needs " + std::to_string(coeffs_.size()) + " coefficients, got " +
                                  std::to_string(coeffs.size()));
    coeffs_ = std::move(coeffs);
  }

  /// e^{i1} ∧ ... ∧ e^{ik} with 1-based indices in any order.
  static KForm basis(int n, std::initializer_list<int> indices) {
    return basis(n, std::vector<int>(indices));
  }

  static KForm basis(int n, const std::vector<int>& indices) {
    KForm out(n, static_cast<int>(indices.size()));
    std::uint32_t mask = 0;
    int sign = 1;
    for (int i : indices) {
      if (i < 1 || i > n) throw std::invalid_argument("basis index out of range");
      const std::uint32_t bit = 1u << (i - 1);
      const int s = wedgeSign(mask, bit);
      if (s == 0) return out;
      sign *= s;
      mask |= bit;
    }
    out.coeffs_(static_cast<Eigen::Index>(basisIndex(n, mask))) = Scalar(sign);
    return out;
  }

  static KForm scalar(int n, const Scalar& s) {
    KForm out(n, 0);
    out.coeffs_(0) = s;
    return out;
  }

  static KForm fromVector(const Coeffs& v) { return KForm(static_cast<int>(v.size()), 1, v); }

  Coeffs toVector() const {
    if (k_ != 1) throw std::invalid_argument("only 1-forms convert to vectors");
    return coeffs_;
  }

  int dim() const { return n_; }
  int degree() const { return k_; }
  const Coeffs& coeffs() const { return coeffs_; }
  Eigen::Index size() const { return coeffs_.size(); }

  /// Coefficient of the basis element with the given bitmask.
  const Scalar& at(std::uint32_t mask) const {
    return coeffs_(static_cast<Eigen::Index>(basisIndex(n_, mask)));
  }

  bool isZero() const { return curlset::isZero(coeffs_); }

  KForm operator-() const { return KForm(n_, k_, Coeffs(-coeffs_)); }
  KForm operator+(const KForm& o) const {
    checkCompatible(o);
    return KForm(n_, k_, Coeffs(coeffs_ + o.coeffs_));
  }
  KForm operator-(const KForm& o) const {
    checkCompatible(o);
    return KForm(n_, k_, Coeffs(coeffs_ - o.coeffs_));
  }
  KForm operator*(const Scalar& s) const { return KForm(n_, k_, Coeffs(coeffs_ * s)); }
  friend KForm operator*(const Scalar& s, const KForm& f) { return f * s; }

  bool operator==(const KForm& o) const {
    return n_ == o.n_ && k_ == o.k_ && coeffs_.size() == o.coeffs_.size() &&
           (coeffs_.size() == 0 || coeffs_ == o.coeffs_);
  }
  bool operator!=(const KForm& o) const { return !(*this == o); }

 private:
  void checkCompatible(const KForm& o) const {
    if (n_ != o.n_ || k_ != o.k_) throw std::invalid_argument("forms of different dimension or degree");
  }

  int n_;
  int k_;
  Coeffs coeffs_;
};

using Form = KForm<Rational>;

template <typename Scalar>
KForm<Scalar> wedge(const KForm<Scalar>& a, const KForm<Scalar>& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("wedge: ambient dimension mismatch");
  const int n = a.dim();
  KForm<Scalar> out(n, a.degree() + b.degree());
  if (out.size() == 0) return out;
  VectorX<Scalar> c = VectorX<Scalar>::Zero(out.size());
  const auto& ma = basisMasks(n, a.degree());
  const auto& mb = basisMasks(n, b.degree());
  for (std::size_t i = 0; i < ma.size(); ++i) {
    const Scalar& x = a.coeffs()(static_cast<Eigen::Index>(i));
    if (x == Scalar(0)) continue;
    for (std::size_t j = 0; j < mb.size(); ++j) {
      const Scalar& y = b.coeffs()(static_cast<Eigen::Index>(j));
      if (y == Scalar(0)) continue;
      const int s = wedgeSign(ma[i], mb[j]);
      if (s == 0) continue;
      const auto at = static_cast<Eigen::Index>(basisIndex(n, ma[i] | mb[j]));
      if (s > 0) c(at) += x * y;
      else c(at) -= x * y;
    }
  }
  return KForm<Scalar>(n, out.degree(), std::move(c));
}

/// Vector ∧ form, with the vector read as a 1-form.
template <typename Scalar>
KForm<Scalar> wedge(const VectorX<Scalar>& v, const KForm<Scalar>& w) {
  return wedge(KForm<Scalar>::fromVector(v), w);
}

template <typename Scalar>
KForm<Scalar> wedge(const VectorX<Scalar>& u, const VectorX<Scalar>& v) {
  return wedge(KForm<Scalar>::fromVector(u), KForm<Scalar>::fromVector(v));
}

/// Interior product v ⌟ w, adjoint to v ∧ · under the scalar product.
template <typename Scalar>
KForm<Scalar> interior(const VectorX<Scalar>& v, const KForm<Scalar>& w) {
  if (w.degree() == 0) throw std::invalid_argument("interior product of a 0-form");
  if (v.size() != w.dim()) throw std::invalid_argument("interior: ambient dimension mismatch");
  const int n = w.dim();
  KForm<Scalar> out(n, w.degree() - 1);
  if (w.degree() > n) return out;
  VectorX<Scalar> c = VectorX<Scalar>::Zero(out.size());
  const auto& masks = basisMasks(n, w.degree());
  for (std::size_t i = 0; i < masks.size(); ++i) {
    const Scalar& x = w.coeffs()(static_cast<Eigen::Index>(i));
    if (x == Scalar(0)) continue;
    for (std::uint32_t rest = masks[i]; rest; rest &= rest - 1) {
      const int j = std::countr_zero(rest);
      if (v(j) == Scalar(0)) continue;
      const std::uint32_t below = masks[i] & ((1u << j) - 1);
      const auto at = static_cast<Eigen::Index>(basisIndex(n, masks[i] & ~(1u << j)));
      if (std::popcount(below) & 1) c(at) -= v(j) * x;
      else c(at) += v(j) * x;
    }
  }
  return KForm<Scalar>(n, out.degree(), std::move(c));
}

template <typename Scalar>
Scalar inner(const KForm<Scalar>& a, const KForm<Scalar>& b) {
  if (a.dim() != b.dim() || a.degree() != b.degree())
    throw std::invalid_argument("inner: forms of different dimension or degree");
  Scalar s(0);
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a.coeffs()(i) * b.coeffs()(i);
  return s;
}

template <typename Scalar>
Scalar normSquared(const VectorX<Scalar>& v) {
  Scalar s(0);
  for (Eigen::Index i = 0; i < v.size(); ++i) s += v(i) * v(i);
  return s;
}

/// Hodge star: a ∧ hodge(b) = <a, b> e^1 ∧ ... ∧ e^n.
template <typename Scalar>
KForm<Scalar> hodge(const KForm<Scalar>& w) {
  const int n = w.dim();
  if (w.degree() > n) return KForm<Scalar>(n, 0);
  KForm<Scalar> out(n, n - w.degree());
  VectorX<Scalar> c = VectorX<Scalar>::Zero(out.size());
  const std::uint32_t full = (1u << n) - 1;
  const auto& masks = basisMasks(n, w.degree());
  for (std::size_t i = 0; i < masks.size(); ++i) {
    const std::uint32_t comp = full & ~masks[i];
    const auto at = static_cast<Eigen::Index>(basisIndex(n, comp));
    const Scalar& x = w.coeffs()(static_cast<Eigen::Index>(i));
    c(at) = wedgeSign(masks[i], comp) > 0 ? x : Scalar(-x);
  }
  return KForm<Scalar>(n, out.degree(), std::move(c));
}

/// Skew matrix M with M(i,j) = coefficient of e^i ∧ e^j for i < j.
template <typename Scalar>
MatrixX<Scalar> skewMatrix(const KForm<Scalar>& w) {
  if (w.degree() != 2) throw std::invalid_argument("skewMatrix: expected a 2-form");
  const int n = w.dim();
  MatrixX<Scalar> m = MatrixX<Scalar>::Zero(n, n);
  const auto& masks = basisMasks(n, 2);
  for (std::size_t idx = 0; idx < masks.size(); ++idx) {
    const int i = std::countr_zero(masks[idx]);
    const int j = 31 - std::countl_zero(masks[idx]);
    m(i, j) = w.coeffs()(static_cast<Eigen::Index>(idx));
    m(j, i) = -m(i, j);
  }
  return m;
}

template <typename Scalar>
KForm<Scalar> fromSkewMatrix(const MatrixX<Scalar>& m) {
  const int n = static_cast<int>(m.rows());
  KForm<Scalar> out(n, 2);
  VectorX<Scalar> c(out.size());
  const auto& masks = basisMasks(n, 2);
  for (std::size_t idx = 0; idx < masks.size(); ++idx)
    c(static_cast<Eigen::Index>(idx)) = m(std::countr_zero(masks[idx]), 31 - std::countl_zero(masks[idx]));
  return KForm<Scalar>(n, 2, std::move(c));
}

/// Rank of a 2-form as 2p, p the largest power with w^p ≠ 0.
template <typename Scalar>
int rankTwoForm(const KForm<Scalar>& w) {
  if (w.degree() != 2) throw std::invalid_argument("rankTwoForm: expected a 2-form");
  KForm<Scalar> power = KForm<Scalar>::scalar(w.dim(), Scalar(1));
  int p = 0;
  while (2 * (p + 1) <= w.dim()) {
    power = wedge(power, w);
    if (power.isZero()) break;
    ++p;
  }
  return 2 * p;
}

/// Rank of the associated skew matrix; agrees with rankTwoForm.
template <typename Scalar>
int skewRank(const KForm<Scalar>& w) {
  return static_cast<int>(rank(skewMatrix(w)));
}

template <typename Scalar>
struct KernelSpaces {
  MatrixX<Scalar> kernel;      // basis of {v : v ⌟ w = 0}, as columns
  MatrixX<Scalar> complement;  // basis of its orthogonal complement, as columns
};

template <typename Scalar>
KernelSpaces<Scalar> kernelSpaces(const KForm<Scalar>& w) {
  const MatrixX<Scalar> m = skewMatrix(w);
  return {nullSpace(m), rowSpace(m).transpose()};
}

/// Plücker test: (ι_ξ w) ∧ w = 0 for every basis (k−1)-vector ξ.
template <typename Scalar>
bool decomposable(const KForm<Scalar>& w) {
  const int n = w.dim(), k = w.degree();
  if (k <= 1 || k >= n || w.isZero()) return true;
  for (std::uint32_t mask : basisMasks(n, k - 1)) {
    KForm<Scalar> contracted = w;
    for (std::uint32_t rest = mask; rest; rest &= rest - 1) {
      VectorX<Scalar> unit = VectorX<Scalar>::Zero(n);
      unit(std::countr_zero(rest)) = Scalar(1);
      contracted = interior(unit, contracted);
    }
    if (contracted.isZero()) continue;
    if (!wedge(contracted, w).isZero()) return false;
  }
  return true;
}

/// Returns the unique a ⟂ b with a ∧ b = e, or nullopt when e ∉ R^n ∧ b.
template <typename Scalar>
std::optional<VectorX<Scalar>> cartanDivide(const KForm<Scalar>& e, const VectorX<Scalar>& b) {
  if (e.degree() != 2) throw std::invalid_argument("cartanDivide: expected a 2-form");
  if (curlset::isZero(b)) throw std::invalid_argument("cartanDivide: zero divisor");
  if (!wedge(e, KForm<Scalar>::fromVector(b)).isZero() || rankTwoForm(e) > 2) return std::nullopt;
  const Scalar bb = normSquared(b);
  VectorX<Scalar> c = interior(b, e).toVector();
  const Scalar along = c.dot(b) / bb;
  c -= along * b;
  return VectorX<Scalar>(-c / bb);
}

}  // namespace curlset

#endif  // CURLSET_EXTERIOR_HPP
