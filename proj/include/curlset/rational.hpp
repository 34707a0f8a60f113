#ifndef CURLSET_RATIONAL_HPP
#define CURLSET_RATIONAL_HPP

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Dense>

#include <string>
#include <string_view>

namespace curlset {

// Exact scalar used everywhere. Expression templates are off so that the
// type composes cleanly with Eigen expressions.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VectorQ = VectorX<Rational>;
using MatrixQ = MatrixX<Rational>;

/// Parses "p/q", "p", with an optional leading '+', '-' or U+2212.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parseRational(std::string_view text);

/// Canonical text: "p/q" in lowest terms, or "p" when the denominator is 1.
std::string formatRational(const Rational& value);

inline bool isZero(const Rational& x) { return x.is_zero(); }

template <typename Derived>
bool isZero(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != Scalar(0)) return false;
  return true;
}

inline VectorQ unitVector(int n, int axis) {
  VectorQ v = VectorQ::Zero(n);
  v(axis) = 1;
  return v;
}

/// Lexicographic comparison of two equally sized vectors.
bool lexLess(const VectorQ& a, const VectorQ& b);

/// Integer power; negative exponents invert (zero base throws std::domain_error).
Rational pow(const Rational& base, int exponent);

}  // namespace curlset

#endif  // CURLSET_RATIONAL_HPP
