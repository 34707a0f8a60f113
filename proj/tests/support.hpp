#ifndef CURLSET_TESTS_SUPPORT_HPP
#define CURLSET_TESTS_SUPPORT_HPP

// Generators and brute-force oracles shared by the unit tests and the
// acceptance binary. The oracles deliberately avoid the library's bitmask
// tables: forms are maps from sorted index tuples to coefficients and every
// sign is computed by counting inversions.

#include "curlset/exterior.hpp"
#include "curlset/linalg.hpp"
#include "curlset/rational.hpp"
#include "curlset/setlab.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace curlset::testing {

using Rng = std::mt19937_64;
using Tuple = std::vector<int>;  // 0-based, strictly increasing
using TupleForm = std::map<Tuple, Rational>;

// ---- generators ----

inline long randInt(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/// Small rationals: mostly integers in [−3, 3], sometimes p/q with q <= 3.
inline Rational randRational(Rng& rng) {
  const long p = randInt(rng, -3, 3);
  const long q = randInt(rng, 0, 3) == 0 ? randInt(rng, 2, 3) : 1;
  return Rational(p, q);
}

inline VectorQ randVector(Rng& rng, int n) {
  VectorQ v(n);
  for (int i = 0; i < n; ++i) v(i) = randRational(rng);
  return v;
}

inline VectorQ randNonzeroVector(Rng& rng, int n) {
  VectorQ v;
  do v = randVector(rng, n);
  while (isZero(v));
  return v;
}

/// Sparse-ish random k-form: each coefficient is zero with probability 1/3.
inline Form randForm(Rng& rng, int n, int k) {
  Form w(n, k);
  VectorQ c(w.size());
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = randInt(rng, 0, 2) == 0 ? Rational(0) : randRational(rng);
  return Form(n, k, c);
}

/// Random 2-form of skew rank <= 2r: a sum of r random decomposables.
inline Form randLowRank(Rng& rng, int n, int r) {
  Form w(n, 2);
  for (int i = 0; i < r; ++i) w = w + wedge(randVector(rng, n), randVector(rng, n));
  return w;
}

// ---- combinatorics ----

/// k-subsets of {0..n−1} in lexicographic order.
inline std::vector<Tuple> subsets(int n, int k) {
  std::vector<Tuple> out;
  Tuple cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

/// Sign of the permutation sorting `seq`, or 0 when it repeats an index.
inline int sortSign(Tuple seq) {
  int inversions = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j) {
      if (seq[i] == seq[j]) return 0;
      if (seq[i] > seq[j]) ++inversions;
    }
  return inversions % 2 ? -1 : 1;
}

// ---- tuple-form oracle ----

inline TupleForm toTuples(const Form& w) {
  TupleForm out;
  const auto ts = subsets(w.dim(), w.degree());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const Rational& c = w.coeffs()(static_cast<Eigen::Index>(i));
    if (!isZero(c)) out[ts[i]] = c;
  }
  return out;
}

inline Form fromTuples(int n, int k, const TupleForm& t) {
  const auto ts = subsets(n, k);
  VectorQ c = VectorQ::Zero(static_cast<Eigen::Index>(ts.size()));
  for (std::size_t i = 0; i < ts.size(); ++i) {
    auto it = t.find(ts[i]);
    if (it != t.end()) c(static_cast<Eigen::Index>(i)) = it->second;
  }
  return Form(n, k, c);
}

/// Expands a ∧ b term by term, sorting each concatenated index word.
inline Form oracleWedge(const Form& a, const Form& b) {
  TupleForm out;
  for (const auto& [ta, ca] : toTuples(a))
    for (const auto& [tb, cb] : toTuples(b)) {
      Tuple word = ta;
      word.insert(word.end(), tb.begin(), tb.end());
      const int s = sortSign(word);
      if (s == 0) continue;
      std::sort(word.begin(), word.end());
      out[word] += Rational(s) * ca * cb;
    }
  return fromTuples(a.dim(), a.degree() + b.degree(), out);
}

inline Rational oracleInner(const Form& a, const Form& b) {
  Rational s = 0;
  const auto tb = toTuples(b);
  for (const auto& [t, c] : toTuples(a)) {
    auto it = tb.find(t);
    if (it != tb.end()) s += c * it->second;
  }
  return s;
}

/// Interior product through adjunction: coefficient on basis η is <w, v ∧ η>.
inline Form oracleInterior(const VectorQ& v, const Form& w) {
  const int n = w.dim(), k = w.degree() - 1;
  TupleForm out;
  for (const auto& t : subsets(n, k)) {
    const Form eta = fromTuples(n, k, {{t, Rational(1)}});
    const Rational c = oracleInner(w, oracleWedge(Form::fromVector(v), eta));
    if (!isZero(c)) out[t] = c;
  }
  return fromTuples(n, k, out);
}

/// Hodge star from a ∧ *b = <a, b> vol, solved over the basis.
inline Form oracleHodge(const Form& w) {
  const int n = w.dim(), k = w.degree();
  TupleForm out;
  Tuple all(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  for (const auto& [t, c] : toTuples(w)) {
    Tuple comp;
    for (int i = 0; i < n; ++i)
      if (!std::binary_search(t.begin(), t.end(), i)) comp.push_back(i);
    Tuple word = t;
    word.insert(word.end(), comp.begin(), comp.end());
    out[comp] += Rational(sortSign(word)) * c;
  }
  return fromTuples(n, n - k, out);
}

/// Rank of a small rational matrix in double precision (inputs are tiny, so
/// the pivoted LU is reliable); independent of the exact elimination code.
inline int oracleRank(const MatrixQ& m) {
  if (m.size() == 0) return 0;
  Eigen::MatrixXd d(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) d(i, j) = m(i, j).convert_to<double>();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(d);
  lu.setThreshold(1e-9);
  return static_cast<int>(lu.rank());
}

/// Leibniz expansion.
inline Rational oracleDeterminant(const MatrixQ& m) {
  const int n = static_cast<int>(m.rows());
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  Rational total = 0;
  do {
    Rational term = sortSign(perm);
    for (int i = 0; i < n; ++i) term *= m(i, perm[static_cast<std::size_t>(i)]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Skew matrix assembled from tuples.
inline MatrixQ oracleSkew(const Form& w) {
  MatrixQ m = MatrixQ::Zero(w.dim(), w.dim());
  for (const auto& [t, c] : toTuples(w)) {
    m(t[0], t[1]) = c;
    m(t[1], t[0]) = -c;
  }
  return m;
}

/// Span dimension via the double-precision rank of the coefficient rows.
inline int oracleSpanDim(const std::vector<Form>& forms) {
  if (forms.empty()) return 0;
  MatrixQ m(static_cast<Eigen::Index>(forms.size()), forms.front().size());
  for (std::size_t i = 0; i < forms.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = forms[i].coeffs().transpose();
  return oracleRank(m);
}

// ---- named sets ----

inline Form e2(int n, int i, int j) { return Form::basis(n, {i, j}); }

/// {±e^1 ∧ e^j : j = 2..n}.
inline FormSet lineSet(int n) {
  std::vector<Form> v;
  for (int j = 2; j <= n; ++j) {
    v.push_back(e2(n, 1, j));
    v.push_back(-e2(n, 1, j));
  }
  return FormSet(n, v);
}

/// {±e^1 ∧ e^j, ±e^2 ∧ e^j}: the union of the two line sets along e^1 and e^2.
inline FormSet twoLineSet(int n) {
  std::vector<Form> v;
  for (int j = 2; j <= n; ++j) {
    v.push_back(e2(n, 1, j));
    v.push_back(-e2(n, 1, j));
  }
  for (int j = 3; j <= n; ++j) {
    v.push_back(e2(n, 2, j));
    v.push_back(-e2(n, 2, j));
  }
  return FormSet(n, v);
}

/// Parts {±e^1∧e^j} and {±e^2∧e^j, ±e^2∧e^1} as indices into twoLineSet(n).
inline PartitionHint twoLineHint(int n) {
  std::vector<int> first, second{0, 1};
  for (int i = 0; i < 2 * (n - 1); ++i) first.push_back(i);
  for (int i = 2 * (n - 1); i < 2 * (n - 1) + 2 * (n - 2); ++i) second.push_back(i);
  return {first, second};
}

/// {e^1∧e^2, e^1∧e^3, e^2∧e^3} in R^4: pairwise wedges vanish, no common line.
inline FormSet threePlanes() { return FormSet(4, {e2(4, 1, 2), e2(4, 1, 3), e2(4, 2, 3)}); }

/// {e^2∧e^3} ∪ {e^2∧e^3 + e^1∧e^j : j = 2..4} in R^5.
inline FormSet sharedPlane() {
  const Form base = e2(5, 2, 3);
  return FormSet(5, {base, base + e2(5, 1, 2), base + e2(5, 1, 3), base + e2(5, 1, 4)});
}

inline FormSet fullSpanSet() { return FormSet(4, {e2(4, 1, 2), e2(4, 1, 3), e2(4, 1, 4), e2(4, 2, 3)}); }

// ---- algebra identity suite ----

struct IdentityTally {
  std::string name;
  int checks = 0;
  int failures = 0;
};

/// Runs `count` random checks of each identity; returns one tally per identity.
inline std::vector<IdentityTally> runIdentitySuite(int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<IdentityTally> t{{"anticommutativity"}, {"associativity"},     {"adjunction"},
                               {"contraction"},       {"hodge involution"}, {"rank equivalence"}};
  auto tally = [](IdentityTally& x, bool ok) {
    ++x.checks;
    if (!ok) ++x.failures;
  };
  for (int i = 0; i < count; ++i) {
    const int n = static_cast<int>(randInt(rng, 2, 6));
    const int k = static_cast<int>(randInt(rng, 0, n));
    const int l = static_cast<int>(randInt(rng, 0, n - k));
    const int m = static_cast<int>(randInt(rng, 0, n - k - l));
    const Form a = randForm(rng, n, k), b = randForm(rng, n, l), c = randForm(rng, n, m);

    const Form ab = wedge(a, b);
    const Rational sign = (k * l) % 2 ? -1 : 1;
    tally(t[0], ab == wedge(b, a) * sign && ab == oracleWedge(a, b));

    tally(t[1], wedge(ab, c) == wedge(a, wedge(b, c)));

    const VectorQ v = randVector(rng, n);
    const int kk = static_cast<int>(randInt(rng, 1, n));
    const Form w = randForm(rng, n, kk), eta = randForm(rng, n, kk - 1);
    const Form vw = interior(v, w);
    tally(t[2], inner(wedge(v, eta), w) == inner(eta, vw) && vw == oracleInterior(v, w));

    const Form contracted = interior(v, wedge(v, w)) + wedge(v, vw);
    tally(t[3], contracted == w * normSquared(v));

    const Rational hs = (kk * (n - kk)) % 2 ? -1 : 1;
    tally(t[4], hodge(hodge(w)) == w * hs && hodge(w) == oracleHodge(w));

    const Form two = randLowRank(rng, n, static_cast<int>(randInt(rng, 0, n / 2)));
    const int r = rankTwoForm(two);
    tally(t[5], r == skewRank(two) && r == oracleRank(oracleSkew(two)) && decomposable(two) == (r <= 2));
  }
  return t;
}

}  // namespace curlset::testing

#endif  // CURLSET_TESTS_SUPPORT_HPP
