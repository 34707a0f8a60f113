#ifndef CURLSET_LP_HPP
#define CURLSET_LP_HPP

#include "curlset/rational.hpp"

#include <vector>

namespace curlset {

enum class Relation { LessEqual, Equal, GreaterEqual };

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  VectorQ x;           // optimal point (Optimal only)
  Rational objective;  // optimal value (Optimal only)
};

// Exact linear program "maximize c·x subject to rows, x_j >= 0 unless free",
// solved by the two-phase tableau simplex with Bland's rule. Rational pivots
// make the result exact and Bland's rule guarantees termination.
class LinearProgram {
 public:
  explicit LinearProgram(int numVars);

  int numVars() const { return numVars_; }
  void setFree(int var);
  void setObjective(VectorQ c);
  void addConstraint(VectorQ coeffs, Relation rel, Rational rhs);

  LpResult maximize() const;

 private:
  struct Row {
    VectorQ coeffs;
    Relation rel;
    Rational rhs;
  };

  int numVars_;
  std::vector<bool> free_;
  VectorQ objective_;
  std::vector<Row> rows_;
};

/// Certificate for "0 lies in the relative interior of co{points}".
struct RelativeInteriorCertificate {
  bool inside = false;
  VectorQ weights;    // strictly positive, sum 1, Σ w_i p_i = 0 (inside only)
  VectorQ separator;  // <p_i, m> >= 0 for all i and > 0 for some i (outside only)
};

/// Decides 0 ∈ ri co{columns of points} exactly. The weights come from
/// "maximize t s.t. Σλ p = 0, Σλ = 1, λ >= t"; the separator from a second
/// LP "find m with <p_i, m> >= 0, Σ<p_i, m> = 1".
RelativeInteriorCertificate relativeInteriorOrigin(const MatrixQ& points);

/// Re-checks a certificate against the points; true iff every equation holds.
bool checkCertificate(const MatrixQ& points, const RelativeInteriorCertificate& cert);

}  // namespace curlset

#endif  // CURLSET_LP_HPP
