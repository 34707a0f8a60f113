#ifndef CURLSET_SETLAB_HPP
#define CURLSET_SETLAB_HPP

#include "curlset/exterior.hpp"
#include "curlset/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace curlset {

// Finite set E of 2-forms on R^n, the right-hand side of curl η ∈ E.
class FormSet {
 public:
  /// Throws std::invalid_argument for n < 2, an empty list, mixed dimension or
  /// degree, or duplicate elements.
  FormSet(int n, std::vector<Form> elements);

  int dim() const { return n_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<Form>& elements() const { return elements_; }
  const Form& operator[](std::size_t i) const { return elements_[i]; }

  /// Elements as rows of a |E| x C(n,2) matrix.
  MatrixQ coefficientMatrix() const;
  FormSet subset(const std::vector<int>& indices) const;
  /// Index of an element equal to `w`, or -1.
  int find(const Form& w) const;

 private:
  int n_;
  std::vector<Form> elements_;
};

int spanDim(const FormSet& e);
bool pairwiseWedgeZero(const FormSet& e);
bool pairwiseRankDiffLe2(const FormSet& e);
bool containsZero(const FormSet& e);

/// The line b (first nonzero coordinate 1) with E ⊆ R^n ∧ b and ⋂ ker{e}^⊥ = span{b}.
/// Throws std::invalid_argument when E contains the zero form.
std::optional<VectorQ> commonLineDetect(const FormSet& e);

struct RicoCertificate {
  bool inside = false;
  VectorQ weights;   // λ_e > 0, Σλ_e = 1, Σλ_e e = 0 (inside only)
  Form separator;    // <e, m> >= 0 for all e, > 0 for some (outside only)
};

/// Exact decision of 0 ∈ ri co E. The certificate is re-verified before return.
RicoCertificate ricoMembership(const FormSet& e);
bool checkRico(const FormSet& e, const RicoCertificate& cert);

enum class Verdict { SolvableLine, SolvableComposite, NoSolutionDimN, InconsistentHypotheses, Unknown };

std::string verdictName(Verdict v);
Verdict verdictFromName(const std::string& name);

struct PartitionPart {
  std::vector<int> indices;  // into the parent FormSet
  VectorQ line;              // common line b of the part
};

struct ClassificationReport {
  int n = 0;
  int spanDim = 0;
  bool pairwiseWedgeZero = false;
  bool pairwiseRankDiffLe2 = false;
  bool containsZero = false;
  std::optional<VectorQ> commonLine;
  RicoCertificate rico;
  Verdict verdict = Verdict::Unknown;
  std::vector<PartitionPart> partition;  // two parts for SolvableComposite
  std::vector<std::string> notes;
};

using PartitionHint = std::vector<std::vector<int>>;

/// Parts must be nonempty, in range, free of repeated indices within a part,
/// and cover E. Parts may share elements. Throws std::invalid_argument.
void validatePartitionHint(const FormSet& e, const PartitionHint& hint);

/// Whether E alone is solvable along one line: common line, dim span E = n−1
/// and 0 ∈ ri co E. Returns the line.
std::optional<VectorQ> solvableAlongLine(const FormSet& e);

/// Two-line cover search. Candidate lines come from one-dimensional pairwise
/// intersections ker{e}^⊥ ∩ ker{f}^⊥, ordered by leading index and then
/// lexicographically; the first pair of lines whose groups {e : e ∈ R^n ∧ b}
/// cover E and are each solvable along their line wins.
std::optional<std::vector<PartitionPart>> detectTwoPartition(const FormSet& e);

ClassificationReport classify(const FormSet& e, const std::optional<PartitionHint>& hint = std::nullopt);

/// Scales v so that its first nonzero coordinate is 1.
VectorQ normalizeLine(const VectorQ& v);

}  // namespace curlset

#endif  // CURLSET_SETLAB_HPP
