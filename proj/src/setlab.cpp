#include "curlset/setlab.hpp"

#include "curlset/linalg.hpp"
#include "curlset/lp.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace curlset {

FormSet::FormSet(int n, std::vector<Form> elements) : n_(n), elements_(std::move(elements)) {
  if (n < 2) throw std::invalid_argument("a form set needs ambient dimension >= 2");
  if (elements_.empty()) throw std::invalid_argument("a form set needs at least one element");
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i].dim() != n || elements_[i].degree() != 2)
      throw std::invalid_argument("element " + std::to_string(i) + " is not a 2-form on R^" + std::to_string(n));
    for (std::size_t j = 0; j < i; ++j)
      if (elements_[i] == elements_[j])
        throw std::invalid_argument("elements " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
  }
}

MatrixQ FormSet::coefficientMatrix() const {
  MatrixQ m(static_cast<Eigen::Index>(elements_.size()), static_cast<Eigen::Index>(binomial(n_, 2)));
  for (std::size_t i = 0; i < elements_.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = elements_[i].coeffs().transpose();
  return m;
}

FormSet FormSet::subset(const std::vector<int>& indices) const {
  std::vector<Form> out;
  for (int i : indices) out.push_back(elements_.at(static_cast<std::size_t>(i)));
  return FormSet(n_, std::move(out));
}

int FormSet::find(const Form& w) const {
  for (std::size_t i = 0; i < elements_.size(); ++i)
    if (elements_[i] == w) return static_cast<int>(i);
  return -1;
}

int spanDim(const FormSet& e) { return static_cast<int>(rank(e.coefficientMatrix())); }

bool pairwiseWedgeZero(const FormSet& e) {
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i; j < e.size(); ++j)
      if (!wedge(e[i], e[j]).isZero()) return false;
  return true;
}

bool pairwiseRankDiffLe2(const FormSet& e) {
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j)
      if (rankTwoForm(e[i] - e[j]) > 2) return false;
  return true;
}

bool containsZero(const FormSet& e) {
  return std::any_of(e.elements().begin(), e.elements().end(), [](const Form& w) { return w.isZero(); });
}

VectorQ normalizeLine(const VectorQ& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!v(i).is_zero()) return v / Rational(v(i));
  throw std::invalid_argument("cannot normalize the zero vector");
}

namespace {

// ker{w}^⊥ as row basis.
MatrixQ supportRows(const Form& w) { return kernelSpaces(w).complement.transpose(); }

bool onLine(const Form& w, const VectorQ& b) {
  return wedge(w, Form::fromVector(b)).isZero() && rankTwoForm(w) <= 2;
}

int leadingIndex(const VectorQ& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!v(i).is_zero()) return static_cast<int>(i);
  return static_cast<int>(v.size());
}

}  // namespace

std::optional<VectorQ> commonLineDetect(const FormSet& e) {
  if (containsZero(e)) throw std::invalid_argument("commonLineDetect: the zero form is not allowed in E");
  MatrixQ common = supportRows(e[0]);
  for (std::size_t i = 1; i < e.size() && common.rows() > 0; ++i) common = intersectRowSpaces(common, supportRows(e[i]));
  if (common.rows() != 1) return std::nullopt;
  const VectorQ b = normalizeLine(common.row(0).transpose());
  for (const auto& w : e.elements())
    if (!onLine(w, b)) return std::nullopt;
  return b;
}

RicoCertificate ricoMembership(const FormSet& e) {
  const MatrixQ points = e.coefficientMatrix().transpose();
  const RelativeInteriorCertificate c = relativeInteriorOrigin(points);
  RicoCertificate out;
  out.inside = c.inside;
  if (c.inside) out.weights = c.weights;
  else out.separator = Form(e.dim(), 2, c.separator);
  if (!checkRico(e, out)) throw std::logic_error("rico certificate failed re-verification");
  return out;
}

bool checkRico(const FormSet& e, const RicoCertificate& cert) {
  RelativeInteriorCertificate c;
  c.inside = cert.inside;
  if (cert.inside) {
    c.weights = cert.weights;
  } else {
    if (cert.separator.dim() != e.dim() || cert.separator.degree() != 2) return false;
    c.separator = cert.separator.coeffs();
  }
  return checkCertificate(e.coefficientMatrix().transpose(), c);
}

std::string verdictName(Verdict v) {
  switch (v) {
    case Verdict::SolvableLine: return "SOLVABLE_LINE";
    case Verdict::SolvableComposite: return "SOLVABLE_COMPOSITE";
    case Verdict::NoSolutionDimN: return "NO_SOLUTION_DIM_N";
    case Verdict::InconsistentHypotheses: return "INCONSISTENT_HYPOTHESES";
    case Verdict::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

Verdict verdictFromName(const std::string& name) {
  for (Verdict v : {Verdict::SolvableLine, Verdict::SolvableComposite, Verdict::NoSolutionDimN,
                    Verdict::InconsistentHypotheses, Verdict::Unknown})
    if (verdictName(v) == name) return v;
  throw std::invalid_argument("unknown verdict '" + name + "'");
}

void validatePartitionHint(const FormSet& e, const PartitionHint& hint) {
  if (hint.size() != 2) throw std::invalid_argument("partition hint must have exactly two parts");
  std::vector<bool> covered(e.size(), false);
  for (const auto& part : hint) {
    if (part.empty()) throw std::invalid_argument("partition hint has an empty part");
    std::set<int> seen;
    for (int i : part) {
      if (i < 0 || static_cast<std::size_t>(i) >= e.size())
        throw std::invalid_argument("partition hint index " + std::to_string(i) + " out of range");
      if (!seen.insert(i).second)
        throw std::invalid_argument("partition hint repeats index " + std::to_string(i) + " within a part");
      covered[static_cast<std::size_t>(i)] = true;
    }
  }
  for (std::size_t i = 0; i < covered.size(); ++i)
    if (!covered[i]) throw std::invalid_argument("partition hint misses element " + std::to_string(i));
}

std::optional<VectorQ> solvableAlongLine(const FormSet& e) {
  if (containsZero(e)) return std::nullopt;
  auto b = commonLineDetect(e);
  if (!b || spanDim(e) != e.dim() - 1) return std::nullopt;
  if (!ricoMembership(e).inside) return std::nullopt;
  return b;
}

std::optional<std::vector<PartitionPart>> detectTwoPartition(const FormSet& e) {
  std::vector<VectorQ> lines;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i].isZero()) continue;
    const MatrixQ si = supportRows(e[i]);
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      if (e[j].isZero()) continue;
      const MatrixQ common = intersectRowSpaces(si, supportRows(e[j]));
      if (common.rows() != 1) continue;
      VectorQ b = normalizeLine(common.row(0).transpose());
      if (std::find(lines.begin(), lines.end(), b) == lines.end()) lines.push_back(std::move(b));
    }
  }
  std::sort(lines.begin(), lines.end(), [](const VectorQ& a, const VectorQ& b) {
    const int la = leadingIndex(a), lb = leadingIndex(b);
    if (la != lb) return la < lb;
    return lexLess(a, b);
  });

  struct Group {
    std::vector<int> members;
    std::optional<bool> solvable;
  };
  std::vector<Group> groups(lines.size());
  for (std::size_t l = 0; l < lines.size(); ++l)
    for (std::size_t i = 0; i < e.size(); ++i)
      if (!e[i].isZero() && onLine(e[i], lines[l])) groups[l].members.push_back(static_cast<int>(i));

  auto solvable = [&](std::size_t l) {
    Group& g = groups[l];
    if (!g.solvable) {
      const FormSet part = e.subset(g.members);
      const auto b = solvableAlongLine(part);
      g.solvable = b.has_value() && *b == lines[l];
    }
    return *g.solvable;
  };

  for (std::size_t p = 0; p < lines.size(); ++p) {
    for (std::size_t q = p + 1; q < lines.size(); ++q) {
      std::vector<bool> covered(e.size(), false);
      for (int i : groups[p].members) covered[static_cast<std::size_t>(i)] = true;
      for (int i : groups[q].members) covered[static_cast<std::size_t>(i)] = true;
      if (std::find(covered.begin(), covered.end(), false) != covered.end()) continue;
      if (!solvable(p) || !solvable(q)) continue;
      return std::vector<PartitionPart>{{groups[p].members, lines[p]}, {groups[q].members, lines[q]}};
    }
  }
  return std::nullopt;
}

ClassificationReport classify(const FormSet& e, const std::optional<PartitionHint>& hint) {
  if (hint) validatePartitionHint(e, *hint);
  ClassificationReport r;
  const int n = e.dim();
  r.n = n;
  r.spanDim = spanDim(e);
  r.pairwiseWedgeZero = pairwiseWedgeZero(e);
  r.pairwiseRankDiffLe2 = pairwiseRankDiffLe2(e);
  r.containsZero = containsZero(e);
  r.rico = ricoMembership(e);
  if (r.containsZero) r.notes.push_back("E contains the zero form; common-line detection skipped");
  else r.commonLine = commonLineDetect(e);

  if (r.spanDim == n && n >= 4) {
    r.verdict = Verdict::NoSolutionDimN;
    r.notes.push_back("dim span E = n >= 4: no W0^{1,inf} solution attains every element on positive measure");
    return r;
  }
  if (r.pairwiseRankDiffLe2 && r.spanDim >= n + 1) {
    r.verdict = Verdict::InconsistentHypotheses;
    r.notes.push_back("pairwise rank[e - f] <= 2 forces dim span E <= n, yet dim span E >= n + 1");
    return r;
  }
  if (r.commonLine && r.spanDim == n - 1 && r.rico.inside) {
    r.verdict = Verdict::SolvableLine;
    r.notes.push_back("E spans R^n ∧ b with dim n - 1 and 0 ∈ ri co E: single-line gauge construction applies");
    return r;
  }

  auto tryParts = [&](const PartitionHint& parts) -> std::optional<std::vector<PartitionPart>> {
    std::vector<PartitionPart> out;
    for (const auto& idx : parts) {
      const auto b = solvableAlongLine(e.subset(idx));
      if (!b) return std::nullopt;
      out.push_back({idx, *b});
    }
    return out;
  };
  std::optional<std::vector<PartitionPart>> parts;
  if (hint) {
    parts = tryParts(*hint);
    if (!parts) r.notes.push_back("partition hint given but some part is not solvable along a single line");
  }
  if (!parts && !r.containsZero) parts = detectTwoPartition(e);
  if (parts) {
    r.verdict = Verdict::SolvableComposite;
    r.partition = std::move(*parts);
    r.notes.push_back("E = E1 ∪ E2 with each part solvable along its own line: two-block composite applies");
    return r;
  }

  r.verdict = Verdict::Unknown;
  if (!r.commonLine) r.notes.push_back("no common line b with E ⊆ R^n ∧ b");
  if (r.spanDim != n - 1) r.notes.push_back("dim span E = " + std::to_string(r.spanDim) + " differs from n - 1");
  if (!r.rico.inside) r.notes.push_back("0 is not in the relative interior of co E");
  if (n == 4 && r.spanDim == 3 && r.pairwiseWedgeZero && !r.commonLine)
    r.notes.push_back("n = 4: dim span E = 3 with pairwise zero wedges does not force a common line");
  return r;
}

}  // namespace curlset
