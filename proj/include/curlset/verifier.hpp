#ifndef CURLSET_VERIFIER_HPP
#define CURLSET_VERIFIER_HPP

#include "curlset/builder.hpp"
#include "curlset/exterior.hpp"
#include "curlset/setlab.hpp"

#include <string>
#include <vector>

// Checks a piecewise-affine field using nothing but its cells, maps and
// domain. Every test is exact; there are no tolerances.

namespace curlset {

enum class ViolationKind {
  Malformed,    // cell data of the wrong shape
  Domain,       // cell unbounded or not inside a single domain box
  Overlap,      // two cells share interior points
  Curl,         // cell curl is not an element of E
  Continuity,   // maps disagree across a shared facet
  Boundary,     // map does not vanish on a facet facing the uncovered region
  Measure,      // some element is attained on a null set only
  Coverage,     // covered volume below (1 − ε)·vol(domain)
  VolumeClaim,  // declared covered volume differs from the computed one
  Integral      // ∫η = 0 while a nonzero integral was required
};

std::string violationName(ViolationKind k);
ViolationKind violationFromName(const std::string& name);

struct Violation {
  ViolationKind kind;
  std::vector<int> cells;
  std::string detail;
};

struct CellCurl {
  int cell;
  Form curl;
  int match = -1;  // index into E, −1 when the curl is not in E
  Rational volume;
};

struct VerifyOptions {
  Rational epsilon{1, 100};
  bool requireNonzeroIntegral = false;
};

struct VerificationReport {
  std::vector<CellCurl> perCellCurl;
  std::vector<int> discardedCells;  // zero-volume cells, ignored
  bool membershipOk = true;
  bool continuityOk = true;
  bool boundaryOk = true;
  bool disjointOk = true;
  bool domainOk = true;
  bool measuresOk = true;
  bool coverageOk = true;
  std::vector<Rational> measures;  // per element of E
  Rational coveredVolume;
  Rational domainVolume;
  VectorQ integral;
  std::vector<Violation> violations;
  std::vector<std::string> notes;
  bool pass = false;

  bool has(ViolationKind k) const;
};

/// curl_ij = ∂_i η_j − ∂_j η_i = A(j,i) − A(i,j) for i < j.
Form cellCurl(const MatrixQ& a);

// The single checks below look only at cells that pass the shape and domain
// tests; verifyField runs all of them and reports every violation.

/// Curl of every full-dimensional cell and its match in E (−1 when absent).
std::vector<CellCurl> checkMembership(const PAField& field, const FormSet& e);
/// Maps that disagree where two cells meet, or that do not vanish on the
/// uncovered part of a partly shared facet.
std::vector<Violation> checkContinuity(const PAField& field);
/// The field vanishes on every facet no other cell touches.
bool checkBoundaryZero(const PAField& field);
/// Volume on which η has curl e, per element of E.
std::vector<Rational> measureByElement(const PAField& field, const FormSet& e);
/// ∫η over the domain (η = 0 off the cells).
VectorQ integrateField(const PAField& field);

VerificationReport verifyField(const PAField& field, const FormSet& e, const VerifyOptions& options = {});

}  // namespace curlset

#endif  // CURLSET_VERIFIER_HPP
