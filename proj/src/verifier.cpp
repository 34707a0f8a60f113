#include "curlset/verifier.hpp"

#include "curlset/lp.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <numeric>

namespace curlset {

namespace {

constexpr ViolationKind kAllKinds[] = {ViolationKind::Malformed,  ViolationKind::Domain,   ViolationKind::Overlap,
                                       ViolationKind::Curl,       ViolationKind::Continuity, ViolationKind::Boundary,
                                       ViolationKind::Measure,    ViolationKind::Coverage, ViolationKind::VolumeClaim,
                                       ViolationKind::Integral};

struct CellGeometry {
  std::unique_ptr<ConvexPolytope> poly;
  Box bounds;
  Rational volume;
};

struct FacetRecord {
  int cell;
  int constraint;
  int sign;  // orientation of the cell's outward normal relative to the key
  std::vector<int> vertices;
  Box bounds;
  Rational measure;
};

int firstNonzero(const VectorQ& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!v(i).is_zero()) return static_cast<int>(i);
  return -1;
}

// Hyperplane key with the first nonzero normal coordinate scaled to 1.
std::string hyperplaneKey(const Halfspace& h, int& sign) {
  const int lead = firstNonzero(h.normal);
  const Rational s = h.normal(lead);
  sign = s > 0 ? 1 : -1;
  std::string key;
  for (Eigen::Index i = 0; i < h.normal.size(); ++i) key += formatRational(h.normal(i) / s) + ",";
  key += formatRational(h.offset / s);
  return key;
}

bool closedOverlap(const Box& a, const Box& b) {
  for (int i = 0; i < a.dim(); ++i)
    if (a.upper(i) < b.lower(i) || b.upper(i) < a.lower(i)) return false;
  return true;
}

std::vector<VectorQ> sortedPoints(const ConvexPolytope& p, const std::vector<int>& idx) {
  std::vector<VectorQ> pts;
  for (int v : idx) pts.push_back(p.vertices()[v]);
  std::sort(pts.begin(), pts.end(), lexLess);
  return pts;
}

// Some halfspace of `a` has all of b's vertices on its closed far side.
bool separatedByFacet(const ConvexPolytope& a, const ConvexPolytope& b) {
  for (const auto& h : a.halfspaces()) {
    bool all = true;
    for (const auto& v : b.vertices())
      if (h.normal.dot(v) < h.offset) { all = false; break; }
    if (all) return true;
  }
  return false;
}

bool interiorsMeet(const ConvexPolytope& a, const ConvexPolytope& b) {
  const int n = a.ambientDim();
  LinearProgram lp(n + 1);
  for (int j = 0; j <= n; ++j) lp.setFree(j);
  VectorQ obj = VectorQ::Zero(n + 1);
  obj(n) = 1;
  lp.setObjective(obj);
  for (const ConvexPolytope* p : {&a, &b})
    for (const auto& h : p->halfspaces()) {
      VectorQ row(n + 1);
      row.head(n) = h.normal;
      row(n) = 1;
      lp.addConstraint(std::move(row), Relation::LessEqual, h.offset);
    }
  const LpResult r = lp.maximize();
  return r.status == LpStatus::Unbounded || (r.status == LpStatus::Optimal && r.objective > 0);
}

}  // namespace

std::string violationName(ViolationKind k) {
  switch (k) {
    case ViolationKind::Malformed: return "MALFORMED";
    case ViolationKind::Domain: return "DOMAIN";
    case ViolationKind::Overlap: return "OVERLAP";
    case ViolationKind::Curl: return "CURL";
    case ViolationKind::Continuity: return "CONTINUITY";
    case ViolationKind::Boundary: return "BOUNDARY";
    case ViolationKind::Measure: return "MEASURE";
    case ViolationKind::Coverage: return "COVERAGE";
    case ViolationKind::VolumeClaim: return "VOLUME_CLAIM";
    case ViolationKind::Integral: return "INTEGRAL";
  }
  return "MALFORMED";
}

ViolationKind violationFromName(const std::string& name) {
  for (ViolationKind k : kAllKinds)
    if (violationName(k) == name) return k;
  throw std::invalid_argument("unknown violation kind '" + name + "'");
}

bool VerificationReport::has(ViolationKind k) const {
  return std::any_of(violations.begin(), violations.end(), [k](const Violation& v) { return v.kind == k; });
}

Form cellCurl(const MatrixQ& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("cellCurl: matrix must be square");
  const int n = static_cast<int>(a.rows());
  Form out(n, 2);
  VectorQ c(out.size());
  Eigen::Index at = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) c(at++) = a(j, i) - a(i, j);
  return Form(n, 2, std::move(c));
}

namespace {

using Sink = std::function<void(ViolationKind, std::vector<int>, std::string)>;

// Validated geometry of the cells that survive the shape and domain checks.
struct Mesh {
  Box search;
  std::vector<CellGeometry> geo;
  std::vector<int> live;
  std::vector<int> discarded;
};

Mesh analyze(const PAField& field, const Sink& fail) {
  const int n = field.n;
  Mesh m;
  m.search = field.domain.bounds().grown(1);
  m.geo.resize(field.cells.size());
  for (std::size_t c = 0; c < field.cells.size(); ++c) {
    const Cell& cell = field.cells[c];
    const int id = static_cast<int>(c);
    bool shapeOk = cell.map.matrix.rows() == n && cell.map.matrix.cols() == n && cell.map.offset.size() == n;
    for (const auto& h : cell.halfspaces) shapeOk = shapeOk && h.normal.size() == n && !isZero(h.normal);
    if (!shapeOk) {
      fail(ViolationKind::Malformed, {id}, "cell data has the wrong dimensions or a zero normal");
      continue;
    }
    auto poly = std::make_unique<ConvexPolytope>(cell.halfspaces, m.search);
    if (!poly->fullDimensional()) {
      m.discarded.push_back(id);
      continue;
    }
    if (poly->touchesBound()) {
      fail(ViolationKind::Domain, {id}, "cell reaches outside the domain's bounding box");
      continue;
    }
    const bool inside = std::any_of(field.domain.boxes().begin(), field.domain.boxes().end(), [&](const Box& b) {
      return std::all_of(poly->vertices().begin(), poly->vertices().end(), [&](const VectorQ& v) { return b.contains(v); });
    });
    if (!inside) {
      fail(ViolationKind::Domain, {id}, "cell is not contained in a single domain box");
      continue;
    }
    m.geo[c].bounds = poly->boundingBox();
    m.geo[c].volume = poly->volume();
    m.geo[c].poly = std::move(poly);
    m.live.push_back(id);
  }
  return m;
}

bool dimensionsAgree(const PAField& field) { return field.domain.dim() == field.n && field.n >= 1; }

// Pairwise interior-disjointness, sweeping along the first axis.
void checkDisjoint(const Mesh& m, const Sink& fail) {
  const auto& geo = m.geo;
  std::vector<int> order = m.live;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return geo[a].bounds.lower(0) < geo[b].bounds.lower(0); });
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int a = order[i];
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const int b = order[j];
      if (geo[b].bounds.lower(0) >= geo[a].bounds.upper(0)) break;
      if (!geo[a].bounds.overlaps(geo[b].bounds)) continue;
      if (separatedByFacet(*geo[a].poly, *geo[b].poly) || separatedByFacet(*geo[b].poly, *geo[a].poly)) continue;
      if (interiorsMeet(*geo[a].poly, *geo[b].poly)) fail(ViolationKind::Overlap, {a, b}, "cells share interior points");
    }
  }
}

// Facets grouped by supporting hyperplane: maps must agree wherever two cells
// meet and vanish on every facet part no other cell covers.
void checkFacets(const PAField& field, const Mesh& m, const Sink& fail) {
  const int n = field.n;
  const auto& geo = m.geo;
  std::map<std::string, std::vector<FacetRecord>> groups;
  for (int c : m.live) {
    const ConvexPolytope& p = *geo[c].poly;
    for (const auto& f : p.facets()) {
      int sign = 0;
      const std::string key = hyperplaneKey(p.halfspaces()[f.constraint], sign);
      std::vector<VectorQ> pts;
      for (int v : f.vertices) pts.push_back(p.vertices()[v]);
      const int drop = firstNonzero(p.halfspaces()[f.constraint].normal);
      groups[key].push_back({c, f.constraint, sign, f.vertices, Box::hull(pts), p.projectedMeasure(f.vertices, drop)});
    }
  }
  for (const auto& [key, facets] : groups) {
    for (const FacetRecord& f : facets) {
      const ConvexPolytope& pf = *geo[f.cell].poly;
      const AffineMap& mf = field.cells[static_cast<std::size_t>(f.cell)].map;
      const int drop = firstNonzero(pf.halfspaces()[f.constraint].normal);
      Rational covered = 0;
      for (const FacetRecord& g : facets) {
        if (g.sign == f.sign || g.cell == f.cell || !closedOverlap(f.bounds, g.bounds)) continue;
        const ConvexPolytope& pg = *geo[g.cell].poly;
        const AffineMap& mg = field.cells[static_cast<std::size_t>(g.cell)].map;
        std::vector<VectorQ> contact;
        Rational overlap;
        const auto fp = sortedPoints(pf, f.vertices);
        if (fp == sortedPoints(pg, g.vertices)) {
          overlap = f.measure;
          contact = fp;
        } else {
          std::vector<Halfspace> both = field.cells[static_cast<std::size_t>(f.cell)].halfspaces;
          const auto& other = field.cells[static_cast<std::size_t>(g.cell)].halfspaces;
          both.insert(both.end(), other.begin(), other.end());
          const ConvexPolytope meet(both, m.search);
          if (meet.affineDim() != n - 1) continue;
          overlap = meet.projectedMeasure({}, drop);
          contact = meet.vertices();
        }
        if (overlap <= 0) continue;
        covered += overlap;
        // Only report each disagreeing pair once.
        if (f.cell < g.cell) {
          for (const auto& v : contact)
            if (mf(v) != mg(v)) {
              fail(ViolationKind::Continuity, {f.cell, g.cell}, "maps disagree on the shared facet");
              break;
            }
        }
      }
      if (covered >= f.measure) continue;
      for (int v : f.vertices)
        if (!isZero(mf(pf.vertices()[v]))) {
          if (covered.is_zero())
            fail(ViolationKind::Boundary, {f.cell}, "map does not vanish on a facet bordering the uncovered region");
          else
            fail(ViolationKind::Continuity, {f.cell}, "map does not vanish on the uncovered part of a facet");
          break;
        }
    }
  }
}

std::vector<Violation> facetViolations(const PAField& field) {
  std::vector<Violation> out;
  if (!dimensionsAgree(field)) return out;
  const Sink ignore = [](ViolationKind, std::vector<int>, std::string) {};
  const Mesh m = analyze(field, ignore);
  checkFacets(field, m, [&](ViolationKind k, std::vector<int> cells, std::string detail) {
    out.push_back({k, std::move(cells), std::move(detail)});
  });
  return out;
}

}  // namespace

std::vector<CellCurl> checkMembership(const PAField& field, const FormSet& e) {
  std::vector<CellCurl> out;
  if (!dimensionsAgree(field)) return out;
  const Mesh m = analyze(field, [](ViolationKind, std::vector<int>, std::string) {});
  for (int c : m.live) {
    CellCurl cc{c, cellCurl(field.cells[static_cast<std::size_t>(c)].map.matrix), -1, m.geo[c].volume};
    if (cc.curl.dim() == e.dim()) cc.match = e.find(cc.curl);
    out.push_back(std::move(cc));
  }
  return out;
}

std::vector<Violation> checkContinuity(const PAField& field) {
  auto all = facetViolations(field);
  std::erase_if(all, [](const Violation& v) { return v.kind != ViolationKind::Continuity; });
  return all;
}

bool checkBoundaryZero(const PAField& field) {
  const auto all = facetViolations(field);
  return std::none_of(all.begin(), all.end(), [](const Violation& v) { return v.kind == ViolationKind::Boundary; });
}

std::vector<Rational> measureByElement(const PAField& field, const FormSet& e) {
  std::vector<Rational> out(e.size(), Rational(0));
  for (const auto& cc : checkMembership(field, e))
    if (cc.match >= 0) out[static_cast<std::size_t>(cc.match)] += cc.volume;
  return out;
}

VectorQ integrateField(const PAField& field) {
  VectorQ total = VectorQ::Zero(field.n);
  if (!dimensionsAgree(field)) return total;
  const Mesh m = analyze(field, [](ViolationKind, std::vector<int>, std::string) {});
  for (int c : m.live) {
    const Cell& cell = field.cells[static_cast<std::size_t>(c)];
    total += m.geo[c].poly->integrateAffine(cell.map.matrix, cell.map.offset);
  }
  return total;
}

VerificationReport verifyField(const PAField& field, const FormSet& e, const VerifyOptions& options) {
  VerificationReport r;
  const int n = field.n;
  r.measures.assign(e.size(), Rational(0));
  r.coveredVolume = 0;
  r.integral = VectorQ::Zero(n);
  r.domainVolume = field.domain.volume();
  const Sink fail = [&](ViolationKind k, std::vector<int> cells, std::string detail) {
    r.violations.push_back({k, std::move(cells), std::move(detail)});
  };
  if (n != e.dim() || !dimensionsAgree(field)) {
    fail(ViolationKind::Malformed, {}, "field, domain and E disagree on the ambient dimension");
    r.pass = false;
    return r;
  }

  const Mesh m = analyze(field, fail);
  r.discardedCells = m.discarded;
  if (!r.discardedCells.empty())
    r.notes.push_back(std::to_string(r.discardedCells.size()) + " zero-volume cells discarded");

  for (int c : m.live) {
    const Cell& cell = field.cells[static_cast<std::size_t>(c)];
    CellCurl cc{c, cellCurl(cell.map.matrix), -1, m.geo[c].volume};
    cc.match = e.find(cc.curl);
    if (cc.match < 0) fail(ViolationKind::Curl, {c}, "curl is not an element of E");
    else r.measures[static_cast<std::size_t>(cc.match)] += m.geo[c].volume;
    r.coveredVolume += m.geo[c].volume;
    r.integral += m.geo[c].poly->integrateAffine(cell.map.matrix, cell.map.offset);
    r.perCellCurl.push_back(std::move(cc));
  }

  checkDisjoint(m, fail);
  checkFacets(field, m, fail);

  for (std::size_t i = 0; i < e.size(); ++i)
    if (r.measures[i] <= 0)
      fail(ViolationKind::Measure, {}, "element " + std::to_string(i) + " is attained on a null set");
  if (r.coveredVolume < (1 - options.epsilon) * r.domainVolume)
    fail(ViolationKind::Coverage, {}, "covered volume " + formatRational(r.coveredVolume) + " is below (1 - " +
                                          formatRational(options.epsilon) + ") of the domain volume");
  if (field.coveredVolume != r.coveredVolume)
    fail(ViolationKind::VolumeClaim, {}, "declared covered volume " + formatRational(field.coveredVolume) +
                                             " differs from the computed " + formatRational(r.coveredVolume));
  if (options.requireNonzeroIntegral && isZero(r.integral)) fail(ViolationKind::Integral, {}, "the integral of η vanishes");

  r.membershipOk = !r.has(ViolationKind::Curl);
  r.continuityOk = !r.has(ViolationKind::Continuity);
  r.boundaryOk = !r.has(ViolationKind::Boundary);
  r.disjointOk = !r.has(ViolationKind::Overlap);
  r.domainOk = !r.has(ViolationKind::Domain) && !r.has(ViolationKind::Malformed);
  r.measuresOk = !r.has(ViolationKind::Measure);
  r.coverageOk = !r.has(ViolationKind::Coverage);
  r.pass = r.violations.empty();
  return r;
}

}  // namespace curlset
