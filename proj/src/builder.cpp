#include "curlset/builder.hpp"

#include "curlset/exterior.hpp"
#include "curlset/linalg.hpp"
#include "curlset/lp.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace curlset {

BoxDomain::BoxDomain(std::vector<Box> boxes) : boxes_(std::move(boxes)) {
  if (boxes_.empty()) throw std::invalid_argument("domain needs at least one box");
  const int n = boxes_.front().dim();
  for (std::size_t i = 0; i < boxes_.size(); ++i) {
    const Box& b = boxes_[i];
    if (b.dim() != n || b.upper.size() != n) throw std::invalid_argument("domain boxes of different dimension");
    for (int j = 0; j < n; ++j)
      if (b.lower(j) >= b.upper(j)) throw std::invalid_argument("domain box " + std::to_string(i) + " is degenerate");
    for (std::size_t k = 0; k < i; ++k)
      if (boxes_[k].overlaps(b))
        throw std::invalid_argument("domain boxes " + std::to_string(k) + " and " + std::to_string(i) + " overlap");
  }
}

Rational BoxDomain::volume() const {
  Rational v = 0;
  for (const auto& b : boxes_) v += b.volume();
  return v;
}

Box BoxDomain::bounds() const {
  std::vector<VectorQ> corners;
  for (const auto& b : boxes_) {
    corners.push_back(b.lower);
    corners.push_back(b.upper);
  }
  return Box::hull(corners);
}

std::vector<Box> splitBox(const Box& box, int pieces) {
  if (pieces < 1) throw std::invalid_argument("splitBox needs at least one piece");
  if (pieces == 1) return {box};
  int axis = 0;
  for (int j = 1; j < box.dim(); ++j)
    if (box.upper(j) - box.lower(j) > box.upper(axis) - box.lower(axis)) axis = j;
  const int left = (pieces + 1) / 2;
  const Rational cut = box.lower(axis) + (box.upper(axis) - box.lower(axis)) * Rational(left) / Rational(pieces);
  Box lo = box, hi = box;
  lo.upper(axis) = cut;
  hi.lower(axis) = cut;
  auto out = splitBox(lo, left);
  auto rest = splitBox(hi, pieces - left);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

std::vector<VectorQ> canonicalReps(const FormSet& e, const VectorQ& b) {
  std::vector<VectorQ> reps;
  for (std::size_t i = 0; i < e.size(); ++i) {
    auto a = cartanDivide(e[i], b);
    if (!a) throw BuildError("element " + std::to_string(i) + " is not of the form a ∧ b for the common line");
    reps.push_back(std::move(*a));
  }
  return reps;
}

namespace {

Halfspace normalized(const Halfspace& h) {
  for (Eigen::Index i = 0; i < h.normal.size(); ++i)
    if (!h.normal(i).is_zero()) {
      const Rational s = h.normal(i) < 0 ? Rational(-h.normal(i)) : h.normal(i);
      return {h.normal / s, h.offset / s};
    }
  return h;
}

// Keeps one copy of every facet-defining halfspace of a full-dimensional polytope.
std::vector<Halfspace> facetHalfspaces(const ConvexPolytope& p) {
  std::vector<Halfspace> out;
  for (const auto& f : p.facets()) {
    Halfspace h = normalized(p.halfspaces()[f.constraint]);
    if (std::find(out.begin(), out.end(), h) == out.end()) out.push_back(std::move(h));
  }
  return out;
}

// max <d, x> over {x : -<g_p, x> <= c_p for all pieces}; nullopt if unbounded.
std::optional<Rational> gaugeSupport(const std::vector<GaugePiece>& pieces, const VectorQ& d) {
  const int n = static_cast<int>(d.size());
  LinearProgram lp(n);
  for (int j = 0; j < n; ++j) lp.setFree(j);
  lp.setObjective(d);
  for (const auto& p : pieces) lp.addConstraint(VectorQ(-p.gradient), Relation::LessEqual, p.offset);
  const LpResult r = lp.maximize();
  if (r.status == LpStatus::Unbounded) return std::nullopt;
  if (r.status != LpStatus::Optimal) throw BuildError("gauge polytope is empty");
  return r.objective;
}

Rational absolute(const Rational& x) { return x < 0 ? Rational(-x) : x; }

}  // namespace

std::vector<GaugePiece> liftWithHeights(const std::vector<VectorQ>& reps, const VectorQ& b, int favored) {
  const int n = static_cast<int>(b.size());
  if (n < 2) throw BuildError("lifting needs ambient dimension >= 2");
  if (favored < 0 || static_cast<std::size_t>(favored) >= reps.size()) throw BuildError("favored index out of range");
  std::vector<GaugePiece> out;
  MatrixQ points(n, static_cast<Eigen::Index>(2 * reps.size()));
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const Rational height = static_cast<int>(i) == favored ? 2 : 1;
    for (int s : {1, -1}) {
      VectorQ g = reps[i] + Rational(s) * height * b;
      points.col(static_cast<Eigen::Index>(out.size())) = g;
      out.push_back({static_cast<int>(i), std::move(g), Rational(1)});
    }
  }
  if (rank(points) != n) throw BuildError("lifted points do not span R^n (reps must span the complement of b)");
  if (!relativeInteriorOrigin(points).inside) throw BuildError("0 is not interior to the convex hull of the lifted points");
  return out;
}

GaugeShape::GaugeShape(std::vector<GaugePiece> pieces, VectorQ line) : line_(std::move(line)) {
  const int n = static_cast<int>(line_.size());
  for (auto& p : pieces) {
    if (p.gradient.size() != n) throw std::invalid_argument("gauge piece dimension mismatch");
    const bool duplicate = std::any_of(pieces_.begin(), pieces_.end(), [&](const GaugePiece& q) {
      return q.gradient == p.gradient && q.offset == p.offset;
    });
    if (!duplicate) pieces_.push_back(std::move(p));
  }

  VectorQ lower(n), upper(n);
  for (int j = 0; j < n; ++j) {
    const auto hi = gaugeSupport(pieces_, unitVector(n, j));
    const auto lo = gaugeSupport(pieces_, VectorQ(-unitVector(n, j)));
    if (!hi || !lo) throw BuildError("gauge polytope is unbounded");
    upper(j) = *hi;
    lower(j) = -*lo;
  }
  const Box searchBox = Box{lower, upper}.grown(1);

  std::vector<Halfspace> outer;
  for (const auto& p : pieces_) outer.push_back({VectorQ(-p.gradient), p.offset});
  const ConvexPolytope poly(outer, searchBox);
  if (!poly.fullDimensional()) throw BuildError("gauge polytope is not full-dimensional");
  vertices_ = poly.vertices();
  outer_ = facetHalfspaces(poly);
  bounds_ = Box::hull(vertices_);
  for (const auto& h : outer_) {
    Rational low = h.normal.dot(vertices_.front());
    for (const auto& v : vertices_) low = std::min(low, Rational(h.normal.dot(v)));
    outerLow_.push_back(low);
  }

  volume_ = 0;
  for (std::size_t p = 0; p < pieces_.size(); ++p) {
    std::vector<Halfspace> hs{{VectorQ(-pieces_[p].gradient), pieces_[p].offset}};
    bool empty = false;
    for (std::size_t q = 0; q < pieces_.size() && !empty; ++q) {
      if (q == p) continue;
      VectorQ normal = pieces_[p].gradient - pieces_[q].gradient;
      const Rational offset = pieces_[q].offset - pieces_[p].offset;
      if (isZero(normal)) {
        if (offset < 0) empty = true;
        continue;
      }
      hs.push_back({std::move(normal), offset});
    }
    if (empty) continue;
    const ConvexPolytope cell(hs, bounds_.grown(1));
    if (!cell.fullDimensional()) continue;
    GaugeCell c{static_cast<int>(p), facetHalfspaces(cell), cell.volume()};
    volume_ += c.volume;
    cells_.push_back(std::move(c));
  }
}

Rational GaugeShape::elementVolume(int element) const {
  Rational v = 0;
  for (const auto& c : cells_)
    if (pieces_[static_cast<std::size_t>(c.piece)].element == element) v += c.volume;
  return v;
}

std::vector<Cell> GaugeShape::place(const VectorQ& center, const Rational& scale, int block) const {
  std::vector<Cell> out;
  for (const auto& c : cells_) {
    const GaugePiece& piece = pieces_[static_cast<std::size_t>(c.piece)];
    Cell cell;
    cell.block = block;
    for (const auto& h : c.halfspaces) cell.halfspaces.push_back(transformHalfspace(h, center, scale));
    // t (c + <g, (z − a)/t>) b = <g, z> b + (t c − <g, a>) b
    cell.map.matrix = line_ * piece.gradient.transpose();
    cell.map.offset = (scale * piece.offset - piece.gradient.dot(center)) * line_;
    out.push_back(std::move(cell));
  }
  return out;
}

Rational GaugeShape::support(const VectorQ& d) const {
  Rational best = d.dot(vertices_.front());
  for (const auto& v : vertices_) best = std::max(best, Rational(d.dot(v)));
  return best;
}

GaugeShape buildGauge(std::vector<GaugePiece> pieces, const VectorQ& b) {
  return GaugeShape(std::move(pieces), b);
}

std::optional<GaugeShape> buildBoxMatchedGauge(const std::vector<VectorQ>& reps, const VectorQ& b, int favored,
                                               const VectorQ& halfWidths, const Rational& sharpness) {
  const int n = static_cast<int>(b.size());
  int k = -1;
  for (int j = 0; j < n; ++j)
    if (!b(j).is_zero()) {
      if (k >= 0) return std::nullopt;
      k = j;
    }
  if (k < 0 || b(k) != 1) return std::nullopt;
  std::vector<Rational> c(reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    int axis = -1;
    for (int j = 0; j < n; ++j)
      if (!reps[i](j).is_zero()) {
        if (axis >= 0) return std::nullopt;
        axis = j;
      }
    if (axis < 0 || axis == k) return std::nullopt;
    c[i] = absolute(reps[i](axis)) * halfWidths(axis);
  }
  const Rational cMax = *std::max_element(c.begin(), c.end());
  const Rational cMin = *std::min_element(c.begin(), c.end());
  const Rational hk = halfWidths(k);
  const Rational m = sharpness * cMax / hk;
  std::vector<Rational> heights(reps.size(), m);
  heights[static_cast<std::size_t>(favored)] = 2 * m * std::max(Rational(1), c[static_cast<std::size_t>(favored)] / cMin);

  auto pieces = [&](const Rational& plateau) {
    std::vector<GaugePiece> out;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const int e = static_cast<int>(i);
      out.push_back({e, reps[i], c[i]});
      for (int s : {1, -1}) out.push_back({e, VectorQ(reps[i] + Rational(s) * heights[i] * b), c[i] + heights[i] * plateau});
    }
    return out;
  };
  // Height of the caps alone; the plateau stretches them to the box faces.
  const auto cap = gaugeSupport(pieces(0), unitVector(n, k));
  if (!cap) throw BuildError("box-matched gauge is unbounded (reps do not surround 0)");
  const Rational plateau = hk - *cap;
  if (plateau < 0) throw BuildError("box-matched gauge caps exceed the box");
  return GaugeShape(pieces(plateau), b);
}

int maxGridLevels() {
  if (const char* env = std::getenv("CURLSET_MAX_GRID_LEVELS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return 12;
}

bool homothetsDisjoint(const GaugeShape& shape, const Placement& p, const Placement& q) {
  const int n = shape.dim();
  const Box& b = shape.bounds();
  const Box bp{VectorQ(p.center + p.scale * b.lower), VectorQ(p.center + p.scale * b.upper)};
  const Box bq{VectorQ(q.center + q.scale * b.lower), VectorQ(q.center + q.scale * b.upper)};
  if (!bp.overlaps(bq)) return true;

  const auto& outer = shape.outer();
  const auto& low = shape.outerLow();
  for (std::size_t i = 0; i < outer.size(); ++i) {
    const VectorQ& a = outer[i].normal;
    const Rational pa = a.dot(p.center), qa = a.dot(q.center);
    if (pa + p.scale * outer[i].offset <= qa + q.scale * low[i]) return true;
    if (qa + q.scale * outer[i].offset <= pa + p.scale * low[i]) return true;
  }
  auto strictlyInside = [&](const VectorQ& x, const Placement& h) {
    for (const auto& hs : outer)
      if (hs.normal.dot(x) >= h.scale * hs.offset + hs.normal.dot(h.center)) return false;
    return true;
  };
  if (strictlyInside(p.center, q) || strictlyInside(q.center, p)) return false;

  // Interiors meet iff some x has positive slack s in every constraint of both.
  LinearProgram lp(n + 1);
  for (int j = 0; j <= n; ++j) lp.setFree(j);
  VectorQ objective = VectorQ::Zero(n + 1);
  objective(n) = 1;
  lp.setObjective(objective);
  for (const Placement* h : {&p, &q})
    for (const auto& hs : outer) {
      VectorQ row(n + 1);
      row.head(n) = hs.normal;
      row(n) = 1;
      lp.addConstraint(std::move(row), Relation::LessEqual, h->scale * hs.offset + hs.normal.dot(h->center));
    }
  const LpResult r = lp.maximize();
  return r.status != LpStatus::Optimal || r.objective <= 0;
}

FillResult fillBox(const Box& box, const GaugeShape& shape, const Rational& epsilon, int maxLevels) {
  if (epsilon <= 0 || epsilon >= 1) throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (box.dim() != shape.dim()) throw std::invalid_argument("box and shape dimensions differ");
  constexpr std::size_t kCandidateBudget = std::size_t{1} << 22;
  const int n = box.dim();
  const Rational target = (1 - epsilon) * box.volume();
  const VectorQ lo = shape.bounds().lower, hi = shape.bounds().upper;
  const VectorQ w = hi - lo;

  Rational t0 = -1;
  for (int j = 0; j < n; ++j) {
    const Rational fit = (box.upper(j) - box.lower(j)) / w(j);
    if (t0 < 0 || fit < t0) t0 = fit;
  }

  FillResult out;
  out.coveredVolume = 0;
  std::vector<Box> placedBounds;
  for (int level = 0; level < maxLevels; ++level) {
    out.levelsUsed = level + 1;
    const Rational levelScale = t0 / pow(Rational(2), level);
    const VectorQ step = levelScale * w / Rational(2);
    for (const Rational& factor : {Rational(1), Rational(1, 2)}) {
      const Rational t = levelScale * factor;
      const VectorQ first = box.lower - t * lo;
      const VectorQ last = box.upper - t * hi;
      std::vector<long> count(n);
      bool fits = true;
      for (int j = 0; j < n; ++j) {
        if (last(j) < first(j)) { fits = false; break; }
        const Rational steps = (last(j) - first(j)) / step(j);
        count[j] = static_cast<long>(numerator(steps) / denominator(steps)) + 1;
      }
      if (!fits) continue;
      const Rational cellVolume = pow(t, n) * shape.volume();
      std::vector<long> idx(n, 0);
      while (true) {
        if (++out.candidatesTried > kCandidateBudget) return out;
        Placement cand{VectorQ(n), t};
        for (int j = 0; j < n; ++j) cand.center(j) = first(j) + Rational(idx[j]) * step(j);
        const Box cb{VectorQ(cand.center + t * lo), VectorQ(cand.center + t * hi)};
        bool free = true;
        for (std::size_t i = 0; i < out.placements.size() && free; ++i)
          if (placedBounds[i].overlaps(cb) && !homothetsDisjoint(shape, cand, out.placements[i])) free = false;
        if (free) {
          out.placements.push_back(cand);
          placedBounds.push_back(cb);
          out.coveredVolume += cellVolume;
          if (out.coveredVolume >= target) {
            out.reachedTarget = true;
            return out;
          }
        }
        int j = n - 1;
        while (j >= 0 && ++idx[j] == count[j]) idx[j--] = 0;
        if (j < 0) break;
      }
    }
  }
  return out;
}

namespace {

Rational sharpnessFor(const Rational& epsilon) {
  // Cap loss is at most 1/sharpness of each sub-box; keep it below ε/2.
  Rational s = 4;
  while (s * epsilon < 2) s *= 2;
  return s;
}

// Solves E (elements indexed through parentIndex) along line b on each box.
void solveLine(const FormSet& e, const std::vector<int>& parentIndex, const VectorQ& b, const std::vector<Box>& boxes,
               const Rational& epsilon, PAField& field, int& block) {
  const auto reps = canonicalReps(e, b);
  const Rational sharpness = sharpnessFor(epsilon);
  for (const Box& box : boxes) {
    const auto subs = splitBox(box, static_cast<int>(e.size()));
    for (std::size_t i = 0; i < subs.size(); ++i) {
      const int favored = static_cast<int>(i);
      auto shape = buildBoxMatchedGauge(reps, b, favored, VectorQ(subs[i].widths() / Rational(2)), sharpness);
      if (!shape) shape = buildGauge(liftWithHeights(reps, b, favored), b);
      if (shape->elementVolume(favored) <= 0)
        throw BuildError("favored element " + std::to_string(parentIndex[i]) + " has no cell of positive volume");
      const FillResult fill = fillBox(subs[i], *shape, epsilon);
      if (!fill.reachedTarget)
        throw BuildError("sub-box coverage stopped at " + formatRational(fill.coveredVolume / subs[i].volume()) +
                         " after " + std::to_string(fill.levelsUsed) + " grid levels");
      for (const auto& p : fill.placements) {
        auto cells = shape->place(p.center, p.scale, block++);
        field.cells.insert(field.cells.end(), std::make_move_iterator(cells.begin()), std::make_move_iterator(cells.end()));
      }
      field.coveredVolume += fill.coveredVolume;
    }
  }
}

VectorQ requireLine(const FormSet& e) {
  if (e.dim() < 3) throw BuildError("single-line constructions need n >= 3");
  if (containsZero(e)) throw BuildError("E contains the zero form");
  const auto b = commonLineDetect(e);
  if (!b) throw BuildError("E has no common line b with E ⊆ R^n ∧ b");
  const int dim = spanDim(e);
  if (dim != e.dim() - 1) throw BuildError("dim span E = " + std::to_string(dim) + ", expected n - 1");
  const RicoCertificate rico = ricoMembership(e);
  if (!rico.inside) {
    std::string m;
    for (Eigen::Index i = 0; i < rico.separator.size(); ++i)
      m += (i ? ", " : "") + formatRational(rico.separator.coeffs()(i));
    throw BuildError("0 is not in ri co E; separator m = [" + m + "] has <e, m> >= 0 on E");
  }
  return *b;
}

void checkInputs(const FormSet& e, const BoxDomain& domain, const Rational& epsilon) {
  if (epsilon <= 0 || epsilon >= 1) throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (domain.dim() != e.dim()) throw std::invalid_argument("domain dimension differs from n");
}

}  // namespace

PAField buildLineSolution(const FormSet& e, const BoxDomain& domain, const Rational& epsilon) {
  checkInputs(e, domain, epsilon);
  const VectorQ b = requireLine(e);
  PAField field;
  field.n = e.dim();
  field.domain = domain;
  field.coveredVolume = 0;
  std::vector<int> identity(e.size());
  for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = static_cast<int>(i);
  int block = 0;
  solveLine(e, identity, b, domain.boxes(), epsilon, field, block);
  return field;
}

PAField buildComposite(const FormSet& e, const std::vector<PartitionPart>& parts, const BoxDomain& domain,
                       const Rational& epsilon) {
  checkInputs(e, domain, epsilon);
  if (parts.size() != 2) throw BuildError("composite construction needs exactly two parts");
  std::vector<Box> halves[2];
  for (const Box& box : domain.boxes()) {
    const Rational mid = (box.lower(0) + box.upper(0)) / 2;
    Box lo = box, hi = box;
    lo.upper(0) = mid;
    hi.lower(0) = mid;
    halves[0].push_back(lo);
    halves[1].push_back(hi);
  }
  PAField field;
  field.n = e.dim();
  field.domain = domain;
  field.coveredVolume = 0;
  int block = 0;
  for (int k = 0; k < 2; ++k) {
    const FormSet part = e.subset(parts[static_cast<std::size_t>(k)].indices);
    const VectorQ b = requireLine(part);
    solveLine(part, parts[static_cast<std::size_t>(k)].indices, b, halves[k], epsilon, field, block);
  }
  return field;
}

}  // namespace curlset
