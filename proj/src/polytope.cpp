#include "curlset/polytope.hpp"

#include "curlset/linalg.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace curlset {

Halfspace transformHalfspace(const Halfspace& h, const VectorQ& translation, const Rational& scale) {
  // x in H  <=>  <α, (z − a)/t> <= β  <=>  <α, z> <= tβ + <α, a>
  return {h.normal, scale * h.offset + h.normal.dot(translation)};
}

Rational Box::volume() const {
  Rational v = 1;
  for (int i = 0; i < dim(); ++i) v *= upper(i) - lower(i);
  return v;
}

bool Box::contains(const VectorQ& x) const {
  for (int i = 0; i < dim(); ++i)
    if (x(i) < lower(i) || x(i) > upper(i)) return false;
  return true;
}

bool Box::containsBox(const Box& other) const {
  for (int i = 0; i < dim(); ++i)
    if (other.lower(i) < lower(i) || other.upper(i) > upper(i)) return false;
  return true;
}

bool Box::overlaps(const Box& other) const {
  for (int i = 0; i < dim(); ++i)
    if (other.upper(i) <= lower(i) || upper(i) <= other.lower(i)) return false;
  return true;
}

std::vector<Halfspace> Box::halfspaces() const {
  std::vector<Halfspace> out;
  const int n = dim();
  for (int i = 0; i < n; ++i) {
    VectorQ e = unitVector(n, i);
    out.push_back({VectorQ(-e), Rational(-lower(i))});
    out.push_back({e, upper(i)});
  }
  return out;
}

Box Box::grown(const Rational& margin) const {
  VectorQ m = VectorQ::Constant(dim(), margin);
  return {VectorQ(lower - m), VectorQ(upper + m)};
}

Box Box::unitCube(int n) { return {VectorQ::Zero(n), VectorQ::Ones(n)}; }

Box Box::hull(const std::vector<VectorQ>& points) {
  if (points.empty()) throw std::invalid_argument("bounding box of an empty point set");
  Box b{points.front(), points.front()};
  for (const auto& p : points)
    for (int i = 0; i < b.dim(); ++i) {
      if (p(i) < b.lower(i)) b.lower(i) = p(i);
      if (p(i) > b.upper(i)) b.upper(i) = p(i);
    }
  return b;
}

Rational simplexVolume(const std::vector<const VectorQ*>& points) {
  const int n = static_cast<int>(points.size()) - 1;
  MatrixQ m(n, n);
  for (int j = 0; j < n; ++j) m.col(j) = *points[j + 1] - *points[0];
  Rational det = determinant(m);
  if (det < 0) det = -det;
  Integer fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  return det / Rational(fact);
}

ConvexPolytope::ConvexPolytope(std::vector<Halfspace> halfspaces, const Box& bound)
    : dim_(bound.dim()), halfspaces_(std::move(halfspaces)) {
  const int n = dim_;
  const int m = static_cast<int>(halfspaces_.size());
  for (const auto& h : halfspaces_)
    if (h.normal.size() != n) throw std::invalid_argument("halfspace dimension mismatch");
  for (int i = 0; i < n; ++i)
    if (bound.lower(i) >= bound.upper(i)) throw std::invalid_argument("degenerate bounding box");
  totalConstraints_ = m + 2 * n;

  // Start from the corners of the bounding box.
  const std::size_t corners = std::size_t{1} << n;
  for (std::size_t c = 0; c < corners; ++c) {
    VectorQ p(n);
    boost::dynamic_bitset<> t(totalConstraints_);
    for (int i = 0; i < n; ++i) {
      const bool up = (c >> i) & 1;
      p(i) = up ? bound.upper(i) : bound.lower(i);
      t.set(m + 2 * i + (up ? 1 : 0));
    }
    vertices_.push_back(std::move(p));
    tight_.push_back(std::move(t));
  }

  for (int c = 0; c < m && !vertices_.empty(); ++c) {
    const Halfspace& h = halfspaces_[c];
    std::vector<Rational> excess(vertices_.size());
    bool anyOut = false, anyIn = false;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      excess[i] = h.normal.dot(vertices_[i]) - h.offset;
      if (excess[i] > 0) anyOut = true;
      else anyIn = true;
    }
    if (!anyIn) {
      vertices_.clear();
      tight_.clear();
      break;
    }
    std::vector<VectorQ> nextPoints;
    std::vector<boost::dynamic_bitset<>> nextTight;
    if (anyOut) {
      // An in/out pair spans an edge iff no third vertex is tight on all of
      // their common constraints.
      for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (excess[i] >= 0) continue;
        for (std::size_t j = 0; j < vertices_.size(); ++j) {
          if (excess[j] <= 0) continue;
          boost::dynamic_bitset<> common = tight_[i] & tight_[j];
          bool edge = true;
          for (std::size_t k = 0; k < vertices_.size() && edge; ++k)
            if (k != i && k != j && common.is_subset_of(tight_[k])) edge = false;
          if (!edge) continue;
          const Rational s = excess[i] / (excess[i] - excess[j]);
          nextPoints.push_back(vertices_[i] + s * (vertices_[j] - vertices_[i]));
          common.set(c);
          nextTight.push_back(std::move(common));
        }
      }
    }
    std::vector<VectorQ> keptPoints;
    std::vector<boost::dynamic_bitset<>> keptTight;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (excess[i] > 0) continue;
      if (excess[i] == 0) tight_[i].set(c);
      keptPoints.push_back(std::move(vertices_[i]));
      keptTight.push_back(std::move(tight_[i]));
    }
    for (std::size_t i = 0; i < nextPoints.size(); ++i) {
      keptPoints.push_back(std::move(nextPoints[i]));
      keptTight.push_back(std::move(nextTight[i]));
    }
    vertices_ = std::move(keptPoints);
    tight_ = std::move(keptTight);
  }
  affineDim_ = static_cast<int>(affineDimension(vertices_));
}

bool ConvexPolytope::touchesBound() const {
  const int m = static_cast<int>(halfspaces_.size());
  for (const auto& t : tight_)
    for (int c = m; c < totalConstraints_; ++c)
      if (t[c]) return true;
  return false;
}

std::vector<std::vector<int>> ConvexPolytope::triangulate(const std::vector<int>& face) const {
  std::vector<std::vector<int>> out;
  if (vertices_.empty()) return out;
  std::vector<int> all = face;
  int d = affineDim_;
  if (all.empty()) {
    all.resize(vertices_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  } else {
    std::vector<VectorQ> pts;
    for (int v : all) pts.push_back(vertices_[v]);
    d = static_cast<int>(affineDimension(pts));
  }
  triangulateFace(all, d, out);
  return out;
}

// Pulling triangulation: cone from the first vertex over every facet of the
// face that does not contain it.
void ConvexPolytope::triangulateFace(const std::vector<int>& face, int faceDim,
                                     std::vector<std::vector<int>>& out) const {
  if (faceDim == 0) {
    out.push_back({face.front()});
    return;
  }
  if (faceDim == 1) {
    // Segment: the two extreme points along the line.
    const VectorQ dir = vertices_[face[1]] - vertices_[face[0]];
    int lo = face[0], hi = face[0];
    Rational loVal = dir.dot(vertices_[lo]), hiVal = loVal;
    for (int v : face) {
      const Rational val = dir.dot(vertices_[v]);
      if (val < loVal) { loVal = val; lo = v; }
      if (val > hiVal) { hiVal = val; hi = v; }
    }
    out.push_back({lo, hi});
    return;
  }
  const int apex = face.front();
  std::vector<std::vector<int>> subfaces;
  for (int c = 0; c < totalConstraints_; ++c) {
    std::vector<int> sub;
    for (int v : face)
      if (tight_[v][c]) sub.push_back(v);
    if (sub.empty() || sub.size() == face.size()) continue;
    if (tight_[apex][c]) continue;
    if (std::find(subfaces.begin(), subfaces.end(), sub) != subfaces.end()) continue;
    std::vector<VectorQ> pts;
    for (int v : sub) pts.push_back(vertices_[v]);
    if (affineDimension(pts) != faceDim - 1) continue;
    subfaces.push_back(std::move(sub));
  }
  for (const auto& sub : subfaces) {
    std::vector<std::vector<int>> pieces;
    triangulateFace(sub, faceDim - 1, pieces);
    for (auto& s : pieces) {
      s.insert(s.begin(), apex);
      out.push_back(std::move(s));
    }
  }
}

Rational ConvexPolytope::volume() const {
  if (!fullDimensional()) return 0;
  Rational total = 0;
  std::vector<const VectorQ*> pts(dim_ + 1);
  for (const auto& s : triangulate()) {
    for (int i = 0; i <= dim_; ++i) pts[i] = &vertices_[s[i]];
    total += simplexVolume(pts);
  }
  return total;
}

VectorQ ConvexPolytope::integrateAffine(const MatrixQ& a, const VectorQ& c) const {
  VectorQ total = VectorQ::Zero(a.rows());
  if (!fullDimensional()) return total;
  std::vector<const VectorQ*> pts(dim_ + 1);
  for (const auto& s : triangulate()) {
    VectorQ centroid = VectorQ::Zero(dim_);
    for (int i = 0; i <= dim_; ++i) {
      pts[i] = &vertices_[s[i]];
      centroid += vertices_[s[i]];
    }
    centroid /= Rational(dim_ + 1);
    total += simplexVolume(pts) * (a * centroid + c);
  }
  return total;
}

std::vector<ConvexPolytope::Facet> ConvexPolytope::facets() const {
  std::vector<Facet> out;
  if (!fullDimensional()) return out;
  for (int c = 0; c < static_cast<int>(halfspaces_.size()); ++c) {
    Facet f{c, {}};
    std::vector<VectorQ> pts;
    for (std::size_t v = 0; v < vertices_.size(); ++v)
      if (tight_[v][c]) {
        f.vertices.push_back(static_cast<int>(v));
        pts.push_back(vertices_[v]);
      }
    if (static_cast<int>(pts.size()) >= dim_ && affineDimension(pts) == dim_ - 1) out.push_back(std::move(f));
  }
  return out;
}

Rational ConvexPolytope::projectedMeasure(const std::vector<int>& face, int dropAxis) const {
  Rational total = 0;
  for (const auto& s : triangulate(face)) {
    const int d = static_cast<int>(s.size()) - 1;
    MatrixQ m(dim_ - 1, d);
    for (int j = 0; j < d; ++j) {
      const VectorQ diff = vertices_[s[j + 1]] - vertices_[s[0]];
      for (int i = 0, r = 0; i < dim_; ++i)
        if (i != dropAxis) m(r++, j) = diff(i);
    }
    if (m.rows() != m.cols()) throw std::invalid_argument("projectedMeasure expects a face of codimension one");
    Rational det = determinant(m);
    if (det < 0) det = -det;
    Integer fact = 1;
    for (int i = 2; i <= d; ++i) fact *= i;
    total += det / Rational(fact);
  }
  return total;
}

}  // namespace curlset
