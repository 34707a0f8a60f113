#ifndef CURLSET_POLYTOPE_HPP
#define CURLSET_POLYTOPE_HPP

#include "curlset/rational.hpp"

#include <boost/dynamic_bitset.hpp>

#include <vector>

namespace curlset {

/// Closed halfspace {x : normal·x <= offset}.
struct Halfspace {
  VectorQ normal;
  Rational offset;

  Rational slack(const VectorQ& x) const { return offset - normal.dot(x); }
  bool operator==(const Halfspace& o) const { return normal == o.normal && offset == o.offset; }
};

/// Halfspace image under z = a + t x (t > 0).
Halfspace transformHalfspace(const Halfspace& h, const VectorQ& translation, const Rational& scale);

struct Box {
  VectorQ lower;
  VectorQ upper;

  int dim() const { return static_cast<int>(lower.size()); }
  Rational volume() const;
  VectorQ center() const { return (lower + upper) / Rational(2); }
  VectorQ widths() const { return upper - lower; }
  bool contains(const VectorQ& x) const;
  bool containsBox(const Box& other) const;
  /// Interiors intersect.
  bool overlaps(const Box& other) const;
  std::vector<Halfspace> halfspaces() const;
  /// Same box grown by `margin` on every side.
  Box grown(const Rational& margin) const;
  bool operator==(const Box& o) const { return lower == o.lower && upper == o.upper; }

  static Box unitCube(int n);
  static Box hull(const std::vector<VectorQ>& points);
};

/// |det(p1 - p0, ..., pn - p0)| / n! for n+1 points in R^n.
Rational simplexVolume(const std::vector<const VectorQ*>& points);

// Exact V-representation of {x : h_i·x <= b_i} ∩ bound, computed by clipping
// the bounding box one halfspace at a time. Each vertex carries the set of
// constraints tight at it (polytope constraints first, then the 2n box faces),
// which drives edge detection, facets and the triangulation.
class ConvexPolytope {
 public:
  struct Facet {
    int constraint;            // index into halfspaces()
    std::vector<int> vertices;
  };

  ConvexPolytope(std::vector<Halfspace> halfspaces, const Box& bound);

  int ambientDim() const { return dim_; }
  int affineDim() const { return affineDim_; }
  bool empty() const { return vertices_.empty(); }
  bool fullDimensional() const { return affineDim_ == dim_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  const std::vector<VectorQ>& vertices() const { return vertices_; }
  bool isTight(int vertex, int constraint) const { return tight_[vertex][constraint]; }

  /// Some vertex lies on the bounding box, i.e. the polytope may extend past it.
  bool touchesBound() const;

  /// Simplices (vertex index lists of size d+1) of a pulling triangulation of
  /// the face spanned by `face` with affine dimension d. Empty `face` means
  /// the whole polytope.
  std::vector<std::vector<int>> triangulate(const std::vector<int>& face = {}) const;

  Rational volume() const;
  /// ∫ (A x + c) dx over the polytope, exact (centroid rule per simplex).
  VectorQ integrateAffine(const MatrixQ& a, const VectorQ& c) const;

  /// Facets among the polytope's own constraints (vertex sets of affine dim n−1).
  std::vector<Facet> facets() const;

  /// Measure of a (d)-face after dropping coordinate `dropAxis`; faces on a
  /// common hyperplane can be compared exactly this way.
  Rational projectedMeasure(const std::vector<int>& face, int dropAxis) const;

  Box boundingBox() const { return Box::hull(vertices_); }

 private:
  int dim_;
  int affineDim_ = -1;
  std::vector<Halfspace> halfspaces_;
  std::vector<VectorQ> vertices_;
  std::vector<boost::dynamic_bitset<>> tight_;
  int totalConstraints_ = 0;

  void triangulateFace(const std::vector<int>& face, int faceDim, std::vector<std::vector<int>>& out) const;
};

}  // namespace curlset

#endif  // CURLSET_POLYTOPE_HPP
