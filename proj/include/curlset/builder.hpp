#ifndef CURLSET_BUILDER_HPP
#define CURLSET_BUILDER_HPP

#include "curlset/polytope.hpp"
#include "curlset/rational.hpp"
#include "curlset/setlab.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace curlset {

/// Raised when a construction is refused (hypotheses fail) or cannot finish.
class BuildError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AffineMap {
  MatrixQ matrix;
  VectorQ offset;

  VectorQ operator()(const VectorQ& x) const { return matrix * x + offset; }
  bool operator==(const AffineMap& o) const { return matrix == o.matrix && offset == o.offset; }
};

/// Polyhedral cell {x : <normal, x> <= offset for every halfspace} with the
/// affine map η takes on it. `block` groups the cells of one placed homothet.
struct Cell {
  std::vector<Halfspace> halfspaces;
  AffineMap map;
  int block = 0;
};

/// Axis-aligned boxes with pairwise disjoint interiors.
class BoxDomain {
 public:
  BoxDomain() = default;
  explicit BoxDomain(std::vector<Box> boxes);
  static BoxDomain unitCube(int n) { return BoxDomain({Box::unitCube(n)}); }

  int dim() const { return boxes_.empty() ? 0 : boxes_.front().dim(); }
  const std::vector<Box>& boxes() const { return boxes_; }
  Rational volume() const;
  Box bounds() const;
  bool operator==(const BoxDomain& o) const { return boxes_ == o.boxes_; }

 private:
  std::vector<Box> boxes_;
};

/// Piecewise-affine field: η is the cell's affine map on each cell and 0 on
/// the rest of the domain.
struct PAField {
  int n = 0;
  std::vector<Cell> cells;
  BoxDomain domain;
  Rational coveredVolume;
};

/// Splits a box into `pieces` boxes of equal volume, recursively along the
/// longest axis (lowest index on ties).
std::vector<Box> splitBox(const Box& box, int pieces);

/// a_e ⟂ b with a_e ∧ b = e for each element.
std::vector<VectorQ> canonicalReps(const FormSet& e, const VectorQ& b);

/// One affine piece c + <g, x> of the gauge u(x) = min_p (c_p + <g_p, x>).
/// The field on the piece's cell is u·b, whose curl is g ∧ b.
struct GaugePiece {
  int element;
  VectorQ gradient;
  Rational offset;
};

/// Lifts the reps to {a_e ± M_e b} with M = 2 for the favored element and 1
/// otherwise, all offsets 1. Requires 0 ∈ int co of the lifted set.
std::vector<GaugePiece> liftWithHeights(const std::vector<VectorQ>& reps, const VectorQ& b, int favored);

struct GaugeCell {
  int piece;
  std::vector<Halfspace> halfspaces;  // facet-defining only
  Rational volume;
};

/// P = {u >= 0} together with its cells of positive volume.
class GaugeShape {
 public:
  GaugeShape(std::vector<GaugePiece> pieces, VectorQ line);

  int dim() const { return static_cast<int>(line_.size()); }
  const VectorQ& line() const { return line_; }
  const std::vector<GaugePiece>& pieces() const { return pieces_; }
  const std::vector<GaugeCell>& cells() const { return cells_; }
  const std::vector<Halfspace>& outer() const { return outer_; }
  const std::vector<VectorQ>& vertices() const { return vertices_; }
  const Box& bounds() const { return bounds_; }
  const Rational& volume() const { return volume_; }
  /// min over P of <normal, x> for each outer facet.
  const std::vector<Rational>& outerLow() const { return outerLow_; }

  /// Total volume of cells whose piece belongs to `element`.
  Rational elementVolume(int element) const;

  /// Cells of z ↦ t·u((z − a)/t)·b, which keeps every curl unchanged.
  std::vector<Cell> place(const VectorQ& center, const Rational& scale, int block) const;

  /// Max over P of <d, x>.
  Rational support(const VectorQ& d) const;

 private:
  VectorQ line_;
  std::vector<GaugePiece> pieces_;
  std::vector<GaugeCell> cells_;
  std::vector<Halfspace> outer_;
  std::vector<VectorQ> vertices_;
  Box bounds_;
  Rational volume_;
  std::vector<Rational> outerLow_;
};

GaugeShape buildGauge(std::vector<GaugePiece> pieces, const VectorQ& b);

/// When b is a coordinate axis and every rep lies on a coordinate axis, a
/// gauge whose P is the box of half-widths `halfWidths` up to a fraction
/// `1/sharpness` near the two faces normal to b. Pieces: for each element a
/// plateau c_e + <a_e, x> with c_e = |a_e|·h, and caps a_e ± M_e b lifted by
/// M_e·T. Returns nullopt when the reps are not axis aligned.
std::optional<GaugeShape> buildBoxMatchedGauge(const std::vector<VectorQ>& reps, const VectorQ& b, int favored,
                                               const VectorQ& halfWidths, const Rational& sharpness);

struct Placement {
  VectorQ center;
  Rational scale;
};

struct FillResult {
  std::vector<Placement> placements;
  Rational coveredVolume;
  bool reachedTarget = false;
  int levelsUsed = 0;
  std::size_t candidatesTried = 0;
};

/// Grid levels for fillBox: CURLSET_MAX_GRID_LEVELS or 12.
int maxGridLevels();

/// Greedy multiscale packing of disjoint homothets a + tP into the box until
/// Σ t^n vol(P) >= (1 − ε) vol(box). Level ℓ tries the scales t0·2^−ℓ·{1, 1/2}
/// (t0 the largest scale that fits) at centers on a grid of step t0·w·2^−ℓ−1
/// (w the widths of P's bounding box), in lexicographic order. Disjointness is
/// exact: bounding boxes, then P's facet normals as separating axes, then an LP.
FillResult fillBox(const Box& box, const GaugeShape& shape, const Rational& epsilon, int maxLevels = maxGridLevels());

/// Interiors of a + tP and a' + t'P are disjoint (exact).
bool homothetsDisjoint(const GaugeShape& shape, const Placement& p, const Placement& q);

/// Single-line construction: each domain box is split into |E| equal
/// sub-boxes, sub-box i is filled with the gauge favoring element i.
PAField buildLineSolution(const FormSet& e, const BoxDomain& domain, const Rational& epsilon);

/// Two-block construction: every domain box is halved along the first axis;
/// part 0 is solved on the lower halves and part 1 on the upper halves.
PAField buildComposite(const FormSet& e, const std::vector<PartitionPart>& parts, const BoxDomain& domain,
                       const Rational& epsilon);

}  // namespace curlset

#endif  // CURLSET_BUILDER_HPP
