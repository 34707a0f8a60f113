#include "curlset/polytope.hpp"
#include "support.hpp"

#include <doctest.h>

#include <set>

using namespace curlset;
using namespace curlset::testing;

namespace {

Rational factorial(int n) {
  Rational f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

/// {x : Σ|x_i| <= r} as 2^n halfspaces.
std::vector<Halfspace> crossPolytope(int n, const Rational& r) {
  std::vector<Halfspace> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    VectorQ a(n);
    for (int i = 0; i < n; ++i) a(i) = (mask >> i) & 1 ? -1 : 1;
    out.push_back({a, r});
  }
  return out;
}

/// Vertices by brute force: solve every n-subset of constraints as equations.
std::set<std::vector<Rational>> oracleVertices(const std::vector<Halfspace>& hs, const Box& bound) {
  std::vector<Halfspace> all = hs;
  for (const auto& h : bound.halfspaces()) all.push_back(h);
  const int n = bound.dim();
  std::set<std::vector<Rational>> out;
  for (const auto& pick : subsets(static_cast<int>(all.size()), n)) {
    MatrixQ m(n, n);
    VectorQ rhs(n);
    for (int i = 0; i < n; ++i) {
      m.row(i) = all[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])].normal.transpose();
      rhs(i) = all[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])].offset;
    }
    if (determinant(m) == 0) continue;
    const VectorQ x = *solve(m, rhs);
    bool feasible = true;
    for (const auto& h : all) feasible = feasible && h.slack(x) >= 0;
    if (feasible) out.insert(std::vector<Rational>(x.data(), x.data() + x.size()));
  }
  return out;
}

std::set<std::vector<Rational>> asSet(const std::vector<VectorQ>& vs) {
  std::set<std::vector<Rational>> out;
  for (const auto& v : vs) out.insert(std::vector<Rational>(v.data(), v.data() + v.size()));
  return out;
}

Box box(const VectorQ& lo, const VectorQ& hi) { return Box{lo, hi}; }

Box cube(int n, const Rational& lo, const Rational& hi) {
  return box(VectorQ::Constant(n, lo), VectorQ::Constant(n, hi));
}

}  // namespace

TEST_CASE("box basics") {
  const Box u = Box::unitCube(3);
  CHECK(u.volume() == 1);
  CHECK(u.contains(u.center()));
  CHECK(u.containsBox(cube(3, Rational(1, 4), Rational(1, 2))));
  CHECK_FALSE(u.overlaps(cube(3, 1, 2)));  // touching faces only
  CHECK(u.overlaps(cube(3, Rational(1, 2), 2)));
  CHECK(u.grown(1).volume() == 27);
  CHECK(u.halfspaces().size() == 6);
}

TEST_CASE("cube and cross-polytope volumes") {
  for (int n = 1; n <= 4; ++n) {
    const ConvexPolytope cube01({}, Box::unitCube(n));
    CHECK(cube01.volume() == 1);
    CHECK(cube01.vertices().size() == (1u << n));
    CHECK(cube01.fullDimensional());
    CHECK(cube01.touchesBound());

    const ConvexPolytope cross(crossPolytope(n, 1), cube(n, -2, 2));
    CHECK(cross.volume() == pow(Rational(2), n) / factorial(n));
    CHECK(cross.vertices().size() == static_cast<std::size_t>(2 * n));
    CHECK_FALSE(cross.touchesBound());
    CHECK(cross.facets().size() == (1u << n));
  }
}

TEST_CASE("degenerate and empty polytopes") {
  VectorQ a(2);
  a << 1, 0;
  // x <= 0 and −x <= 0: a segment in the unit square
  const ConvexPolytope seg({{a, 0}, {-a, 0}}, Box::unitCube(2));
  CHECK(seg.affineDim() == 1);
  CHECK(seg.volume() == 0);
  const ConvexPolytope none({{a, -1}}, Box::unitCube(2));
  CHECK(none.empty());
  CHECK(none.volume() == 0);
}

TEST_CASE("property: vertices match brute-force enumeration") {
  Rng rng(21);
  for (int i = 0; i < 60; ++i) {
    const int n = static_cast<int>(randInt(rng, 2, 3));
    std::vector<Halfspace> hs;
    const int m = static_cast<int>(randInt(rng, 1, 5));
    for (int j = 0; j < m; ++j) hs.push_back({randNonzeroVector(rng, n), Rational(randInt(rng, 0, 3))});
    const Box bound = cube(n, -2, 2);
    const ConvexPolytope p(hs, bound);
    CHECK(asSet(p.vertices()) == oracleVertices(hs, bound));
  }
}

TEST_CASE("property: volume is additive under a hyperplane cut") {
  Rng rng(22);
  for (int i = 0; i < 60; ++i) {
    const int n = static_cast<int>(randInt(rng, 2, 4));
    std::vector<Halfspace> hs;
    for (int j = 0; j < 3; ++j) hs.push_back({randNonzeroVector(rng, n), Rational(randInt(rng, 1, 3))});
    const Box bound = cube(n, -2, 2);
    const Halfspace cut{randNonzeroVector(rng, n), Rational(randInt(rng, -1, 1), 2)};
    auto lower = hs, upper = hs;
    lower.push_back(cut);
    upper.push_back({-cut.normal, -cut.offset});
    const Rational whole = ConvexPolytope(hs, bound).volume();
    CHECK(whole == ConvexPolytope(lower, bound).volume() + ConvexPolytope(upper, bound).volume());
  }
}

TEST_CASE("property: volume scales and translates like a homothety") {
  Rng rng(23);
  for (int i = 0; i < 40; ++i) {
    const int n = static_cast<int>(randInt(rng, 2, 3));
    std::vector<Halfspace> hs;
    for (int j = 0; j < n + 2; ++j) hs.push_back({randNonzeroVector(rng, n), Rational(randInt(rng, 1, 3))});
    const ConvexPolytope p(hs, cube(n, -1, 1));
    const VectorQ a = randVector(rng, n);
    const Rational t(randInt(rng, 1, 4), randInt(rng, 1, 3));
    std::vector<Halfspace> moved;
    for (const auto& h : p.halfspaces()) moved.push_back(transformHalfspace(h, a, t));
    Box bound = cube(n, -1, 1);
    bound.lower = a + t * bound.lower;
    bound.upper = a + t * bound.upper;
    for (const auto& h : cube(n, -1, 1).halfspaces()) moved.push_back(transformHalfspace(h, a, t));
    const ConvexPolytope q(moved, bound.grown(1));
    CHECK(q.volume() == p.volume() * pow(t, n));
  }
}

TEST_CASE("affine integral over boxes and simplices") {
  Rng rng(24);
  for (int i = 0; i < 40; ++i) {
    const int n = static_cast<int>(randInt(rng, 1, 4));
    VectorQ lo = randVector(rng, n), hi = lo;
    for (int k = 0; k < n; ++k) hi(k) += Rational(randInt(rng, 1, 3), randInt(rng, 1, 2));
    const Box b = box(lo, hi);
    MatrixQ a(n, n);
    for (int r = 0; r < n; ++r) a.row(r) = randVector(rng, n).transpose();
    const VectorQ c = randVector(rng, n);
    const ConvexPolytope p({}, b);
    CHECK(p.integrateAffine(a, c) == b.volume() * (a * b.center() + c));
  }
  // standard simplex in R^2: ∫ x = 1/6
  VectorQ one(2);
  one << 1, 1;
  const ConvexPolytope tri({{one, 1}}, Box::unitCube(2));
  MatrixQ id = MatrixQ::Identity(2, 2);
  const VectorQ got = tri.integrateAffine(id, VectorQ::Zero(2));
  CHECK(got(0) == Rational(1, 6));
  CHECK(tri.volume() == Rational(1, 2));
}

TEST_CASE("triangulation covers the polytope with simplices of matching volume") {
  const ConvexPolytope cross(crossPolytope(3, 1), cube(3, -2, 2));
  Rational sum = 0;
  for (const auto& s : cross.triangulate()) {
    std::vector<const VectorQ*> pts;
    for (int v : s) pts.push_back(&cross.vertices()[static_cast<std::size_t>(v)]);
    sum += simplexVolume(pts);
  }
  CHECK(sum == cross.volume());
}

TEST_CASE("facet projected measure") {
  const ConvexPolytope unit({}, Box::unitCube(3));
  // the unit cube has no own constraints, so its facets list is empty
  CHECK(unit.facets().empty());
  VectorQ e1 = unitVector(3, 0);
  const ConvexPolytope half({{e1, Rational(1, 2)}}, Box::unitCube(3));
  const auto fs = half.facets();
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].vertices.size() == 4);
  CHECK(half.projectedMeasure(fs[0].vertices, 0) == 1);
  CHECK(half.volume() == Rational(1, 2));
}
