#include "curlset/verifier.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace curlset;
using namespace curlset::testing;

namespace {

VectorQ vec(std::initializer_list<Rational> c) {
  VectorQ out(static_cast<Eigen::Index>(c.size()));
  int i = 0;
  for (const auto& x : c) out(i++) = x;
  return out;
}

/// u·b for u = 1 − max(|x1|, |x2|) on [−1, 1]², b = e1 + e2. Curls: g ∧ b for
/// g ∈ {±e1, ±e2}, i.e. e12 on the cells of e1 and −e2, −e12 on the others.
PAField squareField() {
  const VectorQ b = vec({1, 1});
  std::vector<GaugePiece> pieces;
  int i = 0;
  for (const VectorQ& g : {vec({1, 0}), vec({-1, 0}), vec({0, 1}), vec({0, -1})}) pieces.push_back({i++, g, 1});
  const GaugeShape shape(pieces, b);
  PAField f;
  f.n = 2;
  f.domain = BoxDomain({Box{vec({-1, -1}), vec({1, 1})}});
  f.cells = shape.place(VectorQ::Zero(2), 1, 0);
  f.coveredVolume = 4;
  return f;
}

const FormSet& squareSet() {
  static const FormSet e(2, {e2(2, 1, 2), -e2(2, 1, 2)});
  return e;
}

Cell constantCell(const Box& box, const VectorQ& c) {
  Cell cell;
  cell.halfspaces = box.halfspaces();
  cell.map.matrix = MatrixQ::Zero(box.dim(), box.dim());
  cell.map.offset = c;
  return cell;
}

}  // namespace

TEST_CASE("cell curls") {
  CHECK(cellCurl(MatrixQ::Zero(3, 3)).isZero());
  MatrixQ a = MatrixQ::Zero(3, 3);
  a(1, 0) = 1;  // η = x1 e2
  CHECK(cellCurl(a) == e2(3, 1, 2));
  // η = (1 + <v, x>) b with v = 2e1 + e2, b = e1: A = b vᵀ, curl v ∧ b = −e12
  const VectorQ v = vec({2, 1, 0}), b = vec({1, 0, 0});
  CHECK(cellCurl(MatrixQ(b * v.transpose())) == -e2(3, 1, 2));
  CHECK(cellCurl(MatrixQ(b * v.transpose())) == wedge(v, b));
}

TEST_CASE("square field passes with measure 2 per element") {
  const auto r = verifyField(squareField(), squareSet(), {Rational(1, 100), false});
  CHECK(r.pass);
  REQUIRE(r.perCellCurl.size() == 4);
  for (const auto& c : r.perCellCurl) {
    CHECK(c.volume == 1);
    CHECK(c.match >= 0);
  }
  CHECK(r.measures == std::vector<Rational>{2, 2});
  CHECK(r.coveredVolume == 4);
  // ∫ u b = (4/3)·(1, 1): u is a pyramid of height 1 over area 4
  CHECK(r.integral == vec({Rational(4, 3), Rational(4, 3)}));
}

TEST_CASE("wrong curl") {
  PAField f;
  f.n = 3;
  f.domain = BoxDomain::unitCube(3);
  Cell c = constantCell(Box::unitCube(3), VectorQ::Zero(3));
  c.map.matrix(2, 0) = 1;  // η = x1 e3, curl e13
  f.cells.push_back(c);
  f.coveredVolume = 1;
  const auto r = verifyField(f, FormSet(3, {e2(3, 1, 2)}));
  CHECK_FALSE(r.pass);
  CHECK(r.perCellCurl[0].match == -1);
  CHECK(r.has(ViolationKind::Curl));
  CHECK_FALSE(r.membershipOk);
}

TEST_CASE("empty field") {
  PAField f;
  f.n = 3;
  f.domain = BoxDomain::unitCube(3);
  f.coveredVolume = 0;
  const auto r = verifyField(f, lineSet(3));
  CHECK(r.membershipOk);
  CHECK(r.continuityOk);
  CHECK(r.boundaryOk);
  CHECK(r.coveredVolume == 0);
  CHECK(r.has(ViolationKind::Coverage));
  CHECK(r.has(ViolationKind::Measure));
  CHECK(isZero(r.integral));
  CHECK_FALSE(r.pass);
}

TEST_CASE("continuity breaks") {
  PAField f = squareField();
  f.cells[0].map.offset(0) += 1;
  const auto r = verifyField(f, squareSet());
  CHECK_FALSE(r.pass);
  CHECK((r.has(ViolationKind::Continuity) || r.has(ViolationKind::Boundary)));
  CHECK_FALSE((r.continuityOk && r.boundaryOk));
}

TEST_CASE("shifted field fails the boundary test") {
  PAField f = squareField();
  for (auto& c : f.cells) c.map.offset += vec({1, 1});
  const auto r = verifyField(f, squareSet());
  CHECK_FALSE(r.pass);
  CHECK(r.has(ViolationKind::Boundary));
  CHECK(r.continuityOk);
  CHECK(r.membershipOk);
}

TEST_CASE("constant field on one cell: measure and integral") {
  PAField f;
  f.n = 2;
  const Box box{vec({0, 0}), vec({2, Rational(1, 2)})};
  f.domain = BoxDomain({box});
  f.cells.push_back(constantCell(box, vec({3, -1})));
  f.coveredVolume = 1;
  const FormSet zero(2, {Form(2, 2)});
  const auto r = verifyField(f, zero);
  CHECK(r.measures == std::vector<Rational>{1});
  CHECK(r.integral == vec({3, -1}));
  CHECK(r.has(ViolationKind::Boundary));  // nonzero on ∂Ω
}

TEST_CASE("overlap, domain and volume claims") {
  PAField f = squareField();
  f.cells.push_back(f.cells[0]);
  auto r = verifyField(f, squareSet());
  CHECK(r.has(ViolationKind::Overlap));

  f = squareField();
  f.domain = BoxDomain({Box{vec({-1, -1}), vec({1, Rational(1, 2)})}});
  r = verifyField(f, squareSet());
  CHECK(r.has(ViolationKind::Domain));

  f = squareField();
  f.coveredVolume = 3;
  r = verifyField(f, squareSet());
  CHECK(r.has(ViolationKind::VolumeClaim));
}

TEST_CASE("unattained element") {
  const FormSet bigger(2, {e2(2, 1, 2), -e2(2, 1, 2), e2(2, 1, 2) * Rational(2)});
  const auto r = verifyField(squareField(), bigger);
  CHECK_FALSE(r.pass);
  CHECK(r.has(ViolationKind::Measure));
  CHECK(r.measures[2] == 0);
  CHECK(r.membershipOk);
}

TEST_CASE("required nonzero integral") {
  PAField f;
  f.n = 2;
  f.domain = BoxDomain::unitCube(2);
  f.cells.push_back(constantCell(Box::unitCube(2), VectorQ::Zero(2)));
  f.coveredVolume = 1;
  const FormSet zero(2, {Form(2, 2)});
  auto r = verifyField(f, zero, {Rational(1, 100), true});
  CHECK(r.has(ViolationKind::Integral));
  r = verifyField(f, zero, {Rational(1, 100), false});
  CHECK(r.pass);
}

TEST_CASE("malformed cells") {
  PAField f = squareField();
  f.cells[1].map.matrix = MatrixQ::Zero(3, 3);
  const auto r = verifyField(f, squareSet());
  CHECK(r.has(ViolationKind::Malformed));
  CHECK_FALSE(r.pass);
}

TEST_CASE("zero-volume cells are discarded") {
  PAField f = squareField();
  Cell flat = constantCell(Box{vec({0, 0}), vec({1, 1})}, vec({5, 5}));
  flat.halfspaces.push_back({vec({1, 0}), 0});  // x1 <= 0 with x1 >= 0
  f.cells.push_back(flat);
  const auto r = verifyField(f, squareSet());
  CHECK(r.discardedCells == std::vector<int>{4});
  CHECK(r.pass);
}

TEST_CASE("violation names round trip") {
  for (auto k : {ViolationKind::Malformed, ViolationKind::Domain, ViolationKind::Overlap, ViolationKind::Curl,
                 ViolationKind::Continuity, ViolationKind::Boundary, ViolationKind::Measure, ViolationKind::Coverage,
                 ViolationKind::VolumeClaim, ViolationKind::Integral})
    CHECK(violationFromName(violationName(k)) == k);
  CHECK_THROWS_AS(violationFromName("nope"), std::invalid_argument);
}

TEST_CASE("single checks agree with the full report") {
  const PAField good = squareField();
  const auto full = verifyField(good, squareSet());
  const auto curls = checkMembership(good, squareSet());
  REQUIRE(curls.size() == full.perCellCurl.size());
  for (std::size_t i = 0; i < curls.size(); ++i) {
    CHECK(curls[i].curl == full.perCellCurl[i].curl);
    CHECK(curls[i].match == full.perCellCurl[i].match);
  }
  CHECK(measureByElement(good, squareSet()) == full.measures);
  CHECK(integrateField(good) == full.integral);
  CHECK(checkContinuity(good).empty());
  CHECK(checkBoundaryZero(good));

  PAField bent = squareField();
  bent.cells[0].map.offset(0) += 1;
  const auto breaks = checkContinuity(bent);
  CHECK_FALSE(breaks.empty());
  for (const auto& v : breaks) CHECK(v.kind == ViolationKind::Continuity);

  PAField shifted = squareField();
  for (auto& c : shifted.cells) c.map.offset += vec({1, 1});
  CHECK_FALSE(checkBoundaryZero(shifted));
  CHECK(checkContinuity(shifted).empty());
  // ∫ (u b + (1, 1)) adds the domain area 4 to each component
  CHECK(integrateField(shifted) == vec({Rational(16, 3), Rational(16, 3)}));
}
