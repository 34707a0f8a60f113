#include "support.hpp"

#include <doctest.h>

using namespace curlset;
using namespace curlset::testing;

namespace {

Form vec(std::initializer_list<int> c) {
  VectorQ v(static_cast<Eigen::Index>(c.size()));
  int i = 0;
  for (int x : c) v(i++) = x;
  return Form::fromVector(v);
}

VectorQ v(std::initializer_list<Rational> c) {
  VectorQ out(static_cast<Eigen::Index>(c.size()));
  int i = 0;
  for (const auto& x : c) out(i++) = x;
  return out;
}

}  // namespace

TEST_CASE("layout is lexicographic in the index tuples") {
  const auto ts = subsets(5, 2);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const Form b = Form::basis(5, {ts[i][0] + 1, ts[i][1] + 1});
    CHECK(b.coeffs()(static_cast<Eigen::Index>(i)) == 1);
    CHECK(normSquared(VectorQ(b.coeffs())) == 1);
  }
  CHECK(binomial(6, 3) == 20);
  CHECK(Form::basis(4, {2, 1}) == -Form::basis(4, {1, 2}));
  CHECK(Form::basis(4, {2, 2}).isZero());
}

TEST_CASE("wedge examples") {
  CHECK(wedge(Form::basis(3, {1}), Form::basis(3, {2})) == Form::basis(3, {1, 2}));
  // (e1 + e3) ∧ (e1 + e2) = e1∧e2 − e1∧e3 − e2∧e3
  const Form got = wedge(vec({1, 0, 1}), vec({1, 1, 0}));
  CHECK(got == Form::basis(3, {1, 2}) - Form::basis(3, {1, 3}) - Form::basis(3, {2, 3}));
  CHECK(got == oracleWedge(vec({1, 0, 1}), vec({1, 1, 0})));

  const Form w = Form::basis(4, {1, 2}) + Form::basis(4, {3, 4});
  CHECK(wedge(w, w) == Form::basis(4, {1, 2, 3, 4}) * Rational(2));
  CHECK(wedge(w, w) == oracleWedge(w, w));
  CHECK_THROWS_AS(wedge(Form(3, 1), Form(4, 1)), std::invalid_argument);
  CHECK(wedge(Form::basis(3, {1, 2}), Form::basis(3, {1, 3})).size() == 0);
}

TEST_CASE("interior examples") {
  const Form e12 = Form::basis(2, {1, 2});
  CHECK(interior(v({1, 0}), e12) == Form::basis(2, {2}));
  CHECK(interior(v({0, 1}), e12) == -Form::basis(2, {1}));
  CHECK(interior(v({0, 1}), e12) == oracleInterior(v({0, 1}), e12));

  const VectorQ a = v({1, 1, 0});
  const Form omega = Form::basis(3, {1, 3});
  CHECK(interior(a, wedge(a, omega)) + wedge(a, interior(a, omega)) == omega * Rational(2));
  CHECK_THROWS_AS(interior(a, Form::scalar(3, 1)), std::invalid_argument);
}

TEST_CASE("inner examples") {
  const Form e12 = Form::basis(4, {1, 2}), e13 = Form::basis(4, {1, 3}), e34 = Form::basis(4, {3, 4});
  CHECK(inner(e12, e12) == 1);
  CHECK(inner(e12, e13) == 0);
  CHECK(inner(e12 + e34 * Rational(2), e34) == 2);
}

TEST_CASE("hodge examples") {
  CHECK(hodge(Form::basis(4, {1, 2})) == Form::basis(4, {3, 4}));
  CHECK(hodge(Form::scalar(3, 1)) == Form::basis(3, {1, 2, 3}));
  CHECK(hodge(Form::basis(3, {2})) == -Form::basis(3, {1, 3}));
  // defining relation over the whole basis of Λ^1(R^3)
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      const Form a = Form::basis(3, {i}), b = Form::basis(3, {j});
      CHECK(wedge(a, hodge(b)) == Form::basis(3, {1, 2, 3}) * inner(a, b));
    }
}

TEST_CASE("rank examples") {
  CHECK(rankTwoForm(Form::basis(4, {1, 2})) == 2);
  CHECK(rankTwoForm(Form(4, 2)) == 0);
  const Form w = Form::basis(4, {1, 2}) + Form::basis(4, {3, 4});
  CHECK(rankTwoForm(w) == 4);
  CHECK(oracleRank(oracleSkew(w)) == 4);
  CHECK(skewMatrix(w) == oracleSkew(w));
  CHECK(fromSkewMatrix(skewMatrix(w)) == w);
}

TEST_CASE("kernel spaces") {
  auto ks = kernelSpaces(Form::basis(4, {1, 2}));
  CHECK(ks.kernel.cols() == 2);
  CHECK(ks.complement.cols() == 2);
  for (Eigen::Index c = 0; c < ks.kernel.cols(); ++c) {
    CHECK(ks.kernel(0, c) == 0);
    CHECK(ks.kernel(1, c) == 0);
  }
  for (Eigen::Index c = 0; c < ks.complement.cols(); ++c) {
    CHECK(ks.complement(2, c) == 0);
    CHECK(ks.complement(3, c) == 0);
  }
  ks = kernelSpaces(Form(4, 2));
  CHECK(ks.kernel.cols() == 4);
  CHECK(ks.complement.cols() == 0);

  ks = kernelSpaces(Form::basis(5, {1, 2}) + Form::basis(5, {3, 4}));
  REQUIRE(ks.kernel.cols() == 1);
  for (int i = 0; i < 4; ++i) CHECK(ks.kernel(i, 0) == 0);
  CHECK(ks.kernel(4, 0) != 0);
}

TEST_CASE("decomposable examples") {
  CHECK(decomposable(Form::basis(5, {1, 2, 3})));
  CHECK_FALSE(decomposable(Form::basis(4, {1, 2}) + Form::basis(4, {3, 4})));
  for (int n = 4; n <= 7; ++n) {
    std::vector<int> head;
    for (int i = 1; i <= n - 2; ++i) head.push_back(i);
    CHECK(decomposable(Form::basis(n, head)));
  }
  // e1∧e2∧e3 + e1∧e4∧e5 in R^5 is not decomposable
  CHECK_FALSE(decomposable(Form::basis(5, {1, 2, 3}) + Form::basis(5, {1, 4, 5})));
}

TEST_CASE("cartan division") {
  auto a = cartanDivide(Form::basis(3, {1, 2}), v({0, 1, 0}));
  REQUIRE(a);
  CHECK(*a == v({1, 0, 0}));

  a = cartanDivide(Form::basis(3, {1, 2}), v({1, 1, 0}));
  REQUIRE(a);
  CHECK(*a == v({Rational(1, 2), Rational(-1, 2), 0}));
  CHECK(wedge(*a, v({1, 1, 0})) == Form::basis(3, {1, 2}));

  CHECK_FALSE(cartanDivide(Form::basis(4, {1, 2}) + Form::basis(4, {3, 4}), v({0, 1, 0, 0})));
  CHECK_THROWS_AS(cartanDivide(Form::basis(3, {1, 2}), v({0, 0, 0})), std::invalid_argument);
}

TEST_CASE("property: cartan division inverts wedging by b") {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const int n = static_cast<int>(randInt(rng, 2, 6));
    const VectorQ b = randNonzeroVector(rng, n), x = randVector(rng, n);
    const Form e = wedge(x, b);
    const auto a = cartanDivide(e, b);
    REQUIRE(a);
    CHECK(wedge(*a, b) == e);
    CHECK(a->dot(b) == 0);
  }
}

TEST_CASE("identity suite, 100 draws per identity") {
  for (const auto& t : runIdentitySuite(100, 11)) {
    INFO(t.name);
    CHECK(t.checks == 100);
    CHECK(t.failures == 0);
  }
}

TEST_CASE("property: rank of a sum of r decomposables is at most 2r and even") {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const int n = static_cast<int>(randInt(rng, 2, 7));
    const int r = static_cast<int>(randInt(rng, 0, 3));
    const Form w = randLowRank(rng, n, r);
    const int rank = rankTwoForm(w);
    CHECK(rank % 2 == 0);
    CHECK(rank <= 2 * r);
    CHECK(rank == oracleRank(oracleSkew(w)));
    const auto ks = kernelSpaces(w);
    CHECK(ks.kernel.cols() == n - rank);
    CHECK(ks.complement.cols() == rank);
    for (Eigen::Index c = 0; c < ks.kernel.cols(); ++c) CHECK(interior(VectorQ(ks.kernel.col(c)), w).isZero());
  }
}
