#include <random>

#include "doctest.h"
#include "ksa/algebra.hpp"

using namespace ksa;

namespace {

AlgebraElement elt(Policy p, int l, int r, std::vector<DecTerm> ts) {
  return AlgebraElement(l, r, p, std::move(ts));
}

}  // namespace

TEST_CASE("ring map values") {
  Policy p = Policy::uadic(16);
  Series x = Series::monomial(Ring::Idem0, p, Term{2, 3});
  CHECK(phiSigma(x) == Series::monomial(Ring::Idem1, p, Term{2, 1}));
  CHECK(phiTau(x) == Series::monomial(Ring::Idem1, p, Term{3, 1}));
  CHECK(phiSigma(Series::one(Ring::Idem0, p)).isOne());
  CHECK(phiTau(Series::one(Ring::Idem0, p)).isOne());
}

TEST_CASE("rewriting relations") {
  Policy p = Policy::uadic(16);
  AlgebraElement sigma = AlgebraElement::sigma(p);
  AlgebraElement tau = AlgebraElement::tau(p);
  AlgebraElement U = elt(p, 0, 0, {DecTerm{Term{1, 0}, Dec::None}});
  AlgebraElement V = elt(p, 0, 0, {DecTerm{Term{0, 1}, Dec::None}});
  // s U = u T^-1 s
  CHECK(algMul(sigma, U) ==
        elt(p, 1, 0, {DecTerm{Term{1, -1}, Dec::Sigma}}));
  // t V = u T t
  CHECK(algMul(tau, V) == elt(p, 1, 0, {DecTerm{Term{1, 1}, Dec::Tau}}));
  // (1+T)(T^-1 t) + t (1+U) = 0
  AlgebraElement onePlusT =
      elt(p, 1, 1, {DecTerm{Term{0, 0}, Dec::None}, DecTerm{Term{0, 1}, Dec::None}});
  AlgebraElement tInvTau = elt(p, 1, 0, {DecTerm{Term{0, -1}, Dec::Tau}});
  AlgebraElement onePlusU =
      elt(p, 0, 0, {DecTerm{Term{0, 0}, Dec::None}, DecTerm{Term{1, 0}, Dec::None}});
  CHECK((algMul(onePlusT, tInvTau) + algMul(tau, onePlusU)).isZero());
  // two decorations annihilate through the idempotents
  CHECK(algMul(sigma, tau).isZero());
}

TEST_CASE("associativity on random truncated elements") {
  Policy p = Policy::uadic(6);
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> e(0, 3), pick(0, 2), coin(0, 1);
  auto randomDiag0 = [&] {
    std::vector<DecTerm> ts;
    for (int i = 0; i < 3; ++i)
      ts.push_back(DecTerm{Term{e(rng), e(rng)}, Dec::None});
    return elt(p, 0, 0, std::move(ts));
  };
  auto randomDiag1 = [&] {
    std::vector<DecTerm> ts;
    for (int i = 0; i < 3; ++i)
      ts.push_back(DecTerm{Term{e(rng), e(rng) - 2}, Dec::None});
    return elt(p, 1, 1, std::move(ts));
  };
  auto randomConn = [&] {
    std::vector<DecTerm> ts;
    for (int i = 0; i < 2; ++i)
      ts.push_back(DecTerm{Term{e(rng), e(rng) - 1},
                           coin(rng) ? Dec::Sigma : Dec::Tau});
    return elt(p, 1, 0, std::move(ts));
  };
  for (int trial = 0; trial < 60; ++trial) {
    // the only composable triple shapes: (1,1)(1,0)(0,0) and diagonals
    AlgebraElement a = randomDiag1(), b = randomConn(), c = randomDiag0();
    CHECK(algMul(algMul(a, b), c) == algMul(a, algMul(b, c)));
    AlgebraElement d0 = randomDiag0(), d1 = randomDiag0(), d2 = randomDiag0();
    CHECK(algMul(algMul(d0, d1), d2) == algMul(d0, algMul(d1, d2)));
  }
}

TEST_CASE("grading report") {
  Policy p = Policy::uadic(16);
  Gradings g = elt(p, 0, 0, {DecTerm{Term{2, 3}, Dec::None}}).gradings();
  CHECK(g.alexander == 1);
  CHECK(g.grw == -4);
  CHECK(g.grz == -6);
  // s + T^2 t is not Alexander homogeneous
  Gradings h = elt(p, 1, 0,
                   {DecTerm{Term{0, 0}, Dec::Sigma},
                    DecTerm{Term{0, 2}, Dec::Tau}})
                   .gradings();
  CHECK(!h.alexander.has_value());
  Gradings k = elt(p, 1, 1, {DecTerm{Term{1, 0}, Dec::None}}).gradings();
  CHECK(k.alexander == 0);
  CHECK(k.grw == -2);
  CHECK(k.grz == -2);
}

TEST_CASE("phi maps respect products and gradings") {
  Policy p = Policy::uadic(12);
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> e(0, 4);
  for (int trial = 0; trial < 40; ++trial) {
    Series a = Series::monomial(Ring::Idem0, p, Term{e(rng), e(rng)});
    Series b = Series::monomial(Ring::Idem0, p, Term{e(rng), e(rng)});
    CHECK(phiSigma(mul(a, b)) == mul(phiSigma(a), phiSigma(b)));
    CHECK(phiTau(mul(a, b)) == mul(phiTau(a), phiTau(b)));
    int before = 0, after = 0;
    REQUIRE(a.homogeneousAlexander(&before));
    REQUIRE(phiSigma(a).homogeneousAlexander(&after));
    CHECK(before == after);
  }
}

TEST_CASE("tensor elements") {
  Policy p = Policy::uadic(8);
  AlgebraElement sigma = AlgebraElement::sigma(p);
  AlgebraElement one1 = AlgebraElement::idem(1, p);
  TensorElement st = TensorElement::tensor({sigma, one1});
  CHECK(st.arity() == 2);
  CHECK(st.render() == "s | 1");
  CHECK(!st.isZero());
  // mixed product collapses through the idempotents
  CHECK(tensorMul(st, st).isZero());
}
