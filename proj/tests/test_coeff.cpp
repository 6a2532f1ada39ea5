#include <random>

#include "doctest.h"
#include "ksa/serieslab.hpp"

using namespace ksa;

namespace {

Series mono0(Policy p, int a, int b) {
  return Series::monomial(Ring::Idem0, p, Term{a, b});
}
Series mono1(Policy p, int u, int t) {
  return Series::monomial(Ring::Idem1, p, Term{u, t});
}

std::vector<Term> randomTerms(std::mt19937& rng, int count, bool laurentT) {
  std::uniform_int_distribution<int> e(0, 5), t(-4, 4);
  std::vector<Term> out;
  for (int i = 0; i < count; ++i)
    out.push_back(laurentT ? Term{e(rng), t(rng)} : Term{e(rng), e(rng)});
  return out;
}

}  // namespace

TEST_CASE("monomial products") {
  Policy p = Policy::uadic(16);
  CHECK(mul(mono0(p, 1, 2), mono0(p, 2, 0)) == mono0(p, 3, 2));
  // T^-1 (T^2 + u T) = T + u
  Series lhs = mul(mono1(p, 0, -1), mono1(p, 0, 2) + mono1(p, 1, 1));
  CHECK(lhs == mono1(p, 0, 1) + mono1(p, 1, 0));
}

TEST_CASE("factorization product against beta1") {
  Policy p = Policy::uadic(8);
  Series beta1 = namedSeries(SeriesName::Beta1, p);
  Series onePlusV = Series::one(Ring::Idem0, p) + mono0(p, 0, 1);
  Series alpha = namedSeries(SeriesName::Alpha, p);
  CHECK(mul(onePlusV, beta1) == Series::one(Ring::Idem0, p) + alpha);
}

TEST_CASE("geometric inverse") {
  Policy p = Policy::uadic(4);
  // 1 + u in the plain ring
  Series x = Series::one(Ring::PlainU, p) +
             Series::monomial(Ring::PlainU, p, Term{1, 0});
  Series inv = invert(x);
  Series expect = Series(Ring::PlainU, p,
                         {Term{0, 0}, Term{1, 0}, Term{2, 0}, Term{3, 0}});
  CHECK(inv == expect);
  CHECK(mul(x, inv).isOne());
}

TEST_CASE("epsilon inverts at higher precision") {
  Policy p = Policy::uadic(10);
  Series eps = namedSeries(SeriesName::Epsilon, p);
  CHECK(isUnit(eps));
  CHECK(mul(eps, invert(eps)).isOne());
}

TEST_CASE("1+U is a unit only in the chiral truncation") {
  Policy ua = Policy::uadic(4);
  Series x = Series::one(Ring::Idem0, ua) + mono0(ua, 1, 0);
  std::string why;
  CHECK(!isUnit(x, &why));
  CHECK(why.find("uadic") != std::string::npos);
  CHECK_THROWS_AS(invert(x), NotAUnit);

  Policy ch = Policy::chiral(6, 4);
  Series y = Series::one(Ring::Idem0, ch) + mono0(ch, 1, 0);
  Series inv = invert(y);
  std::vector<Term> expect;
  for (int k = 0; k <= 6; ++k) expect.push_back(Term{k, 0});
  CHECK(inv == Series(Ring::Idem0, ch, expect));
}

TEST_CASE("division recovers beta1 and kappa's constant term") {
  Policy p = Policy::uadic(8);
  Series one = Series::one(Ring::Idem0, p);
  Series alpha = namedSeries(SeriesName::Alpha, p);
  DivideResult r = divide(one + alpha, one + mono0(p, 0, 1), 32);
  REQUIRE(r.ok);
  CHECK(r.quotient == namedSeries(SeriesName::Beta1, p));

  Series kappa = namedSeries(SeriesName::Kappa, p);
  CHECK(kappa.modU().isOne());
}

TEST_CASE("degree-parity obstruction is reported as indivisible") {
  Policy p = Policy::uadic(8);
  Series one = Series::one(Ring::Idem1, p);
  Series num = one + Series::monomial(Ring::Idem1, p, Term{0, 1});
  Series den = one + Series::monomial(Ring::Idem1, p, Term{0, 2});
  DivideResult r = divide(num, den, 12);
  CHECK(!r.ok);
  CHECK(r.failLevel == 0);
}

TEST_CASE("truncation is a ring quotient") {
  std::mt19937 rng(7);
  Policy wide = Policy::uadic(64);
  for (Policy p : {Policy::uadic(5), Policy::chiral(4, 5)}) {
    for (int trial = 0; trial < 50; ++trial) {
      for (Ring r : {Ring::Idem0, Ring::Idem1}) {
        auto ta = randomTerms(rng, 4, r == Ring::Idem1);
        auto tb = randomTerms(rng, 4, r == Ring::Idem1);
        Series rawProd = mul(Series(r, wide, ta), Series(r, wide, tb));
        Series viaTrunc = mul(Series(r, p, ta), Series(r, p, tb));
        CHECK(Series(r, p, rawProd.terms()) == viaTrunc);
      }
    }
  }
}

TEST_CASE("U-level additivity and Alexander additivity") {
  std::mt19937 rng(11);
  Policy p = Policy::uadic(32);
  for (int trial = 0; trial < 40; ++trial) {
    auto ta = randomTerms(rng, 1, false);
    auto tb = randomTerms(rng, 1, false);
    Series a(Ring::Idem0, p, ta), b(Ring::Idem0, p, tb);
    Series ab = mul(a, b);
    if (a.isZero() || b.isZero() || ab.isZero()) continue;
    CHECK(ab.minULevel() >= a.minULevel() + b.minULevel());
    int aa = 0, bb = 0, cc = 0;
    REQUIRE(a.homogeneousAlexander(&aa));
    REQUIRE(b.homogeneousAlexander(&bb));
    REQUIRE(ab.homogeneousAlexander(&cc));
    CHECK(cc == aa + bb);
  }
}

TEST_CASE("inverse is an involution; division inverts multiplication") {
  std::mt19937 rng(13);
  Policy p = Policy::uadic(8);
  std::uniform_int_distribution<int> e(0, 3);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Term> tail = randomTerms(rng, 3, false);
    for (Term& t : tail) {
      t.a += 1;
      t.b += 1;  // push above U-level 0
    }
    Series u = Series::one(Ring::Idem0, p) + Series(Ring::Idem0, p, tail);
    CHECK(invert(invert(u)) == u);

    Series q(Ring::Idem0, p, randomTerms(rng, 3, false));
    Series prod = mul(q, u);
    DivideResult r = divide(prod, u, 24);
    REQUIRE(r.ok);
    CHECK(r.quotient == q);
  }
}

TEST_CASE("rendering") {
  Policy p = Policy::uadic(8);
  CHECK(mono0(p, 2, 3).render() == "U^2*V^3");
  CHECK(mono1(p, 1, -2).render() == "u^1*T^-2");
  CHECK(Series::one(Ring::Idem0, p).render() == "1");
  CHECK(Series::zero(Ring::Idem1, p).render() == "0");
}
