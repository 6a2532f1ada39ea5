#include "doctest.h"
#include "ksa/serieslab.hpp"

using namespace ksa;

TEST_CASE("the +1 surgery complex has the staircase arrows") {
  Policy p = Policy::uadic(8);
  KnotPresentation k = unknotPresentation(1, p);
  SurgeryComplex sc = knotSurgery(k, p, 3);
  FUComplex fc = sc.expand();
  REQUIRE(fc.squaresToZero());
  // locate tracks by (idempotent, alexander)
  auto find = [&](int idem, long long a) {
    for (size_t i = 0; i < fc.basis.size(); ++i)
      if (sc.module.gen(fc.basis[i].gen).idem[0] == idem &&
          fc.basis[i].alex == Rational(a))
        return int(i);
    return -1;
  };
  for (long long s = -3; s <= 3; ++s) {
    int x = find(0, s);
    REQUIRE(x >= 0);
    int yv = find(1, s), yh = find(1, s + 1);
    UPoly vPow = UPoly(1) << std::max(-s, 0ll);
    UPoly hPow = UPoly(1) << std::max(s, 0ll);
    int seen = 0;
    for (const auto& [dst, poly] : fc.cols[x]) {
      if (dst == yv) {
        CHECK(poly == vPow);
        ++seen;
      } else if (dst == yh) {
        CHECK(poly == hPow);
        ++seen;
      } else {
        CHECK(false);
      }
    }
    int expected = (yv >= 0 ? 1 : 0) + (yh >= 0 ? 1 : 0);
    CHECK(seen == expected);
  }
}

TEST_CASE("sublink extraction of a split pairing") {
  Policy p = Policy::uadic(6);
  int n = 2, W = 4;
  TypeDModule split = externalTensor(makeDn(n, p),
                                     trefoilPresentation(0, p).module);
  TypeDModule extracted = sublinkExtract(split, {1}, W);
  CHECK(extracted.arity() == 1);
  CHECK(extracted.validate().ok);
  for (size_t i = 0; i < extracted.genCount(); ++i)
    CHECK(extracted.gen(int(i)).idem[0] == 0);

  // Betti numbers mod (U, V): the differential drops every arrow with a
  // positive exponent; compare a direct rank against the reduced model
  auto bettiUV = [&](const TypeDModule& m) {
    size_t nGens = m.genCount();
    F2Matrix d(nGens, nGens);
    for (const auto& [key, c] : m.arrows())
      for (const TensorTerm& t : c.terms())
        if (t.factors[0].mono == Term{0, 0})
          d.flip(key.second, key.first);
    return int(nGens) - 2 * int(d.rank());
  };
  int direct = bettiUV(extracted);
  ReduceResult r = reduce(extracted);
  REQUIRE(r.verified);
  int reduced = bettiUV(r.module);
  CHECK(direct == reduced);

  // Leibniz: mod both variables the rank factors through the capped
  // complement, so the Betti number is 3 x that of the capped unknot part
  TypeDModule cappedUnknot = sublinkExtract(
      externalTensor(makeDn(n, p), [] {
        Policy q = Policy::uadic(6);
        TypeDModule t(1, q);
        t.addGenerator(Generator{"pt", {0}, Rational(0),
                                 std::vector<Rational>{Rational(0)}});
        return t;
      }()),
      {1}, W);
  int unknotBetti = bettiUV(cappedUnknot);
  CHECK(direct == 3 * unknotBetti);
}

TEST_CASE("H1 action arrows and chain identity on the zero surgery") {
  Policy p = Policy::uadic(8);
  KnotPresentation k = unknotPresentation(0, p);
  SurgeryComplex sc = knotSurgery(k, p, 6);
  Endomorphism a = h1Action(sc, 0);
  REQUIRE(a.comps.size() == 1);
  const TensorElement& c = a.comps.begin()->second;
  REQUIRE(c.terms().size() == 1);
  CHECK(c.terms()[0].factors[0].dec == Dec::Sigma);
  CHECK(chainMapResidue(sc, a).empty());
}

TEST_CASE("cube-weight correction drops by one per filled coordinate") {
  Policy p = Policy::uadic(8);
  KnotPresentation k = unknotPresentation(2, p);
  GradedComplex g = assignGradings(knotSurgery(k, p, 6));
  // two basis elements with equal Alexander grading on the two cube levels
  std::optional<Rational> eps0, eps1;
  for (const FUGen& b : g.complex.basis) {
    if (!(b.alex == Rational(1))) continue;
    bool idem1 = b.carrier.idem == 1;
    Rational internal =
        Rational(grW(idem1 ? Ring::Idem1 : Ring::Idem0, b.carrier.mono));
    Rational rest = *b.maslov - internal;
    if (idem1)
      eps1 = rest;
    else
      eps0 = rest;
  }
  REQUIRE(eps0.has_value());
  REQUIRE(eps1.has_value());
  CHECK(*eps0 - *eps1 == Rational(1));
}

TEST_CASE("lens space correction terms") {
  using R = Rational;
  CHECK(dLens(1, 1, 0) == R(0));
  // RP^3
  CHECK(dLens(2, 1, 0) == R(1, 4));
  CHECK(dLens(2, 1, 1) == R(-1, 4));
  // L(3,1)
  CHECK(dLens(3, 1, 0) == R(1, 2));
  CHECK(dLens(3, 1, 1) == R(-1, 6));
  CHECK(dLens(3, 1, 2) == R(-1, 6));
  // the recursion agrees with the closed form for q = 1
  for (long long p = 2; p <= 7; ++p)
    for (long long i = 0; i < p; ++i)
      CHECK(dLens(p, 1, i) ==
            (R(2 * i - p) * R(2 * i - p) - R(p)) / R(4 * p));
}

TEST_CASE("degenerate framings fall back to relative gradings") {
  Policy p = Policy::uadic(8);
  KnotPresentation k = unknotPresentation(0, p);
  GradedComplex g = assignGradings(knotSurgery(k, p, 6));
  CHECK(g.degenerate);
  DInvariantReport rep = dInvariants(g, 0, Rational(0));
  CHECK(rep.relativeOnly);
}

TEST_CASE("framing matrix helpers") {
  FramingMatrix f = FramingMatrix::diag({3});
  CHECK(f.det() == 3);
  CHECK(f.signature() == 1);
  FramingMatrix g = FramingMatrix::diag({2, -5});
  CHECK(g.det() == -10);
  CHECK(g.signature() == 0);
  auto x = f.solve({Rational(6)});
  CHECK(x[0] == Rational(2));
}
