#include "doctest.h"
#include "ksa/serieslab.hpp"

using namespace ksa;

TEST_CASE("alpha at low precision") {
  Policy p = Policy::uadic(4);
  Series alpha = namedSeries(SeriesName::Alpha, p);
  // s <= 3 survive: U+V, (U^2+V^2) at level 1, (U^3+V^3) at level 3
  Series expect(Ring::Idem0, p,
                {Term{1, 0}, Term{0, 1}, Term{3, 1}, Term{1, 3}, Term{6, 3},
                 Term{3, 6}});
  CHECK(alpha == expect);
}

TEST_CASE("beta1 mod U") {
  Policy p = Policy::uadic(8);
  Series beta1 = namedSeries(SeriesName::Beta1, p);
  Series expect(Ring::Idem0, p, {Term{0, 0}, Term{1, 0}});
  CHECK(beta1.modU() == expect);
}

TEST_CASE("factorizations at the working precisions") {
  for (int N : {4, 8, 16}) {
    auto rows = checkFactorizations(N);
    for (const auto& r : rows) {
      INFO(r.name << " at N=" << N << " " << r.detail);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("kappa normalizations") {
  Policy p = Policy::uadic(16);
  Series kappa = namedSeries(SeriesName::Kappa, p);
  CHECK(kappa.modU().isOne());
  // the idem1 analogue is forced to vanish mod U: its defining equation
  // reads kappa'(1+T) = 0 at U-level zero
  Series kappaP = namedSeries(SeriesName::KappaPrime, p);
  CHECK(kappaP.modU().isZero());
}

TEST_CASE("beta' and the polynomial quotient") {
  Policy p = Policy::uadic(8);
  Series betaP = namedSeries(SeriesName::BetaPrime, p);
  Series alphaP = namedSeries(SeriesName::AlphaPrime, p);
  Series one1 = Series::one(Ring::Idem1, p);
  Series T = Series::monomial(Ring::Idem1, p, Term{0, 1});
  CHECK(mul(one1 + T, betaP) == one1 + alphaP);
}

TEST_CASE("tile identities: frozen verdicts") {
  TileReport rep = tileIdentityCheck(6, 12);
  auto verdict = [&](const std::string& name) {
    for (const auto& r : rep.rows)
      if (r.name == name) return r.pass;
    FAIL("missing row " << name);
    return false;
  };
  // the printed closed forms disagree with the factorized products at the
  // edges; the tile regions match them exactly
  CHECK(!verdict("Bs-factor-1[printed] s=1"));
  CHECK(verdict("Bs-factor-1[tiles] s=1"));
  CHECK(!verdict("Bs-factor-2[printed] s=2"));
  CHECK(verdict("Bs-factor-2[tiles] s=2"));
  CHECK(verdict("Bs-factor-2[tiles] s=4"));
  CHECK(verdict("Bs-factor-2[tiles] s=6"));
  // per-s coefficient identities fail for every s (migration across
  // U-levels is what repairs them); the series-level checks pass
  CHECK(!verdict("b1b1sum[per-s] s=1"));
  CHECK(!verdict("b1b1sum[per-s] s=2"));
  CHECK(rep.seriesLevelPass);
  CHECK(rep.modUPass);
}

TEST_CASE("triangle at framing zero") {
  TriangleReport rep = verifyTriangle(0, 8);
  for (const auto& r : rep.rows) {
    INFO(r.name << " " << r.detail);
    CHECK(r.pass);
  }
  CHECK(rep.pass());
}

TEST_CASE("triangle chiral cross-check") {
  std::string detail;
  CHECK(triangleChiralCrossCheck(0, 8, 8, &detail));
  INFO(detail);
  CHECK(triangleChiralCrossCheck(-2, 8, 8, &detail));
}

TEST_CASE("small-model isomorphism search") {
  Policy p = Policy::chiral(6, 6);
  CHECK(modulesIsomorphic(makeDInftyTwisted(2, p), makeDInftyTwisted(2, p)));
  CHECK(!modulesIsomorphic(makeDInftyTwisted(1, p), makeDn(1, p)));
}
