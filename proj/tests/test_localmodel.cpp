#include "doctest.h"
#include "ksa/localmodel.hpp"

using namespace ksa;

TEST_CASE("bigon differentials") {
  LocalModel m{6, 6, 2};
  // [theta+, id] is a cycle: conjugation fixes the identity
  FloerElement idElt;
  idElt.add({PairKind::P00, true}, m.identity(Space::E0));
  CHECK(mu1(m, idElt).vanishesInterior(1));
  // the sigma chain is a cycle on the nose
  FloerElement cs;
  cs.add({PairKind::P01s, true}, m.phiSigmaOp());
  CHECK(mu1(m, cs).vanishesInterior(1));
  // a projection is not: conjugation shifts it
  FloerElement pr;
  pr.add({PairKind::P00, true}, m.proj(Space::E0, 1));
  FloerElement d = mu1(m, pr);
  REQUIRE(d.parts().size() == 1);
  const WinOp& op = d.parts().begin()->second;
  CHECK(op.agreesInterior(m.proj(Space::E0, 1) + m.proj(Space::E0, 2), 1));
}

TEST_CASE("identity-class inputs act as the identity") {
  LocalModel m{6, 6, 2};
  FloerElement idElt, cs;
  idElt.add({PairKind::P00, true}, m.identity(Space::E0));
  cs.add({PairKind::P01s, true}, m.phiSigmaOp());
  FloerElement prod = mu2(m, idElt, cs);
  REQUIRE(prod.parts().size() == 1);
  CHECK(prod.parts().begin()->second.agreesInterior(m.phiSigmaOp(), 0));
}

TEST_CASE("compositions outside the table are refused") {
  LocalModel m{6, 6, 2};
  FloerElement a, b;
  a.add({PairKind::P00, true}, m.identity(Space::E0));
  b.add({PairKind::P10s, true}, m.etaSigma());
  CHECK_THROWS_AS(mu2(m, a, b), UnknownComposition);
}

TEST_CASE("local triangle identities") {
  for (auto [W, N] : std::vector<std::pair<int, int>>{{6, 6}, {8, 6}}) {
    LocalReport rep = verifyLocalTriangle(W, N);
    for (const auto& r : rep.rows) {
      INFO("(" << W << "," << N << ") " << r.name);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("retraction identities") {
  LocalReport rep = retractionCheck(6, 6);
  for (const auto& r : rep.rows) {
    INFO(r.name);
    CHECK(r.pass);
  }
}

TEST_CASE("endomorphism homology report") {
  LocalReport rep = endAlgebraHomology(6, 6);
  for (const auto& r : rep.rows) {
    INFO(r.name);
    CHECK(r.pass);
  }
}

TEST_CASE("eta operators solve their recursions") {
  LocalModel m{8, 6, 2};
  WinOp etaS = m.etaSigma(), etaT = m.etaTau();
  WinOp dp = compose(m.deltaOp(), m.piOp());
  CHECK((etaS + compose(m.vMul(1), compose(etaS, m.tMul(-1))) + dp)
            .vanishesInterior(2));
  WinOp rhs = compose(m.uVarMul(1), compose(dp, m.tMul(1)));
  CHECK((etaT + compose(m.uVarMul(1), compose(etaT, m.tMul(1))) + rhs)
            .vanishesInterior(2));
}
