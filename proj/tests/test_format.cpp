#include "doctest.h"
#include "ksa/format.hpp"

using namespace ksa;

TEST_CASE("round trips") {
  Policy p = Policy::uadic(16);
  for (int n : {-2, 0, 3}) {
    TypeDModule d = makeDn(n, p);
    std::string text = emitModule(d, n);
    ModuleFile f = parseModule(text);
    CHECK(f.framing == n);
    CHECK(f.module.genCount() == d.genCount());
    CHECK(f.module.arrows().size() == d.arrows().size());
    CHECK(emitModule(f.module, f.framing) == text);
  }
  KnotPresentation t = trefoilPresentation(1, p);
  KnotPresentation back = parseKnot(emitKnot(t));
  CHECK(emitKnot(back) == emitKnot(t));
}

TEST_CASE("infinity model round trip with mixed corners") {
  Policy p = Policy::chiral(8, 8);
  TypeDModule d = makeDInfty(p);
  ModuleFile f = parseModule(emitModule(d, std::nullopt));
  CHECK(f.module.genCount() == 6);
  CHECK(f.module.validate().ok);
  CHECK(emitModule(f.module, std::nullopt) == emitModule(d, std::nullopt));
}

TEST_CASE("parse errors carry line numbers") {
  std::string bad =
      "arity: 1\n"
      "policy: uadic 8\n"
      "gen x0 01\n";  // idempotent vector too long for arity 1
  try {
    parseModule(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }

  std::string unknown =
      "arity: 1\n"
      "policy: uadic 8\n"
      "gadget x0\n";
  CHECK_THROWS_AS(parseModule(unknown), ParseError);
}

TEST_CASE("element syntax variants") {
  Policy p = Policy::uadic(8);
  TensorElement e =
      parseElement("U^1*T^-2*t + s", {1}, {0}, p, 1);
  CHECK(e.terms().size() == 2);
  TensorElement two =
      parseElement("U^1*T^-2*t + s | 1", {1, 0}, {0, 0}, p, 1);
  CHECK(two.arity() == 2);
  CHECK(two.terms().size() == 2);
  TensorElement sum =
      parseElement("(s | s) + (t | T^1*t)", {1, 1}, {0, 0}, p, 1);
  CHECK(sum.terms().size() == 2);
  CHECK_THROWS_AS(parseElement("W^2", {0}, {0}, p, 7), ParseError);
}

TEST_CASE("a perturbed file fails validation with the generator pair") {
  Policy p = Policy::uadic(8);
  TypeDModule d = makeDInfty(p);
  std::string text = emitModule(d, std::nullopt);
  // drop one of the canceling arrows: x0- -> z1- : t
  std::string needle = "arrow x0- -> z1- : t\n";
  auto pos = text.find(needle);
  REQUIRE(pos != std::string::npos);
  text.erase(pos, needle.size());
  ModuleFile f = parseModule(text);
  Violation v = f.module.validate();
  CHECK(!v.ok);
  CHECK(v.message.find("x0+") != std::string::npos);
}

TEST_CASE("knot files require framing and validate") {
  Policy p = Policy::uadic(8);
  std::string noFraming = emitModule(makeDn(1, p), std::nullopt);
  CHECK_THROWS(parseKnot(noFraming));
}
