#pragma once

#include "ksa/modules.hpp"

namespace ksa {

/******** Presented modules and bimodules ********/

// n-framed solid torus: x0 --(s + T^n t)--> x1
TypeDModule makeDn(int n, Policy p);

// infinity-framed solid torus, six generators
TypeDModule makeDInfty(Policy p);

// twisted variant: z1+ --(1 + T^m)--> z1-
TypeDModule makeDInftyTwisted(int m, Policy p);

// solid-torus type-A module: corner rings acting on themselves, s and t
// acting through phiSigma and phiTau, m_j = 0 otherwise
TypeAAction makeD0TypeA(Policy p);

// merge module restricted to undecorated inputs: m2((a|b), x) = a*b*x
TypeAAction makeMerge(Policy p);

// pairing module: merge m2 plus m3 firing exactly on (s|1, 1|s, x) and
// (t|1, 1|t, x) pairs
TypeAAction makeISup(Policy p);

// regular representation as a type-A module; boxing with it reproduces a
// module's underlying complex
TypeAAction identityTypeA(Policy p);

// ring-morphism bimodule: U -> U^m, V -> V^m, u -> u^m, T -> T^m,
// s -> s, t -> T^n t. Boxing is coefficient substitution.
struct PhiBimodule {
  int n = 0;
  int m = 1;
};
TypeDModule boxPhi(const TypeDModule& d, const PhiBimodule& phi);

/******** Knot presentations ********/

struct KnotPresentation {
  TypeDModule module;  // arity 1
  int framing = 0;
  std::string name;
};

// Full validation: structure relation, idempotent-0 consistency with the
// declared Alexander/Maslov data, grading homogeneity of the s/t arrow
// families.
struct KnotCheck {
  bool ok = true;
  std::string firstViolation;
};
KnotCheck validateKnot(const KnotPresentation& k);

// Staircase complexes of L-space knots. The step vector lists the
// alternating arrow exponents e_1..e_2k (U-arrow, V-arrow, ...) followed
// by a final entry equal to e_1, making the length odd; (e_1..e_2k) must
// be palindromic. [1] is the unknot, [1,1,1] the right-handed trefoil.
struct StaircaseSpec {
  std::vector<int> steps;
  int framing = 0;
};
KnotPresentation makeStaircaseKnot(const StaircaseSpec& spec, Policy p);

KnotPresentation unknotPresentation(int framing, Policy p);
KnotPresentation trefoilPresentation(int framing, Policy p);

}  // namespace ksa
