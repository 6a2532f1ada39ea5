#pragma once

#include "ksa/surgery.hpp"

namespace ksa {

/******** Named power series ********/
//
// The series live in the U-adic truncation. beta1/beta-1 are stated with
// negative V (resp. U) powers times explicit U-powers; ingestion rewrites
// V^-j U^m = U^m V^(m-j), which stays nonnegative inside the truncation.

enum class SeriesName {
  Alpha,
  Beta1,
  BetaM1,
  Delta1,
  DeltaM1,
  Epsilon,
  BetaPrime,
  DeltaPrime,
  Kappa,
  KappaPrime,
  SumU,       // sum over s >= 1 of U^{s(s-1)/2}, idem0 form
  SumUIdem1,  // same in the idem1 ring
  AlphaPrime
};

Series namedSeries(SeriesName n, Policy p);

struct IdentityVerdict {
  std::string name;
  bool pass = false;
  std::string detail;
};

// the factorization identities, each verified by truncated arithmetic
std::vector<IdentityVerdict> checkFactorizations(int precision);

/******** Tiling identities ********/
//
// Exact polynomial checks, no truncation. Two readings are reported for
// the square-boundary polynomials: the printed closed formulas, and the
// boundary-tile regions of [0,s+1]^2 (minus two corners in the odd case).
// The two disagree at small s; the per-s verdicts record both without
// gating the build. The series-level consequences (which are what the
// kappa construction uses) are checked at a precision as well.

struct TileReport {
  // per-s verdicts, s = 1..sMax
  std::vector<IdentityVerdict> rows;
  bool seriesLevelPass = false;  // b1b1 sum identity at precision
  bool modUPass = false;         // total series mod U = 1 + U + V
};

TileReport tileIdentityCheck(int sMax, int precision);

/******** The exact triangle ********/

struct TriangleReport {
  int framing = 0;
  int precision = 0;
  std::vector<IdentityVerdict> rows;  // the nine residues
  bool pass() const {
    for (auto& r : rows)
      if (!r.pass) return false;
    return !rows.empty();
  }
};

// checks d f1 = 0, d F1 = 0, d G1 = 0, the two homotopy identities
// against kappa/kappa' and the j1 coefficients, and positivity
TriangleReport verifyTriangle(int framing, int precision);

// chiral cross-check: reduce(Cone f1) and reduce(Dinf) are isomorphic
bool triangleChiralCrossCheck(int framing, int window, int precision,
                              std::string* detail = nullptr);

// exhaustive isomorphism search for small reduced modules
bool modulesIsomorphic(const TypeDModule& a, const TypeDModule& b);

}  // namespace ksa
