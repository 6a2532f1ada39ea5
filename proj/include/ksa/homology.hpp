#pragma once

#include <map>

#include "ksa/modules.hpp"

namespace ksa {

/******** Homology over the truncated one-variable ring ********/
//
// Input: a free F2[U] complex at precision N. Output, per class: the
// number of summands free at this precision ("towers") and the torsion
// orders k < N. The verdict "free" only means no relation appears below
// U^N; a block of length exactly N-1 raises the precision-ambiguity flag.

struct ClassReport {
  int towers = 0;
  std::map<int, int> torsion;  // order -> multiplicity
  bool warning = false;        // relation at level N-1
  int torsionCount() const {
    int n = 0;
    for (auto& [k, m] : torsion) n += m;
    return n;
  }
};

struct HomologyReport {
  int precision = 0;
  bool relative = false;  // classes are absolute Alexander gradings
  std::map<long long, ClassReport> classes;

  int totalTowers() const {
    int n = 0;
    for (auto& [k, c] : classes) n += c.towers;
    return n;
  }
  bool anyWarning() const {
    for (auto& [k, c] : classes)
      if (c.warning) return true;
    return false;
  }
  std::string render() const;
};

// modulus > 0: classes are A mod modulus; modulus == 0: relative mode,
// classes indexed by the Alexander grading itself.
HomologyReport homology(const FUComplex& c, long long modulus);

// Is the given F2[U]-combination a cycle generating a tower of its class
// (A mod modulus; 0 = the exact Alexander grading)?
bool generatesTower(const FUComplex& c, const std::vector<UPoly>& vec,
                    long long modulus);

// F2 dimensions of homology mod U, grouped by Maslov grading when one is
// assigned everywhere (falling back to one total bucket otherwise)
std::map<Rational, int> bettiAtU0(const FUComplex& c);

/******** reduction over F2[U] ********/
//
// Cancels unit (valuation-0) entries with the zig-zag rule, producing the
// minimal model over the truncated ring together with the equivalence.

struct FUReduceResult {
  FUComplex module;
  // proj[i][j]: row i of the map original -> reduced; incl likewise
  std::vector<std::map<int, UPoly>> projRows, inclRows;
  std::vector<int> survivors;  // original indices
};

FUReduceResult fuReduce(const FUComplex& c);

// conjugate an endomorphism (columns form) through a reduction
std::vector<std::map<int, UPoly>> conjugateEndo(
    const FUReduceResult& r, const std::vector<std::map<int, UPoly>>& endo);

UPoly upolyMul(UPoly a, UPoly b, int precision);
UPoly upolyInv(UPoly a, int precision);  // requires constant term 1

}  // namespace ksa
