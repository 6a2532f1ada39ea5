#pragma once

#include "ksa/localmodel.hpp"

namespace ksa {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

// The full verification battery behind `selftest`. Deterministic; runs in
// well under a minute.
std::vector<CriterionResult> runAcceptance();

// individual criteria (1-based ids matching the suite output)
CriterionResult criterionSolidTori();          // 1
CriterionResult criterionUnknotSurgeries();    // 2
CriterionResult criterionChiralContrast();     // 3
CriterionResult criterionSeriesIdentities();   // 4
CriterionResult criterionExactTriangle();      // 5
CriterionResult criterionPhiBimodules();       // 6
CriterionResult criterionGluing();             // 7
CriterionResult criterionH1Action();           // 8
CriterionResult criterionGradings();           // 9
CriterionResult criterionLocalModel();         // 10
CriterionResult criterionEndAlgebra();         // 11
CriterionResult criterionPositivity();         // 12
CriterionResult criterionStaircase();          // 13
CriterionResult criterionTiling();             // 14

}  // namespace ksa
