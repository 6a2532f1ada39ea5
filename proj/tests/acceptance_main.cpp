// Acceptance battery: one pass/fail line per criterion. The same checks
// back the CLI's `selftest` subcommand.

#include <cstdio>

#include "ksa/acceptance.hpp"

int main() {
  bool all = true;
  for (const ksa::CriterionResult& r : ksa::runAcceptance()) {
    std::printf("%s criterion %02d: %s\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str());
    if (!r.pass) std::printf("     %s\n", r.detail.c_str());
    all &= r.pass;
  }
  return all ? 0 : 1;
}
