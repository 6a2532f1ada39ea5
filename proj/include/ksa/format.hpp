#pragma once

#include "ksa/zoo.hpp"

namespace ksa {

/******** Interchange format ********/
//
// Line oriented:
//   # comment
//   module: <name>
//   arity: <l>
//   policy: uadic <N> | chiral <W> <N>
//   framing: <n>                  (optional; knot presentations)
//   gen <name> <idem-bits> [maslov <q>] [alex <q> ...]
//   arrow <src> -> <dst> : <element>
//   cfk <gen> <q>                 (optional idempotent-0 Alexander data)
//
// Element syntax: factors separated by '|', F2-sums by '+', monomials as
// U^i*V^j, u^i*T^j, decorations s and t, the empty monomial 1. Sums of
// tensors with more than one factor are parenthesized per summand.

struct ParseError : std::runtime_error {
  int line = 0;
  ParseError(int line_, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what),
        line(line_) {}
};

struct ModuleFile {
  TypeDModule module;
  std::optional<int> framing;
};

ModuleFile parseModule(const std::string& text);
std::string emitModule(const TypeDModule& m, std::optional<int> framing);

KnotPresentation parseKnot(const std::string& text);  // validates
std::string emitKnot(const KnotPresentation& k);

// element parser used by the module reader; corners are dictated by the
// endpoint idempotent vectors
TensorElement parseElement(const std::string& text,
                           const std::vector<uint8_t>& leftIdem,
                           const std::vector<uint8_t>& rightIdem, Policy p,
                           int line);

Policy parsePolicy(const std::string& text, int line);

}  // namespace ksa
