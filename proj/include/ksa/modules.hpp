#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "ksa/algebra.hpp"
#include "ksa/util.hpp"

namespace ksa {

/******** Type-D modules ********/

struct Generator {
  std::string name;
  std::vector<uint8_t> idem;  // one entry per tensor factor
  std::optional<Rational> maslov;
  std::optional<std::vector<Rational>> alex;
};

struct Violation {
  bool ok = true;
  int src = -1, dst = -1;
  TensorElement residue;
  std::string message;
};

class TypeDModule {
 public:
  TypeDModule() = default;
  TypeDModule(int arity, Policy p) : arity_(arity), policy_(p) {}

  int arity() const { return arity_; }
  const Policy& policy() const { return policy_; }
  Policy& policyRef() { return policy_; }

  int addGenerator(Generator g);
  int genIndex(const std::string& name) const;  // -1 if absent
  const Generator& gen(int i) const { return gens_[i]; }
  Generator& gen(int i) { return gens_[i]; }
  size_t genCount() const { return gens_.size(); }

  // merges with any existing arrow; drops the entry if it cancels to zero
  void addArrow(int src, int dst, const TensorElement& coeff);
  void addArrow(const std::string& src, const std::string& dst,
                const TensorElement& coeff);
  const std::map<std::pair<int, int>, TensorElement>& arrows() const {
    return arrows_;
  }
  TensorElement arrow(int src, int dst) const;

  // delta^2 = 0 plus idempotent compatibility at the stated precision
  Violation validate() const;

  // re-tag the truncation policy on every arrow (finitely generated
  // modules only carry finitely many arrows, so this is just re-reduction)
  TypeDModule withPolicy(Policy p) const;

  std::string framingLabel;  // optional metadata used by complexes
  std::string name;

 private:
  int arity_ = 1;
  Policy policy_{};
  std::vector<Generator> gens_;
  std::map<std::string, int> index_;
  std::map<std::pair<int, int>, TensorElement> arrows_;
};

/******** Morphisms ********/

struct DMorphism {
  const TypeDModule* source = nullptr;
  const TypeDModule* target = nullptr;
  std::map<std::pair<int, int>, TensorElement> comps;  // (srcGen, dstGen)

  void add(int srcGen, int dstGen, const TensorElement& c);
  void add(const std::string& srcGen, const std::string& dstGen,
           const TensorElement& c);
  bool isZero() const { return comps.empty(); }

  static DMorphism identity(const TypeDModule& m);
  // coefficient * identity, the coefficient acting in each generator's
  // diagonal corner
  static DMorphism scalar(const TypeDModule& m, const Series& idem0Coeff,
                          const Series& idem1Coeff);
};

DMorphism operator+(const DMorphism& a, const DMorphism& b);
// composition g after f
DMorphism compose(const DMorphism& g, const DMorphism& f);
DMorphism morphismDifferential(const DMorphism& f);

struct NotACycle : std::runtime_error {
  explicit NotACycle(const std::string& w) : std::runtime_error(w) {}
};

// Cone of a cycle f. Generator names collide => suffixed with "'".
TypeDModule cone(const DMorphism& f);
// identifies the cone's generators with those of source/target by index
struct ConeLayout {
  TypeDModule module;
  std::vector<int> fromSource, fromTarget;
};
ConeLayout coneLayout(const DMorphism& f);

// residue of G o F + target - dH; zero residue means the homotopy checks
DMorphism homotopyResidue(const DMorphism& F, const DMorphism& G,
                          const DMorphism& H, const DMorphism& target);

/******** Reduction ********/
//
// Cancellation of invertible arrows with the zig-zag update
//   d'(w->z) = d(w->z) + d(x->z) c^{-1} d(w->y)
// when cancelling x ->c y. Among candidates, the lowest (src, dst) pair
// in generator insertion order is cancelled first, rescanning after each
// step. The returned maps realize the homotopy equivalence and are
// post-verified.

struct ReduceResult {
  TypeDModule module;
  // project: original -> reduced, include: reduced -> original
  std::map<std::pair<int, int>, TensorElement> projectComps, includeComps,
      homotopyComps;
  bool verified = false;
  std::string note;
};

ReduceResult reduce(const TypeDModule& m, bool postVerify = true);

// Does this coefficient invert? (pure tensor of diagonal unit series)
bool isInvertibleCoeff(const TensorElement& c, std::vector<Series>* inv);

/******** Type-A side ********/
//
// The zoo's type-A modules all share the same carrier shape: one copy of
// F2[U,V] in idempotent 0...0 and one copy of F2[u,T,T^-1] in idempotent
// 1...1, with only m2 (and for the pairing module m3) nonzero. They are
// presented intensionally: `enumerate` lists the carrier monomials inside
// an Alexander window at the policy's precision.

struct BasisElt {
  uint8_t idem = 0;   // left idempotent of the carrier element
  uint8_t ridem = 0;  // right idempotent (differs only for decorated ones)
  Dec dec = Dec::None;
  Term mono;

  friend bool operator==(const BasisElt&, const BasisElt&) = default;
  friend auto operator<=>(const BasisElt&, const BasisElt&) = default;
};

struct TypeAAction {
  int arity = 1;
  Policy policy;
  std::string name;
  // U-level-0 tracks with |A| <= window, the idempotent-1 corner shifted
  // to [-W + shift, W] (closed mapping-cone truncation; see the complex
  // assembly notes in surgery.hpp)
  std::function<std::vector<BasisElt>(int window, int shift)> enumerate;
  std::function<std::vector<BasisElt>(const TensorTerm&,
                                      const std::vector<uint8_t>&,
                                      const std::vector<uint8_t>&,
                                      const BasisElt&, int window, int shift)>
      m2;
  std::function<std::vector<BasisElt>(
      const TensorTerm&, const std::vector<uint8_t>&,
      const std::vector<uint8_t>&, const TensorTerm&,
      const std::vector<uint8_t>&, const std::vector<uint8_t>&,
      const BasisElt&, int window, int shift)>
      m3;  // may be null
};

/******** Free F2[U] complexes ********/
//
// The expanded, single-U form used for homology and gradings. Basis
// elements remember which generator and carrier monomial they came from.

struct FUGen {
  int gen = -1;
  BasisElt carrier;
  Rational alex;  // total normalized Alexander grading
  std::optional<Rational> maslov;
};

using UPoly = uint64_t;  // bit k = U^k

class FUComplex {
 public:
  int precision = 16;
  std::vector<FUGen> basis;
  // differential columns: d[src] = list of (dst, poly)
  std::vector<std::map<int, UPoly>> cols;

  void addEntry(int src, int dst, UPoly p);
  bool squaresToZero(std::string* firstBad = nullptr) const;
  size_t size() const { return basis.size(); }
};

// Box tensor with a full type-A action over all factors; idempotent-1
// windows use `shift` as described above. `outIndex`, when given,
// receives the (generator, carrier) -> basis position table.
FUComplex expandBox(const TypeDModule& d, const TypeAAction& a, int window,
                    int shift,
                    std::map<std::pair<int, BasisElt>, int>* outIndex = nullptr);

}  // namespace ksa
