#pragma once

#include <optional>
#include <vector>

#include "ksa/coeff.hpp"

namespace ksa {

/******** The surgery algebra ********/
//
// An algebra over two idempotents. Corners:
//   I0*A*I0 = F2[U,V],  I1*A*I1 = F2[u,T,T^-1],  I0*A*I1 = 0,
// and I1*A*I0 is spanned by u^i T^j s and u^i T^j t, subject to
//   s * a = phiSigma(a) * s,   t * a = phiTau(a) * t
// for a in the I0 corner.

enum class Dec : uint8_t { None = 0, Sigma = 1, Tau = 2 };

// phiSigma(U^i V^j) = u^i T^(j-i),  phiTau(U^i V^j) = u^j T^(j-i)
Series phiSigma(const Series& x);
Series phiTau(const Series& x);
Term phiSigmaTerm(Term t);
Term phiTauTerm(Term t);

struct DecTerm {
  Term mono;       // Idem0 body when the corner is (0,0), else Idem1 body
  Dec dec = Dec::None;

  friend bool operator==(const DecTerm&, const DecTerm&) = default;
  friend auto operator<=>(const DecTerm&, const DecTerm&) = default;
};

struct Gradings {
  std::optional<int> alexander, grw, grz;  // nullopt = non-homogeneous
};

class AlgebraElement {
 public:
  AlgebraElement() = default;
  AlgebraElement(int left, int right, Policy p)
      : left_(left), right_(right), policy_(p) {}
  AlgebraElement(int left, int right, Policy p, std::vector<DecTerm> terms);

  int leftIdem() const { return left_; }
  int rightIdem() const { return right_; }
  const Policy& policy() const { return policy_; }
  const std::vector<DecTerm>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }

  // corner helpers
  static AlgebraElement zero(int l, int r, Policy p) {
    return AlgebraElement(l, r, p);
  }
  static AlgebraElement idem(int i, Policy p);  // the unit of a corner
  static AlgebraElement fromSeries(const Series& s, int l, int r, Dec d);
  static AlgebraElement sigma(Policy p);
  static AlgebraElement tau(Policy p);

  // the undecorated part as a Series in the corner ring (requires l == r)
  Series asSeries() const;
  // decorated parts as Idem1 series (requires corner (1,0))
  Series sigmaPart() const;
  Series tauPart() const;

  AlgebraElement& operator+=(const AlgebraElement& rhs);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) {
    a += b;
    return a;
  }
  friend bool operator==(const AlgebraElement&, const AlgebraElement&) =
      default;

  Gradings gradings() const;
  bool isIdempotentUnit() const;  // exactly 1 in a diagonal corner
  std::string render() const;

 private:
  int left_ = 0, right_ = 0;
  Policy policy_{};
  std::vector<DecTerm> terms_;
};

// Product a*b. Idempotent mismatch gives the zero element (with the
// composite corner). Decorations absorb I0-corner factors through
// phiSigma/phiTau; two decorations annihilate via idempotents.
AlgebraElement algMul(const AlgebraElement& a, const AlgebraElement& b);

// Truncation test for a decorated or plain term sitting in a corner.
bool policyKeeps(const Policy& p, int left, int right, const DecTerm& t);

/******** Tensor powers ********/
//
// Elements of the l-fold tensor algebra, stored as F2-sums of pure
// tensors of monomial terms. All summands share the idempotent vectors.

struct TensorTerm {
  std::vector<DecTerm> factors;

  friend bool operator==(const TensorTerm&, const TensorTerm&) = default;
  friend auto operator<=>(const TensorTerm&, const TensorTerm&) = default;
};

class TensorElement {
 public:
  TensorElement() = default;
  TensorElement(std::vector<uint8_t> left, std::vector<uint8_t> right,
                Policy p)
      : left_(std::move(left)), right_(std::move(right)), policy_(p) {}
  TensorElement(std::vector<uint8_t> left, std::vector<uint8_t> right,
                Policy p, std::vector<TensorTerm> terms);

  static TensorElement fromAlgebra(const AlgebraElement& a);
  // pure tensor of single-corner elements, expanded to term sums
  static TensorElement tensor(const std::vector<AlgebraElement>& factors);

  size_t arity() const { return left_.size(); }
  const std::vector<uint8_t>& leftIdem() const { return left_; }
  const std::vector<uint8_t>& rightIdem() const { return right_; }
  const Policy& policy() const { return policy_; }
  const std::vector<TensorTerm>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }

  AlgebraElement factorAsAlgebra(size_t termIndex, size_t factor) const;
  AlgebraElement asAlgebra() const;  // arity-1 view

  TensorElement& operator+=(const TensorElement& rhs);
  friend TensorElement operator+(TensorElement a, const TensorElement& b) {
    a += b;
    return a;
  }
  friend bool operator==(const TensorElement&, const TensorElement&) =
      default;

  bool isIdempotentUnit() const;
  std::string render() const;

 private:
  std::vector<uint8_t> left_, right_;
  Policy policy_{};
  std::vector<TensorTerm> terms_;
};

TensorElement tensorMul(const TensorElement& a, const TensorElement& b);

std::string renderDecTerm(int left, int right, const DecTerm& t);

}  // namespace ksa
