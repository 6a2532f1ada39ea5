#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ksa {

/******** Coefficient rings ********/
//
// Three local rings appear throughout:
//   Idem0  = F2[U,V]          (two independent variables; the ring's own
//                              "U-action" is the product U*V)
//   Idem1  = F2[u,T,T^-1]     (u is the single U-variable, T is invertible)
//   PlainU = F2[u]
//
// A Term stores the exponent pair. Meaning depends on the ring:
//   Idem0:  a = U-exponent, b = V-exponent, both >= 0
//   Idem1:  a = u-exponent >= 0, b = T-exponent (any sign)
//   PlainU: a = u-exponent >= 0, b = 0

enum class Ring : uint8_t { Idem0 = 0, Idem1 = 1, PlainU = 2 };

std::string ringName(Ring r);

struct Term {
  int32_t a = 0;
  int32_t b = 0;

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

// U-level: the largest k with term divisible by (the ring's U)^k.
int ulevel(Ring r, Term t);
// Alexander grading: A(U)=-1, A(V)=1 in Idem0; A(T)=1, A(u)=0 in Idem1.
int alexander(Ring r, Term t);
int grW(Ring r, Term t);
int grZ(Ring r, Term t);

/******** Truncation policies ********/
//
// UAdic(N): quotient by the ideal of terms with U-level >= N.
//
// Chiral(W,N): in Idem0, quotient by the ideal of terms with
// max(a,b) > W or U-level >= N.  (Discarding by max-degree rather than by
// a level/Alexander box keeps the discarded set an ideal, so truncation
// stays a ring map; at U-level 0 the kept terms are exactly |A| <= W.)
// In Idem1 and PlainU the chiral filtration only involves u-powers, so
// there the two modes truncate identically.

struct Policy {
  enum class Mode : uint8_t { UAdic, Chiral };

  Mode mode = Mode::UAdic;
  int precision = 16;  // N >= 1
  int window = 8;      // W >= 0, used by Chiral (and by windowed bases)

  static Policy uadic(int n) { return Policy{Mode::UAdic, n, 8}; }
  static Policy chiral(int w, int n) { return Policy{Mode::Chiral, n, w}; }

  bool keeps(Ring r, Term t) const;
  bool chiralMode() const { return mode == Mode::Chiral; }

  friend bool operator==(const Policy&, const Policy&) = default;

  std::string describe() const;
};

/******** Series ********/
//
// A finite F2-sum of terms, kept sorted and reduced, all surviving the
// policy. Addition is symmetric difference.

class Series {
 public:
  Series() = default;
  Series(Ring r, Policy p) : ring_(r), policy_(p) {}
  Series(Ring r, Policy p, std::vector<Term> terms);

  Ring ring() const { return ring_; }
  const Policy& policy() const { return policy_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool isZero() const { return terms_.empty(); }
  bool isOne() const;
  size_t size() const { return terms_.size(); }

  static Series zero(Ring r, Policy p) { return Series(r, p); }
  static Series one(Ring r, Policy p);
  static Series monomial(Ring r, Policy p, Term t);

  // Accepts raw exponents with an extra explicit power of the ring's U.
  // In Idem0 the term U^a V^b u^{uPow} is canonicalized to
  // U^{a+uPow} V^{b+uPow}; a or b may be negative provided the canonical
  // exponents come out nonnegative. No negative u-powers anywhere.
  static Series laurent(Ring r, Policy p, int a, int b, int uPow);

  Series& operator+=(const Series& rhs);
  friend Series operator+(Series lhs, const Series& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend bool operator==(const Series&, const Series&) = default;

  // Lowest-U-level part convenience: the sum of terms with U-level 0.
  Series modU() const;

  int minULevel() const;  // precision if zero

  // Sum of all gradings agreeing across terms, else nullopt-like flags.
  bool homogeneousAlexander(int* out) const;

  std::string render() const;

 private:
  Ring ring_ = Ring::Idem0;
  Policy policy_{};
  std::vector<Term> terms_;
};

struct NotAUnit : std::runtime_error {
  explicit NotAUnit(const std::string& what) : std::runtime_error(what) {}
};

struct RingMismatch : std::runtime_error {
  explicit RingMismatch(const std::string& what) : std::runtime_error(what) {}
};

Series mul(const Series& x, const Series& y);
Series mulTerm(const Series& x, Term t);

// Unit test per policy. If `why` is non-null it receives the failing
// criterion when the answer is false.
bool isUnit(const Series& x, std::string* why = nullptr);

// Truncated inverse; throws NotAUnit. Post-verified by multiplication.
Series invert(const Series& x);

struct DivideResult {
  bool ok = false;
  Series quotient;
  int failLevel = -1;  // first U-level with no solution, when !ok
};

// Exact truncated division: find q with q*divisor == dividend within the
// policy, where q ranges over terms with max variable degree (|T|-degree
// in Idem1) at most degreeBound. Solved as an F2 linear system and
// re-verified by multiplication.
DivideResult divide(const Series& dividend, const Series& divisor,
                    int degreeBound);

std::string renderTerm(Ring r, Term t);

}  // namespace ksa
