#pragma once

#include <set>

#include "ksa/serieslab.hpp"

namespace ksa {

/******** Windowed operators ********/
//
// F[U]-linear maps between the local-system spaces
//   E0 = F[U,V],  E1 = F[u,T,T^-1],  EL = F[u],
// restricted to an Alexander window and a u-precision. A map is stored by
// the images of the U-level-0 basis vectors: entry (a -> b, k) sends the
// grading-a generator to U^k times the grading-b generator. Intermediate
// computations may pass through negative k (conjugation by V); assertions
// are made on window-interior gradings only, with a declared margin.

enum class Space : uint8_t { E0, E1, EL };

class WinOp {
 public:
  WinOp() = default;
  WinOp(Space src, Space dst, int window, int precision)
      : src_(src), dst_(dst), window_(window), precision_(precision) {}

  Space src() const { return src_; }
  Space dst() const { return dst_; }
  int window() const { return window_; }
  int precision() const { return precision_; }

  bool isZero() const;
  void toggle(int a, int b, int k);  // F2 entry flip
  const std::set<std::pair<int, int>>& column(int a) const;

  WinOp& operator+=(const WinOp& rhs);
  friend WinOp operator+(WinOp a, const WinOp& b) {
    a += b;
    return a;
  }
  friend bool operator==(const WinOp&, const WinOp&) = default;

  // no negative u-powers anywhere in the stored entries
  bool nonNegative() const;
  // non-increasing in both gr_w and gr_z (E0 -> E0 maps)
  bool filtered() const;
  // equality on columns a with |a| <= window - margin
  bool agreesInterior(const WinOp& rhs, int margin) const;
  bool vanishesInterior(int margin) const;

  std::string render() const;

 private:
  Space src_ = Space::E0, dst_ = Space::E0;
  int window_ = 0, precision_ = 0;
  // column a -> set of (b, k)
  std::map<int, std::set<std::pair<int, int>>> cols_;
  static const std::set<std::pair<int, int>> empty_;
};

WinOp compose(const WinOp& g, const WinOp& f);  // g after f

struct LocalModel {
  int W = 6, N = 6, margin = 2;

  WinOp zero(Space s, Space d) const { return WinOp(s, d, W, N); }
  WinOp identity(Space s) const;
  WinOp uShift(Space s, int k) const;          // multiply by u^k
  WinOp vMul(int power) const;                 // E0: multiply by V^power
  WinOp uVarMul(int power) const;              // E0: multiply by U^power
  WinOp tMul(int power) const;                 // E1: multiply by T^power
  WinOp proj(Space s, int grading) const;      // delta_i projection
  WinOp projRange(bool positive) const;        // E0 delta_{>0} / delta_{<=0}
  WinOp phiSigmaOp() const;
  WinOp phiTauOp() const;
  WinOp deltaOp() const;   // EL -> E0, u^k -> (UV)^k
  WinOp piOp() const;      // E1 -> EL, u^k T^0 -> u^k
  WinOp piPrimeOp() const; // E1 -> E0 continuity-friendly extension
  WinOp etaSigma() const;  // sum V^i Delta Pi T^-i
  WinOp etaTau() const;    // sum U^i Delta Pi T^i
  WinOp retractH(const WinOp& f) const;  // h(f) on E0 -> E0
};

/******** Floer elements and the composition table ********/

enum class PairKind : uint8_t {
  P00,   // beta0 -> beta0'
  P01s,  // beta0 -> beta1, sigma class
  P01t,
  P11,   // beta1 -> beta1'
  P10s,  // beta1 -> beta0', sigma class
  P10t,
  PL0,  // lambda -> beta0
  P1L,  // beta1 -> lambda
  PLL,  // lambda -> lambda'
  PL1,  // lambda -> beta1
  P0L   // beta0 -> lambda
};

struct FloerGen {
  PairKind pair;
  bool plus = true;

  friend bool operator==(const FloerGen&, const FloerGen&) = default;
  friend auto operator<=>(const FloerGen&, const FloerGen&) = default;
};

struct UnknownComposition : std::runtime_error {
  explicit UnknownComposition(const std::string& w) : std::runtime_error(w) {}
};

class FloerElement {
 public:
  FloerElement() = default;
  void add(FloerGen g, const WinOp& op);
  const std::map<FloerGen, WinOp>& parts() const { return parts_; }
  bool isZero() const;
  FloerElement& operator+=(const FloerElement& rhs);
  friend FloerElement operator+(FloerElement a, const FloerElement& b) {
    a += b;
    return a;
  }
  bool vanishesInterior(int margin) const;

 private:
  std::map<FloerGen, WinOp> parts_;
};

FloerElement mu1(const LocalModel& m, const FloerElement& x);
FloerElement mu2(const LocalModel& m, const FloerElement& a,
                 const FloerElement& b);
FloerElement mu3(const LocalModel& m, const FloerElement& a,
                 const FloerElement& b, const FloerElement& c);
FloerElement mu4(const LocalModel& m, const FloerElement& a,
                 const FloerElement& b, const FloerElement& c,
                 const FloerElement& d);

/******** verification drivers ********/

struct LocalReport {
  std::vector<IdentityVerdict> rows;
  bool pass() const {
    for (auto& r : rows)
      if (!r.pass) return false;
    return !rows.empty();
  }
};

// the mapping-cone equivalence identities on the window
LocalReport verifyLocalTriangle(int W, int N);

// homology of the four filtered morphism complexes against the corner
// monomial bases, plus the retraction identities
LocalReport endAlgebraHomology(int W, int N);
LocalReport retractionCheck(int W, int N);

}  // namespace ksa
