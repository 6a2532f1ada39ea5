#pragma once

#include "ksa/homology.hpp"
#include "ksa/zoo.hpp"

namespace ksa {

/******** Surgery complexes ********/
//
// A surgery complex is carried by the same arrow data as a type-D module;
// the cube coordinate of a generator is its idempotent vector and the
// orientation pattern of an arrow records which factors consumed an s or
// a t. The expanded F2[U] form pairs generators with windowed carrier
// monomials.
//
// Window rule: the idempotent-1 tracks run over [-W + n, W] where n is
// the total framing. Every idempotent-1 track then has a U-power-zero
// preimage inside the idempotent-0 window, so each boundary cancellation
// closes off cleanly and the finite complex stays honestly homotopy
// equivalent to the completed one over the tested range. (A plain
// symmetric box, by contrast, leaks boundary torsion into the reports.)

struct FramingMatrix {
  std::vector<std::vector<long long>> m;  // symmetric

  size_t size() const { return m.size(); }
  static FramingMatrix diag(const std::vector<long long>& d);
  bool symmetric() const;
  long long det() const;  // up to 2x2
  int signature() const;
  std::vector<Rational> solve(const std::vector<Rational>& v) const;
};

struct SurgeryComplex {
  TypeDModule module;  // arrow-level data
  int window = 8;
  long long totalFraming = 0;  // idempotent-1 window shift / class modulus
  FramingMatrix framing;
  std::string note;

  FUComplex expand() const;  // box with the solid-torus module
  Violation validate() const { return module.validate(); }
};

SurgeryComplex knotSurgery(const KnotPresentation& k, Policy p, int window);

// split-link externalization: Leibniz differential on generator pairs
TypeDModule externalTensor(const TypeDModule& a, const TypeDModule& b);

// pairing of a two-boundary module with the gluing type-A module
SurgeryComplex glueComplex(const KnotPresentation& a,
                           const KnotPresentation& b, Policy p, int window);

// cap the given factor with the solid-torus action and drop it; the
// carrier monomial joins the generator label
TypeDModule capFactor(const TypeDModule& d, size_t factor, int window,
                      int shift);

// restrict every kept factor to idempotent 0 after capping the complement
TypeDModule sublinkExtract(const TypeDModule& d,
                           const std::vector<size_t>& keep, int window);

/******** H1 action ********/

struct Endomorphism {
  std::map<std::pair<int, int>, TensorElement> comps;
};

// sum of the arrows whose pattern consumed an s at the given factor
Endomorphism h1Action(const SurgeryComplex& c, size_t factor);

// residue of the chain-map identity d A + A d; empty means chain map
std::map<std::pair<int, int>, TensorElement> chainMapResidue(
    const SurgeryComplex& c, const Endomorphism& a);

// expanded endomorphism as F2[U] columns over c.expand()'s basis
std::vector<std::map<int, UPoly>> expandEndo(const SurgeryComplex& c,
                                             const Endomorphism& a);

// is the endomorphism (columns form) null-homotopic on the complex?
bool isNullHomotopic(const FUComplex& c,
                     const std::vector<std::map<int, UPoly>>& endo);

/******** Absolute gradings ********/

struct GradedComplex {
  FUComplex complex;  // maslov filled in
  Rational correction(long long s, int cubeWeight) const;
  bool degenerate = false;
};

struct DegenerateFraming : std::runtime_error {
  explicit DegenerateFraming(const std::string& w) : std::runtime_error(w) {}
};

// Maslov = internal gr_w + (c1(z_s)^2 - 2*chi - 3*sigma)/4 + l - |eps|,
// with c1(z_s)^2 = v^T L^-1 v and v_i = -2 s_i + (L * ones)_i.
GradedComplex assignGradings(const SurgeryComplex& c);

struct DInvariantReport {
  bool relativeOnly = false;
  Rational calibration;  // added so that the reference case reports 0
  std::map<long long, Rational> dLevels;  // per class: top of a tower
  std::string render() const;
};

DInvariantReport dInvariants(const GradedComplex& g, long long modulus,
                             Rational calibration);

// independent oracle: lens-space correction terms by the standard
// recursion; dLens(p, q, i) for 0 <= i < p
Rational dLens(long long p, long long q, long long i);

}  // namespace ksa
