#include "ksa/serieslab.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ksa {

namespace {

// largest s with U^{s(s-1)/2} below the precision
int sCap(int precision) {
  int s = 1;
  while ((s + 1) * s / 2 < precision) ++s;
  return s;
}

Series build(Ring r, Policy p,
             const std::vector<std::tuple<int, int, int>>& laurents) {
  Series out = Series::zero(r, p);
  for (auto [a, b, u] : laurents) out += Series::laurent(r, p, a, b, u);
  return out;
}

}  // namespace

Series namedSeries(SeriesName n, Policy p) {
  // negative-exponent terms migrate down in U-level, so the builders for
  // beta/delta must look two stages past the plain cap
  int S = sCap(p.precision) + 2;
  std::vector<std::tuple<int, int, int>> t;
  switch (n) {
    case SeriesName::Alpha:
      for (int s = 1; s <= S; ++s) {
        int m = s * (s - 1) / 2;
        if (m >= p.precision) break;
        t.push_back({s, 0, m});
        t.push_back({0, s, m});
      }
      return build(Ring::Idem0, p, t);
    case SeriesName::AlphaPrime:
      return phiSigma(namedSeries(SeriesName::Alpha, p));
    case SeriesName::Beta1:
      for (int s = 1; s <= S; ++s) {
        int m = s * (s - 1) / 2;
        for (int j = -s + 1; j <= s - 1; ++j)
          if (m - std::max(0, -j) < p.precision) t.push_back({0, j, m});
      }
      return build(Ring::Idem0, p, t);
    case SeriesName::BetaM1:
      for (int s = 1; s <= S; ++s) {
        int m = s * (s - 1) / 2;
        for (int j = -s + 1; j <= s - 1; ++j)
          if (m - std::max(0, -j) < p.precision) t.push_back({j, 0, m});
      }
      return build(Ring::Idem0, p, t);
    case SeriesName::Delta1:
      // (V^{1-s}+..+V^{-1}+V+..+V^{s-1})/(1+V) = sum_j V^{-j}(1+..+V^{2j-1})
      for (int s = 2; s <= S; ++s) {
        int m = s * (s - 1) / 2;
        for (int j = 1; j <= s - 1; ++j)
          for (int k = 0; k <= 2 * j - 1; ++k)
            if (m - std::max(0, j - k) < p.precision)
              t.push_back({0, k - j, m});
      }
      return build(Ring::Idem0, p, t);
    case SeriesName::DeltaM1:
      for (int s = 2; s <= S; ++s) {
        int m = s * (s - 1) / 2;
        for (int j = 1; j <= s - 1; ++j)
          for (int k = 0; k <= 2 * j - 1; ++k)
            if (m - std::max(0, j - k) < p.precision)
              t.push_back({k - j, 0, m});
      }
      return build(Ring::Idem0, p, t);
    case SeriesName::Epsilon:
      for (int s = 1; s <= S; ++s) {
        int m = s * (s - 1) / 2;
        if (m >= p.precision) break;
        for (int i = 0; i <= s - 1; ++i)
          for (int j = 0; j <= s - 1; ++j) t.push_back({i, j, m});
      }
      return build(Ring::Idem0, p, t);
    case SeriesName::BetaPrime:
      for (int s = 1; s <= S; ++s) {
        int m = s * (s - 1) / 2;
        if (m >= p.precision) break;
        for (int j = -s + 1; j <= s - 1; ++j) t.push_back({0, j, m});
      }
      return build(Ring::Idem1, p, t);
    case SeriesName::DeltaPrime:
      for (int s = 2; s <= S; ++s) {
        int m = s * (s - 1) / 2;
        if (m >= p.precision) break;
        for (int j = 1; j <= s - 1; ++j)
          for (int k = 0; k <= 2 * j - 1; ++k) t.push_back({0, k - j, m});
      }
      return build(Ring::Idem1, p, t);
    case SeriesName::SumU:
      for (int s = 1; s <= S; ++s) {
        int m = s * (s - 1) / 2;
        if (m >= p.precision) break;
        t.push_back({0, 0, m});
      }
      return build(Ring::Idem0, p, t);
    case SeriesName::SumUIdem1:
      for (int s = 1; s <= S; ++s) {
        int m = s * (s - 1) / 2;
        if (m >= p.precision) break;
        t.push_back({0, 0, m});
      }
      return build(Ring::Idem1, p, t);
    case SeriesName::Kappa: {
      Series rhs = namedSeries(SeriesName::Beta1, p) +
                   namedSeries(SeriesName::BetaM1, p) +
                   namedSeries(SeriesName::SumU, p);
      Series onePlusAlpha = Series::one(Ring::Idem0, p) +
                            namedSeries(SeriesName::Alpha, p);
      DivideResult r = divide(rhs, onePlusAlpha, 2 * p.precision + 2);
      if (!r.ok)
        throw std::runtime_error(
            "kappa does not exist at this precision (first failing level " +
            std::to_string(r.failLevel) + ")");
      return r.quotient;
    }
    case SeriesName::KappaPrime: {
      Series rhs = namedSeries(SeriesName::BetaPrime, p) +
                   namedSeries(SeriesName::SumUIdem1, p);
      Series onePlusAlphaP = Series::one(Ring::Idem1, p) +
                             namedSeries(SeriesName::AlphaPrime, p);
      DivideResult r = divide(rhs, onePlusAlphaP, 2 * p.precision + 2);
      if (!r.ok)
        throw std::runtime_error(
            "kappa' does not exist at this precision (first failing level " +
            std::to_string(r.failLevel) + ")");
      return r.quotient;
    }
  }
  throw std::logic_error("unknown series");
}

std::vector<IdentityVerdict> checkFactorizations(int precision) {
  Policy p = Policy::uadic(precision);
  std::vector<IdentityVerdict> out;
  auto record = [&](const std::string& name, bool pass,
                    const std::string& detail = "") {
    out.push_back(IdentityVerdict{name, pass, detail});
  };
  Series one0 = Series::one(Ring::Idem0, p);
  Series one1 = Series::one(Ring::Idem1, p);
  Series U = Series::monomial(Ring::Idem0, p, Term{1, 0});
  Series V = Series::monomial(Ring::Idem0, p, Term{0, 1});
  Series T = Series::monomial(Ring::Idem1, p, Term{0, 1});
  Series alpha = namedSeries(SeriesName::Alpha, p);
  Series beta1 = namedSeries(SeriesName::Beta1, p);
  Series betaM1 = namedSeries(SeriesName::BetaM1, p);
  Series delta1 = namedSeries(SeriesName::Delta1, p);
  Series deltaM1 = namedSeries(SeriesName::DeltaM1, p);
  Series eps = namedSeries(SeriesName::Epsilon, p);
  Series betaP = namedSeries(SeriesName::BetaPrime, p);
  Series deltaP = namedSeries(SeriesName::DeltaPrime, p);
  Series sumU = namedSeries(SeriesName::SumU, p);
  Series sumU1 = namedSeries(SeriesName::SumUIdem1, p);
  Series alphaP = namedSeries(SeriesName::AlphaPrime, p);

  record("(1) 1+alpha = (1+V) beta1",
         one0 + alpha == mul(one0 + V, beta1));
  record("(2) 1+alpha = (1+U) beta-1",
         one0 + alpha == mul(one0 + U, betaM1));
  bool epsUnit = isUnit(eps);
  Series epsInv;
  std::string epsDetail;
  if (epsUnit) {
    epsInv = invert(eps);
    epsUnit = mul(eps, epsInv).isOne();
  } else {
    epsDetail = "unit criterion failed";
  }
  record("(3) epsilon is a unit", epsUnit, epsDetail);
  record("(4) 1+alpha = (1+U)(1+V) epsilon",
         one0 + alpha == mul(mul(one0 + U, one0 + V), eps));
  record("(5) beta-1 = (1+V) epsilon", betaM1 == mul(one0 + V, eps));
  record("(6) beta1 = (1+U) epsilon", beta1 == mul(one0 + U, eps));
  record("(7) beta1 + sumU = (1+V) delta1",
         beta1 + sumU == mul(one0 + V, delta1));
  record("(8) beta-1 + sumU = (1+U) delta-1",
         betaM1 + sumU == mul(one0 + U, deltaM1));
  {
    bool pass = false;
    std::string detail;
    try {
      Series kappa = namedSeries(SeriesName::Kappa, p);
      pass = mul(kappa, one0 + alpha) == beta1 + betaM1 + sumU &&
             kappa.modU().isOne();
      detail = "kappa mod U = " + kappa.modU().render();
    } catch (const std::exception& e) {
      detail = e.what();
    }
    record("(9) kappa (1+alpha) = beta1 + beta-1 + sumU, kappa = 1 mod U",
           pass, detail);
  }
  record("(10) phiTau(1+alpha) = T^-1 (1+alpha')",
         phiTau(one0 + alpha) ==
             mul(Series::monomial(Ring::Idem1, p, Term{0, -1}),
                 one1 + alphaP));
  record("(11) phiSigma(beta1) = phiTau(beta-1) = beta'",
         phiSigma(beta1) == betaP && phiTau(betaM1) == betaP);
  {
    bool pass = one1 + alphaP == mul(one1 + T, betaP);
    bool unit = isUnit(betaP) && mul(betaP, invert(betaP)).isOne();
    record("(12) 1+alpha' = (1+T) beta', beta' a unit", pass && unit);
  }
  {
    bool passD = mul(deltaP, one1 + T) == betaP + sumU1;
    bool passK = false;
    std::string detail;
    try {
      Series kp = namedSeries(SeriesName::KappaPrime, p);
      passK = mul(kp, one1 + alphaP) == betaP + sumU1;
      detail = "kappa' mod U = " + kp.modU().render();
    } catch (const std::exception& e) {
      detail = e.what();
    }
    record("(13) delta'(1+T) = kappa'(1+alpha') = beta' + sumU", passD && passK,
           detail);
  }
  return out;
}

/******** tiling identities ********/

namespace {

// exact F2 Laurent polynomials in two variables
using Poly2 = std::set<std::pair<int, int>>;

void xorIn(Poly2& a, std::pair<int, int> m) {
  auto it = a.find(m);
  if (it == a.end())
    a.insert(m);
  else
    a.erase(it);
}

Poly2 mulP(const Poly2& a, const Poly2& b) {
  Poly2 out;
  for (auto& x : a)
    for (auto& y : b) xorIn(out, {x.first + y.first, x.second + y.second});
  return out;
}

Poly2 range(bool uVar, int lo, int hi) {  // powers lo..hi of one variable
  Poly2 out;
  for (int k = lo; k <= hi; ++k)
    out.insert(uVar ? std::make_pair(k, 0) : std::make_pair(0, k));
  return out;
}

Poly2 printedBPlus(int s) {
  // (1+..+U^s) + (V+..+V^s) + U^s(1+..+V^{s-1}) + V^s(1+..+U^s)
  Poly2 out = range(true, 0, s);
  for (auto& m : range(false, 1, s)) xorIn(out, m);
  for (auto& m : mulP({{s, 0}}, range(false, 0, s - 1))) xorIn(out, m);
  for (auto& m : mulP({{0, s}}, range(true, 0, s))) xorIn(out, m);
  return out;
}

Poly2 printedBMinus(int s) {
  Poly2 out = range(true, 1, s);
  for (auto& m : range(false, 1, s)) xorIn(out, m);
  for (auto& m : mulP({{s, 0}}, range(false, 0, s - 1))) xorIn(out, m);
  for (auto& m : mulP({{0, s}}, range(true, 0, s - 1))) xorIn(out, m);
  return out;
}

Poly2 tileBoundary(int s, bool removeCorners) {
  // boundary tiles of [0, s+1]^2: exponents 0..s with i or j in {0, s}
  Poly2 out;
  for (int i = 0; i <= s; ++i)
    for (int j = 0; j <= s; ++j)
      if (i == 0 || j == 0 || i == s || j == s) out.insert({i, j});
  if (removeCorners) {
    xorIn(out, {0, 0});
    xorIn(out, {s, s});
  }
  return out;
}

Poly2 paritySum(int s, int parity) {
  Poly2 out;
  for (int i = 0; i <= s - 1; ++i)
    for (int j = 0; j <= s - 1; ++j)
      if (((i + j) & 1) == parity) out.insert({i, j});
  return out;
}

Poly2 onePlusBoth() { return Poly2{{0, 0}, {1, 0}, {0, 1}, {1, 1}}; }

Poly2 dCoeff(int s) {
  // 1 + (1+U^s)(1+..+V^{s-1}) + (1+..+U^{s-1})(1+V^s)
  Poly2 out{{0, 0}};
  Poly2 a = mulP(Poly2{{0, 0}, {s, 0}}, range(false, 0, s - 1));
  Poly2 b = mulP(range(true, 0, s - 1), Poly2{{0, 0}, {0, s}});
  for (auto& m : a) xorIn(out, m);
  for (auto& m : b) xorIn(out, m);
  return out;
}

Poly2 cCoeff(int s) {
  // 1 + sum_{|j|<s} V^j + sum_{|j|<s} U^j as Laurent monomials
  Poly2 out{{0, 0}};
  for (int j = -s + 1; j <= s - 1; ++j) xorIn(out, {0, j});
  for (int j = -s + 1; j <= s - 1; ++j) xorIn(out, {j, 0});
  return out;
}

}  // namespace

TileReport tileIdentityCheck(int sMax, int precision) {
  TileReport rep;
  for (int s = 1; s <= sMax; ++s) {
    bool odd = s & 1;
    Poly2 prod = mulP(onePlusBoth(), paritySum(s, odd ? 0 : 1));
    std::string suffix = " s=" + std::to_string(s);
    if (odd) {
      rep.rows.push_back(IdentityVerdict{
          "Bs-factor-1[printed]" + suffix, printedBPlus(s) == prod, ""});
      rep.rows.push_back(IdentityVerdict{
          "Bs-factor-1[tiles]" + suffix, tileBoundary(s, false) == prod, ""});
    } else {
      rep.rows.push_back(IdentityVerdict{
          "Bs-factor-2[printed]" + suffix, printedBMinus(s) == prod, ""});
      rep.rows.push_back(IdentityVerdict{
          "Bs-factor-2[tiles]" + suffix, tileBoundary(s, true) == prod, ""});
    }
    rep.rows.push_back(
        IdentityVerdict{"b1b1sum[per-s]" + suffix, cCoeff(s) == dCoeff(s), ""});
    rep.rows.push_back(IdentityVerdict{
        "b1b1-sum[per-s]" + suffix,
        dCoeff(s) == (odd ? tileBoundary(s, false) : tileBoundary(s, true)),
        ""});
  }

  // series-level checks at a working precision
  Policy p = Policy::uadic(precision);
  Series lhs = namedSeries(SeriesName::Beta1, p) +
               namedSeries(SeriesName::BetaM1, p) +
               namedSeries(SeriesName::SumU, p);
  Series rhs = Series::zero(Ring::Idem0, p);
  for (int s = 1; s * (s - 1) / 2 < precision; ++s) {
    int m = s * (s - 1) / 2;
    for (auto& [i, j] : dCoeff(s)) rhs += Series::laurent(Ring::Idem0, p, i, j, m);
  }
  rep.seriesLevelPass = lhs == rhs;
  Series expected(Ring::Idem0, p,
                  {Term{0, 0}, Term{1, 0}, Term{0, 1}});
  rep.modUPass = lhs.modU() == expected;
  return rep;
}

/******** the exact triangle ********/

namespace {

Series polyQuotient1PlusT(int n, Policy p) {
  // (1 + T^{n+1}) / (1 + T), exact
  Series num = Series::one(Ring::Idem1, p) +
               Series::monomial(Ring::Idem1, p, Term{0, n + 1});
  Series den = Series::one(Ring::Idem1, p) +
               Series::monomial(Ring::Idem1, p, Term{0, 1});
  DivideResult r = divide(num, den, std::abs(n) + 2);
  if (!r.ok) throw std::logic_error("1+T^{n+1} not divisible by 1+T");
  return r.quotient;
}

TensorElement fromSeries1(const Series& s, int l, int r, Dec d) {
  return TensorElement::fromAlgebra(AlgebraElement::fromSeries(s, l, r, d));
}

}  // namespace

TriangleReport verifyTriangle(int framing, int precision) {
  int n = framing;
  Policy p = Policy::uadic(precision);
  TriangleReport rep;
  rep.framing = n;
  rep.precision = precision;
  auto record = [&](const std::string& name, bool pass,
                    const std::string& detail = "") {
    rep.rows.push_back(IdentityVerdict{name, pass, detail});
  };

  Series alpha = namedSeries(SeriesName::Alpha, p);
  Series alphaP = namedSeries(SeriesName::AlphaPrime, p);
  Series one0 = Series::one(Ring::Idem0, p);
  Series one1 = Series::one(Ring::Idem1, p);
  Series sumU = namedSeries(SeriesName::SumU, p);
  Series sumU1 = namedSeries(SeriesName::SumUIdem1, p);
  Series beta1 = namedSeries(SeriesName::Beta1, p);
  Series betaM1 = namedSeries(SeriesName::BetaM1, p);
  Series betaP = namedSeries(SeriesName::BetaPrime, p);
  Series eps = namedSeries(SeriesName::Epsilon, p);
  Series delta1 = namedSeries(SeriesName::Delta1, p);
  Series deltaM1 = namedSeries(SeriesName::DeltaM1, p);
  Series deltaP = namedSeries(SeriesName::DeltaPrime, p);
  Series kappa, kappaP;
  try {
    kappa = namedSeries(SeriesName::Kappa, p);
    kappaP = namedSeries(SeriesName::KappaPrime, p);
  } catch (const std::exception& e) {
    record("kappa solvers", false, e.what());
    return rep;
  }

  // modules: Dn with generators X0, X1; Dn+1 with Y0, Y1; Dinf
  TypeDModule Dn(1, p), Dn1(1, p);
  for (auto* mod : {&Dn, &Dn1}) {
    std::string base = mod == &Dn ? "X" : "Y";
    mod->addGenerator(Generator{base + "0", {0}, std::nullopt, std::nullopt});
    mod->addGenerator(Generator{base + "1", {1}, std::nullopt, std::nullopt});
  }
  auto sigmaTn = [&](int k) {
    AlgebraElement s = AlgebraElement::sigma(p);
    AlgebraElement t(1, 0, p, {DecTerm{Term{0, k}, Dec::Tau}});
    return TensorElement::fromAlgebra(s + t);
  };
  Dn.addArrow("X0", "X1", sigmaTn(n));
  Dn1.addArrow("Y0", "Y1", sigmaTn(n + 1));
  TypeDModule Dinf = makeDInfty(p);

  DMorphism f1;
  f1.source = &Dn;
  f1.target = &Dn1;
  f1.add("X0", "Y0", fromSeries1(one0 + alpha, 0, 0, Dec::None));
  f1.add("X1", "Y1", fromSeries1(one1 + alphaP, 1, 1, Dec::None));
  record("d(f1) = 0", morphismDifferential(f1).isZero());

  ConeLayout cl = coneLayout(f1);
  TypeDModule& C = cl.module;

  // F1: Cone(f1) -> Dinf
  Series frac = polyQuotient1PlusT(n, p);  // (1+T^{n+1})/(1+T)
  Series invUTm1 = invert(one1 + Series::monomial(Ring::Idem1, p, Term{1, -1}));
  Series invUT = invert(one1 + Series::monomial(Ring::Idem1, p, Term{1, 1}));
  Series Tn = Series::monomial(Ring::Idem1, p, Term{0, n});

  DMorphism F1;
  F1.source = &C;
  F1.target = &Dinf;
  F1.add("X0", "x0+", fromSeries1(betaM1, 0, 0, Dec::None));
  F1.add("X0", "y0+", fromSeries1(beta1, 0, 0, Dec::None));
  F1.add("Y0", "x0-", fromSeries1(one0, 0, 0, Dec::None));
  F1.add("Y0", "y0-", fromSeries1(one0, 0, 0, Dec::None));
  F1.add("Y0", "z1+", fromSeries1(frac, 1, 0, Dec::Tau));
  F1.add("X1", "z1+", fromSeries1(betaP, 1, 1, Dec::None));
  F1.add("Y1", "z1-", fromSeries1(one1, 1, 1, Dec::None));
  record("d(F1) = 0", morphismDifferential(F1).isZero());

  DMorphism G1;
  G1.source = &Dinf;
  G1.target = &C;
  G1.add("x0-", "Y0", fromSeries1(betaM1, 0, 0, Dec::None));
  G1.add("x0-", "X1",
         fromSeries1(invUTm1, 1, 0, Dec::Sigma) +
             fromSeries1(frac, 1, 0, Dec::Tau));
  G1.add("x0+", "X0", fromSeries1(one0, 0, 0, Dec::None));
  G1.add("y0-", "Y0", fromSeries1(beta1, 0, 0, Dec::None));
  G1.add("y0-", "X1", fromSeries1(mul(Tn, invUT), 1, 0, Dec::Tau));
  G1.add("y0+", "X0", fromSeries1(one0, 0, 0, Dec::None));
  G1.add("z1-", "Y1", fromSeries1(betaP, 1, 1, Dec::None));
  G1.add("z1+", "X1", fromSeries1(one1, 1, 1, Dec::None));
  record("d(G1) = 0", morphismDifferential(G1).isZero());

  // G1 F1 + sumU id = d(h1), with h1 = kappa on Y0, kappa' on Y1
  DMorphism h1;
  h1.source = &C;
  h1.target = &C;
  h1.add("Y0", "X0", fromSeries1(kappa, 0, 0, Dec::None));
  h1.add("Y1", "X1", fromSeries1(kappaP, 1, 1, Dec::None));
  DMorphism unitIdC = DMorphism::scalar(C, sumU, sumU1);
  DMorphism res1 = homotopyResidue(F1, G1, h1, unitIdC);
  record("G1 F1 + unit id = d(h1)", res1.isZero());

  DMorphism j1;
  j1.source = &Dinf;
  j1.target = &Dinf;
  j1.add("x0-", "x0+", fromSeries1(deltaM1, 0, 0, Dec::None));
  j1.add("x0-", "y0+", fromSeries1(eps, 0, 0, Dec::None));
  j1.add("y0-", "y0+", fromSeries1(delta1, 0, 0, Dec::None));
  j1.add("y0-", "x0+", fromSeries1(eps, 0, 0, Dec::None));
  j1.add("z1-", "z1+", fromSeries1(deltaP, 1, 1, Dec::None));
  DMorphism unitIdD = DMorphism::scalar(Dinf, sumU, sumU1);
  DMorphism res2 = homotopyResidue(G1, F1, j1, unitIdD);
  record("F1 G1 + unit id = d(j1)", res2.isZero());

  record("unit has the form 1 + U r",
         sumU.modU().isOne() && sumU1.modU().isOne());
  record("cone validates", C.validate().ok);
  record("Dinf validates", Dinf.validate().ok);
  record("kappa, kappa' re-multiply",
         mul(kappa, one0 + alpha) == beta1 + betaM1 + sumU &&
             mul(kappaP, one1 + alphaP) == betaP + sumU1);
  return rep;
}

bool modulesIsomorphic(const TypeDModule& a, const TypeDModule& b) {
  if (a.genCount() != b.genCount() || a.arity() != b.arity()) return false;
  size_t n = a.genCount();
  if (n > 6) throw std::invalid_argument("isomorphism search is for small models");
  std::vector<int> perm(n);
  for (size_t i = 0; i < n; ++i) perm[i] = int(i);
  std::sort(perm.begin(), perm.end());
  do {
    bool idemOk = true;
    for (size_t i = 0; i < n && idemOk; ++i)
      idemOk = a.gen(int(i)).idem == b.gen(perm[i]).idem;
    if (!idemOk) continue;
    // solve for unit coefficients u_i with
    //   u_dst * c_a(src,dst) = c_b(perm src, perm dst) * u_src
    // propagate from u_0 = 1 along arrows, then verify everything
    std::vector<Series> u(n);
    std::vector<char> known(n, 0);
    for (size_t root = 0; root < n; ++root) {
      if (known[root]) continue;
      int idem = a.gen(int(root)).idem[0];
      u[root] = Series::one(idem == 0 ? Ring::Idem0 : Ring::Idem1, a.policy());
      known[root] = 1;
      bool progress = true;
      while (progress) {
        progress = false;
        for (const auto& [k, ca] : a.arrows()) {
          auto [s, d] = k;
          TensorElement cb = b.arrow(perm[s], perm[d]);
          if (cb.isZero()) continue;
          // only undecorated single-corner coefficients are handled here
          if (known[s] && !known[d]) {
            // u_d = c_b u_s c_a^{-1} needs division; try both series forms
            try {
              Series sa = ca.asAlgebra().asSeries();
              Series sb = cb.asAlgebra().asSeries();
              DivideResult q = divide(mul(sb, u[s]), sa,
                                      2 * a.policy().precision + 2);
              if (q.ok) {
                u[d] = q.quotient;
                known[d] = 1;
                progress = true;
              }
            } catch (const std::exception&) {
            }
          }
        }
      }
    }
    bool all = true;
    for (size_t i = 0; i < n; ++i) all &= known[i] && isUnit(u[i]);
    if (!all) continue;
    // verify the intertwining on every arrow pair
    bool ok = true;
    for (size_t s = 0; s < n && ok; ++s)
      for (size_t d = 0; d < n && ok; ++d) {
        TensorElement ca = a.arrow(int(s), int(d));
        TensorElement cb = b.arrow(perm[s], perm[d]);
        if (ca.isZero() && cb.isZero()) continue;
        if (ca.isZero() != cb.isZero()) {
          ok = false;
          break;
        }
        try {
          Series sa = ca.asAlgebra().asSeries();
          Series sb = cb.asAlgebra().asSeries();
          ok = mul(u[d], sa) == mul(sb, u[s]);
        } catch (const std::exception&) {
          // decorated coefficients: conjugation must fix them verbatim
          ok = ca == cb && u[s].isOne() && u[d].isOne();
        }
      }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

bool triangleChiralCrossCheck(int framing, int window, int precision,
                              std::string* detail) {
  // the cone is built in the U-adic truncation (where f1 is a cycle) and
  // then re-tagged into the chiral one before reduction
  Policy p = Policy::uadic(precision);
  Policy pc = Policy::chiral(window, precision);
  Series alpha = namedSeries(SeriesName::Alpha, p);
  Series alphaP = namedSeries(SeriesName::AlphaPrime, p);
  Series one0 = Series::one(Ring::Idem0, p);
  Series one1 = Series::one(Ring::Idem1, p);

  TypeDModule Dn(1, p), Dn1(1, p);
  Dn.addGenerator(Generator{"X0", {0}, std::nullopt, std::nullopt});
  Dn.addGenerator(Generator{"X1", {1}, std::nullopt, std::nullopt});
  Dn1.addGenerator(Generator{"Y0", {0}, std::nullopt, std::nullopt});
  Dn1.addGenerator(Generator{"Y1", {1}, std::nullopt, std::nullopt});
  auto sigmaTn = [&](int k) {
    AlgebraElement s = AlgebraElement::sigma(p);
    AlgebraElement t(1, 0, p, {DecTerm{Term{0, k}, Dec::Tau}});
    return TensorElement::fromAlgebra(s + t);
  };
  Dn.addArrow("X0", "X1", sigmaTn(framing));
  Dn1.addArrow("Y0", "Y1", sigmaTn(framing + 1));

  DMorphism f1;
  f1.source = &Dn;
  f1.target = &Dn1;
  f1.add("X0", "Y0", fromSeries1(one0 + alpha, 0, 0, Dec::None));
  f1.add("X1", "Y1", fromSeries1(one1 + alphaP, 1, 1, Dec::None));
  if (!morphismDifferential(f1).isZero()) {
    if (detail) *detail = "f1 is not a cycle at this truncation";
    return false;
  }
  TypeDModule C = cone(f1).withPolicy(pc);
  ReduceResult rc = reduce(C);
  ReduceResult ri = reduce(makeDInfty(pc));
  if (!rc.verified || !ri.verified) {
    if (detail) *detail = "reduction failed post-verification";
    return false;
  }
  bool iso = modulesIsomorphic(rc.module, ri.module);
  if (detail) {
    std::ostringstream os;
    os << "reduced cone has " << rc.module.genCount()
       << " generators, reduced model " << ri.module.genCount()
       << (iso ? "; isomorphic" : "; NOT isomorphic");
    *detail = os.str();
  }
  return iso;
}

}  // namespace ksa
