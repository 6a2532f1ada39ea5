#include "ksa/zoo.hpp"

#include <algorithm>

namespace ksa {

namespace {

TensorElement single(const AlgebraElement& a) {
  return TensorElement::fromAlgebra(a);
}

AlgebraElement sigmaPlusTn(int n, Policy p) {
  AlgebraElement s = AlgebraElement::sigma(p);
  AlgebraElement t(1, 0, p, {DecTerm{Term{0, n}, Dec::Tau}});
  return s + t;
}

AlgebraElement onePlus(Ring r, Term t, Policy p) {
  int l = r == Ring::Idem0 ? 0 : 1;
  return AlgebraElement(l, l, p,
                        {DecTerm{Term{0, 0}, Dec::None}, DecTerm{t, Dec::None}});
}

}  // namespace

TypeDModule makeDn(int n, Policy p) {
  TypeDModule m(1, p);
  m.name = "D" + std::to_string(n);
  m.framingLabel = std::to_string(n);
  Generator x0{"x0", {0}, Rational(0), std::vector<Rational>{Rational(0)}};
  Generator x1{"x1", {1}, Rational(0), std::vector<Rational>{Rational(0)}};
  m.addGenerator(x0);
  m.addGenerator(x1);
  m.addArrow("x0", "x1", single(sigmaPlusTn(n, p)));
  return m;
}

TypeDModule makeDInfty(Policy p) {
  TypeDModule m(1, p);
  m.name = "Dinf";
  for (const char* n : {"x0+", "x0-", "y0+", "y0-"})
    m.addGenerator(Generator{n, {0}, std::nullopt, std::nullopt});
  for (const char* n : {"z1+", "z1-"})
    m.addGenerator(Generator{n, {1}, std::nullopt, std::nullopt});
  m.addArrow("x0+", "x0-", single(onePlus(Ring::Idem0, Term{1, 0}, p)));
  m.addArrow("y0+", "y0-", single(onePlus(Ring::Idem0, Term{0, 1}, p)));
  m.addArrow("z1+", "z1-", single(onePlus(Ring::Idem1, Term{0, 1}, p)));
  AlgebraElement sigma = AlgebraElement::sigma(p);
  AlgebraElement tau = AlgebraElement::tau(p);
  AlgebraElement tInvTau(1, 0, p, {DecTerm{Term{0, -1}, Dec::Tau}});
  m.addArrow("x0+", "z1+", single(tInvTau));
  m.addArrow("x0-", "z1-", single(tau));
  m.addArrow("y0+", "z1+", single(sigma));
  m.addArrow("y0-", "z1-", single(sigma));
  return m;
}

TypeDModule makeDInftyTwisted(int mTwist, Policy p) {
  if (mTwist < 1) throw std::invalid_argument("twisting parameter must be >= 1");
  TypeDModule m(1, p);
  m.name = "Dinf/Z" + std::to_string(mTwist);
  m.addGenerator(Generator{"z1+", {1}, std::nullopt, std::nullopt});
  m.addGenerator(Generator{"z1-", {1}, std::nullopt, std::nullopt});
  m.addArrow("z1+", "z1-", single(onePlus(Ring::Idem1, Term{0, mTwist}, p)));
  return m;
}

/******** type-A actions ********/

namespace {

// level-0 tracks of the two corner rings inside the window
std::vector<BasisElt> cornerTracks(int window, int shift) {
  std::vector<BasisElt> out;
  for (int a = -window; a <= window; ++a) {
    Term t = a >= 0 ? Term{0, a} : Term{-a, 0};
    out.push_back(BasisElt{0, 0, Dec::None, t});
  }
  int lo = -window + shift, hi = window;
  for (int t = lo; t <= hi; ++t)
    out.push_back(BasisElt{1, 1, Dec::None, Term{0, t}});
  return out;
}

std::vector<BasisElt> mulAction(const DecTerm& a, uint8_t l, uint8_t r,
                                const BasisElt& v) {
  // a in corner (l, r) acting on an undecorated carrier element of v.idem
  if (v.dec != Dec::None) return {};
  if (r != v.idem) return {};
  if (a.dec == Dec::None) {
    if (l != r) return {};
    return {BasisElt{l, l, Dec::None,
                     Term{a.mono.a + v.mono.a, a.mono.b + v.mono.b}}};
  }
  // s or t acting by the ring maps
  Term img = a.dec == Dec::Sigma ? phiSigmaTerm(v.mono) : phiTauTerm(v.mono);
  return {BasisElt{1, 1, Dec::None, Term{a.mono.a + img.a, a.mono.b + img.b}}};
}

}  // namespace

TypeAAction makeD0TypeA(Policy p) {
  TypeAAction a;
  a.arity = 1;
  a.policy = p;
  a.name = "D0";
  a.enumerate = [](int window, int shift) { return cornerTracks(window, shift); };
  a.m2 = [](const TensorTerm& t, const std::vector<uint8_t>& l,
            const std::vector<uint8_t>& r, const BasisElt& v, int, int) {
    return mulAction(t.factors[0], l[0], r[0], v);
  };
  a.m3 = nullptr;
  return a;
}

TypeAAction makeMerge(Policy p) {
  TypeAAction a;
  a.arity = 2;
  a.policy = p;
  a.name = "merge";
  a.enumerate = [](int window, int shift) { return cornerTracks(window, shift); };
  a.m2 = [](const TensorTerm& t, const std::vector<uint8_t>& l,
            const std::vector<uint8_t>& r, const BasisElt& v, int, int)
      -> std::vector<BasisElt> {
    const DecTerm &f0 = t.factors[0], &f1 = t.factors[1];
    if (f0.dec != Dec::None || f1.dec != Dec::None || v.dec != Dec::None)
      return {};
    if (l[0] != l[1] || r[0] != r[1] || r[0] != v.idem || l[0] != r[0])
      return {};
    return {BasisElt{v.idem, v.idem, Dec::None,
                     Term{f0.mono.a + f1.mono.a + v.mono.a,
                          f0.mono.b + f1.mono.b + v.mono.b}}};
  };
  a.m3 = nullptr;
  return a;
}

TypeAAction makeISup(Policy p) {
  TypeAAction a = makeMerge(p);
  a.name = "Isup";
  a.m3 = [](const TensorTerm& t2, const std::vector<uint8_t>& l2,
            const std::vector<uint8_t>& r2, const TensorTerm& t1,
            const std::vector<uint8_t>&, const std::vector<uint8_t>&,
            const BasisElt& v, int, int) -> std::vector<BasisElt> {
    // fires on (s|1, 1|s, x) and (t|1, 1|t, x); the opposite order and
    // mixed decorations vanish
    const DecTerm &x2 = t2.factors[0], &y2 = t2.factors[1];
    const DecTerm &x1 = t1.factors[0], &y1 = t1.factors[1];
    if (v.dec != Dec::None || v.idem != 0) return {};
    if (x2.dec == Dec::None || y2.dec != Dec::None || x1.dec != Dec::None ||
        y1.dec == Dec::None || x2.dec != y1.dec)
      return {};
    if (l2[1] != 1 || r2[1] != 1) return {};  // second factor in (1,1)
    // x1 is undecorated idempotent-0; push it through the ring map
    Term imgX1 =
        x2.dec == Dec::Sigma ? phiSigmaTerm(x1.mono) : phiTauTerm(x1.mono);
    Term imgV = x2.dec == Dec::Sigma ? phiSigmaTerm(v.mono) : phiTauTerm(v.mono);
    Term out{x2.mono.a + y2.mono.a + imgX1.a + y1.mono.a + imgV.a,
             x2.mono.b + y2.mono.b + imgX1.b + y1.mono.b + imgV.b};
    return {BasisElt{1, 1, Dec::None, out}};
  };
  return a;
}

TypeAAction identityTypeA(Policy p) {
  TypeAAction a;
  a.arity = 1;
  a.policy = p;
  a.name = "identity";
  a.enumerate = [](int window, int shift) {
    std::vector<BasisElt> out = cornerTracks(window, shift);
    for (int t = -window; t <= window; ++t) {
      out.push_back(BasisElt{1, 0, Dec::Sigma, Term{0, t}});
      out.push_back(BasisElt{1, 0, Dec::Tau, Term{0, t}});
    }
    return out;
  };
  a.m2 = [p](const TensorTerm& t, const std::vector<uint8_t>& l,
             const std::vector<uint8_t>& r, const BasisElt& v, int, int)
      -> std::vector<BasisElt> {
    AlgebraElement left(l[0], r[0], p, {t.factors[0]});
    AlgebraElement right(v.idem, v.ridem, p, {DecTerm{v.mono, v.dec}});
    AlgebraElement prod = algMul(left, right);
    std::vector<BasisElt> out;
    for (const DecTerm& d : prod.terms())
      out.push_back(BasisElt{uint8_t(prod.leftIdem()),
                             uint8_t(prod.rightIdem()), d.dec, d.mono});
    return out;
  };
  a.m3 = nullptr;
  return a;
}

TypeDModule boxPhi(const TypeDModule& d, const PhiBimodule& phi) {
  if (phi.m < 1) throw std::invalid_argument("phi bimodule needs m >= 1");
  TypeDModule out(d.arity(), d.policy());
  out.name = d.name + "*phi(" + std::to_string(phi.n) + "," +
             std::to_string(phi.m) + ")";
  for (size_t i = 0; i < d.genCount(); ++i) out.addGenerator(d.gen(int(i)));
  for (const auto& [k, c] : d.arrows()) {
    std::vector<TensorTerm> mapped;
    for (const TensorTerm& t : c.terms()) {
      TensorTerm m = t;
      for (DecTerm& f : m.factors) {
        f.mono.a *= phi.m;
        f.mono.b *= phi.m;
        if (f.dec == Dec::Tau) f.mono.b += phi.n;
      }
      mapped.push_back(std::move(m));
    }
    out.addArrow(k.first, k.second,
                 TensorElement(c.leftIdem(), c.rightIdem(), d.policy(),
                               std::move(mapped)));
  }
  return out;
}

/******** knot presentations ********/

KnotCheck validateKnot(const KnotPresentation& k) {
  KnotCheck res;
  auto fail = [&](const std::string& msg) {
    res.ok = false;
    if (res.firstViolation.empty()) res.firstViolation = msg;
  };
  if (k.module.arity() != 1) fail("knot module must have arity 1");
  Violation v = k.module.validate();
  if (!v.ok) fail(v.message);

  // every idempotent-0 generator needs Alexander and Maslov data
  for (size_t i = 0; i < k.module.genCount() && res.ok; ++i) {
    const Generator& g = k.module.gen(int(i));
    if (g.idem[0] == 0 && (!g.alex || !g.maslov))
      fail("idempotent-0 generator " + g.name + " lacks gradings");
  }
  if (!res.ok) return res;

  // s-arrows preserve the induced grading, t-arrows shift it by one
  // common constant; undecorated arrows are A-homogeneous of degree 0
  std::optional<Rational> tauShift;
  for (const auto& [key, c] : k.module.arrows()) {
    const Generator& src = k.module.gen(key.first);
    const Generator& dst = k.module.gen(key.second);
    for (const TensorTerm& t : c.terms()) {
      const DecTerm& f = t.factors[0];
      if (f.dec == Dec::None) {
        Ring r = src.idem[0] == 0 ? Ring::Idem0 : Ring::Idem1;
        if (src.idem[0] == 0) {
          Rational shift = Rational(alexander(r, f.mono));
          if ((*dst.alex)[0] + shift != (*src.alex)[0])
            fail("internal arrow " + src.name + "->" + dst.name +
                 " is not Alexander homogeneous");
        }
      } else {
        // A'(dst) + T-exponent must equal A(src) for s, and differ by a
        // uniform constant for t
        Rational total = Rational(f.mono.b) - (*src.alex)[0];
        if (f.dec == Dec::Sigma) {
          if (!(total == Rational(0)))
            fail("s-arrow " + src.name + "->" + dst.name +
                 " does not preserve the Alexander grading");
        } else {
          if (!tauShift)
            tauShift = total;
          else if (!(*tauShift == total))
            fail("t-arrow family is not Alexander homogeneous");
        }
      }
    }
  }
  return res;
}

KnotPresentation makeStaircaseKnot(const StaircaseSpec& spec, Policy p) {
  const std::vector<int>& e = spec.steps;
  if (e.empty() || e.size() % 2 == 0)
    throw std::invalid_argument("step vector must have odd length");
  for (int v : e)
    if (v <= 0) throw std::invalid_argument("steps must be positive");
  size_t twoK = e.size() - 1;
  for (size_t i = 0; i + 1 < twoK; ++i)
    if (e[i] != e[twoK - 1 - i])
      throw std::invalid_argument("arrow exponents must be palindromic");
  if (twoK > 0 && e.back() != e.front())
    throw std::invalid_argument("last step must close the staircase");

  size_t count = twoK + 1;  // generators g1..g(2k+1)
  // gradings along the staircase: A drops by e_i at each stage, gr_w
  // drops by 2e at U-arrows and stays at V-arrows; anchor A symmetric
  // and gr_w(g1) = 0
  std::vector<int> A(count), grw(count);
  int total = 0;
  for (size_t i = 0; i < twoK; ++i) total += e[i];
  if (total % 2 != 0)
    throw std::invalid_argument("staircase is not symmetric");
  A[0] = total / 2;
  grw[0] = 0;
  for (size_t i = 1; i < count; ++i) {
    A[i] = A[i - 1] - e[i - 1];
    bool uArrow = (i % 2 == 1);  // g{2j} -> g{2j-1} carries U^e
    // differential drops gr_w by one; U contributes -2 per power
    grw[i] = uArrow ? grw[i - 1] - 2 * e[i - 1] + 1 : grw[i - 1] - 1;
  }

  KnotPresentation k;
  k.framing = spec.framing;
  k.name = "staircase";
  k.module = TypeDModule(1, p);
  auto g0name = [&](size_t i) { return "g" + std::to_string(i + 1); };
  auto g1name = [&](size_t i) { return "g" + std::to_string(i + 1) + ".1"; };
  for (size_t i = 0; i < count; ++i)
    k.module.addGenerator(Generator{g0name(i),
                                    {0},
                                    Rational(grw[i]),
                                    std::vector<Rational>{Rational(A[i])}});
  for (size_t i = 0; i < count; ++i)
    k.module.addGenerator(Generator{g1name(i),
                                    {1},
                                    Rational(grw[i]),
                                    std::vector<Rational>{Rational(0)}});

  // idempotent-0 differential: d g_{2j} = U^{e} g_{2j-1} + V^{e'} g_{2j+1}
  for (size_t j = 1; j < count; j += 2) {
    AlgebraElement uArr(0, 0, p, {DecTerm{Term{e[j - 1], 0}, Dec::None}});
    AlgebraElement vArr(0, 0, p, {DecTerm{Term{0, e[j]}, Dec::None}});
    k.module.addArrow(g0name(j), g0name(j - 1), single(uArr));
    k.module.addArrow(g0name(j), g0name(j + 1), single(vArr));
  }
  // idempotent-1 differential: substitute U^e -> u^e, V^e -> 1
  for (size_t j = 1; j < count; j += 2) {
    AlgebraElement uArr(1, 1, p, {DecTerm{Term{e[j - 1], 0}, Dec::None}});
    AlgebraElement vArr = AlgebraElement::idem(1, p);
    k.module.addArrow(g1name(j), g1name(j - 1), single(uArr));
    k.module.addArrow(g1name(j), g1name(j + 1), single(vArr));
  }
  // s-arrows x -> x.1 with T^{A(x)}; t-arrows x -> (flip x).1 with
  // T^{framing + A(x)}, the flip reversing the staircase order
  for (size_t i = 0; i < count; ++i) {
    AlgebraElement s(1, 0, p, {DecTerm{Term{0, A[i]}, Dec::Sigma}});
    AlgebraElement t(1, 0, p,
                     {DecTerm{Term{0, spec.framing + A[i]}, Dec::Tau}});
    k.module.addArrow(g0name(i), g1name(i), single(s));
    k.module.addArrow(g0name(i), g1name(count - 1 - i), single(t));
  }

  KnotCheck chk = validateKnot(k);
  if (!chk.ok)
    throw std::runtime_error("staircase construction failed validation: " +
                             chk.firstViolation);
  return k;
}

KnotPresentation unknotPresentation(int framing, Policy p) {
  KnotPresentation k = makeStaircaseKnot(StaircaseSpec{{1}, framing}, p);
  k.name = "unknot";
  return k;
}

KnotPresentation trefoilPresentation(int framing, Policy p) {
  KnotPresentation k = makeStaircaseKnot(StaircaseSpec{{1, 1, 1}, framing}, p);
  k.name = "trefoil";
  return k;
}

}  // namespace ksa
