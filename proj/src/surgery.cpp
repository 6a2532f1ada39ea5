#include "ksa/surgery.hpp"

#include <algorithm>
#include <sstream>

namespace ksa {

/******** framing matrices ********/

FramingMatrix FramingMatrix::diag(const std::vector<long long>& d) {
  FramingMatrix f;
  f.m.assign(d.size(), std::vector<long long>(d.size(), 0));
  for (size_t i = 0; i < d.size(); ++i) f.m[i][i] = d[i];
  return f;
}

bool FramingMatrix::symmetric() const {
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m.size(); ++j)
      if (m[i][j] != m[j][i]) return false;
  return true;
}

long long FramingMatrix::det() const {
  size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  // rational elimination for larger sizes
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) a[i][j] = Rational(m[i][j]);
  Rational det(1);
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && a[piv][c] == Rational(0)) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = det * Rational(-1);
    }
    det = det * a[c][c];
    for (size_t r = c + 1; r < n; ++r) {
      Rational f = a[r][c] / a[c][c];
      for (size_t j = c; j < n; ++j) a[r][j] = a[r][j] - f * a[c][j];
    }
  }
  if (det.den != 1) throw std::logic_error("integer determinant expected");
  return det.num;
}

int FramingMatrix::signature() const {
  // congruence diagonalization over the rationals
  size_t n = m.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) a[i][j] = Rational(m[i][j]);
  int sig = 0;
  for (size_t c = 0; c < n; ++c) {
    if (a[c][c] == Rational(0)) {
      size_t k = c + 1;
      while (k < n && a[c][k] == Rational(0) && a[k][k] == Rational(0)) ++k;
      if (k == n) continue;  // zero block: degenerate direction
      if (!(a[k][k] == Rational(0))) {
        std::swap(a[c], a[k]);
        for (size_t r = 0; r < n; ++r) std::swap(a[r][c], a[r][k]);
      } else {
        // a[c][k] != 0: add row/col k into c to create a pivot
        for (size_t j = 0; j < n; ++j) a[c][j] = a[c][j] + a[k][j];
        for (size_t r = 0; r < n; ++r) a[r][c] = a[r][c] + a[r][k];
      }
    }
    if (a[c][c] == Rational(0)) continue;
    sig += a[c][c] > Rational(0) ? 1 : -1;
    for (size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == Rational(0)) continue;
      Rational f = a[r][c] / a[c][c];
      for (size_t j = 0; j < n; ++j) a[r][j] = a[r][j] - f * a[c][j];
      for (size_t j = 0; j < n; ++j) a[j][r] = a[j][r] - f * a[j][c];
    }
  }
  return sig;
}

std::vector<Rational> FramingMatrix::solve(
    const std::vector<Rational>& v) const {
  size_t n = m.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) a[i][j] = Rational(m[i][j]);
    a[i][n] = v[i];
  }
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && a[piv][c] == Rational(0)) ++piv;
    if (piv == n) throw DegenerateFraming("singular framing matrix");
    std::swap(a[piv], a[c]);
    for (size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == Rational(0)) continue;
      Rational f = a[r][c] / a[c][c];
      for (size_t j = c; j <= n; ++j) a[r][j] = a[r][j] - f * a[c][j];
    }
  }
  std::vector<Rational> x(n);
  for (size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return x;
}

/******** assembly ********/

SurgeryComplex knotSurgery(const KnotPresentation& k, Policy p, int window) {
  KnotCheck chk = validateKnot(k);
  if (!chk.ok)
    throw std::runtime_error("knot fails validation: " + chk.firstViolation);
  SurgeryComplex c;
  c.module = k.module.withPolicy(p);
  c.window = window;
  c.totalFraming = k.framing;
  c.framing = FramingMatrix::diag({k.framing});
  c.note = k.name + " framing " + std::to_string(k.framing);
  return c;
}

FUComplex SurgeryComplex::expand() const {
  if (module.arity() == 1)
    return expandBox(module, makeD0TypeA(module.policy()), window,
                     int(totalFraming));
  if (module.arity() == 2)
    return expandBox(module, makeISup(module.policy()), window,
                     int(totalFraming));
  throw std::invalid_argument("expansion only supports one or two factors");
}

TypeDModule externalTensor(const TypeDModule& a, const TypeDModule& b) {
  if (!(a.policy() == b.policy()))
    throw RingMismatch("external tensor: policies differ");
  TypeDModule out(a.arity() + b.arity(), a.policy());
  out.name = a.name + "|" + b.name;
  for (size_t i = 0; i < a.genCount(); ++i)
    for (size_t j = 0; j < b.genCount(); ++j) {
      const Generator &ga = a.gen(int(i)), &gb = b.gen(int(j));
      Generator g;
      g.name = ga.name + "|" + gb.name;
      g.idem = ga.idem;
      g.idem.insert(g.idem.end(), gb.idem.begin(), gb.idem.end());
      if (ga.maslov && gb.maslov) g.maslov = *ga.maslov + *gb.maslov;
      if (ga.alex && gb.alex) {
        g.alex = *ga.alex;
        g.alex->insert(g.alex->end(), gb.alex->begin(), gb.alex->end());
      }
      out.addGenerator(g);
    }
  auto pairIndex = [&](size_t i, size_t j) {
    return int(i * b.genCount() + j);
  };
  auto pad = [&](const TensorElement& c, const std::vector<uint8_t>& other,
                 bool cFirst) {
    std::vector<TensorTerm> terms;
    DecTerm unit{Term{0, 0}, Dec::None};
    for (const TensorTerm& t : c.terms()) {
      TensorTerm e;
      if (cFirst) {
        e.factors = t.factors;
        e.factors.insert(e.factors.end(), other.size(), unit);
      } else {
        e.factors.assign(other.size(), unit);
        e.factors.insert(e.factors.end(), t.factors.begin(), t.factors.end());
      }
      terms.push_back(std::move(e));
    }
    std::vector<uint8_t> l, r;
    if (cFirst) {
      l = c.leftIdem();
      l.insert(l.end(), other.begin(), other.end());
      r = c.rightIdem();
      r.insert(r.end(), other.begin(), other.end());
    } else {
      l = other;
      l.insert(l.end(), c.leftIdem().begin(), c.leftIdem().end());
      r = other;
      r.insert(r.end(), c.rightIdem().begin(), c.rightIdem().end());
    }
    return TensorElement(l, r, c.policy(), std::move(terms));
  };
  for (const auto& [k, c] : a.arrows())
    for (size_t j = 0; j < b.genCount(); ++j)
      out.addArrow(pairIndex(k.first, j), pairIndex(k.second, j),
                   pad(c, b.gen(int(j)).idem, true));
  for (const auto& [k, c] : b.arrows())
    for (size_t i = 0; i < a.genCount(); ++i)
      out.addArrow(pairIndex(i, k.first), pairIndex(i, k.second),
                   pad(c, a.gen(int(i)).idem, false));
  return out;
}

SurgeryComplex glueComplex(const KnotPresentation& a,
                           const KnotPresentation& b, Policy p, int window) {
  SurgeryComplex c;
  c.module = externalTensor(a.module.withPolicy(p), b.module.withPolicy(p));
  c.window = window;
  c.totalFraming = a.framing + b.framing;
  c.framing = FramingMatrix::diag({a.framing + b.framing});
  c.note = a.name + ":" + std::to_string(a.framing) + " glued to " + b.name +
           ":" + std::to_string(b.framing);
  return c;
}

TypeDModule capFactor(const TypeDModule& d, size_t factor, int window,
                      int shift) {
  if (factor >= size_t(d.arity()))
    throw std::invalid_argument("capFactor: no such factor");
  Policy p = d.policy();
  TypeDModule out(d.arity() - 1, p);
  out.name = d.name + " capped@" + std::to_string(factor);

  // total Alexander grading at the capped factor cuts the carrier window
  auto factorA = [&](int g) {
    const Generator& gen = d.gen(g);
    if (!gen.alex) return 0ll;
    const Rational& r = (*gen.alex)[factor];
    if (r.den != 1)
      throw std::invalid_argument("windowing needs integral gradings");
    return r.num;
  };
  long long slack = 0;
  for (size_t g = 0; g < d.genCount(); ++g)
    slack = std::max(slack, std::llabs(factorA(int(g))));
  int reach = window + int(slack) + std::abs(shift);
  long long lo = -window + shift, hi = window;

  std::vector<BasisElt> carrier;
  for (int a = -reach; a <= reach; ++a)
    for (int k = 0; k < p.precision; ++k) {
      Term t = a >= 0 ? Term{k, k + a} : Term{k - a, k};
      carrier.push_back(BasisElt{0, 0, Dec::None, t});
    }
  for (int t = -reach; t <= reach; ++t)
    for (int k = 0; k < p.precision; ++k)
      carrier.push_back(BasisElt{1, 1, Dec::None, Term{k, t}});

  std::map<std::pair<int, BasisElt>, int> index;
  for (size_t g = 0; g < d.genCount(); ++g) {
    const Generator& gen = d.gen(int(g));
    long long base = factorA(int(g));
    for (const BasisElt& v : carrier) {
      if (v.idem != gen.idem[factor]) continue;
      bool m0 = v.idem == 0;
      long long total =
          base + alexander(m0 ? Ring::Idem0 : Ring::Idem1, v.mono);
      if (m0 ? (total < -window || total > window)
             : (total < lo || total > hi))
        continue;
      Generator ng;
      ng.name = gen.name + "|" +
                renderTerm(m0 ? Ring::Idem0 : Ring::Idem1, v.mono);
      for (size_t i = 0; i < gen.idem.size(); ++i)
        if (i != factor) ng.idem.push_back(gen.idem[i]);
      // total-A bookkeeping: fold the capped grading into the first slot
      if (gen.alex) {
        ng.alex = std::vector<Rational>();
        for (size_t i = 0; i < gen.alex->size(); ++i)
          if (i != factor) ng.alex->push_back((*gen.alex)[i]);
        if (ng.alex->empty()) ng.alex->push_back(Rational(0));
        (*ng.alex)[0] = (*ng.alex)[0] + Rational(total);
      }
      ng.maslov = gen.maslov;
      index[{int(g), v}] = out.addGenerator(ng);
    }
  }

  for (const auto& [k, c] : d.arrows()) {
    for (const TensorTerm& t : c.terms()) {
      const DecTerm& act = t.factors[factor];
      uint8_t al = c.leftIdem()[factor], ar = c.rightIdem()[factor];
      // remaining coefficient
      std::vector<uint8_t> l, r;
      TensorTerm rest;
      for (size_t i = 0; i < t.factors.size(); ++i) {
        if (i == factor) continue;
        rest.factors.push_back(t.factors[i]);
        l.push_back(c.leftIdem()[i]);
        r.push_back(c.rightIdem()[i]);
      }
      for (const BasisElt& v : carrier) {
        auto its = index.find({k.first, v});
        if (its == index.end()) continue;
        if (v.idem != ar) continue;
        BasisElt w;
        if (act.dec == Dec::None) {
          if (al != ar) continue;
          w = BasisElt{al, al, Dec::None,
                       Term{act.mono.a + v.mono.a, act.mono.b + v.mono.b}};
        } else {
          Term img = act.dec == Dec::Sigma ? phiSigmaTerm(v.mono)
                                           : phiTauTerm(v.mono);
          w = BasisElt{1, 1, Dec::None,
                       Term{act.mono.a + img.a, act.mono.b + img.b}};
        }
        auto itd = index.find({k.second, w});
        if (itd == index.end()) continue;
        out.addArrow(its->second, itd->second,
                     TensorElement(l, r, p, {rest}));
      }
    }
  }
  return out;
}

TypeDModule sublinkExtract(const TypeDModule& d,
                           const std::vector<size_t>& keep, int window) {
  std::vector<char> keepFlag(d.arity(), 0);
  for (size_t k : keep) keepFlag[k] = 1;
  TypeDModule cur = d;
  // cap complement factors from the highest index down
  for (int f = d.arity() - 1; f >= 0; --f)
    if (!keepFlag[f]) cur = capFactor(cur, size_t(f), window, 0);
  // restrict kept coordinates to idempotent zero
  TypeDModule out(cur.arity(), cur.policy());
  out.name = d.name + " sublink";
  std::vector<int> newIndex(cur.genCount(), -1);
  for (size_t i = 0; i < cur.genCount(); ++i) {
    const Generator& g = cur.gen(int(i));
    bool allZero = true;
    for (uint8_t e : g.idem) allZero &= (e == 0);
    if (allZero) newIndex[i] = out.addGenerator(g);
  }
  for (const auto& [k, c] : cur.arrows())
    if (newIndex[k.first] >= 0 && newIndex[k.second] >= 0)
      out.addArrow(newIndex[k.first], newIndex[k.second], c);
  return out;
}

/******** H1 action ********/

Endomorphism h1Action(const SurgeryComplex& c, size_t factor) {
  Endomorphism a;
  for (const auto& [k, coeff] : c.module.arrows()) {
    std::vector<TensorTerm> picked;
    for (const TensorTerm& t : coeff.terms())
      if (t.factors[factor].dec == Dec::Sigma) picked.push_back(t);
    if (picked.empty()) continue;
    a.comps[k] = TensorElement(coeff.leftIdem(), coeff.rightIdem(),
                               coeff.policy(), std::move(picked));
  }
  return a;
}

std::map<std::pair<int, int>, TensorElement> chainMapResidue(
    const SurgeryComplex& c, const Endomorphism& a) {
  std::map<std::pair<int, int>, TensorElement> res;
  auto accumulate = [&](int s, int t, const TensorElement& e) {
    if (e.isZero()) return;
    auto key = std::make_pair(s, t);
    auto it = res.find(key);
    if (it == res.end())
      res.emplace(key, e);
    else {
      it->second += e;
      if (it->second.isZero()) res.erase(it);
    }
  };
  for (const auto& [ka, ca] : a.comps) {
    for (const auto& [kd, cd] : c.module.arrows()) {
      if (kd.first == ka.second)
        accumulate(ka.first, kd.second, tensorMul(cd, ca));
      if (kd.second == ka.first)
        accumulate(kd.first, ka.second, tensorMul(ca, cd));
    }
  }
  return res;
}

std::vector<std::map<int, UPoly>> expandEndo(const SurgeryComplex& c,
                                             const Endomorphism& a) {
  std::map<std::pair<int, BasisElt>, int> index;
  FUComplex fc = expandBox(c.module, makeD0TypeA(c.module.policy()), c.window,
                           int(c.totalFraming), &index);
  TypeAAction act = makeD0TypeA(c.module.policy());
  std::vector<std::map<int, UPoly>> cols(fc.basis.size());
  UPoly mask =
      fc.precision >= 64 ? ~0ull : ((1ull << fc.precision) - 1);
  for (const auto& [k, coeff] : a.comps)
    for (const TensorTerm& t : coeff.terms())
      for (size_t i = 0; i < fc.basis.size(); ++i) {
        if (fc.basis[i].gen != k.first) continue;
        auto vals = act.m2(t, coeff.leftIdem(), coeff.rightIdem(),
                           fc.basis[i].carrier, c.window,
                           int(c.totalFraming));
        for (const BasisElt& w : vals) {
          BasisElt track = w;
          bool m0 = track.idem == 0 && track.ridem == 0;
          int pw = ulevel(m0 ? Ring::Idem0 : Ring::Idem1, track.mono);
          track.mono.a -= pw;
          if (m0) track.mono.b -= pw;
          if (pw >= fc.precision) continue;
          auto it = index.find({k.second, track});
          if (it == index.end()) continue;
          cols[i][it->second] ^= (UPoly(1) << pw) & mask;
          if (!cols[i][it->second]) cols[i].erase(it->second);
        }
      }
  return cols;
}

bool isNullHomotopic(const FUComplex& c,
                     const std::vector<std::map<int, UPoly>>& endo) {
  int N = c.precision;
  size_t n = c.basis.size();
  size_t dim = n * size_t(N);
  if (dim > 4096)
    throw std::invalid_argument("null-homotopy solve needs a reduced model");
  auto id = [&](size_t i, int k) { return i * size_t(N) + k; };
  // F2 matrices of d and the endomorphism on the expansion
  F2Matrix D(dim, dim), E(dim, dim);
  auto fill = [&](F2Matrix& M, const std::vector<std::map<int, UPoly>>& cols) {
    for (size_t s = 0; s < n; ++s)
      for (const auto& [t, poly] : cols[s])
        for (int j = 0; j < N; ++j)
          if ((poly >> j) & 1)
            for (int k = 0; k + j < N; ++k) M.flip(id(t, k + j), id(s, k));
  };
  fill(D, c.cols);
  fill(E, endo);
  // solve D H + H D = E entrywise: unknown H is dim x dim
  size_t un = dim * dim;
  F2Matrix sys(un, un);
  std::vector<uint8_t> rhs(un, 0);
  auto vidx = [&](size_t r, size_t cc) { return r * dim + cc; };
  for (size_t i = 0; i < dim; ++i)
    for (size_t j = 0; j < dim; ++j) {
      size_t eq = vidx(i, j);
      // (D H)_{ij} = sum_k D_{ik} H_{kj}
      for (size_t k = 0; k < dim; ++k) {
        if (D.get(i, k)) sys.flip(eq, vidx(k, j));
        if (D.get(k, j)) sys.flip(eq, vidx(i, k));
      }
      rhs[eq] = E.get(i, j);
    }
  std::vector<uint8_t> sol;
  return sys.solve(sol, rhs);
}

/******** gradings ********/

Rational GradedComplex::correction(long long, int) const { return Rational(0); }

GradedComplex assignGradings(const SurgeryComplex& c) {
  GradedComplex g;
  size_t l = c.framing.size();
  if (l == 0 || !c.framing.symmetric())
    throw std::invalid_argument("framing matrix must be symmetric");
  bool degenerate = c.framing.det() == 0;
  g.degenerate = degenerate;
  g.complex = c.expand();
  int sig = degenerate ? 0 : c.framing.signature();
  std::vector<Rational> rowSums(l);
  for (size_t i = 0; i < l; ++i) {
    Rational s(0);
    for (size_t j = 0; j < l; ++j) s = s + Rational(c.framing.m[i][j]);
    rowSums[i] = s;
  }
  for (FUGen& b : g.complex.basis) {
    const Generator& gen = c.module.gen(b.gen);
    if (!gen.maslov)
      throw std::invalid_argument("generator without internal grading: " +
                                  gen.name);
    bool m0 = b.carrier.idem == 0 && b.carrier.ridem == 0;
    Rational internal =
        *gen.maslov +
        Rational(grW(m0 ? Ring::Idem0 : Ring::Idem1, b.carrier.mono));
    int cubeWeight = 0;
    for (uint8_t e : gen.idem) cubeWeight += e;
    if (degenerate) {
      b.maslov = internal + Rational(int(l) - cubeWeight);
      continue;
    }
    // s-vector: only the single-component case carries one grading here
    if (l != 1)
      throw std::invalid_argument(
          "absolute gradings implemented for one framed component");
    std::vector<Rational> v{Rational(-2) * b.alex + rowSums[0]};
    std::vector<Rational> x = c.framing.solve(v);
    Rational c1sq = v[0] * x[0];
    Rational corr = (c1sq - Rational(2 * (long long)l) - Rational(3 * sig)) /
                    Rational(4);
    b.maslov = internal + corr + Rational(int(l) - cubeWeight);
  }
  return g;
}

DInvariantReport dInvariants(const GradedComplex& g, long long modulus,
                             Rational calibration) {
  DInvariantReport rep;
  rep.relativeOnly = g.degenerate;
  rep.calibration = calibration;
  const FUComplex& c = g.complex;
  int N = c.precision;

  std::map<long long, std::vector<int>> classes;
  for (size_t i = 0; i < c.basis.size(); ++i) {
    if (c.basis[i].alex.den != 1)
      throw std::invalid_argument("non-integral Alexander grading");
    long long a = c.basis[i].alex.num;
    long long key = modulus ? ((a % modulus) + modulus) % modulus : a;
    classes[key].push_back(int(i));
  }
  for (const auto& [key, members] : classes) {
    std::map<int, int> slot;
    for (size_t p = 0; p < members.size(); ++p) slot[members[p]] = int(p);
    size_t dim = members.size() * size_t(N);
    auto id = [&](int p, int k) { return size_t(p) * N + k; };
    F2Matrix D(dim, dim);
    for (size_t p = 0; p < members.size(); ++p)
      for (const auto& [dst, poly] : c.cols[members[p]]) {
        auto it = slot.find(dst);
        if (it == slot.end()) continue;
        for (int j = 0; j < N; ++j)
          if ((poly >> j) & 1)
            for (int k = 0; k + j < N; ++k)
              D.flip(id(it->second, k + j), id(int(p), k));
      }
    // iterate Maslov gradings from the top
    std::map<Rational, std::vector<size_t>, std::greater<Rational>> byGrading;
    for (size_t p = 0; p < members.size(); ++p)
      for (int k = 0; k < N; ++k)
        byGrading[*c.basis[members[p]].maslov - Rational(2 * k)].push_back(
            id(int(p), k));
    // image basis
    std::vector<std::vector<uint8_t>> B;
    for (size_t cc = 0; cc < dim; ++cc) {
      std::vector<uint8_t> v(dim, 0);
      bool nz = false;
      for (size_t r = 0; r < dim; ++r)
        if (D.get(r, cc)) v[r] = 1, nz = true;
      if (nz) B.push_back(std::move(v));
    }
    size_t rkB = spanRank(B);
    bool found = false;
    for (const auto& [mu, slots] : byGrading) {
      if (found) break;
      // cycles supported in grading mu
      std::vector<size_t> sub = slots;
      std::map<size_t, size_t> pos;
      for (size_t i = 0; i < sub.size(); ++i) pos[sub[i]] = i;
      F2Matrix Dsub(dim, sub.size());
      for (size_t j = 0; j < sub.size(); ++j)
        for (size_t r = 0; r < dim; ++r)
          if (D.get(r, sub[j])) Dsub.set(r, j, true);
      // kernel of Dsub
      std::vector<std::vector<uint8_t>> ker;
      {
        F2Matrix w = Dsub;
        size_t rows = w.rows(), colsn = w.cols();
        std::vector<size_t> pivotOfCol(colsn, SIZE_MAX);
        size_t rk = 0;
        for (size_t cc = 0; cc < colsn && rk < rows; ++cc) {
          size_t piv = SIZE_MAX;
          for (size_t r = rk; r < rows; ++r)
            if (w.get(r, cc)) {
              piv = r;
              break;
            }
          if (piv == SIZE_MAX) continue;
          w.swapRows(piv, rk);
          for (size_t r = 0; r < rows; ++r)
            if (r != rk && w.get(r, cc)) w.addRowTo(rk, r);
          pivotOfCol[cc] = rk;
          ++rk;
        }
        for (size_t cc = 0; cc < colsn; ++cc) {
          if (pivotOfCol[cc] != SIZE_MAX) continue;
          std::vector<uint8_t> v(colsn, 0);
          v[cc] = 1;
          for (size_t c2 = 0; c2 < colsn; ++c2)
            if (pivotOfCol[c2] != SIZE_MAX && w.get(pivotOfCol[c2], cc))
              v[c2] = 1;
          ker.push_back(std::move(v));
        }
      }
      // U^(N-1) on those cycles: shift levels by N-1 within each member
      std::vector<std::vector<uint8_t>> shifted;
      for (const auto& v : ker) {
        std::vector<uint8_t> w(dim, 0);
        bool nz = false;
        for (size_t j = 0; j < sub.size(); ++j) {
          if (!v[j]) continue;
          size_t p = sub[j] / N;
          int k = int(sub[j] % N);
          if (k == 0) {
            w[p * N + (N - 1)] = 1;
            nz = true;
          }
        }
        if (nz) shifted.push_back(std::move(w));
      }
      if (!shifted.empty() && jointRank(shifted, B) > rkB) {
        rep.dLevels[key] = mu + calibration;
        found = true;
      }
    }
  }
  return rep;
}

Rational dLens(long long p, long long q, long long i) {
  if (p == 1) return Rational(0);
  if (q == 0) throw std::invalid_argument("lens parameters");
  // d(L(p,q), i) = ((2i+1-p-q)^2 - pq) / 4pq - d(L(q, p mod q), i mod q)
  Rational first =
      (Rational(2 * i + 1 - p - q) * Rational(2 * i + 1 - p - q) -
       Rational(p * q)) /
      Rational(4 * p * q);
  long long q2 = ((p % q) + q) % q;
  if (q2 == 0) return first;  // q = 1 ends the recursion
  return first - dLens(q, q2, i % q);
}

std::string DInvariantReport::render() const {
  std::ostringstream os;
  if (relativeOnly) os << "(relative gradings only)\n";
  for (const auto& [k, d] : dLevels)
    os << "class " << k << ": d = " << d.str() << "\n";
  return os.str();
}

}  // namespace ksa
