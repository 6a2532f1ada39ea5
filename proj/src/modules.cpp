#include "ksa/modules.hpp"

#include <algorithm>
#include <sstream>

namespace ksa {

int TypeDModule::addGenerator(Generator g) {
  if (int(g.idem.size()) != arity_)
    throw std::invalid_argument("generator idempotent vector length");
  if (index_.count(g.name))
    throw std::invalid_argument("duplicate generator " + g.name);
  index_[g.name] = int(gens_.size());
  gens_.push_back(std::move(g));
  return int(gens_.size()) - 1;
}

int TypeDModule::genIndex(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

void TypeDModule::addArrow(int src, int dst, const TensorElement& coeff) {
  if (coeff.isZero()) return;
  std::vector<uint8_t> l(coeff.leftIdem()), r(coeff.rightIdem());
  if (l != gens_[dst].idem || r != gens_[src].idem)
    throw std::invalid_argument("arrow idempotents do not match endpoints (" +
                                gens_[src].name + " -> " + gens_[dst].name +
                                ")");
  auto key = std::make_pair(src, dst);
  auto it = arrows_.find(key);
  if (it == arrows_.end()) {
    arrows_.emplace(key, coeff);
  } else {
    it->second += coeff;
    if (it->second.isZero()) arrows_.erase(it);
  }
}

void TypeDModule::addArrow(const std::string& src, const std::string& dst,
                           const TensorElement& coeff) {
  int s = genIndex(src), d = genIndex(dst);
  if (s < 0 || d < 0) throw std::invalid_argument("unknown generator name");
  addArrow(s, d, coeff);
}

TensorElement TypeDModule::arrow(int src, int dst) const {
  auto it = arrows_.find({src, dst});
  if (it != arrows_.end()) return it->second;
  return TensorElement(gens_[dst].idem, gens_[src].idem, policy_);
}

Violation TypeDModule::validate() const {
  Violation v;
  // delta^2: for each pair (x,z), sum over intermediate y of
  // coeff(y->z) * coeff(x->y)  (later arrow multiplies on the left)
  std::map<std::pair<int, int>, TensorElement> sq;
  for (const auto& [key1, c1] : arrows_) {
    auto [x, y] = key1;
    for (const auto& [key2, c2] : arrows_) {
      if (key2.first != y) continue;
      int z = key2.second;
      TensorElement prod = tensorMul(c2, c1);
      if (prod.isZero()) continue;
      auto it = sq.find({x, z});
      if (it == sq.end())
        sq.emplace(std::make_pair(x, z), prod);
      else {
        it->second += prod;
        if (it->second.isZero()) sq.erase(it);
      }
    }
  }
  if (!sq.empty()) {
    auto& [key, res] = *sq.begin();
    v.ok = false;
    v.src = key.first;
    v.dst = key.second;
    v.residue = res;
    v.message = "delta^2 residue " + res.render() + " from " +
                gens_[key.first].name + " to " + gens_[key.second].name;
  }
  return v;
}

TypeDModule TypeDModule::withPolicy(Policy p) const {
  TypeDModule out(arity_, p);
  out.framingLabel = framingLabel;
  out.name = name;
  for (const Generator& g : gens_) out.addGenerator(g);
  for (const auto& [key, c] : arrows_) {
    TensorElement moved(c.leftIdem(), c.rightIdem(), p, c.terms());
    out.addArrow(key.first, key.second, moved);
  }
  return out;
}

/******** morphisms ********/

void DMorphism::add(int srcGen, int dstGen, const TensorElement& c) {
  if (c.isZero()) return;
  if (c.leftIdem() != target->gen(dstGen).idem ||
      c.rightIdem() != source->gen(srcGen).idem)
    throw std::invalid_argument("morphism component idempotent mismatch");
  auto key = std::make_pair(srcGen, dstGen);
  auto it = comps.find(key);
  if (it == comps.end())
    comps.emplace(key, c);
  else {
    it->second += c;
    if (it->second.isZero()) comps.erase(it);
  }
}

void DMorphism::add(const std::string& srcGen, const std::string& dstGen,
                    const TensorElement& c) {
  add(source->genIndex(srcGen), target->genIndex(dstGen), c);
}

DMorphism DMorphism::identity(const TypeDModule& m) {
  DMorphism f;
  f.source = f.target = &m;
  for (size_t i = 0; i < m.genCount(); ++i) {
    std::vector<AlgebraElement> factors;
    for (uint8_t e : m.gen(int(i)).idem)
      factors.push_back(AlgebraElement::idem(e, m.policy()));
    f.add(int(i), int(i), TensorElement::tensor(factors));
  }
  return f;
}

DMorphism DMorphism::scalar(const TypeDModule& m, const Series& idem0Coeff,
                            const Series& idem1Coeff) {
  DMorphism f;
  f.source = f.target = &m;
  for (size_t i = 0; i < m.genCount(); ++i) {
    std::vector<AlgebraElement> factors;
    bool zero = false;
    for (uint8_t e : m.gen(int(i)).idem) {
      const Series& s = e == 0 ? idem0Coeff : idem1Coeff;
      if (s.isZero()) zero = true;
      factors.push_back(AlgebraElement::fromSeries(s, e, e, Dec::None));
    }
    if (!zero) f.add(int(i), int(i), TensorElement::tensor(factors));
  }
  return f;
}

DMorphism operator+(const DMorphism& a, const DMorphism& b) {
  if (a.comps.empty()) return b;
  if (b.comps.empty()) return a;
  if (a.source != b.source || a.target != b.target)
    throw std::invalid_argument("morphism sum endpoints differ");
  DMorphism out = a;
  for (const auto& [key, c] : b.comps) {
    auto it = out.comps.find(key);
    if (it == out.comps.end())
      out.comps.emplace(key, c);
    else {
      it->second += c;
      if (it->second.isZero()) out.comps.erase(it);
    }
  }
  return out;
}

DMorphism compose(const DMorphism& g, const DMorphism& f) {
  if (f.target != g.source)
    throw std::invalid_argument("compose: endpoints do not chain");
  DMorphism out;
  out.source = f.source;
  out.target = g.target;
  for (const auto& [kf, cf] : f.comps)
    for (const auto& [kg, cg] : g.comps) {
      if (kg.first != kf.second) continue;
      TensorElement prod = tensorMul(cg, cf);
      if (!prod.isZero()) out.add(kf.first, kg.second, prod);
    }
  return out;
}

DMorphism morphismDifferential(const DMorphism& f) {
  DMorphism out;
  out.source = f.source;
  out.target = f.target;
  for (const auto& [kf, cf] : f.comps) {
    for (const auto& [ka, ca] : f.target->arrows()) {
      if (ka.first != kf.second) continue;
      TensorElement prod = tensorMul(ca, cf);
      if (!prod.isZero()) out.add(kf.first, ka.second, prod);
    }
    for (const auto& [ka, ca] : f.source->arrows()) {
      if (ka.second != kf.first) continue;
      TensorElement prod = tensorMul(cf, ca);
      if (!prod.isZero()) out.add(ka.first, kf.second, prod);
    }
  }
  return out;
}

ConeLayout coneLayout(const DMorphism& f) {
  DMorphism df = morphismDifferential(f);
  if (!df.isZero()) throw NotACycle("cone of a non-cycle morphism");
  const TypeDModule& M = *f.source;
  const TypeDModule& N = *f.target;
  if (M.arity() != N.arity() || !(M.policy() == N.policy()))
    throw std::invalid_argument("cone: mismatched modules");
  ConeLayout out;
  out.module = TypeDModule(M.arity(), M.policy());
  auto uniqueName = [&](std::string n) {
    while (out.module.genIndex(n) >= 0) n += "'";
    return n;
  };
  for (size_t i = 0; i < M.genCount(); ++i) {
    Generator g = M.gen(int(i));
    g.name = uniqueName(g.name);
    out.fromSource.push_back(out.module.addGenerator(g));
  }
  for (size_t i = 0; i < N.genCount(); ++i) {
    Generator g = N.gen(int(i));
    g.name = uniqueName(g.name);
    out.fromTarget.push_back(out.module.addGenerator(g));
  }
  for (const auto& [k, c] : M.arrows())
    out.module.addArrow(out.fromSource[k.first], out.fromSource[k.second], c);
  for (const auto& [k, c] : N.arrows())
    out.module.addArrow(out.fromTarget[k.first], out.fromTarget[k.second], c);
  for (const auto& [k, c] : f.comps)
    out.module.addArrow(out.fromSource[k.first], out.fromTarget[k.second], c);
  return out;
}

TypeDModule cone(const DMorphism& f) { return coneLayout(f).module; }

DMorphism homotopyResidue(const DMorphism& F, const DMorphism& G,
                          const DMorphism& H, const DMorphism& target) {
  DMorphism gf = compose(G, F);
  DMorphism dh = morphismDifferential(H);
  return gf + target + dh;
}

/******** reduction ********/

bool isInvertibleCoeff(const TensorElement& c, std::vector<Series>* inv) {
  if (c.isZero()) return false;
  size_t n = c.arity();
  if (c.leftIdem() != c.rightIdem()) return false;
  // factor as a pure tensor: collect per-factor monomial sets
  std::vector<std::vector<DecTerm>> per(n);
  for (const TensorTerm& t : c.terms())
    for (size_t k = 0; k < n; ++k) {
      if (t.factors[k].dec != Dec::None) return false;
      per[k].push_back(t.factors[k]);
    }
  size_t prodSize = 1;
  for (size_t k = 0; k < n; ++k) {
    std::sort(per[k].begin(), per[k].end());
    per[k].erase(std::unique(per[k].begin(), per[k].end()), per[k].end());
    prodSize *= per[k].size();
  }
  if (prodSize != c.terms().size()) return false;  // not a pure tensor
  // verify the cartesian product matches and each factor series inverts
  std::vector<AlgebraElement> factors;
  for (size_t k = 0; k < n; ++k)
    factors.push_back(AlgebraElement(
        c.leftIdem()[k], c.rightIdem()[k], c.policy(), per[k]));
  if (!(TensorElement::tensor(factors) == c)) return false;
  std::vector<Series> invs;
  for (const AlgebraElement& f : factors) {
    Series s = f.asSeries();
    if (!isUnit(s)) return false;
    invs.push_back(invert(s));
  }
  if (inv) *inv = std::move(invs);
  return true;
}

static TensorElement invCoeff(const TensorElement& c) {
  std::vector<Series> invs;
  if (!isInvertibleCoeff(c, &invs))
    throw std::invalid_argument("coefficient is not invertible");
  std::vector<AlgebraElement> factors;
  for (size_t k = 0; k < invs.size(); ++k)
    factors.push_back(AlgebraElement::fromSeries(invs[k], c.leftIdem()[k],
                                                 c.rightIdem()[k], Dec::None));
  return TensorElement::tensor(factors);
}

namespace {

struct MapTable {
  std::map<std::pair<int, int>, TensorElement> comps;

  void add(std::pair<int, int> key, const TensorElement& c) {
    if (c.isZero()) return;
    auto it = comps.find(key);
    if (it == comps.end())
      comps.emplace(key, c);
    else {
      it->second += c;
      if (it->second.isZero()) comps.erase(it);
    }
  }
};

// g after f, as raw tables
MapTable composeTables(const MapTable& g, const MapTable& f) {
  MapTable out;
  for (const auto& [kf, cf] : f.comps)
    for (const auto& [kg, cg] : g.comps) {
      if (kg.first != kf.second) continue;
      TensorElement prod = tensorMul(cg, cf);
      if (!prod.isZero()) out.add({kf.first, kg.second}, prod);
    }
  return out;
}

}  // namespace

ReduceResult reduce(const TypeDModule& m, bool postVerify) {
  // working copy structures
  int n = int(m.genCount());
  std::vector<char> alive(n, 1);
  MapTable d;
  for (const auto& [k, c] : m.arrows()) d.comps.emplace(k, c);
  MapTable proj, incl, hom;  // original -> current, current -> original
  for (int i = 0; i < n; ++i) {
    std::vector<AlgebraElement> factors;
    for (uint8_t e : m.gen(i).idem)
      factors.push_back(AlgebraElement::idem(e, m.policy()));
    TensorElement unit = TensorElement::tensor(factors);
    proj.add({i, i}, unit);
    incl.add({i, i}, unit);
  }

  auto selfArrow = [&](int g) { return d.comps.count({g, g}) != 0; };

  while (true) {
    std::pair<int, int> pick{-1, -1};
    TensorElement cInv;
    for (const auto& [k, c] : d.comps) {
      if (k.first == k.second) continue;
      if (selfArrow(k.first) || selfArrow(k.second)) continue;
      if (isInvertibleCoeff(c, nullptr)) {
        pick = k;
        break;
      }
    }
    if (pick.first < 0) break;
    int x = pick.first, y = pick.second;
    TensorElement c = d.comps.at(pick);
    TensorElement ci = invCoeff(c);

    // collect arrows into y and out of x
    std::vector<std::pair<int, TensorElement>> intoY, outOfX;
    for (const auto& [k, cc] : d.comps) {
      if (k.second == y && k.first != x) intoY.push_back({k.first, cc});
      if (k.first == x && k.second != y) outOfX.push_back({k.second, cc});
    }
    // zig-zag update
    for (const auto& [w, a] : intoY)
      for (const auto& [z, b] : outOfX)
        d.add({w, z}, tensorMul(b, tensorMul(ci, a)));
    // erase all arrows touching x or y
    for (auto it = d.comps.begin(); it != d.comps.end();) {
      auto [s, t] = it->first;
      if (s == x || s == y || t == x || t == y)
        it = d.comps.erase(it);
      else
        ++it;
    }
    alive[x] = alive[y] = 0;

    // step maps of this cancellation:
    //   F kills x,y and sends y -> z with d(x->z) ci; identity elsewhere
    //   G hits x from w with ci d(w->y); identity elsewhere
    //   H sends y -> x with ci
    // then proj' = F o proj, incl' = incl o G, hom' = hom + incl o H o proj
    MapTable F, G, H;
    for (int i = 0; i < n; ++i)
      if (alive[i]) {
        std::vector<AlgebraElement> factors;
        for (uint8_t e : m.gen(i).idem)
          factors.push_back(AlgebraElement::idem(e, m.policy()));
        TensorElement unit = TensorElement::tensor(factors);
        F.add({i, i}, unit);
        G.add({i, i}, unit);
      }
    for (const auto& [z, b] : outOfX)
      if (alive[z]) F.add({y, z}, tensorMul(b, ci));
    for (const auto& [w, a] : intoY)
      if (alive[w]) G.add({w, x}, tensorMul(ci, a));
    H.add({y, x}, ci);

    MapTable inclH = composeTables(incl, composeTables(H, proj));
    for (const auto& [k, cc] : inclH.comps) hom.add(k, cc);
    proj = composeTables(F, proj);
    incl = composeTables(incl, G);
  }

  // assemble the reduced module
  ReduceResult res;
  res.module = TypeDModule(m.arity(), m.policy());
  res.module.framingLabel = m.framingLabel;
  res.module.name = m.name;
  std::vector<int> newIndex(n, -1);
  for (int i = 0; i < n; ++i)
    if (alive[i]) newIndex[i] = res.module.addGenerator(m.gen(i));
  for (const auto& [k, c] : d.comps)
    res.module.addArrow(newIndex[k.first], newIndex[k.second], c);
  for (const auto& [k, c] : proj.comps)
    if (newIndex[k.second] >= 0)
      res.projectComps[{k.first, newIndex[k.second]}] = c;
  for (const auto& [k, c] : incl.comps)
    if (newIndex[k.first] >= 0)
      res.includeComps[{newIndex[k.first], k.second}] = c;
  res.homotopyComps = hom.comps;

  if (postVerify) {
    // chiral truncation quarantines a margin at the window edge: inverses
    // are exact only up to boundary terms, so residues are re-truncated
    // into the shrunk window before testing for zero. The margin scales
    // with the largest exponent among the arrow coefficients (one zig-zag
    // can push that far past the edge).
    int maxDeg = 1;
    for (const auto& [k, c] : m.arrows())
      for (const TensorTerm& t : c.terms())
        for (const DecTerm& f : t.factors)
          maxDeg = std::max({maxDeg, std::abs(f.mono.a), std::abs(f.mono.b)});
    auto vanishes = [&, maxDeg](const DMorphism& f) {
      if (!m.policy().chiralMode()) return f.isZero();
      Policy shrunk =
          Policy::chiral(std::max(m.policy().window - 2 * maxDeg, 0),
                         m.policy().precision);
      for (const auto& [k, c] : f.comps) {
        TensorElement cut(c.leftIdem(), c.rightIdem(), shrunk, c.terms());
        if (!cut.isZero()) return false;
      }
      return true;
    };
    DMorphism F{&m, &res.module, {}}, G{&res.module, &m, {}},
        H{&m, &m, {}};
    for (const auto& [k, c] : res.projectComps) F.add(k.first, k.second, c);
    for (const auto& [k, c] : res.includeComps) G.add(k.first, k.second, c);
    for (const auto& [k, c] : res.homotopyComps) H.add(k.first, k.second, c);
    bool ok = vanishes(morphismDifferential(F)) &&
              vanishes(morphismDifferential(G));
    // G o F + id = dH on the original module
    DMorphism gf = compose(G, F);
    DMorphism residue = gf + DMorphism::identity(m) + morphismDifferential(H);
    ok = ok && vanishes(residue);
    // F o G = id on the reduced module (strict for cancellation)
    DMorphism fg = compose(F, G);
    DMorphism r2 = fg + DMorphism::identity(res.module);
    ok = ok && vanishes(r2);
    res.verified = ok;
    if (!ok) res.note = "equivalence post-verification failed";
  }
  return res;
}

/******** expansion to a free F2[U] complex ********/

void FUComplex::addEntry(int src, int dst, UPoly p) {
  if (!p) return;
  auto& col = cols[src];
  auto it = col.find(dst);
  if (it == col.end())
    col.emplace(dst, p);
  else {
    it->second ^= p;
    if (!it->second) col.erase(it);
  }
}

bool FUComplex::squaresToZero(std::string* firstBad) const {
  UPoly mask = precision >= 64 ? ~0ull : ((1ull << precision) - 1);
  for (size_t s = 0; s < cols.size(); ++s) {
    std::map<int, UPoly> acc;
    for (const auto& [mid, p1] : cols[s])
      for (const auto& [dst, p2] : cols[mid]) {
        // product of polynomials over F2
        UPoly prod = 0;
        for (int k = 0; k < 64 && (p1 >> k); ++k)
          if ((p1 >> k) & 1) prod ^= (p2 << k);
        acc[dst] ^= prod & mask;
      }
    for (const auto& [dst, p] : acc)
      if (p) {
        if (firstBad)
          *firstBad = "d^2 != 0 from basis " + std::to_string(s) + " to " +
                      std::to_string(dst);
        return false;
      }
  }
  return true;
}

FUComplex expandBox(const TypeDModule& d, const TypeAAction& a, int window,
                    int shift,
                    std::map<std::pair<int, BasisElt>, int>* outIndex) {
  if (d.arity() != a.arity)
    throw std::invalid_argument("expandBox: arity mismatch");
  FUComplex out;
  out.precision = d.policy().precision;
  UPoly mask =
      out.precision >= 64 ? ~0ull : ((1ull << out.precision) - 1);
  // the window cuts the *total* Alexander grading (generator plus
  // carrier); idempotent-1 tracks use the closed mapping-cone range
  auto genA = [&](int g) {
    long long s = 0;
    if (d.gen(g).alex)
      for (const Rational& r : *d.gen(g).alex) {
        if (r.den != 1)
          throw std::invalid_argument("windowing needs integral gradings");
        s += r.num;
      }
    return s;
  };
  long long slack = 0;
  for (size_t g = 0; g < d.genCount(); ++g)
    slack = std::max(slack, std::llabs(genA(int(g))));
  std::vector<BasisElt> carrier =
      a.enumerate(window + int(slack) + std::abs(shift), 0);
  long long lo = -window + shift, hi = window;
  std::map<std::pair<int, BasisElt>, int> index;
  for (size_t g = 0; g < d.genCount(); ++g) {
    uint8_t gi = d.gen(int(g)).idem[0];
    bool diag = true;
    for (uint8_t e : d.gen(int(g)).idem) diag &= (e == gi);
    long long base = genA(int(g));
    for (const BasisElt& v : carrier) {
      if (!diag || v.idem != gi) continue;
      bool m0 = v.idem == 0 && v.ridem == 0;
      long long total =
          base + alexander(m0 ? Ring::Idem0 : Ring::Idem1, v.mono);
      if (m0 ? (total < -window || total > window)
             : (total < lo || total > hi))
        continue;
      FUGen fg;
      fg.gen = int(g);
      fg.carrier = v;
      fg.alex = Rational(total);
      index[{int(g), v}] = int(out.basis.size());
      out.basis.push_back(fg);
    }
  }
  out.cols.resize(out.basis.size());

  auto emit = [&](int srcIdx, int g2, const std::vector<BasisElt>& vals) {
    for (const BasisElt& w : vals) {
      // carrier elements carry their own U-power; split into track + power
      BasisElt track = w;
      bool m0 = track.idem == 0 && track.ridem == 0;
      int pw = ulevel(m0 ? Ring::Idem0 : Ring::Idem1, track.mono);
      track.mono.a -= pw;
      if (m0) track.mono.b -= pw;
      if (pw >= out.precision) continue;
      auto it = index.find({g2, track});
      if (it == index.end()) continue;  // outside the window
      out.addEntry(srcIdx, it->second, (UPoly(1) << pw) & mask);
    }
  };

  // m2 over single arrows
  for (const auto& [k, c] : d.arrows()) {
    for (const TensorTerm& t : c.terms()) {
      for (const BasisElt& v : carrier) {
        auto it = index.find({k.first, v});
        if (it == index.end()) continue;
        emit(it->second, k.second,
             a.m2(t, c.leftIdem(), c.rightIdem(), v, window, shift));
      }
    }
  }
  // m3 over composable arrow pairs
  if (a.m3) {
    for (const auto& [k1, c1] : d.arrows())
      for (const auto& [k2, c2] : d.arrows()) {
        if (k2.first != k1.second) continue;
        for (const TensorTerm& t2 : c2.terms())
          for (const TensorTerm& t1 : c1.terms())
            for (const BasisElt& v : carrier) {
              auto it = index.find({k1.first, v});
              if (it == index.end()) continue;
              emit(it->second, k2.second,
                   a.m3(t2, c2.leftIdem(), c2.rightIdem(), t1, c1.leftIdem(),
                        c1.rightIdem(), v, window, shift));
            }
      }
  }
  if (outIndex) *outIndex = std::move(index);
  return out;
}

}  // namespace ksa
