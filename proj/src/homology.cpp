#include "ksa/homology.hpp"

#include <algorithm>
#include <sstream>

namespace ksa {

UPoly upolyMul(UPoly a, UPoly b, int precision) {
  UPoly mask = precision >= 64 ? ~0ull : ((1ull << precision) - 1);
  UPoly out = 0;
  for (int k = 0; k < precision && (a >> k); ++k)
    if ((a >> k) & 1) out ^= b << k;
  return out & mask;
}

UPoly upolyInv(UPoly a, int precision) {
  if (!(a & 1)) throw std::domain_error("U-polynomial is not a unit");
  UPoly mask = precision >= 64 ? ~0ull : ((1ull << precision) - 1);
  UPoly inv = 1, tail = (a & mask) ^ 1, pw = tail;
  while (pw) {
    inv ^= pw;
    pw = upolyMul(pw, tail, precision);
  }
  return inv & mask;
}

namespace {

long long classKey(const Rational& a, long long modulus) {
  if (a.den != 1)
    throw std::domain_error("non-integral Alexander grading in class split");
  if (modulus == 0) return a.num;
  long long m = modulus < 0 ? -modulus : modulus;
  return ((a.num % m) + m) % m;
}

// F2 expansion of one class of the complex: basis (i, level)
struct Expansion {
  std::vector<int> members;            // FU basis indices
  std::map<int, int> slot;             // FU index -> position
  int levels = 0;
  size_t dim() const { return members.size() * levels; }
  size_t id(int pos, int level) const { return pos * levels + level; }
};

F2Matrix expandDifferential(const FUComplex& c, const Expansion& e) {
  F2Matrix d(e.dim(), e.dim());
  for (size_t p = 0; p < e.members.size(); ++p) {
    int src = e.members[p];
    for (const auto& [dst, poly] : c.cols[src]) {
      auto it = e.slot.find(dst);
      if (it == e.slot.end()) continue;  // cross-class: not expected
      for (int j = 0; j < e.levels; ++j)
        if ((poly >> j) & 1)
          for (int k = 0; k + j < e.levels; ++k)
            d.flip(e.id(it->second, k + j), e.id(int(p), k));
    }
  }
  return d;
}

std::vector<std::vector<uint8_t>> kernelBasis(const F2Matrix& m) {
  size_t rows = m.rows(), cols = m.cols();
  F2Matrix w = m;
  std::vector<size_t> pivotOfCol(cols, SIZE_MAX);
  size_t rk = 0;
  for (size_t c = 0; c < cols && rk < rows; ++c) {
    size_t piv = SIZE_MAX;
    for (size_t r = rk; r < rows; ++r)
      if (w.get(r, c)) {
        piv = r;
        break;
      }
    if (piv == SIZE_MAX) continue;
    w.swapRows(piv, rk);
    for (size_t r = 0; r < rows; ++r)
      if (r != rk && w.get(r, c)) w.addRowTo(rk, r);
    pivotOfCol[c] = rk;
    ++rk;
  }
  std::vector<std::vector<uint8_t>> out;
  for (size_t c = 0; c < cols; ++c) {
    if (pivotOfCol[c] != SIZE_MAX) continue;
    std::vector<uint8_t> v(cols, 0);
    v[c] = 1;
    for (size_t c2 = 0; c2 < cols; ++c2)
      if (pivotOfCol[c2] != SIZE_MAX && w.get(pivotOfCol[c2], c)) v[c2] = 1;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::vector<uint8_t>> imageBasis(const F2Matrix& m) {
  std::vector<std::vector<uint8_t>> cols;
  for (size_t c = 0; c < m.cols(); ++c) {
    std::vector<uint8_t> v(m.rows(), 0);
    bool nz = false;
    for (size_t r = 0; r < m.rows(); ++r)
      if (m.get(r, c)) {
        v[r] = 1;
        nz = true;
      }
    if (nz) cols.push_back(std::move(v));
  }
  return cols;
}

}  // namespace

HomologyReport homology(const FUComplex& c, long long modulus) {
  HomologyReport rep;
  rep.precision = c.precision;
  rep.relative = modulus == 0;
  std::map<long long, Expansion> classes;
  for (size_t i = 0; i < c.basis.size(); ++i) {
    Expansion& e = classes[classKey(c.basis[i].alex, modulus)];
    e.slot[int(i)] = int(e.members.size());
    e.members.push_back(int(i));
  }
  for (auto& [key, e] : classes) {
    e.levels = c.precision;
    F2Matrix d = expandDifferential(c, e);
    auto Z = kernelBasis(d);
    auto B = imageBasis(d);
    size_t rkB = spanRank(B);

    // dim U^j H = dim(U^j Z + B) - dim B
    std::vector<size_t> cdim(c.precision + 1, 0);
    std::vector<std::vector<uint8_t>> uz = Z;
    for (int j = 0; j <= c.precision; ++j) {
      cdim[j] = jointRank(uz, B) - rkB;
      if (j == c.precision) break;
      for (auto& v : uz) {
        // multiply by U: shift levels
        std::vector<uint8_t> w(v.size(), 0);
        for (size_t p = 0; p < e.members.size(); ++p)
          for (int k = 0; k + 1 < e.levels; ++k)
            if (v[e.id(int(p), k)]) w[e.id(int(p), k + 1)] = 1;
        v = std::move(w);
      }
    }
    ClassReport cr;
    // number of blocks of length > j is cdim[j] - cdim[j+1]
    for (int k = 1; k <= c.precision; ++k) {
      long long blocks =
          (long long)(cdim[k - 1] - cdim[k]) -
          (k < c.precision ? (long long)(cdim[k] - cdim[k + 1]) : 0);
      if (k == c.precision)
        cr.towers = int(cdim[k - 1] - cdim[k]);
      else if (blocks > 0)
        cr.torsion[k] = int(blocks);
    }
    cr.warning = cr.torsion.count(c.precision - 1) > 0;
    if (cr.towers || !cr.torsion.empty()) rep.classes[key] = cr;
  }
  return rep;
}

bool generatesTower(const FUComplex& c, const std::vector<UPoly>& vec,
                    long long modulus) {
  int seed = -1;
  for (size_t i = 0; i < vec.size(); ++i)
    if (vec[i]) {
      seed = int(i);
      break;
    }
  if (seed < 0) return false;
  long long cls = classKey(c.basis[seed].alex, modulus);
  Expansion e;
  for (size_t i = 0; i < c.basis.size(); ++i)
    if (classKey(c.basis[i].alex, modulus) == cls) {
      e.slot[int(i)] = int(e.members.size());
      e.members.push_back(int(i));
    }
  for (size_t i = 0; i < vec.size(); ++i)
    if (vec[i] && !e.slot.count(int(i))) return false;
  e.levels = c.precision;
  F2Matrix d = expandDifferential(c, e);
  std::vector<uint8_t> x(e.dim(), 0);
  for (size_t i = 0; i < vec.size(); ++i)
    if (vec[i])
      for (int k = 0; k < e.levels; ++k)
        if ((vec[i] >> k) & 1) x[e.id(e.slot[int(i)], k)] = 1;
  // cycle?
  std::vector<uint8_t> img(e.dim(), 0);
  for (size_t cidx = 0; cidx < e.dim(); ++cidx)
    if (x[cidx])
      for (size_t r = 0; r < e.dim(); ++r)
        if (d.get(r, cidx)) img[r] ^= 1;
  for (uint8_t b : img)
    if (b) return false;
  // U^(N-1) x nonzero modulo boundaries?
  std::vector<uint8_t> ux = x;
  for (int j = 0; j + 1 < c.precision; ++j) {
    std::vector<uint8_t> w(ux.size(), 0);
    for (size_t p = 0; p < e.members.size(); ++p)
      for (int k = 0; k + 1 < e.levels; ++k)
        if (ux[e.id(int(p), k)]) w[e.id(int(p), k + 1)] = 1;
    ux = std::move(w);
  }
  auto B = imageBasis(d);
  size_t rkB = spanRank(B);
  return jointRank({ux}, B) > rkB;
}

std::map<Rational, int> bettiAtU0(const FUComplex& c) {
  // differential mod U on the track basis
  size_t n = c.basis.size();
  F2Matrix d(n, n);
  for (size_t s = 0; s < n; ++s)
    for (const auto& [dst, poly] : c.cols[s])
      if (poly & 1) d.set(dst, s, true);
  bool graded = true;
  for (const FUGen& g : c.basis) graded &= g.maslov.has_value();
  std::map<Rational, int> out;
  if (!graded) {
    size_t r = d.rank();
    out[Rational(0)] = int(n - 2 * r);
    return out;
  }
  // group by Maslov grading; homology dim in grading m is
  // dim_m - rank(d out of m) - rank(d into m)
  std::map<Rational, std::vector<size_t>> groups;
  for (size_t i = 0; i < n; ++i) groups[*c.basis[i].maslov].push_back(i);
  for (const auto& [m, members] : groups) {
    std::map<size_t, size_t> pos;
    for (size_t i = 0; i < members.size(); ++i) pos[members[i]] = i;
    F2Matrix outOf(n, members.size());
    F2Matrix into(members.size(), n);
    for (size_t j = 0; j < members.size(); ++j)
      for (const auto& [dst, poly] : c.cols[members[j]])
        if (poly & 1) outOf.set(dst, j, true);
    for (size_t s = 0; s < n; ++s)
      for (const auto& [dst, poly] : c.cols[s])
        if ((poly & 1) && pos.count(dst)) into.set(pos[dst], s, true);
    int b = int(members.size()) - int(outOf.rank()) - int(into.rank());
    if (b) out[m] = b;
  }
  return out;
}

/******** reduction over the truncated ring ********/

FUReduceResult fuReduce(const FUComplex& c) {
  int n = int(c.basis.size());
  int N = c.precision;
  std::vector<char> alive(n, 1);
  std::vector<std::map<int, UPoly>> cols = c.cols;
  // proj: original -> current (rows indexed by current = original index),
  // incl: current -> original
  std::vector<std::map<int, UPoly>> projCols(n), inclCols(n);
  for (int i = 0; i < n; ++i) {
    projCols[i][i] = 1;
    inclCols[i][i] = 1;
  }

  auto entry = [&](int s, int t) -> UPoly {
    auto it = cols[s].find(t);
    return it == cols[s].end() ? 0 : it->second;
  };

  while (true) {
    int px = -1, py = -1;
    for (int s = 0; s < n && px < 0; ++s) {
      if (!alive[s]) continue;
      for (const auto& [t, poly] : cols[s])
        if (t != s && (poly & 1) && !entry(s, s) && !entry(t, t)) {
          px = s;
          py = t;
          break;
        }
    }
    if (px < 0) break;
    UPoly cpiv = entry(px, py);
    UPoly ci = upolyInv(cpiv, N);

    std::vector<std::pair<int, UPoly>> intoY, outOfX;
    for (int s = 0; s < n; ++s) {
      if (!alive[s] || s == px) continue;
      UPoly p = entry(s, py);
      if (p) intoY.push_back({s, p});
    }
    for (const auto& [t, p] : cols[px])
      if (t != py) outOfX.push_back({t, p});

    for (const auto& [w, a] : intoY)
      for (const auto& [z, b] : outOfX) {
        UPoly add = upolyMul(b, upolyMul(ci, a, N), N);
        if (!add) continue;
        auto it = cols[w].find(z);
        if (it == cols[w].end())
          cols[w][z] = add;
        else {
          it->second ^= add;
          if (!it->second) cols[w].erase(it);
        }
      }
    alive[px] = alive[py] = 0;
    for (int s = 0; s < n; ++s) {
      if (s == px || s == py) {
        cols[s].clear();
        continue;
      }
      cols[s].erase(px);
      cols[s].erase(py);
    }

    // update equivalence columns:
    // proj o (y -> z with b*ci), kill x,y; incl gains w -> x with ci*a
    for (int orig = 0; orig < n; ++orig) {
      auto& pc = projCols[orig];
      auto ity = pc.find(py);
      UPoly ycoef = ity == pc.end() ? 0 : ity->second;
      if (ycoef) {
        for (const auto& [z, b] : outOfX) {
          if (!alive[z]) continue;
          UPoly add = upolyMul(upolyMul(b, ci, N), ycoef, N);
          if (!add) continue;
          pc[z] ^= add;
          if (!pc[z]) pc.erase(z);
        }
      }
      pc.erase(px);
      pc.erase(py);
    }
    for (const auto& [w, a] : intoY) {
      if (!alive[w]) continue;
      UPoly add = upolyMul(ci, a, N);
      // incl column of w gains inclCols[x] * add
      for (const auto& [orig, p] : inclCols[px]) {
        UPoly v = upolyMul(p, add, N);
        if (!v) continue;
        inclCols[w][orig] ^= v;
        if (!inclCols[w][orig]) inclCols[w].erase(orig);
      }
    }
    inclCols[px].clear();
    inclCols[py].clear();
  }

  FUReduceResult res;
  res.module.precision = N;
  std::vector<int> newIndex(n, -1);
  for (int i = 0; i < n; ++i)
    if (alive[i]) {
      newIndex[i] = int(res.module.basis.size());
      res.survivors.push_back(i);
      res.module.basis.push_back(c.basis[i]);
    }
  res.module.cols.resize(res.module.basis.size());
  for (int s = 0; s < n; ++s) {
    if (!alive[s]) continue;
    for (const auto& [t, p] : cols[s])
      res.module.addEntry(newIndex[s], newIndex[t], p);
  }
  // store proj (original -> reduced) and incl (reduced -> original)
  res.projRows.assign(res.module.basis.size(), {});
  for (int orig = 0; orig < n; ++orig)
    for (const auto& [cur, p] : projCols[orig])
      if (newIndex[cur] >= 0) res.projRows[newIndex[cur]][orig] = p;
  res.inclRows.assign(n, {});
  for (int cur = 0; cur < n; ++cur) {
    if (!alive[cur]) continue;
    for (const auto& [orig, p] : inclCols[cur])
      res.inclRows[orig][newIndex[cur]] = p;
  }
  return res;
}

std::vector<std::map<int, UPoly>> conjugateEndo(
    const FUReduceResult& r, const std::vector<std::map<int, UPoly>>& endo) {
  int N = r.module.precision;
  size_t m = r.module.basis.size();
  size_t n = r.inclRows.size();
  // column views of incl (reduced -> original) and proj (original -> reduced)
  std::vector<std::map<int, UPoly>> inclCols(m), projByOrig(n);
  for (size_t orig = 0; orig < n; ++orig)
    for (const auto& [red, p] : r.inclRows[orig]) inclCols[red][int(orig)] = p;
  for (size_t red = 0; red < r.projRows.size(); ++red)
    for (const auto& [orig, p] : r.projRows[red])
      projByOrig[orig][int(red)] = p;

  std::vector<std::map<int, UPoly>> out(m);
  for (size_t j = 0; j < m; ++j) {
    std::map<int, UPoly> mid;  // endo o incl, as original-index column
    for (const auto& [orig, p] : inclCols[j])
      for (const auto& [dst, q] : endo[orig]) {
        UPoly v = upolyMul(p, q, N);
        if (!v) continue;
        mid[dst] ^= v;
        if (!mid[dst]) mid.erase(dst);
      }
    for (const auto& [dst, p] : mid)
      for (const auto& [red, q] : projByOrig[dst]) {
        UPoly v = upolyMul(p, q, N);
        if (!v) continue;
        out[j][red] ^= v;
        if (!out[j][red]) out[j].erase(red);
      }
  }
  return out;
}

std::string HomologyReport::render() const {
  std::ostringstream os;
  for (const auto& [key, c] : classes) {
    os << (relative ? "A=" : "class ") << key << ": towers " << c.towers;
    if (!c.torsion.empty()) {
      os << ", torsion";
      for (const auto& [k, m] : c.torsion) os << " U^" << k << " x" << m;
    }
    if (c.warning) os << " [precision warning]";
    os << "\n";
  }
  if (classes.empty()) os << "trivial\n";
  return os.str();
}

}  // namespace ksa
