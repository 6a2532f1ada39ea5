#include "ksa/coeff.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace ksa {

std::string ringName(Ring r) {
  switch (r) {
    case Ring::Idem0: return "idem0";
    case Ring::Idem1: return "idem1";
    case Ring::PlainU: return "plainU";
  }
  return "?";
}

int ulevel(Ring r, Term t) {
  return r == Ring::Idem0 ? std::min(t.a, t.b) : t.a;
}

int alexander(Ring r, Term t) {
  switch (r) {
    case Ring::Idem0: return t.b - t.a;
    case Ring::Idem1: return t.b;
    case Ring::PlainU: return 0;
  }
  return 0;
}

int grW(Ring, Term t) { return -2 * t.a; }

int grZ(Ring r, Term t) { return r == Ring::Idem0 ? -2 * t.b : -2 * t.a; }

bool Policy::keeps(Ring r, Term t) const {
  if (ulevel(r, t) >= precision) return false;
  if (mode == Mode::Chiral && r == Ring::Idem0 &&
      std::max(t.a, t.b) > window)
    return false;
  return true;
}

std::string Policy::describe() const {
  std::ostringstream os;
  if (mode == Mode::UAdic)
    os << "uadic " << precision;
  else
    os << "chiral " << window << " " << precision;
  return os.str();
}

Series::Series(Ring r, Policy p, std::vector<Term> terms)
    : ring_(r), policy_(p) {
  std::sort(terms.begin(), terms.end());
  for (size_t i = 0; i < terms.size();) {
    size_t j = i;
    while (j < terms.size() && terms[j] == terms[i]) ++j;
    if ((j - i) % 2 && policy_.keeps(ring_, terms[i]))
      terms_.push_back(terms[i]);
    i = j;
  }
  for (const Term& t : terms_) {
    if (t.a < 0 || (ring_ != Ring::Idem1 && t.b < 0) ||
        (ring_ == Ring::PlainU && t.b != 0))
      throw std::invalid_argument("negative exponent in " + ringName(ring_) +
                                  " term");
  }
}

bool Series::isOne() const {
  return terms_.size() == 1 && terms_[0] == Term{0, 0};
}

Series Series::one(Ring r, Policy p) { return monomial(r, p, Term{0, 0}); }

Series Series::monomial(Ring r, Policy p, Term t) {
  return Series(r, p, std::vector<Term>{t});
}

Series Series::laurent(Ring r, Policy p, int a, int b, int uPow) {
  if (r == Ring::Idem0) {
    a += uPow;
    b += uPow;
  } else {
    a += uPow;
    if (r == Ring::PlainU) b = 0;
  }
  return Series(r, p, std::vector<Term>{Term{a, b}});
}

Series& Series::operator+=(const Series& rhs) {
  if (ring_ != rhs.ring_ || !(policy_ == rhs.policy_)) {
    if (terms_.empty() && policy_ == Policy{} && ring_ == Ring::Idem0) {
      // default-constructed accumulator adopts the other side
      ring_ = rhs.ring_;
      policy_ = rhs.policy_;
    } else {
      throw RingMismatch("add: " + ringName(ring_) + " vs " +
                         ringName(rhs.ring_));
    }
  }
  std::vector<Term> merged;
  std::set_symmetric_difference(terms_.begin(), terms_.end(),
                                rhs.terms_.begin(), rhs.terms_.end(),
                                std::back_inserter(merged));
  terms_ = std::move(merged);
  return *this;
}

Series Series::modU() const {
  std::vector<Term> kept;
  for (const Term& t : terms_)
    if (ulevel(ring_, t) == 0) kept.push_back(t);
  return Series(ring_, policy_, std::move(kept));
}

int Series::minULevel() const {
  int lv = policy_.precision;
  for (const Term& t : terms_) lv = std::min(lv, ulevel(ring_, t));
  return lv;
}

bool Series::homogeneousAlexander(int* out) const {
  if (terms_.empty()) return true;
  int a = alexander(ring_, terms_[0]);
  for (const Term& t : terms_)
    if (alexander(ring_, t) != a) return false;
  if (out) *out = a;
  return true;
}

Series mul(const Series& x, const Series& y) {
  if (x.ring() != y.ring() || !(x.policy() == y.policy()))
    throw RingMismatch("mul: " + ringName(x.ring()) + "/" +
                       x.policy().describe() + " vs " + ringName(y.ring()) +
                       "/" + y.policy().describe());
  std::vector<Term> prod;
  prod.reserve(x.size() * y.size());
  for (const Term& s : x.terms())
    for (const Term& t : y.terms())
      prod.push_back(Term{s.a + t.a, s.b + t.b});
  return Series(x.ring(), x.policy(), std::move(prod));
}

Series mulTerm(const Series& x, Term t) {
  std::vector<Term> prod;
  prod.reserve(x.size());
  for (const Term& s : x.terms()) prod.push_back(Term{s.a + t.a, s.b + t.b});
  return Series(x.ring(), x.policy(), std::move(prod));
}

// Unit criteria.
//  UAdic: x = u + U*r with u = 1 (Idem0, PlainU) or a single monomial T^k
//  (Idem1).
//  Chiral, Idem0/PlainU: the (U-level 0, Alexander 0) coefficient is 1;
//  the level-0 tail consists of pure powers of one variable, which the
//  window kills, so the Neumann series terminates.
//  Chiral, Idem1: same as UAdic — the chiral filtration on this corner is
//  by u-powers only, so T-polynomials such as 1+T stay non-invertible.
bool isUnit(const Series& x, std::string* why) {
  Series lead = x.modU();
  bool uadicLike = x.policy().mode == Policy::Mode::UAdic ||
                   x.ring() != Ring::Idem0;
  if (uadicLike) {
    if (lead.size() != 1) {
      if (why)
        *why = "U-level-0 part is not a single monomial (uadic criterion)";
      return false;
    }
    Term t = lead.terms()[0];
    bool ok = (x.ring() == Ring::Idem1) ? (t.a == 0) : (t == Term{0, 0});
    if (!ok && why)
      *why = "U-level-0 part is not 1" +
             std::string(x.ring() == Ring::Idem1 ? " (nor a T-power)" : "");
    return ok;
  }
  // chiral Idem0
  bool hasOne = false;
  for (const Term& t : lead.terms()) {
    if (t == Term{0, 0}) hasOne = true;
    else if (t.a != 0 && t.b != 0)
      return (why ? (*why = "mixed U*V term at U-level 0", false) : false);
  }
  if (!hasOne && why) *why = "constant coefficient is 0 (chiral criterion)";
  return hasOne;
}

Series invert(const Series& x) {
  std::string why;
  if (!isUnit(x, &why)) throw NotAUnit("not a unit: " + why);
  Series lead = x.modU();
  Series leadInv = Series::one(x.ring(), x.policy());
  Series r = x;
  if (x.policy().mode == Policy::Mode::UAdic || x.ring() != Ring::Idem0) {
    Term t = lead.terms()[0];  // 1 or T^k
    leadInv = Series::monomial(x.ring(), x.policy(), Term{0, -t.b});
    r = mul(x, leadInv);  // now r = 1 + nilpotent-at-precision
  }
  Series one = Series::one(x.ring(), x.policy());
  Series tail = r + one;
  // inverse of 1 + tail as a terminating Neumann series
  Series acc = one;
  Series pw = tail;
  int guard = 4 * (x.policy().precision + x.policy().window + 2) *
              (x.policy().precision + x.policy().window + 2);
  while (!pw.isZero()) {
    acc += pw;
    pw = mul(pw, tail);
    if (--guard < 0)
      throw NotAUnit("Neumann series did not terminate at this truncation");
  }
  Series inv = mul(leadInv, acc);
  if (!mul(x, inv).isOne())
    throw NotAUnit("inverse failed post-verification");
  return inv;
}

// Division as exact F2 linear algebra over the finite monomial box
// bounded by the policy and degreeBound, solved by Gaussian elimination
// with the unknown monomials ordered by (U-level, lex).
DivideResult divide(const Series& dividend, const Series& divisor,
                    int degreeBound) {
  DivideResult res;
  if (dividend.ring() != divisor.ring() ||
      !(dividend.policy() == divisor.policy()))
    throw RingMismatch("divide: operand rings/policies differ");
  Ring r = dividend.ring();
  Policy pol = dividend.policy();

  std::vector<Term> unknowns;
  if (r == Ring::Idem0) {
    for (int a = 0; a <= degreeBound; ++a)
      for (int b = 0; b <= degreeBound; ++b)
        if (pol.keeps(r, Term{a, b})) unknowns.push_back(Term{a, b});
  } else {
    int tMax = (r == Ring::Idem1) ? degreeBound : 0;
    for (int a = 0; a < pol.precision; ++a)
      for (int b = -tMax; b <= tMax; ++b)
        if (pol.keeps(r, Term{a, b})) unknowns.push_back(Term{a, b});
  }
  std::sort(unknowns.begin(), unknowns.end(), [&](Term s, Term t) {
    int ls = ulevel(r, s), lt = ulevel(r, t);
    return ls != lt ? ls < lt : s < t;
  });

  // column j of the system = divisor * unknown_j, truncated
  std::map<Term, size_t> rowIndex;
  std::vector<std::vector<size_t>> cols(unknowns.size());
  auto rowOf = [&](Term t) {
    auto [it, inserted] = rowIndex.try_emplace(t, rowIndex.size());
    return it->second;
  };
  for (size_t j = 0; j < unknowns.size(); ++j) {
    Series col = mulTerm(divisor, unknowns[j]);
    for (const Term& t : col.terms()) cols[j].push_back(rowOf(t));
  }
  for (const Term& t : dividend.terms()) rowOf(t);

  size_t nrows = rowIndex.size();
  size_t words = (unknowns.size() + 1 + 63) / 64;
  std::vector<std::vector<uint64_t>> mat(nrows,
                                         std::vector<uint64_t>(words, 0));
  auto flip = [&](size_t row, size_t col) { mat[row][col / 64] ^= 1ull << (col % 64); };
  auto get = [&](size_t row, size_t col) {
    return (mat[row][col / 64] >> (col % 64)) & 1ull;
  };
  for (size_t j = 0; j < cols.size(); ++j)
    for (size_t row : cols[j]) flip(row, j);
  size_t rhsCol = unknowns.size();
  for (const Term& t : dividend.terms()) flip(rowIndex[t], rhsCol);

  // plain elimination
  std::vector<size_t> pivotRowOfCol(unknowns.size(), SIZE_MAX);
  size_t rank = 0;
  for (size_t j = 0; j < unknowns.size() && rank < nrows; ++j) {
    size_t piv = SIZE_MAX;
    for (size_t i = rank; i < nrows; ++i)
      if (get(i, j)) { piv = i; break; }
    if (piv == SIZE_MAX) continue;
    std::swap(mat[piv], mat[rank]);
    for (size_t i = 0; i < nrows; ++i)
      if (i != rank && get(i, j))
        for (size_t w = 0; w < words; ++w) mat[i][w] ^= mat[rank][w];
    pivotRowOfCol[j] = rank;
    ++rank;
  }

  std::vector<Term> qterms;
  for (size_t j = 0; j < unknowns.size(); ++j)
    if (pivotRowOfCol[j] != SIZE_MAX && get(pivotRowOfCol[j], rhsCol))
      qterms.push_back(unknowns[j]);
  Series q(r, pol, std::move(qterms));

  if (mul(q, divisor) + dividend == Series::zero(r, pol)) {
    res.ok = true;
    res.quotient = q;
    return res;
  }
  Series residual = mul(q, divisor) + dividend;
  res.ok = false;
  res.failLevel = residual.minULevel();
  return res;
}

std::string renderTerm(Ring r, Term t) {
  std::ostringstream os;
  const char* va = (r == Ring::Idem0) ? "U" : "u";
  const char* vb = (r == Ring::Idem0) ? "V" : "T";
  bool any = false;
  if (t.a != 0) {
    os << va << "^" << t.a;
    any = true;
  }
  if (t.b != 0 && r != Ring::PlainU) {
    if (any) os << "*";
    os << vb << "^" << t.b;
    any = true;
  }
  if (!any) os << "1";
  return os.str();
}

std::string Series::render() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (i) os << " + ";
    os << renderTerm(ring_, terms_[i]);
  }
  return os.str();
}

}  // namespace ksa
