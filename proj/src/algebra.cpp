#include "ksa/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace ksa {

Term phiSigmaTerm(Term t) { return Term{t.a, t.b - t.a}; }
Term phiTauTerm(Term t) { return Term{t.b, t.b - t.a}; }

static Series phiMap(const Series& x, Term (*f)(Term)) {
  if (x.ring() != Ring::Idem0)
    throw RingMismatch("phi maps are defined on the idem0 corner");
  std::vector<Term> out;
  out.reserve(x.size());
  for (const Term& t : x.terms()) out.push_back(f(t));
  return Series(Ring::Idem1, x.policy(), std::move(out));
}

Series phiSigma(const Series& x) { return phiMap(x, phiSigmaTerm); }
Series phiTau(const Series& x) { return phiMap(x, phiTauTerm); }

// Chiral truncation per corner, mirroring the right-ideal filtration:
// the I0 corner discards max(a,b) > W; the decorated corner discards the
// rewrite images of those sets; the I1 corner is filtered by u-powers.
bool policyKeeps(const Policy& p, int left, int right, const DecTerm& t) {
  if (left == 0 && right == 0) {
    if (std::min(t.mono.a, t.mono.b) >= p.precision) return false;
  } else if (t.mono.a >= p.precision) {
    return false;
  }
  if (!p.chiralMode()) return true;
  switch (t.dec) {
    case Dec::None:
      if (left == 0)
        return std::max(t.mono.a, t.mono.b) <= p.window;
      return true;
    case Dec::Sigma:
      return std::max(t.mono.a, t.mono.a + t.mono.b) <= p.window;
    case Dec::Tau:
      return std::max(t.mono.a, t.mono.a - t.mono.b) <= p.window;
  }
  return true;
}

AlgebraElement::AlgebraElement(int left, int right, Policy p,
                               std::vector<DecTerm> terms)
    : left_(left), right_(right), policy_(p) {
  if (left == 0 && right == 1 && !terms.empty())
    throw std::invalid_argument("the corner I0*A*I1 is zero");
  for (const DecTerm& t : terms) {
    bool decorated = t.dec != Dec::None;
    if (decorated != (left == 1 && right == 0))
      throw std::invalid_argument("decoration incompatible with idempotents");
    if (t.mono.a < 0 || (left == 0 && right == 0 && t.mono.b < 0))
      throw std::invalid_argument("negative exponent in algebra term");
  }
  std::sort(terms.begin(), terms.end());
  for (size_t i = 0; i < terms.size();) {
    size_t j = i;
    while (j < terms.size() && terms[j] == terms[i]) ++j;
    if ((j - i) % 2 && policyKeeps(policy_, left_, right_, terms[i]))
      terms_.push_back(terms[i]);
    i = j;
  }
}

AlgebraElement AlgebraElement::idem(int i, Policy p) {
  return AlgebraElement(i, i, p, {DecTerm{Term{0, 0}, Dec::None}});
}

AlgebraElement AlgebraElement::fromSeries(const Series& s, int l, int r,
                                          Dec d) {
  std::vector<DecTerm> ts;
  ts.reserve(s.size());
  for (const Term& t : s.terms()) ts.push_back(DecTerm{t, d});
  return AlgebraElement(l, r, s.policy(), std::move(ts));
}

AlgebraElement AlgebraElement::sigma(Policy p) {
  return AlgebraElement(1, 0, p, {DecTerm{Term{0, 0}, Dec::Sigma}});
}

AlgebraElement AlgebraElement::tau(Policy p) {
  return AlgebraElement(1, 0, p, {DecTerm{Term{0, 0}, Dec::Tau}});
}

Series AlgebraElement::asSeries() const {
  if (left_ != right_)
    throw RingMismatch("asSeries on an off-diagonal element");
  Ring r = left_ == 0 ? Ring::Idem0 : Ring::Idem1;
  std::vector<Term> ts;
  for (const DecTerm& t : terms_) ts.push_back(t.mono);
  return Series(r, policy_, std::move(ts));
}

static Series decPart(const AlgebraElement& x, Dec d) {
  if (!(x.leftIdem() == 1 && x.rightIdem() == 0))
    throw RingMismatch("decorated parts live in the I1*A*I0 corner");
  std::vector<Term> ts;
  for (const DecTerm& t : x.terms())
    if (t.dec == d) ts.push_back(t.mono);
  return Series(Ring::Idem1, x.policy(), std::move(ts));
}

Series AlgebraElement::sigmaPart() const { return decPart(*this, Dec::Sigma); }
Series AlgebraElement::tauPart() const { return decPart(*this, Dec::Tau); }

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& rhs) {
  if (rhs.isZero()) return *this;
  if (isZero() && left_ == 0 && right_ == 0 && policy_ == Policy{}) {
    *this = rhs;  // default-constructed accumulator
    return *this;
  }
  if (left_ != rhs.left_ || right_ != rhs.right_)
    throw RingMismatch("adding elements from different corners");
  std::vector<DecTerm> merged;
  std::set_symmetric_difference(terms_.begin(), terms_.end(),
                                rhs.terms_.begin(), rhs.terms_.end(),
                                std::back_inserter(merged));
  terms_ = std::move(merged);
  return *this;
}

static std::optional<DecTerm> termMul(int /*l2*/, int r2, const DecTerm& x,
                                      int l1, int /*r1*/, const DecTerm& y) {
  if (r2 != l1) return std::nullopt;
  // x sits in corner (l2, r2), y in (l1, r1); result in (l2, r1).
  if (x.dec == Dec::None && y.dec == Dec::None)
    return DecTerm{Term{x.mono.a + y.mono.a, x.mono.b + y.mono.b}, Dec::None};
  if (x.dec == Dec::None) {
    // (1,1) times decorated
    return DecTerm{Term{x.mono.a + y.mono.a, x.mono.b + y.mono.b}, y.dec};
  }
  if (y.dec == Dec::None) {
    // decorated times (0,0): rewrite through the corresponding phi
    Term img = x.dec == Dec::Sigma ? phiSigmaTerm(y.mono) : phiTauTerm(y.mono);
    return DecTerm{Term{x.mono.a + img.a, x.mono.b + img.b}, x.dec};
  }
  return std::nullopt;  // unreachable: r2 == l1 fails for two decorations
}

AlgebraElement algMul(const AlgebraElement& a, const AlgebraElement& b) {
  if (!(a.policy() == b.policy()))
    throw RingMismatch("algMul: policies differ");
  AlgebraElement zero(a.leftIdem(), b.rightIdem(), a.policy());
  if (a.rightIdem() != b.leftIdem()) return zero;
  std::vector<DecTerm> prod;
  prod.reserve(a.terms().size() * b.terms().size());
  for (const DecTerm& x : a.terms())
    for (const DecTerm& y : b.terms())
      if (auto t = termMul(a.leftIdem(), a.rightIdem(), x, b.leftIdem(),
                           b.rightIdem(), y))
        prod.push_back(*t);
  return AlgebraElement(a.leftIdem(), b.rightIdem(), a.policy(),
                        std::move(prod));
}

Gradings AlgebraElement::gradings() const {
  Gradings g;
  if (terms_.empty()) return g;
  Ring bodyRing = (left_ == 0 && right_ == 0) ? Ring::Idem0 : Ring::Idem1;
  bool homA = true, homW = true, homZ = true;
  int A = ksa::alexander(bodyRing, terms_[0].mono);
  int W = ksa::grW(bodyRing, terms_[0].mono);
  int Z = ksa::grZ(bodyRing, terms_[0].mono);
  for (const DecTerm& t : terms_) {
    homA &= ksa::alexander(bodyRing, t.mono) == A;
    homW &= ksa::grW(bodyRing, t.mono) == W;
    homZ &= ksa::grZ(bodyRing, t.mono) == Z;
  }
  if (homA) g.alexander = A;
  if (homW) g.grw = W;
  if (homZ) g.grz = Z;
  return g;
}

bool AlgebraElement::isIdempotentUnit() const {
  return left_ == right_ && terms_.size() == 1 &&
         terms_[0] == DecTerm{Term{0, 0}, Dec::None};
}

std::string renderDecTerm(int left, int right, const DecTerm& t) {
  Ring bodyRing = (left == 0 && right == 0) ? Ring::Idem0 : Ring::Idem1;
  std::string body = renderTerm(bodyRing, t.mono);
  if (t.dec == Dec::None) return body;
  std::string d = t.dec == Dec::Sigma ? "s" : "t";
  if (body == "1") return d;
  return body + "*" + d;
}

std::string AlgebraElement::render() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (i) os << " + ";
    os << renderDecTerm(left_, right_, terms_[i]);
  }
  return os.str();
}

/******** tensor elements ********/

TensorElement::TensorElement(std::vector<uint8_t> left,
                             std::vector<uint8_t> right, Policy p,
                             std::vector<TensorTerm> terms)
    : left_(std::move(left)), right_(std::move(right)), policy_(p) {
  for (const TensorTerm& t : terms)
    if (t.factors.size() != left_.size())
      throw std::invalid_argument("tensor term arity mismatch");
  std::sort(terms.begin(), terms.end());
  for (size_t i = 0; i < terms.size();) {
    size_t j = i;
    while (j < terms.size() && terms[j] == terms[i]) ++j;
    if ((j - i) % 2) {
      bool keep = true;
      for (size_t k = 0; k < left_.size(); ++k)
        keep &= policyKeeps(policy_, left_[k], right_[k], terms[i].factors[k]);
      if (keep) terms_.push_back(terms[i]);
    }
    i = j;
  }
}

TensorElement TensorElement::fromAlgebra(const AlgebraElement& a) {
  std::vector<TensorTerm> ts;
  for (const DecTerm& t : a.terms()) ts.push_back(TensorTerm{{t}});
  return TensorElement({uint8_t(a.leftIdem())}, {uint8_t(a.rightIdem())},
                       a.policy(), std::move(ts));
}

TensorElement TensorElement::tensor(
    const std::vector<AlgebraElement>& factors) {
  if (factors.empty()) throw std::invalid_argument("empty tensor");
  std::vector<uint8_t> l, r;
  for (const AlgebraElement& f : factors) {
    l.push_back(uint8_t(f.leftIdem()));
    r.push_back(uint8_t(f.rightIdem()));
  }
  std::vector<TensorTerm> terms{TensorTerm{{}}};
  for (const AlgebraElement& f : factors) {
    std::vector<TensorTerm> next;
    for (const TensorTerm& t : terms)
      for (const DecTerm& d : f.terms()) {
        TensorTerm e = t;
        e.factors.push_back(d);
        next.push_back(std::move(e));
      }
    terms = std::move(next);
  }
  return TensorElement(std::move(l), std::move(r), factors[0].policy(),
                       std::move(terms));
}

AlgebraElement TensorElement::factorAsAlgebra(size_t termIndex,
                                              size_t factor) const {
  const DecTerm& d = terms_[termIndex].factors[factor];
  return AlgebraElement(left_[factor], right_[factor], policy_, {d});
}

AlgebraElement TensorElement::asAlgebra() const {
  if (arity() != 1) throw std::invalid_argument("asAlgebra needs arity 1");
  std::vector<DecTerm> ts;
  for (const TensorTerm& t : terms_) ts.push_back(t.factors[0]);
  return AlgebraElement(left_[0], right_[0], policy_, std::move(ts));
}

TensorElement& TensorElement::operator+=(const TensorElement& rhs) {
  if (rhs.isZero() && !rhs.arity()) return *this;
  if (left_.empty()) {
    *this = rhs;
    return *this;
  }
  if (rhs.left_.empty()) return *this;
  if (left_ != rhs.left_ || right_ != rhs.right_)
    throw RingMismatch("tensor add: idempotent vectors differ");
  std::vector<TensorTerm> merged;
  std::set_symmetric_difference(terms_.begin(), terms_.end(),
                                rhs.terms_.begin(), rhs.terms_.end(),
                                std::back_inserter(merged));
  terms_ = std::move(merged);
  return *this;
}

TensorElement tensorMul(const TensorElement& a, const TensorElement& b) {
  if (a.arity() != b.arity())
    throw RingMismatch("tensorMul: arity mismatch");
  TensorElement zero(a.leftIdem(), b.rightIdem(), a.policy());
  if (a.rightIdem() != b.leftIdem()) return zero;
  std::vector<TensorTerm> prod;
  for (const TensorTerm& x : a.terms())
    for (const TensorTerm& y : b.terms()) {
      TensorTerm out;
      bool ok = true;
      for (size_t k = 0; k < a.arity() && ok; ++k) {
        auto t = termMul(a.leftIdem()[k], a.rightIdem()[k], x.factors[k],
                         b.leftIdem()[k], b.rightIdem()[k], y.factors[k]);
        if (!t)
          ok = false;
        else
          out.factors.push_back(*t);
      }
      if (ok) prod.push_back(std::move(out));
    }
  return TensorElement(a.leftIdem(), b.rightIdem(), a.policy(),
                       std::move(prod));
}

bool TensorElement::isIdempotentUnit() const {
  if (left_ != right_ || terms_.size() != 1) return false;
  for (const DecTerm& d : terms_[0].factors)
    if (!(d == DecTerm{Term{0, 0}, Dec::None})) return false;
  return true;
}

std::string TensorElement::render() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool parens = arity() > 1 && terms_.size() > 1;
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (i) os << " + ";
    if (parens) os << "(";
    for (size_t k = 0; k < arity(); ++k) {
      if (k) os << " | ";
      os << renderDecTerm(left_[k], right_[k], terms_[i].factors[k]);
    }
    if (parens) os << ")";
  }
  return os.str();
}

}  // namespace ksa
