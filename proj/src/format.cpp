#include "ksa/format.hpp"

#include <charconv>
#include <sstream>

namespace ksa {

namespace {

std::vector<std::string> splitWs(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

int parseInt(const std::string& s, int line) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw ParseError(line, "expected an integer, got '" + s + "'");
  return v;
}

Rational parseRational(const std::string& s, int line) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parseInt(s, line));
  return Rational(parseInt(s.substr(0, slash), line),
                  parseInt(s.substr(slash + 1), line));
}

// split at top-level occurrences of a single-character separator
std::vector<std::string> splitTop(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

DecTerm parseMonoTerm(const std::string& text, uint8_t l, uint8_t r,
                      int line) {
  DecTerm out{Term{0, 0}, Dec::None};
  bool idem0 = (l == 0 && r == 0);
  for (const std::string& rawTok : splitTop(text, '*')) {
    std::string tok = strip(rawTok);
    if (tok.empty()) throw ParseError(line, "empty factor in monomial");
    if (tok == "1") continue;
    if (tok == "s" || tok == "t") {
      if (out.dec != Dec::None)
        throw ParseError(line, "two decorations in one term");
      out.dec = tok == "s" ? Dec::Sigma : Dec::Tau;
      continue;
    }
    char var = tok[0];
    int exp = 1;
    if (tok.size() > 1) {
      if (tok[1] != '^')
        throw ParseError(line, "expected '^' in '" + tok + "'");
      exp = parseInt(tok.substr(2), line);
    }
    if (idem0) {
      if (var == 'U')
        out.mono.a += exp;
      else if (var == 'V')
        out.mono.b += exp;
      else
        throw ParseError(line, std::string("variable '") + var +
                                   "' is not valid in the idempotent-0 corner");
    } else {
      if (var == 'u' || var == 'U')
        out.mono.a += exp;
      else if (var == 'T')
        out.mono.b += exp;
      else
        throw ParseError(line, std::string("variable '") + var +
                                   "' is not valid in this corner");
    }
  }
  bool needDec = (l == 1 && r == 0);
  if (needDec != (out.dec != Dec::None))
    throw ParseError(line, needDec ? "missing s/t decoration"
                                   : "decoration in a diagonal corner");
  if (out.mono.a < 0 || (idem0 && out.mono.b < 0))
    throw ParseError(line, "negative exponent");
  return out;
}

TensorTerm parseTensorStr(const std::string& text,
                          const std::vector<uint8_t>& l,
                          const std::vector<uint8_t>& r, int line,
                          std::vector<TensorTerm>* expandInto) {
  // text has no top-level '+'; split factors on '|'
  std::vector<std::string> parts = splitTop(text, '|');
  if (parts.size() != l.size())
    throw ParseError(line, "element has " + std::to_string(parts.size()) +
                               " factors, expected " +
                               std::to_string(l.size()));
  // each factor may be a parenthesized sum
  std::vector<std::vector<DecTerm>> perFactor(parts.size());
  for (size_t i = 0; i < parts.size(); ++i) {
    std::string p = strip(parts[i]);
    if (p.size() >= 2 && p.front() == '(' && p.back() == ')')
      p = strip(p.substr(1, p.size() - 2));
    for (const std::string& summand : splitTop(p, '+')) {
      std::string s = strip(summand);
      if (s.empty()) throw ParseError(line, "empty summand");
      perFactor[i].push_back(parseMonoTerm(s, l[i], r[i], line));
    }
  }
  // expand the product of sums
  std::vector<TensorTerm> acc{TensorTerm{{}}};
  for (auto& opts : perFactor) {
    std::vector<TensorTerm> next;
    for (auto& t : acc)
      for (auto& d : opts) {
        TensorTerm e = t;
        e.factors.push_back(d);
        next.push_back(std::move(e));
      }
    acc = std::move(next);
  }
  for (auto& t : acc) expandInto->push_back(std::move(t));
  return TensorTerm{};
}

}  // namespace

TensorElement parseElement(const std::string& text,
                           const std::vector<uint8_t>& leftIdem,
                           const std::vector<uint8_t>& rightIdem, Policy p,
                           int line) {
  std::string body = strip(text);
  if (body == "0")
    return TensorElement(leftIdem, rightIdem, p);
  std::vector<TensorTerm> terms;
  std::vector<std::string> tensors = splitTop(body, '|');
  if (tensors.size() == size_t(1) && leftIdem.size() > 1) {
    // a sum of parenthesized tensor groups
    for (const std::string& group : splitTop(body, '+')) {
      std::string g = strip(group);
      if (g.size() >= 2 && g.front() == '(' && g.back() == ')')
        g = strip(g.substr(1, g.size() - 2));
      parseTensorStr(g, leftIdem, rightIdem, line, &terms);
    }
  } else {
    parseTensorStr(body, leftIdem, rightIdem, line, &terms);
  }
  return TensorElement(leftIdem, rightIdem, p, std::move(terms));
}

Policy parsePolicy(const std::string& text, int line) {
  std::vector<std::string> w = splitWs(text);
  if (w.size() == 2 && w[0] == "uadic") return Policy::uadic(parseInt(w[1], line));
  if (w.size() == 3 && w[0] == "chiral")
    return Policy::chiral(parseInt(w[1], line), parseInt(w[2], line));
  throw ParseError(line, "policy must be 'uadic N' or 'chiral W N'");
}

ModuleFile parseModule(const std::string& text) {
  ModuleFile out;
  std::istringstream is(text);
  std::string rawLine;
  int lineNo = 0;
  int arity = -1;
  std::optional<Policy> policy;
  std::string name;
  struct PendingArrow {
    std::string src, dst, element;
    int line;
  };
  std::vector<PendingArrow> arrows;
  std::vector<std::pair<std::string, Rational>> cfk;
  std::vector<Generator> gens;
  std::vector<int> genLines;

  while (std::getline(is, rawLine)) {
    ++lineNo;
    std::string line = strip(rawLine);
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("module:", 0) == 0) {
      name = strip(line.substr(7));
      continue;
    }
    if (line.rfind("arity:", 0) == 0) {
      arity = parseInt(strip(line.substr(6)), lineNo);
      continue;
    }
    if (line.rfind("policy:", 0) == 0) {
      policy = parsePolicy(strip(line.substr(7)), lineNo);
      continue;
    }
    if (line.rfind("framing:", 0) == 0) {
      out.framing = parseInt(strip(line.substr(8)), lineNo);
      continue;
    }
    std::vector<std::string> w = splitWs(line);
    if (w[0] == "gen") {
      if (w.size() < 3) throw ParseError(lineNo, "gen needs a name and idempotents");
      Generator g;
      g.name = w[1];
      for (char c : w[2]) {
        if (c != '0' && c != '1')
          throw ParseError(lineNo, "idempotent vector must be 0/1 bits");
        g.idem.push_back(c - '0');
      }
      size_t i = 3;
      while (i < w.size()) {
        if (w[i] == "maslov" && i + 1 < w.size()) {
          g.maslov = parseRational(w[i + 1], lineNo);
          i += 2;
        } else if (w[i] == "alex") {
          std::vector<Rational> a;
          ++i;
          while (i < w.size() && w[i] != "maslov")
            a.push_back(parseRational(w[i++], lineNo));
          g.alex = a;
        } else {
          throw ParseError(lineNo, "unknown generator field '" + w[i] + "'");
        }
      }
      gens.push_back(g);
      genLines.push_back(lineNo);
      continue;
    }
    if (w[0] == "arrow") {
      auto colon = line.find(':');
      if (colon == std::string::npos)
        throw ParseError(lineNo, "arrow needs ': element'");
      std::vector<std::string> head = splitWs(line.substr(0, colon));
      if (head.size() != 4 || head[2] != "->")
        throw ParseError(lineNo, "arrow syntax: arrow src -> dst : element");
      arrows.push_back(PendingArrow{head[1], head[3],
                                    strip(line.substr(colon + 1)), lineNo});
      continue;
    }
    if (w[0] == "cfk") {
      if (w.size() != 3) throw ParseError(lineNo, "cfk syntax: cfk gen value");
      cfk.push_back({w[1], parseRational(w[2], lineNo)});
      continue;
    }
    throw ParseError(lineNo, "unknown directive '" + w[0] + "'");
  }
  if (arity < 1) throw ParseError(lineNo, "missing or bad arity");
  if (!policy) throw ParseError(lineNo, "missing policy");
  out.module = TypeDModule(arity, *policy);
  out.module.name = name;
  for (size_t i = 0; i < gens.size(); ++i) {
    if (int(gens[i].idem.size()) != arity)
      throw ParseError(genLines[i], "idempotent vector length != arity");
    if (gens[i].alex && int(gens[i].alex->size()) != arity)
      throw ParseError(genLines[i], "alexander vector length != arity");
    out.module.addGenerator(gens[i]);
  }
  for (const auto& a : arrows) {
    int s = out.module.genIndex(a.src), d = out.module.genIndex(a.dst);
    if (s < 0 || d < 0)
      throw ParseError(a.line, "arrow references an unknown generator");
    TensorElement e =
        parseElement(a.element, out.module.gen(d).idem,
                     out.module.gen(s).idem, *policy, a.line);
    out.module.addArrow(s, d, e);
  }
  for (const auto& [gname, a] : cfk) {
    int g = out.module.genIndex(gname);
    if (g < 0) throw ParseError(0, "cfk references unknown generator " + gname);
    Generator& gen = out.module.gen(g);
    if (gen.idem[0] != 0)
      throw ParseError(0, "cfk data on a non idempotent-0 generator");
    if (!gen.alex) gen.alex = std::vector<Rational>(arity, Rational(0));
    (*gen.alex)[0] = a;
  }
  return out;
}

std::string emitModule(const TypeDModule& m, std::optional<int> framing) {
  std::ostringstream os;
  if (!m.name.empty()) os << "module: " << m.name << "\n";
  os << "arity: " << m.arity() << "\n";
  os << "policy: " << m.policy().describe() << "\n";
  if (framing) os << "framing: " << *framing << "\n";
  for (size_t i = 0; i < m.genCount(); ++i) {
    const Generator& g = m.gen(int(i));
    os << "gen " << g.name << " ";
    for (uint8_t e : g.idem) os << int(e);
    if (g.maslov) os << " maslov " << g.maslov->str();
    if (g.alex) {
      os << " alex";
      for (const Rational& r : *g.alex) os << " " << r.str();
    }
    os << "\n";
  }
  for (const auto& [k, c] : m.arrows())
    os << "arrow " << m.gen(k.first).name << " -> " << m.gen(k.second).name
       << " : " << c.render() << "\n";
  return os.str();
}

KnotPresentation parseKnot(const std::string& text) {
  ModuleFile f = parseModule(text);
  if (!f.framing) throw ParseError(0, "knot presentation needs framing:");
  KnotPresentation k;
  k.module = f.module;
  k.framing = *f.framing;
  k.name = f.module.name;
  KnotCheck chk = validateKnot(k);
  if (!chk.ok)
    throw std::runtime_error("validation failed: " + chk.firstViolation);
  return k;
}

std::string emitKnot(const KnotPresentation& k) {
  return emitModule(k.module, k.framing);
}

}  // namespace ksa
