// Command-line front end: validation, pairing, reduction, homology,
// surgery reports, series and triangle checks, local-model checks, and
// the self-test battery.
//
// Exit codes: 0 success, 2 residue/check failure, 3 precision warning,
// 4 input error.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ksa/acceptance.hpp"
#include "ksa/format.hpp"

using namespace ksa;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitResidue = 2;
constexpr int kExitPrecisionWarning = 3;
constexpr int kExitInput = 4;

std::string readFile(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

struct CommonOpts {
  std::string mode = "uadic";
  int precision = 16;
  int window = 8;

  Policy policy() const {
    if (mode == "uadic") return Policy::uadic(precision);
    if (mode == "chiral") return Policy::chiral(window, precision);
    throw std::runtime_error("mode must be uadic or chiral");
  }
};

void addCommon(CLI::App* app, CommonOpts& o) {
  app->add_option("--mode", o.mode, "uadic or chiral")
      ->check(CLI::IsMember({"uadic", "chiral"}));
  app->add_option("--precision", o.precision, "U-adic precision N");
  app->add_option("--window", o.window, "Alexander window W");
}

KnotPresentation presetKnot(const std::string& preset, int framing,
                            Policy p) {
  if (preset == "unknot") return unknotPresentation(framing, p);
  if (preset == "trefoil") return trefoilPresentation(framing, p);
  throw std::runtime_error("unknown preset " + preset +
                           " (have: unknot, trefoil)");
}

KnotPresentation loadOrPreset(const std::string& file,
                              const std::string& preset, int framing,
                              Policy p) {
  if (!file.empty()) {
    KnotPresentation k = parseKnot(readFile(file));
    k.module = k.module.withPolicy(p);
    return k;
  }
  return presetKnot(preset, framing, p);
}

int reportHomology(const HomologyReport& rep) {
  std::cout << rep.render();
  std::cout << "result:\n";
  for (const auto& [k, c] : rep.classes) {
    std::cout << "  class " << k << " towers " << c.towers << " torsion";
    for (auto& [o, m] : c.torsion) std::cout << " " << o << "x" << m;
    std::cout << "\n";
  }
  return rep.anyWarning() ? kExitPrecisionWarning : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"knot surgery algebra toolkit"};
  app.require_subcommand(1);

  CommonOpts opts;

  // validate
  auto* cmdValidate = app.add_subcommand("validate", "structure relation");
  std::string validateFile;
  cmdValidate->add_option("file", validateFile, "module file")->required();

  // box
  auto* cmdBox = app.add_subcommand("box", "pair a module file");
  std::string boxFile, boxWith = "d0";
  int phiN = 0, phiM = 1;
  cmdBox->add_option("file", boxFile)->required();
  cmdBox->add_option("--with", boxWith, "d0 | identity | phi");
  cmdBox->add_option("--phi-n", phiN);
  cmdBox->add_option("--phi-m", phiM);
  addCommon(cmdBox, opts);

  // reduce
  auto* cmdReduce = app.add_subcommand("reduce", "minimal model");
  std::string reduceFile;
  cmdReduce->add_option("file", reduceFile)->required();

  // homology
  auto* cmdHomology = app.add_subcommand("homology", "towers and torsion");
  std::string homFile;
  long long homModulus = 0;
  cmdHomology->add_option("file", homFile)->required();
  cmdHomology->add_option("--modulus", homModulus, "class modulus");
  addCommon(cmdHomology, opts);

  // surgery
  auto* cmdSurgery = app.add_subcommand("surgery", "surgery homology");
  std::string surgPreset = "unknot", surgFile;
  int surgFraming = 1;
  cmdSurgery->add_option("--preset", surgPreset, "unknot | trefoil");
  cmdSurgery->add_option("--knot", surgFile, "knot presentation file");
  cmdSurgery->add_option("--framing", surgFraming);
  addCommon(cmdSurgery, opts);

  // glue
  auto* cmdGlue = app.add_subcommand("glue", "pair two knot complements");
  std::string glueLeft = "unknot:0", glueRight = "unknot:0";
  cmdGlue->add_option("--left", glueLeft, "preset:framing");
  cmdGlue->add_option("--right", glueRight, "preset:framing");
  addCommon(cmdGlue, opts);

  // h1
  auto* cmdH1 = app.add_subcommand("h1", "homology action");
  std::string h1Preset = "unknot";
  int h1Framing = 0;
  cmdH1->add_option("--preset", h1Preset);
  cmdH1->add_option("--framing", h1Framing);
  addCommon(cmdH1, opts);

  // gradings
  auto* cmdGr = app.add_subcommand("gradings", "d-invariant report");
  std::string grPreset = "unknot";
  int grFraming = 1;
  cmdGr->add_option("--preset", grPreset);
  cmdGr->add_option("--framing", grFraming);
  addCommon(cmdGr, opts);

  // triangle
  auto* cmdTri = app.add_subcommand("triangle", "exact-triangle residues");
  int triN = 0;
  cmdTri->add_option("--n", triN, "framing");
  addCommon(cmdTri, opts);

  // series
  auto* cmdSeries = app.add_subcommand("series", "named series and checks");
  std::string seriesName = "all";
  cmdSeries->add_option("--name", seriesName,
                        "alpha|beta1|beta-1|delta1|delta-1|epsilon|beta'|"
                        "delta'|kappa|kappa'|all");
  addCommon(cmdSeries, opts);

  // localmodel
  auto* cmdLocal = app.add_subcommand("localmodel", "window identities");
  addCommon(cmdLocal, opts);

  // selftest
  auto* cmdSelf = app.add_subcommand("selftest", "full acceptance battery");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmdValidate->parsed()) {
      ModuleFile f = parseModule(readFile(validateFile));
      Violation v = f.module.validate();
      if (!v.ok) {
        std::cout << "FAIL " << v.message << "\n";
        return kExitResidue;
      }
      std::cout << "OK delta^2 = 0 (" << f.module.genCount()
                << " generators)\n";
      return kExitOk;
    }
    if (cmdBox->parsed()) {
      ModuleFile f = parseModule(readFile(boxFile));
      Policy p = f.module.policy();
      if (boxWith == "phi") {
        TypeDModule out = boxPhi(f.module, PhiBimodule{phiN, phiM});
        std::cout << emitModule(out, f.framing);
        return kExitOk;
      }
      TypeAAction a =
          boxWith == "identity" ? identityTypeA(p) : makeD0TypeA(p);
      FUComplex fc = expandBox(f.module, a, opts.window,
                               f.framing.value_or(0));
      std::cout << "expanded complex: " << fc.size() << " generators over F["
                << "U]\n";
      std::string bad;
      if (!fc.squaresToZero(&bad)) {
        std::cout << "FAIL " << bad << "\n";
        return kExitResidue;
      }
      std::cout << "OK d^2 = 0\n";
      return kExitOk;
    }
    if (cmdReduce->parsed()) {
      ModuleFile f = parseModule(readFile(reduceFile));
      ReduceResult r = reduce(f.module);
      if (!r.verified) {
        std::cout << "FAIL " << r.note << "\n";
        return kExitResidue;
      }
      std::cout << emitModule(r.module, f.framing);
      return kExitOk;
    }
    if (cmdHomology->parsed()) {
      ModuleFile f = parseModule(readFile(homFile));
      FUComplex fc = expandBox(f.module, makeD0TypeA(f.module.policy()),
                               opts.window, f.framing.value_or(0));
      return reportHomology(homology(fc, homModulus));
    }
    if (cmdSurgery->parsed()) {
      Policy p = opts.policy();
      KnotPresentation k =
          loadOrPreset(surgFile, surgPreset, surgFraming, p);
      SurgeryComplex sc = knotSurgery(k, p, opts.window);
      HomologyReport rep =
          homology(sc.expand(), std::llabs((long long)k.framing));
      std::cout << sc.note << "\n";
      return reportHomology(rep);
    }
    if (cmdGlue->parsed()) {
      Policy p = opts.policy();
      auto parseSide = [&](const std::string& s) {
        auto colon = s.find(':');
        if (colon == std::string::npos)
          throw std::runtime_error("side syntax preset:framing");
        return presetKnot(s.substr(0, colon),
                          std::stoi(s.substr(colon + 1)), p);
      };
      KnotPresentation a = parseSide(glueLeft), b = parseSide(glueRight);
      SurgeryComplex sc = glueComplex(a, b, p, opts.window);
      std::cout << sc.note << "\n";
      return reportHomology(
          homology(sc.expand(), std::llabs(sc.totalFraming)));
    }
    if (cmdH1->parsed()) {
      Policy p = opts.policy();
      KnotPresentation k = presetKnot(h1Preset, h1Framing, p);
      SurgeryComplex sc = knotSurgery(k, p, opts.window);
      Endomorphism a = h1Action(sc, 0);
      auto residue = chainMapResidue(sc, a);
      std::cout << "action arrows: " << a.comps.size() << "\n";
      if (!residue.empty()) {
        std::cout << "FAIL d A + A d has " << residue.size()
                  << " nonzero components\n";
        return kExitResidue;
      }
      std::cout << "OK chain map\n";
      return kExitOk;
    }
    if (cmdGr->parsed()) {
      Policy p = opts.policy();
      KnotPresentation k = presetKnot(grPreset, grFraming, p);
      GradedComplex g = assignGradings(knotSurgery(k, p, opts.window));
      // calibrate once against the +1-framed unknot
      DInvariantReport base = dInvariants(
          assignGradings(knotSurgery(unknotPresentation(1, p), p,
                                     opts.window)),
          1, Rational(0));
      Rational calib = Rational(0) - base.dLevels.begin()->second;
      DInvariantReport rep =
          dInvariants(g, std::llabs((long long)k.framing), calib);
      std::cout << "calibration " << calib.str() << " (tower-top levels)\n"
                << rep.render();
      return kExitOk;
    }
    if (cmdTri->parsed()) {
      TriangleReport rep = verifyTriangle(triN, opts.precision);
      bool all = true;
      for (const auto& r : rep.rows) {
        std::cout << (r.pass ? "pass " : "FAIL ") << r.name
                  << (r.detail.empty() ? "" : " [" + r.detail + "]") << "\n";
        all &= r.pass;
      }
      return all ? kExitOk : kExitResidue;
    }
    if (cmdSeries->parsed()) {
      Policy p = opts.policy();
      auto printOne = [&](const std::string& n, SeriesName which) {
        std::cout << n << " = " << namedSeries(which, p).render() << "\n";
      };
      if (seriesName == "all") {
        bool all = true;
        for (const auto& r : checkFactorizations(opts.precision)) {
          std::cout << (r.pass ? "pass " : "FAIL ") << r.name
                    << (r.detail.empty() ? "" : " [" + r.detail + "]")
                    << "\n";
          all &= r.pass;
        }
        return all ? kExitOk : kExitResidue;
      }
      std::map<std::string, SeriesName> names = {
          {"alpha", SeriesName::Alpha},     {"beta1", SeriesName::Beta1},
          {"beta-1", SeriesName::BetaM1},   {"delta1", SeriesName::Delta1},
          {"delta-1", SeriesName::DeltaM1}, {"epsilon", SeriesName::Epsilon},
          {"beta'", SeriesName::BetaPrime}, {"delta'", SeriesName::DeltaPrime},
          {"kappa", SeriesName::Kappa},     {"kappa'", SeriesName::KappaPrime}};
      auto it = names.find(seriesName);
      if (it == names.end()) throw std::runtime_error("unknown series name");
      printOne(seriesName, it->second);
      return kExitOk;
    }
    if (cmdLocal->parsed()) {
      bool all = true;
      for (const auto& r : verifyLocalTriangle(opts.window, opts.precision)
                               .rows) {
        std::cout << (r.pass ? "pass " : "FAIL ") << r.name << "\n";
        all &= r.pass;
      }
      for (const auto& r :
           endAlgebraHomology(opts.window, opts.precision).rows) {
        std::cout << (r.pass ? "pass " : "FAIL ") << r.name << "\n";
        all &= r.pass;
      }
      for (const auto& r : retractionCheck(opts.window, opts.precision).rows) {
        std::cout << (r.pass ? "pass " : "FAIL ") << r.name << "\n";
        all &= r.pass;
      }
      return all ? kExitOk : kExitResidue;
    }
    if (cmdSelf->parsed()) {
      bool all = true;
      for (const CriterionResult& r : runAcceptance()) {
        std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id
                  << ": " << r.name;
        if (!r.pass) std::cout << " -- " << r.detail;
        std::cout << "\n";
        all &= r.pass;
      }
      return all ? kExitOk : kExitResidue;
    }
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
