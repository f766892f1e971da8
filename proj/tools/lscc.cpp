// lscc: analyze, validate and sweep locally supported measurement schemes.
//
// Exit codes: 0 success, 1 input error, 2 a checked inequality or axiom failed.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lscc/errors.hpp"
#include "lscc/harness.hpp"
#include "lscc/io.hpp"
#include "lscc/shiftinv.hpp"
#include "lscc/stability.hpp"
#include "lscc/windowed.hpp"

using namespace lscc;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kViolation = 2;

struct SeedOption {
  std::optional<std::uint64_t> flag;

  std::uint64_t resolve(std::string& source) const {
    if (flag) {
      source = "flag";
      return *flag;
    }
    if (const char* env = std::getenv("LSCC_SEED"); env && *env) {
      std::size_t used = 0;
      std::uint64_t v = 0;
      try {
        v = std::stoull(env, &used, 0);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != std::string(env).size()) throw FormatError("LSCC_SEED must be an unsigned integer");
      source = "env";
      return v;
    }
    source = "default";
    return 0;
  }
};

struct SchemeOptions {
  std::string source = "toy";
  int a = 2;
  int L = 8;
  std::string field = "real";
  double p = 2.0;
  int N = 2;
  int R = 8;
};

void addSchemeOptions(CLI::App* cmd, SchemeOptions& o) {
  cmd->add_option("--scheme", o.source, "Builtin scheme (toy, windowed, shiftinv) or a scheme JSON file")
      ->capture_default_str();
  cmd->add_option("--a", o.a, "windowed: window half-width")->capture_default_str();
  cmd->add_option("--L", o.L, "windowed: number of windows")->capture_default_str();
  cmd->add_option("--field", o.field, "windowed: real or complex")->capture_default_str();
  cmd->add_option("--p", o.p, "Norm exponent")->capture_default_str();
  cmd->add_option("--N", o.N, "shiftinv: B-spline order")->capture_default_str();
  cmd->add_option("--R", o.R, "shiftinv: truncation radius")->capture_default_str();
}

Json schemeConfig(const SchemeOptions& o) {
  Json j = {{"source", o.source}};
  if (o.source == "toy") j["p"] = o.p;
  if (o.source == "windowed") j.update({{"a", o.a}, {"L", o.L}, {"field", o.field}, {"p", o.p}});
  if (o.source == "shiftinv") j.update({{"N", o.N}, {"R", o.R}, {"p", o.p}});
  return j;
}

LsccScheme loadScheme(const SchemeOptions& o, std::uint64_t seed) {
  if (o.source == "toy") return toyScheme(o.p);
  if (o.source == "windowed") {
    WindowedConfig cfg;
    cfg.a = o.a;
    cfg.L = o.L;
    cfg.field = fieldFromString(o.field);
    cfg.p = o.p;
    cfg.seed = seed;
    return buildWindowedScheme(cfg);
  }
  if (o.source == "shiftinv") return buildShiftInvScheme(GeneratorModel::bspline(o.N, o.p), o.R);
  return schemeFromJson(readJsonFile(o.source));
}

Complex parseEntry(const std::string& tok) {
  std::size_t used = 0;
  const auto colon = tok.find(':');
  try {
    if (colon == std::string::npos) {
      const double re = std::stod(tok, &used);
      if (used == tok.size()) return {re, 0.0};
    } else {
      const std::string a = tok.substr(0, colon), b = tok.substr(colon + 1);
      std::size_t ub = 0;
      const double re = std::stod(a, &used), im = std::stod(b, &ub);
      if (used == a.size() && ub == b.size()) return {re, im};
    }
  } catch (const std::exception&) {
  }
  throw FormatError("cannot parse signal entry '" + tok + "'");
}

/// "ones", "random", a comma list (complex entries as re:im) or a JSON file.
Signal loadSignal(const std::string& spec, const LsccScheme& scheme, std::uint64_t seed) {
  const Field field = scheme.field();
  const Eigen::Index n = scheme.ambientDim();
  if (spec == "ones") return Signal(field, CVector::Ones(n));
  if (spec == "random") {
    Rng rng(deriveSeed(seed, 0x7369676eULL));
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i)
      v[i] = field == Field::Real ? Complex(rng.normal(), 0.0) : Complex(rng.normal(), rng.normal());
    return Signal(field, v);
  }
  if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") return signalFromJson(readJsonFile(spec), field);
  std::vector<Complex> entries;
  std::stringstream ss(spec);
  for (std::string tok; std::getline(ss, tok, ',');) {
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    entries.push_back(parseEntry(tok));
  }
  if (entries.empty()) throw FormatError("empty signal");
  CVector v(static_cast<Eigen::Index>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (field == Field::Real && entries[i].imag() != 0.0) throw FieldError("complex entry for a real scheme");
    v[static_cast<Eigen::Index>(i)] = entries[i];
  }
  const Signal f(field, v);
  scheme.checkSignal(f);
  return f;
}

struct Manifest {
  std::string command;
  Json config = Json::object();
  Json outputs = Json::array();
  Json summary = Json::object();

  void output(const std::string& path) { outputs.push_back({{"path", path}, {"fnv1a64", fileHash(path)}}); }

  void write(const std::string& path) const {
    writeJsonFile(path, {{"format", "lscc-manifest"},
                         {"version", kSchemaVersion},
                         {"command", command},
                         {"config", config},
                         {"outputs", outputs},
                         {"summary", summary}});
  }
};

std::string manifestPath(const std::string& explicitPath, const std::string& out) {
  if (!explicitPath.empty()) return explicitPath;
  if (!out.empty()) return out + ".manifest.json";
  return {};
}

std::ofstream openOut(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot write '" + path + "'");
  return f;
}

void printReport(const StabilityReport& r, std::ostream& os) {
  os << "scheme            " << r.schemeName << " (" << toString(r.field) << ", p = " << formatDouble(r.p) << ")\n"
     << "verdict           " << toString(r.verdict) << '\n'
     << "G_f               " << r.numVertices << " vertices, " << r.numEdges << " edges\n"
     << "cheeger           [" << formatDouble(r.cheeger.lowerBound) << ", " << formatDouble(r.cheeger.upperBound)
     << "] (" << toString(r.cheeger.method) << ")\n"
     << "lambda            " << formatDouble(r.lambda) << '\n'
     << "bound             " << formatDouble(r.bound) << '\n'
     << "empirical ratio   " << formatDouble(r.empiricalWorstRatio) << " over " << r.samples << " samples\n"
     << "retrieval failure " << (r.retrievalFailure ? "yes" : "no") << '\n'
     << "bound satisfied   " << (r.boundSatisfied ? "yes" : "no") << '\n';
}

// ---------------------------------------------------------------------------

struct AnalyzeArgs {
  SchemeOptions scheme;
  std::string signal = "ones";
  int trials = 2000;
  double zeroTol = kDefaultZeroTol;
  double eta = -1.0;
  int etaTrials = 8;
  std::string out, noiseOut, manifest;
};

int cmdAnalyze(const AnalyzeArgs& a, const SeedOption& seedOpt) {
  std::string seedSource;
  const std::uint64_t seed = seedOpt.resolve(seedSource);
  const LsccScheme scheme = loadScheme(a.scheme, seed);
  const Signal f = loadSignal(a.signal, scheme, seed);
  AnalyzeOptions opts;
  opts.trials = a.trials;
  opts.seed = seed;
  opts.zeroTol = a.zeroTol;
  const StabilityReport rep = analyzeSignal(scheme, f, opts);
  printReport(rep, std::cout);
  if (std::isinf(rep.bound)) std::cerr << "warning: G_f is not connected, the bound is infinite\n";

  Manifest m;
  m.command = "analyze";
  m.config = {{"scheme", schemeConfig(a.scheme)}, {"signal", a.signal},   {"trials", a.trials},
              {"zeroTol", a.zeroTol},            {"seed", seed},         {"seedSource", seedSource}};
  m.summary = {{"verdict", std::string(toString(rep.verdict))},
               {"bound", numberToJson(rep.bound)},
               {"boundSatisfied", rep.boundSatisfied}};
  bool ok = rep.boundSatisfied;
  if (!a.out.empty()) {
    Json j = reportToJson(rep);
    j["provenance"] = {{"schemeHash", hashHex(fnv1a64(schemeToJson(scheme).dump()))},
                       {"seed", seed},
                       {"zeroTol", a.zeroTol},
                       {"trials", a.trials}};
    writeJsonFile(a.out, j);
    m.output(a.out);
  }
  if (a.eta >= 0.0) {
    const NoisyRecoveryResult nr = noisyRecoveryGap(scheme, f, a.eta, a.etaTrials, deriveSeed(seed, 0x6e6f6973ULL));
    m.config["eta"] = a.eta;
    m.config["etaTrials"] = a.etaTrials;
    m.summary["noise"] = {{"bound", numberToJson(nr.bound)}, {"witnessOnly", nr.witnessOnly}, {"pass", nr.pass}};
    if (nr.witnessOnly) std::cerr << "warning: infinite bound, noise rows are recorded without assertions\n";
    if (!a.noiseOut.empty()) {
      std::ofstream os = openOut(a.noiseOut);
      CsvWriter csv(os, {"trial", "effective_eta", "objective", "gap", "allowed", "censored", "pass"});
      for (const NoisyRow& r : nr.rows)
        csv.row({static_cast<long long>(r.trial), r.effectiveEta, r.objective, r.gap, r.allowed,
                 static_cast<long long>(r.censored), static_cast<long long>(r.pass)});
      os.close();
      m.output(a.noiseOut);
    }
    std::cout << "noise             eta = " << formatDouble(a.eta) << ", " << (nr.pass ? "pass" : "FAIL") << '\n';
    ok = ok && nr.pass;
  }
  if (const std::string mp = manifestPath(a.manifest, a.out); !mp.empty()) m.write(mp);
  return ok ? kOk : kViolation;
}

struct ValidateArgs {
  SchemeOptions scheme;
  int trials = 500;
  std::string out, saveScheme, manifest;
};

Json validationToJson(const ValidationReport& r, Field field) {
  Json j = {{"axiom", r.axiom},
            {"passed", r.passed},
            {"worst", numberToJson(r.worst)},
            {"smallest", numberToJson(r.smallest)},
            {"declared", numberToJson(r.declared)},
            {"declaredLow", numberToJson(r.declaredLow)},
            {"frameLower", numberToJson(r.frameLower)},
            {"frameUpper", numberToJson(r.frameUpper)},
            {"samples", r.samples}};
  if (r.witness) {
    Json w = {{"vertex", r.witness->vertex},
              {"edge", r.witness->edge},
              {"ratio", numberToJson(r.witness->ratio)},
              {"note", r.witness->note}};
    if (r.witness->f.size() > 0) w["f"] = signalToJson(Signal(field, r.witness->f));
    if (r.witness->g.size() > 0) w["g"] = signalToJson(Signal(field, r.witness->g));
    j["witness"] = std::move(w);
  }
  return j;
}

int cmdValidate(const ValidateArgs& a, const SeedOption& seedOpt) {
  std::string seedSource;
  const std::uint64_t seed = seedOpt.resolve(seedSource);
  const LsccScheme scheme = loadScheme(a.scheme, seed);
  const ValidationReport reports[] = {
      validateLocalPhaseRetrieval(scheme, a.trials, deriveSeed(seed, 1)),
      validateEdgeDomination(scheme, a.trials, deriveSeed(seed, 2)),
      validateExhaustion(scheme, a.trials, deriveSeed(seed, 3)),
      validateStructure(scheme),
  };
  bool ok = true;
  Json arr = Json::array();
  for (const ValidationReport& r : reports) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.axiom << "  worst " << formatDouble(r.worst) << "  declared "
              << formatDouble(r.declared) << '\n';
    if (!r.passed && r.witness) std::cout << "     witness: " << r.witness->note << '\n';
    ok = ok && r.passed;
    arr.push_back(validationToJson(r, scheme.field()));
  }
  Manifest m;
  m.command = "validate";
  m.config = {{"scheme", schemeConfig(a.scheme)}, {"trials", a.trials}, {"seed", seed}, {"seedSource", seedSource}};
  m.summary = {{"passed", ok}};
  if (!a.out.empty()) {
    writeJsonFile(a.out, {{"format", "lscc-validation"},
                          {"version", kSchemaVersion},
                          {"scheme", scheme.name()},
                          {"passed", ok},
                          {"axioms", arr}});
    m.output(a.out);
  }
  if (!a.saveScheme.empty()) {
    writeJsonFile(a.saveScheme, schemeToJson(scheme));
    m.output(a.saveScheme);
  }
  if (const std::string mp = manifestPath(a.manifest, a.out); !mp.empty()) m.write(mp);
  return ok ? kOk : kViolation;
}

std::vector<int> doublingRange(int lo, int hi) {
  std::vector<int> v;
  if (lo < 1) throw DimensionError("range start must be positive");
  for (long long x = lo; x <= hi; x *= 2) v.push_back(static_cast<int>(x));
  if (v.empty()) throw DimensionError("empty range");
  return v;
}

struct SweepWindowedArgs {
  int a = 2;
  int Lmin = 8;
  int Lmax = 256;
  std::string field = "real";
  int trials = 200;
  std::string out, manifest;
};

int cmdSweepWindowed(const SweepWindowedArgs& a, const SeedOption& seedOpt) {
  std::string seedSource;
  const std::uint64_t seed = seedOpt.resolve(seedSource);
  const Field field = fieldFromString(a.field);
  const std::vector<int> Ls = doublingRange(a.Lmin, a.Lmax);
  if (a.out.empty()) throw FormatError("--out is required");
  std::ofstream os = openOut(a.out);
  CsvWriter csv(os, {"L", "d", "bound", "empirical_ratio", "adversarial_ratio", "statement_form", "proof_form",
                     "cheeger", "lambda", "C2_or_C3", "pass"});
  std::vector<double> xs, bounds, adv;
  bool ok = true;
  for (int L : Ls) {
    const SweepResult one = scalingSweep(a.a, {L}, field, a.trials, seed);
    const SweepRow& r = one.rows.front();
    csv.row({static_cast<long long>(r.L), static_cast<long long>(r.d), r.bound, r.empiricalRatio, r.adversarialRatio,
             r.statementForm, r.proofForm, r.cheeger, r.lambda, r.constant, static_cast<long long>(r.pass)});
    xs.push_back(r.L);
    bounds.push_back(r.bound);
    adv.push_back(r.adversarialRatio);
    if (!r.pass) {
      csv.row({std::string("FAIL"), std::string(), std::string(), std::string(), std::string(), std::string(),
               std::string(), std::string(), std::string(), std::string(), std::string()});
      ok = false;
      break;
    }
  }
  os.close();
  Manifest m;
  m.command = "sweep windowed";
  m.config = {{"a", a.a},         {"Lmin", a.Lmin}, {"Lmax", a.Lmax},          {"field", a.field},
              {"trials", a.trials}, {"seed", seed},  {"seedSource", seedSource}};
  m.summary = {{"boundSlope", numberToJson(logLogSlope(xs, bounds))},
               {"adversarialSlope", numberToJson(logLogSlope(xs, adv))},
               {"pass", ok}};
  m.output(a.out);
  m.write(manifestPath(a.manifest, a.out));
  std::cout << "bound slope " << formatDouble(logLogSlope(xs, bounds)) << ", adversarial slope "
            << formatDouble(logLogSlope(xs, adv)) << (ok ? "" : "  (assertion failed)") << '\n';
  return ok ? kOk : kViolation;
}

struct SweepShiftInvArgs {
  std::string kind = "exp";
  double beta = 1.0;
  int N = 2;
  double p = 2.0;
  int Rmin = 8;
  int Rmax = 128;
  std::string out, manifest;
};

int cmdSweepShiftInv(const SweepShiftInvArgs& a, const SeedOption& seedOpt) {
  std::string seedSource;
  const std::uint64_t seed = seedOpt.resolve(seedSource);
  const DecayProfile profile{decayKindFromString(a.kind), a.beta};
  const std::vector<int> Rs = doublingRange(a.Rmin, a.Rmax);
  if (a.out.empty()) throw FormatError("--out is required");
  const GeneratorModel gen = GeneratorModel::bspline(a.N, a.p);
  std::ofstream os = openOut(a.out);
  CsvWriter csv(os, {"R", "vertices", "cheeger", "reference", "pass"});
  std::vector<double> xs, ys;
  bool ok = true;
  for (int R : Rs) {
    const DecayStudy one = decayCheegerStudy(gen, profile, {R});
    const DecayRow& r = one.rows.front();
    csv.row({static_cast<long long>(r.R), static_cast<long long>(r.vertices), r.cheeger, r.reference,
             static_cast<long long>(r.pass)});
    xs.push_back(r.R);
    ys.push_back(r.cheeger);
    if (!r.pass) {
      csv.row({std::string("FAIL"), std::string(), std::string(), std::string(), std::string()});
      ok = false;
      break;
    }
  }
  os.close();
  Manifest m;
  m.command = "sweep shiftinv";
  m.config = {{"kind", std::string(toString(profile.kind))},
              {"beta", a.beta},
              {"N", a.N},
              {"p", a.p},
              {"Rmin", a.Rmin},
              {"Rmax", a.Rmax},
              {"seed", seed},
              {"seedSource", seedSource}};
  m.summary = {{"slope", numberToJson(logLogSlope(xs, ys))}, {"pass", ok}};
  m.output(a.out);
  m.write(manifestPath(a.manifest, a.out));
  std::cout << "cheeger slope " << formatDouble(logLogSlope(xs, ys)) << (ok ? "" : "  (assertion failed)") << '\n';
  return ok ? kOk : kViolation;
}

struct GraphArgs {
  SchemeOptions scheme;
  std::string signal = "ones";
  double zeroTol = kDefaultZeroTol;
  std::string out, manifest;
};

int cmdGraph(const GraphArgs& a, const SeedOption& seedOpt) {
  std::string seedSource;
  const std::uint64_t seed = seedOpt.resolve(seedSource);
  const LsccScheme scheme = loadScheme(a.scheme, seed);
  const Signal f = loadSignal(a.signal, scheme, seed);
  const GraphMeasures gm = graphMeasures(scheme, f, a.zeroTol);
  Json j = graphToJson(gm.graph);
  j["connected"] = gm.connected;
  j["verdict"] = std::string(toString(!gm.empty && gm.connected ? Verdict::RetrievableByConnectivity : Verdict::Inconclusive));
  if (!gm.empty) {
    j["cheeger"] = cheegerToJson(gm.cheeger);
    j["lambda"] = numberToJson(gm.spectral.lambda);
    j["normalizedDegree"] = numberToJson(gm.normalizedDegree);
  }
  if (a.out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    writeJsonFile(a.out, j);
    Manifest m;
    m.command = "graph";
    m.config = {{"scheme", schemeConfig(a.scheme)}, {"signal", a.signal}, {"zeroTol", a.zeroTol},
                {"seed", seed},                    {"seedSource", seedSource}};
    m.summary = {{"connected", gm.connected}, {"vertices", gm.graph.numVertices()}};
    m.output(a.out);
    m.write(manifestPath(a.manifest, a.out));
  }
  return kOk;
}

struct ReportArgs {
  std::string in;
  std::string format = "text";
};

int cmdReport(const ReportArgs& a) {
  const StabilityReport r = reportFromJson(readJsonFile(a.in));
  if (a.format == "json")
    std::cout << reportToJson(r).dump(2) << '\n';
  else if (a.format == "text")
    printReport(r, std::cout);
  else
    throw FormatError("unknown format '" + a.format + "'");
  return r.boundSatisfied ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stability analysis for locally supported phase retrieval schemes"};
  app.require_subcommand(1);
  app.fallthrough();
  SeedOption seed;
  std::uint64_t seedValue = 0;
  auto* seedFlag = app.add_option("--seed", seedValue, "Run seed (default: $LSCC_SEED, else 0)");

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Bound and empirical stability ratio for one signal");
  addSchemeOptions(analyze, an.scheme);
  analyze->add_option("--signal", an.signal, "ones, random, comma list (re:im for complex) or JSON file")
      ->capture_default_str();
  analyze->add_option("--trials", an.trials, "Samples per strategy")->capture_default_str();
  analyze->add_option("--zero-tol", an.zeroTol, "Relative weight cutoff for G_f")->capture_default_str();
  analyze->add_option("--eta", an.eta, "Also run the noisy recovery experiment at this noise norm");
  analyze->add_option("--eta-trials", an.etaTrials, "Noise draws")->capture_default_str();
  analyze->add_option("--noise-out", an.noiseOut, "CSV for the noise experiment");
  analyze->add_option("--out", an.out, "Report JSON");
  analyze->add_option("--manifest", an.manifest, "Manifest path (default: <out>.manifest.json)");

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "Check the scheme axioms against the declared constants");
  addSchemeOptions(validate, va.scheme);
  validate->add_option("--trials", va.trials, "Random probes per axiom")->capture_default_str();
  validate->add_option("--out", va.out, "Validation JSON");
  validate->add_option("--save-scheme", va.saveScheme, "Write the resolved scheme as JSON");
  validate->add_option("--manifest", va.manifest, "Manifest path (default: <out>.manifest.json)");

  auto* sweep = app.add_subcommand("sweep", "Parameter sweeps");
  sweep->require_subcommand(1);
  SweepWindowedArgs sw;
  auto* sweepW = sweep->add_subcommand("windowed", "Bounds and adversarial ratios as L doubles");
  sweepW->add_option("--a", sw.a)->capture_default_str();
  sweepW->add_option("--Lmin", sw.Lmin)->capture_default_str();
  sweepW->add_option("--Lmax", sw.Lmax)->capture_default_str();
  sweepW->add_option("--field", sw.field)->capture_default_str();
  sweepW->add_option("--trials", sw.trials)->capture_default_str();
  sweepW->add_option("--out", sw.out, "CSV output")->required();
  sweepW->add_option("--manifest", sw.manifest);
  SweepShiftInvArgs ss;
  auto* sweepS = sweep->add_subcommand("shiftinv", "Cheeger constants of decaying shift-invariant signals as R doubles");
  sweepS->add_option("--kind", ss.kind, "exp or poly")->capture_default_str();
  sweepS->add_option("--beta", ss.beta)->capture_default_str();
  sweepS->add_option("--N", ss.N)->capture_default_str();
  sweepS->add_option("--p", ss.p)->capture_default_str();
  sweepS->add_option("--Rmin", ss.Rmin)->capture_default_str();
  sweepS->add_option("--Rmax", ss.Rmax)->capture_default_str();
  sweepS->add_option("--out", ss.out, "CSV output")->required();
  sweepS->add_option("--manifest", ss.manifest);

  GraphArgs ga;
  auto* graph = app.add_subcommand("graph", "Dump G_f as JSON");
  addSchemeOptions(graph, ga.scheme);
  graph->add_option("--signal", ga.signal)->capture_default_str();
  graph->add_option("--zero-tol", ga.zeroTol)->capture_default_str();
  graph->add_option("--out", ga.out, "Graph JSON (stdout when absent)");
  graph->add_option("--manifest", ga.manifest);

  ReportArgs ra;
  auto* report = app.add_subcommand("report", "Re-render a saved stability report");
  report->add_option("--in", ra.in, "Report JSON")->required();
  report->add_option("--format", ra.format, "text or json")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }
  if (seedFlag->count() > 0) seed.flag = seedValue;

  try {
    if (*analyze) return cmdAnalyze(an, seed);
    if (*validate) return cmdValidate(va, seed);
    if (*sweepW) return cmdSweepWindowed(sw, seed);
    if (*sweepS) return cmdSweepShiftInv(ss, seed);
    if (*graph) return cmdGraph(ga, seed);
    if (*report) return cmdReport(ra);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
