#include "lscc/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "lscc/errors.hpp"

namespace lscc {

namespace {

template <class F>
auto guarded(const char* what, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

void expectFormat(const Json& j, std::string_view format) {
  if (!j.is_object()) throw FormatError("expected a JSON object");
  if (j.contains("format") && j.at("format").get<std::string>() != format)
    throw FormatError("expected format '" + std::string(format) + "'");
  if (j.contains("version") && j.at("version").get<int>() != kSchemaVersion)
    throw FormatError("unsupported schema version " + j.at("version").dump());
}

Json complexToJson(Complex z, Field field) {
  if (field == Field::Real) return numberToJson(z.real());
  return Json::array({numberToJson(z.real()), numberToJson(z.imag())});
}

Complex complexFromJson(const Json& j) {
  if (j.is_array()) {
    if (j.size() != 2) throw FormatError("complex entries are [re, im] pairs");
    return {numberFromJson(j[0]), numberFromJson(j[1])};
  }
  return {numberFromJson(j), 0.0};
}

Json matrixToJson(const CMatrix& m, Field field) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complexToJson(m(i, k), field));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrixFromJson(const Json& j, Eigen::Index cols) {
  if (!j.is_array()) throw FormatError("matrix must be an array of rows");
  CMatrix m(static_cast<Eigen::Index>(j.size()), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != cols)
      throw FormatError("matrix row " + std::to_string(i) + " has the wrong length");
    for (std::size_t k = 0; k < j[i].size(); ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = complexFromJson(j[i][k]);
  }
  return m;
}

Json blockToJson(const LocalFunctionals& b, Field field) {
  return {{"support", b.support}, {"rows", matrixToJson(b.rows, field)}};
}

LocalFunctionals blockFromJson(const Json& j) {
  LocalFunctionals b;
  b.support = j.at("support").get<std::vector<int>>();
  b.rows = matrixFromJson(j.at("rows"), static_cast<Eigen::Index>(b.support.size()));
  return b;
}

CheegerMethod cheegerMethodFromString(std::string_view s) {
  for (CheegerMethod m :
       {CheegerMethod::ExactEnumeration, CheegerMethod::IntervalReduction, CheegerMethod::SpectralSweepSandwich})
    if (toString(m) == s) return m;
  throw FormatError("unknown Cheeger method '" + std::string(s) + "'");
}

}  // namespace

Json numberToJson(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double numberFromJson(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw FormatError("expected a number, got " + j.dump());
}

Json signalToJson(const Signal& f) {
  Json v = Json::array();
  for (Eigen::Index i = 0; i < f.size(); ++i) v.push_back(complexToJson(f.coords()[i], f.field()));
  return v;
}

Signal signalFromJson(const Json& j, Field field) {
  return guarded("signal", [&] {
    const Json& arr = j.is_object() ? j.at("values") : j;
    if (!arr.is_array()) throw FormatError("signal must be an array");
    CVector v(static_cast<Eigen::Index>(arr.size()));
    for (std::size_t i = 0; i < arr.size(); ++i) v[static_cast<Eigen::Index>(i)] = complexFromJson(arr[i]);
    if (field == Field::Real && v.imag().cwiseAbs().maxCoeff() > 0.0)
      throw FieldError("complex entries in a signal for a real scheme");
    return Signal(field, v);
  });
}

Json schemeToJson(const LsccScheme& s) {
  const Field field = s.field();
  Json edges = Json::array();
  for (const auto& [u, v] : s.graph().edges) edges.push_back({u, v});
  Json frames = Json::array(), projections = Json::array(), edgeFns = Json::array();
  for (const LocalFunctionals& b : s.vertexFrames()) frames.push_back(blockToJson(b, field));
  for (const auto& P : s.projections()) projections.push_back(P ? matrixToJson(*P, field) : Json(nullptr));
  for (const LocalFunctionals& b : s.edgeFunctionals()) edgeFns.push_back(blockToJson(b, field));
  const SchemeConstants& c = s.constants();
  return {
      {"format", "lscc-scheme"},
      {"version", kSchemaVersion},
      {"name", s.name()},
      {"field", std::string(toString(field))},
      {"n", s.ambientDim()},
      {"graph",
       {{"V", s.graph().numVertices},
        {"edges", edges},
        {"topology", std::string(toString(s.graph().topology))},
        {"labels", s.graph().labels}}},
      {"frames", frames},
      {"projections", projections},
      {"edgeFunctionals", edgeFns},
      {"constants",
       {{"p", numberToJson(c.p)},
        {"D", c.D},
        {"C0", numberToJson(c.C0)},
        {"C1", numberToJson(c.C1)},
        {"A", numberToJson(c.A)},
        {"B", numberToJson(c.B)},
        {"exhaustionLow", numberToJson(c.exhaustionLow)},
        {"exhaustionHigh", numberToJson(c.exhaustionHigh)},
        {"c0Certified", c.c0Certified}}},
  };
}

LsccScheme schemeFromJson(const Json& j) {
  return guarded("scheme", [&] {
    expectFormat(j, "lscc-scheme");
    const Field field = fieldFromString(j.at("field").get<std::string>());
    const int n = j.at("n").get<int>();
    const Json& g = j.at("graph");
    std::vector<std::pair<int, int>> edges;
    for (const Json& e : g.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw FormatError("graph edges are [u, v] pairs");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    BaseGraph base = BaseGraph::make(g.at("V").get<int>(), std::move(edges),
                                     topologyFromString(g.value("topology", std::string("general"))),
                                     g.value("labels", std::vector<int>{}));
    std::vector<LocalFunctionals> frames, edgeFns;
    for (const Json& b : j.at("frames")) frames.push_back(blockFromJson(b));
    for (const Json& b : j.at("edgeFunctionals")) edgeFns.push_back(blockFromJson(b));
    std::vector<std::optional<CMatrix>> projections;
    if (j.contains("projections")) {
      for (const Json& P : j.at("projections"))
        projections.push_back(P.is_null() ? std::nullopt : std::optional<CMatrix>(matrixFromJson(P, n)));
    } else {
      projections.assign(frames.size(), std::nullopt);
    }
    const Json& cj = j.at("constants");
    SchemeConstants c;
    c.p = numberFromJson(cj.at("p"));
    c.D = cj.at("D").get<int>();
    c.C0 = numberFromJson(cj.at("C0"));
    c.C1 = numberFromJson(cj.at("C1"));
    c.A = numberFromJson(cj.at("A"));
    c.B = numberFromJson(cj.at("B"));
    c.exhaustionLow = numberFromJson(cj.at("exhaustionLow"));
    c.exhaustionHigh = numberFromJson(cj.at("exhaustionHigh"));
    c.c0Certified = cj.value("c0Certified", false);
    return LsccScheme(j.value("name", std::string("custom")), field, n, std::move(base), std::move(frames),
                      std::move(projections), std::move(edgeFns), c);
  });
}

Json graphToJson(const WeightedGraph& g) {
  Json vertices = Json::array(), edges = Json::array();
  for (int i = 0; i < g.numVertices(); ++i)
    vertices.push_back({{"id", g.vertexIds[static_cast<std::size_t>(i)]},
                        {"weight", numberToJson(g.vertexWeights[static_cast<std::size_t>(i)])}});
  for (const WeightedEdge& e : g.edges) edges.push_back({{"u", e.u}, {"v", e.v}, {"w", numberToJson(e.w)}});
  return {{"format", "lscc-graph"},
          {"version", kSchemaVersion},
          {"topology", std::string(toString(g.topology))},
          {"vertices", vertices},
          {"edges", edges}};
}

WeightedGraph graphFromJson(const Json& j) {
  return guarded("graph", [&] {
    expectFormat(j, "lscc-graph");
    std::vector<double> weights;
    std::vector<int> ids;
    for (const Json& v : j.at("vertices")) {
      ids.push_back(v.at("id").get<int>());
      weights.push_back(numberFromJson(v.at("weight")));
    }
    std::vector<WeightedEdge> edges;
    for (const Json& e : j.at("edges")) edges.push_back({e.at("u").get<int>(), e.at("v").get<int>(), numberFromJson(e.at("w"))});
    return makeWeightedGraph(std::move(weights), std::move(edges),
                             topologyFromString(j.value("topology", std::string("general"))), std::move(ids));
  });
}

Json cheegerToJson(const CheegerResult& c) {
  return {{"lower", numberToJson(c.lowerBound)},
          {"upper", numberToJson(c.upperBound)},
          {"method", std::string(toString(c.method))},
          {"witnessCut", c.witnessCut}};
}

Json reportToJson(const StabilityReport& r) {
  const CheegerInequalityCheck& ci = r.cheegerInequality;
  return {
      {"format", "lscc-report"},
      {"version", kSchemaVersion},
      {"scheme", r.schemeName},
      {"field", std::string(toString(r.field))},
      {"p", numberToJson(r.p)},
      {"verdict", std::string(toString(r.verdict))},
      {"graph", {{"empty", r.graphEmpty}, {"vertices", r.numVertices}, {"edges", r.numEdges}}},
      {"cheeger", cheegerToJson(r.cheeger)},
      {"lambda", numberToJson(r.lambda)},
      {"normalizedDegree", numberToJson(r.normalizedDegree)},
      {"cheegerInequality",
       {{"holds", ci.holds},
        {"upperSlack", numberToJson(ci.upperSlack)},
        {"lowerSlack", numberToJson(ci.lowerSlack)}}},
      {"C2", numberToJson(r.C2)},
      {"C3", numberToJson(r.C3)},
      {"realBound", numberToJson(r.realBound)},
      {"complexBound", numberToJson(r.complexBound)},
      {"bound", numberToJson(r.bound)},
      {"empiricalWorstRatio", numberToJson(r.empiricalWorstRatio)},
      {"retrievalFailure", r.retrievalFailure},
      {"boundSatisfied", r.boundSatisfied},
      {"samples", r.samples},
  };
}

StabilityReport reportFromJson(const Json& j) {
  return guarded("report", [&] {
    expectFormat(j, "lscc-report");
    StabilityReport r;
    r.schemeName = j.at("scheme").get<std::string>();
    r.field = fieldFromString(j.at("field").get<std::string>());
    r.p = numberFromJson(j.at("p"));
    r.verdict = verdictFromString(j.at("verdict").get<std::string>());
    const Json& g = j.at("graph");
    r.graphEmpty = g.at("empty").get<bool>();
    r.numVertices = g.at("vertices").get<int>();
    r.numEdges = g.at("edges").get<int>();
    const Json& c = j.at("cheeger");
    r.cheeger.lowerBound = numberFromJson(c.at("lower"));
    r.cheeger.upperBound = numberFromJson(c.at("upper"));
    r.cheeger.method = cheegerMethodFromString(c.at("method").get<std::string>());
    r.cheeger.witnessCut = c.at("witnessCut").get<std::vector<int>>();
    r.lambda = numberFromJson(j.at("lambda"));
    r.normalizedDegree = numberFromJson(j.at("normalizedDegree"));
    const Json& ci = j.at("cheegerInequality");
    r.cheegerInequality.holds = ci.at("holds").get<bool>();
    r.cheegerInequality.upperSlack = numberFromJson(ci.at("upperSlack"));
    r.cheegerInequality.lowerSlack = numberFromJson(ci.at("lowerSlack"));
    r.C2 = numberFromJson(j.at("C2"));
    r.C3 = numberFromJson(j.at("C3"));
    r.realBound = numberFromJson(j.at("realBound"));
    r.complexBound = numberFromJson(j.at("complexBound"));
    r.bound = numberFromJson(j.at("bound"));
    r.empiricalWorstRatio = numberFromJson(j.at("empiricalWorstRatio"));
    r.retrievalFailure = j.at("retrievalFailure").get<bool>();
    r.boundSatisfied = j.at("boundSatisfied").get<bool>();
    r.samples = j.at("samples").get<long>();
    return r;
  });
}

Json fuzzReportToJson(const FuzzReport& r) {
  Json schemes = Json::array();
  for (const FuzzSchemeReport& s : r.schemes) {
    Json e = {{"label", s.label},
              {"field", std::string(toString(s.field))},
              {"pairs", s.pairs},
              {"skipped", s.skipped},
              {"collisions", s.collisions},
              {"infiniteBounds", s.infiniteBounds},
              {"maxQuotient", numberToJson(s.maxQuotient)},
              {"maxRatio", numberToJson(s.maxRatio)},
              {"boundsHold", s.boundsHold},
              {"edgeGapChecked", s.edgeGapChecked},
              {"edgeLemmaWorst", numberToJson(s.edgeLemmaWorst)},
              {"edgeLemmaHolds", s.edgeLemmaHolds},
              {"modulusLemmaChecked", s.modulusLemmaChecked},
              {"modulusLemmaHolds", s.modulusLemmaHolds}};
    if (s.witness) {
      e["witness"] = {{"f", signalToJson(Signal(s.field, s.witness->f))},
                      {"g", signalToJson(Signal(s.field, s.witness->g))},
                      {"ratio", numberToJson(s.witness->ratio)},
                      {"note", s.witness->note}};
    }
    schemes.push_back(std::move(e));
  }
  return {{"format", "lscc-fuzz"}, {"version", kSchemaVersion}, {"pass", r.pass}, {"schemes", schemes}};
}

Json experimentToJson(const ExperimentSpec& e) {
  return {{"schemeRef", e.schemeRef},
          {"signalFamily", e.signalFamily},
          {"signalParams", e.signalParams},
          {"noiseLevel", numberToJson(e.noiseLevel)},
          {"trials", e.trials},
          {"seed", e.seed},
          {"outputs", e.outputs}};
}

Json readJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("malformed JSON in '" + path + "': " + e.what());
  }
}

void writeJsonFile(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hashHex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string fileHash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return hashHex(fnv1a64(ss.str()));
}

std::string formatDouble(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header) : out_(out), columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

void CsvWriter::row(const std::vector<Cell>& cells) {
  if (cells.size() != columns_) throw DimensionError("CSV row has the wrong number of cells");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, double>) out_ << formatDouble(v);
          else out_ << v;
        },
        cells[i]);
  }
  out_ << '\n';
  out_.flush();
}

}  // namespace lscc
