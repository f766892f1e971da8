#include "lscc/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "lscc/errors.hpp"
#include "lscc/rng.hpp"

namespace lscc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

CVector randomVector(Rng& rng, Field field, Eigen::Index n) {
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i)
    v[i] = field == Field::Real ? Complex(rng.normal(), 0.0) : Complex(rng.normal(), rng.normal()) / std::sqrt(2.0);
  return v;
}

Complex randomUnimodular(Rng& rng, Field field) {
  if (field == Field::Real) return rng.coin() ? 1.0 : -1.0;
  return std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi));
}

bool hasImaginary(const CMatrix& m) { return m.size() > 0 && m.imag().cwiseAbs().maxCoeff() != 0.0; }

void checkBlock(const LocalFunctionals& b, int n, Field field, const std::string& what) {
  if (b.rows.rows() < 1) throw SchemeError(what + " has no functionals");
  if (b.rows.cols() != static_cast<Eigen::Index>(b.support.size()))
    throw DimensionError(what + " rows do not match its support size");
  for (int k : b.support)
    if (k < 0 || k >= n) throw DimensionError(what + " support index " + std::to_string(k) + " out of range");
  if (field == Field::Real && hasImaginary(b.rows)) throw FieldError(what + " has complex entries in a real scheme");
}

CVector applyBlock(const LocalFunctionals& b, const CVector& f) {
  CVector x(static_cast<Eigen::Index>(b.support.size()));
  for (std::size_t j = 0; j < b.support.size(); ++j) x[static_cast<Eigen::Index>(j)] = f[b.support[j]];
  return b.rows.conjugate() * x;
}

/// Ratio min_xi ||x - xi y|| / || |x| - |y| || with the zero-denominator conventions of the validators.
double pairRatio(const CVector& x, const CVector& y, Field field, double p) {
  const double num = alignPhase(x, y, field, p).residual;
  const double den = modulusDistance(x, y, p);
  const double scale = pNorm(x, p) + pNorm(y, p);
  if (den <= 1e-14 * scale) return num <= 1e-12 * scale ? 0.0 : kInf;
  return num / den;
}

}  // namespace

BaseGraph BaseGraph::make(int n, std::vector<std::pair<int, int>> edges, Topology topology, std::vector<int> labels) {
  if (n < 1) throw DimensionError("base graph needs at least one vertex");
  for (auto& e : edges) {
    if (e.first == e.second) throw TopologyError("self-loop in base graph");
    if (e.first < 0 || e.second < 0 || e.first >= n || e.second >= n) throw DimensionError("base edge out of range");
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) throw TopologyError("duplicate base edge");
  if (labels.empty()) {
    labels.resize(static_cast<std::size_t>(n));
    std::iota(labels.begin(), labels.end(), 0);
  }
  if (static_cast<int>(labels.size()) != n) throw DimensionError("label count differs from vertex count");
  BaseGraph g;
  g.numVertices = n;
  g.edges = std::move(edges);
  g.topology = topology;
  g.labels = std::move(labels);
  return g;
}

BaseGraph BaseGraph::path(int n, int firstLabel) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  std::vector<int> labels(static_cast<std::size_t>(n));
  std::iota(labels.begin(), labels.end(), firstLabel);
  return make(n, std::move(edges), Topology::Path, std::move(labels));
}

BaseGraph BaseGraph::cycle(int n) {
  if (n < 3) throw DimensionError("cycle needs at least three vertices");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(std::min(i, (i + 1) % n), std::max(i, (i + 1) % n));
  return make(n, std::move(edges), Topology::Cycle);
}

int BaseGraph::maxDegree() const {
  std::vector<int> deg(static_cast<std::size_t>(numVertices), 0);
  for (const auto& e : edges) {
    ++deg[static_cast<std::size_t>(e.first)];
    ++deg[static_cast<std::size_t>(e.second)];
  }
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

LsccScheme::LsccScheme(std::string name, Field field, int ambientDim, BaseGraph graph,
                       std::vector<LocalFunctionals> vertexFrames, std::vector<std::optional<CMatrix>> projections,
                       std::vector<LocalFunctionals> edgeFunctionals, SchemeConstants constants)
    : name_(std::move(name)),
      field_(field),
      ambientDim_(ambientDim),
      graph_(std::move(graph)),
      vertexFrames_(std::move(vertexFrames)),
      projections_(std::move(projections)),
      edgeFunctionals_(std::move(edgeFunctionals)),
      constants_(constants) {
  if (ambientDim_ < 1) throw DimensionError("ambient dimension must be positive");
  if (static_cast<int>(vertexFrames_.size()) != graph_.numVertices)
    throw DimensionError("one vertex frame per base vertex required");
  if (projections_.size() != vertexFrames_.size()) throw DimensionError("one projection entry per vertex required");
  if (edgeFunctionals_.size() != graph_.edges.size()) throw DimensionError("one edge functional block per edge required");
  if (!(constants_.p >= 1.0) || !std::isfinite(constants_.p)) throw UnsupportedP("p must lie in [1, inf)");
  for (std::size_t v = 0; v < vertexFrames_.size(); ++v) {
    checkBlock(vertexFrames_[v], ambientDim_, field_, "vertex frame " + std::to_string(v));
    if (projections_[v]) {
      const CMatrix& P = *projections_[v];
      if (P.rows() != ambientDim_ || P.cols() != ambientDim_) throw DimensionError("projection must be n x n");
      if (field_ == Field::Real && hasImaginary(P)) throw FieldError("complex projection in a real scheme");
    }
  }
  for (std::size_t e = 0; e < edgeFunctionals_.size(); ++e)
    checkBlock(edgeFunctionals_[e], ambientDim_, field_, "edge functional " + std::to_string(e));
}

LsccScheme LsccScheme::withConstants(SchemeConstants c) const {
  LsccScheme out = *this;
  out.constants_ = c;
  return out;
}

LsccScheme LsccScheme::withEdgeScale(double factor) const {
  LsccScheme out = *this;
  for (LocalFunctionals& b : out.edgeFunctionals_) b.rows *= factor;
  return out;
}

void LsccScheme::checkSignal(const Signal& f) const {
  if (f.size() != ambientDim_)
    throw DimensionError("signal length " + std::to_string(f.size()) + " differs from ambient dimension " +
                         std::to_string(ambientDim_));
  if (field_ == Field::Real && f.field() == Field::Complex) throw FieldError("complex signal given to a real scheme");
}

CVector LsccScheme::measureVertex(int v, const CVector& f) const {
  return applyBlock(vertexFrames_[static_cast<std::size_t>(v)], f);
}

CVector LsccScheme::measureEdge(int e, const CVector& f) const {
  return applyBlock(edgeFunctionals_[static_cast<std::size_t>(e)], f);
}

Eigen::Index LsccScheme::totalFunctionals() const {
  Eigen::Index m = 0;
  for (const LocalFunctionals& b : vertexFrames_) m += b.rows.rows();
  return m;
}

CVector LsccScheme::measureAll(const CVector& f) const {
  CVector out(totalFunctionals());
  Eigen::Index at = 0;
  for (std::size_t v = 0; v < vertexFrames_.size(); ++v) {
    const CVector part = applyBlock(vertexFrames_[v], f);
    out.segment(at, part.size()) = part;
    at += part.size();
  }
  return out;
}

CVector LsccScheme::project(int v, const CVector& f) const {
  const auto& P = projections_[static_cast<std::size_t>(v)];
  if (P) return *P * f;
  CVector out = CVector::Zero(ambientDim_);
  for (int k : vertexFrames_[static_cast<std::size_t>(v)].support) out[k] = f[k];
  return out;
}

CMatrix LsccScheme::vertexAnalysisDense(int v) const {
  const LocalFunctionals& b = vertexFrames_[static_cast<std::size_t>(v)];
  CMatrix m = CMatrix::Zero(b.rows.rows(), ambientDim_);
  for (std::size_t j = 0; j < b.support.size(); ++j)
    m.col(b.support[j]) = b.rows.col(static_cast<Eigen::Index>(j)).conjugate();
  return m;
}

namespace {

CMatrix rangeBasis(const CMatrix& P) {
  Eigen::JacobiSVD<CMatrix> svd(P, Eigen::ComputeThinU);
  Eigen::Index r = 0;
  while (r < svd.singularValues().size() && svd.singularValues()[r] > 0.5) ++r;
  return svd.matrixU().leftCols(r);
}

}  // namespace

CMatrix LsccScheme::localAnalysis(int v) const {
  const auto& P = projections_[static_cast<std::size_t>(v)];
  if (!P) return vertexFrames_[static_cast<std::size_t>(v)].rows.conjugate();
  return vertexAnalysisDense(v) * rangeBasis(*P);
}

CVector LsccScheme::embedLocal(int v, const CVector& local) const {
  const auto& P = projections_[static_cast<std::size_t>(v)];
  if (P) return rangeBasis(*P) * local;
  CVector out = CVector::Zero(ambientDim_);
  const auto& support = vertexFrames_[static_cast<std::size_t>(v)].support;
  for (std::size_t j = 0; j < support.size(); ++j) out[support[j]] = local[static_cast<Eigen::Index>(j)];
  return out;
}

ValidationReport validateLocalPhaseRetrieval(const LsccScheme& scheme, int trials, std::uint64_t seed) {
  if (trials < 1) throw DimensionError("trials must be positive");
  ValidationReport rep;
  rep.axiom = "local-phase-retrieval";
  rep.declared = scheme.constants().C0;
  rep.frameLower = kInf;
  const double p = scheme.p();
  const Field field = scheme.field();

  struct Cached {
    CMatrix analysis;
    double worst, lower, upper;
  };
  std::vector<Cached> cache;

  for (int v = 0; v < scheme.graph().numVertices; ++v) {
    const CMatrix M = scheme.localAnalysis(v);
    const auto hit = std::find_if(cache.begin(), cache.end(), [&](const Cached& c) {
      return c.analysis.rows() == M.rows() && c.analysis.cols() == M.cols() && c.analysis == M;
    });
    if (hit != cache.end()) {
      rep.frameLower = std::min(rep.frameLower, hit->lower);
      rep.frameUpper = std::max(rep.frameUpper, hit->upper);
      continue;
    }
    const Eigen::Index n = M.cols();
    double worst = 0.0, lower = kInf, upper = 0.0;
    auto record = [&](const CVector& f, const CVector& g) {
      const CVector mf = M * f, mg = M * g;
      for (const CVector* x : {&f, &g}) {
        const double nx = pNorm(*x, p);
        if (nx > 0.0) {
          const double r = pNorm(M * *x, p) / nx;
          lower = std::min(lower, r);
          upper = std::max(upper, r);
        }
      }
      const double r = pairRatio(mf, mg, field, p);
      ++rep.samples;
      if (r > worst) {
        worst = r;
        if (r > rep.worst) {
          rep.worst = r;
          rep.witness = Witness{v, -1, scheme.embedLocal(v, f), scheme.embedLocal(v, g), r, "local ratio"};
        }
      }
    };

    if (field == Field::Real && M.rows() <= 20) {
      const ComplementCheck cc = complementProperty(M);
      if (!cc.holds) {
        worst = kInf;
        rep.worst = kInf;
        rep.witness = Witness{v, -1, scheme.embedLocal(v, cc.f), scheme.embedLocal(v, cc.g), kInf,
                              "complement property fails: equal phaseless measurements"};
      }
    }
    Rng rng(deriveSeed(seed, static_cast<std::uint64_t>(v)));
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (i != j) record(CVector::Unit(n, i), CVector::Unit(n, i) + CVector::Unit(n, j));
    for (int t = 0; t < trials; ++t) {
      CVector f = randomVector(rng, field, n);
      CVector g;
      switch (t % 3) {
        case 0: g = randomVector(rng, field, n); break;
        case 1: g = randomUnimodular(rng, field) * (f + std::pow(10.0, rng.uniform(-4.0, 0.0)) * randomVector(rng, field, n)); break;
        default: g = f; break;
      }
      record(f, g);
    }
    rep.frameLower = std::min(rep.frameLower, lower);
    rep.frameUpper = std::max(rep.frameUpper, upper);
    cache.push_back({M, worst, lower, upper});
  }
  rep.passed = rep.worst <= rep.declared * (1.0 + 1e-9);
  return rep;
}

ValidationReport validateEdgeDomination(const LsccScheme& scheme, int trials, std::uint64_t seed) {
  if (trials < 1) throw DimensionError("trials must be positive");
  ValidationReport rep;
  rep.axiom = "edge-domination";
  rep.declared = scheme.constants().C1;
  const double p = scheme.p();
  const int n = scheme.ambientDim();
  const auto& edges = scheme.graph().edges;

  auto probe = [&](const CVector& f) {
    std::vector<double> vn(static_cast<std::size_t>(scheme.graph().numVertices));
    for (int v = 0; v < scheme.graph().numVertices; ++v) vn[static_cast<std::size_t>(v)] = pNorm(scheme.measureVertex(v, f), p);
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
      const double psi = pNorm(scheme.measureEdge(e, f), p);
      const double den = std::min(vn[static_cast<std::size_t>(edges[static_cast<std::size_t>(e)].first)],
                                  vn[static_cast<std::size_t>(edges[static_cast<std::size_t>(e)].second)]);
      double r = 0.0;
      if (den > 0.0) r = psi / den;
      else if (psi > 0.0) r = kInf;
      ++rep.samples;
      if (r > rep.worst) {
        rep.worst = r;
        rep.witness = Witness{-1, e, f, CVector(), r, den > 0.0 ? "edge ratio" : "edge functional nonzero where a vertex frame vanishes"};
      }
    }
  };

  for (int k = 0; k < std::min(n, 4096); ++k) probe(CVector::Unit(n, k));
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) probe(randomVector(rng, scheme.field(), n));
  rep.passed = rep.worst <= rep.declared * (1.0 + 1e-9);
  return rep;
}

ValidationReport validateExhaustion(const LsccScheme& scheme, int trials, std::uint64_t seed) {
  if (trials < 1) throw DimensionError("trials must be positive");
  ValidationReport rep;
  rep.axiom = "exhaustion";
  rep.declared = scheme.constants().exhaustionHigh;
  rep.declaredLow = scheme.constants().exhaustionLow;
  rep.smallest = kInf;
  const double p = scheme.p();
  const int n = scheme.ambientDim();

  auto probe = [&](const CVector& f) {
    double sum = 0.0;
    for (int v = 0; v < scheme.graph().numVertices; ++v) {
      if (scheme.projections()[static_cast<std::size_t>(v)]) {
        sum += pNormPow(scheme.project(v, f), p);
      } else {
        for (int k : scheme.vertexFrames()[static_cast<std::size_t>(v)].support) sum += std::pow(std::abs(f[k]), p);
      }
    }
    const double r = std::pow(sum, 1.0 / p) / pNorm(f, p);
    ++rep.samples;
    if (r < rep.smallest) {
      rep.smallest = r;
      if (r < rep.declaredLow * (1.0 - 1e-9)) rep.witness = Witness{-1, -1, f, CVector(), r, "norm ratio below lower constant"};
    }
    if (r > rep.worst) {
      rep.worst = r;
      if (r > rep.declared * (1.0 + 1e-9)) rep.witness = Witness{-1, -1, f, CVector(), r, "norm ratio above upper constant"};
    }
  };

  for (int k = 0; k < std::min(n, 4096); ++k) probe(CVector::Unit(n, k));
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) probe(randomVector(rng, scheme.field(), n));
  rep.passed = rep.smallest >= rep.declaredLow * (1.0 - 1e-9) && rep.worst <= rep.declared * (1.0 + 1e-9);
  return rep;
}

ValidationReport validateStructure(const LsccScheme& scheme) {
  ValidationReport rep;
  rep.axiom = "structure";
  auto fail = [&](int v, std::string note) {
    if (rep.passed) rep.witness = Witness{v, -1, CVector(), CVector(), 0.0, std::move(note)};
    rep.passed = false;
  };
  const int maxDeg = scheme.graph().maxDegree();
  if (scheme.constants().D != maxDeg)
    fail(-1, "declared D = " + std::to_string(scheme.constants().D) + " but the maximum degree is " + std::to_string(maxDeg));
  for (int v = 0; v < scheme.graph().numVertices; ++v) {
    const auto& P = scheme.projections()[static_cast<std::size_t>(v)];
    if (!P) continue;
    const double scale = std::max(1.0, P->norm());
    const double idem = (*P * *P - *P).norm();
    rep.worst = std::max(rep.worst, idem / scale);
    if (idem > 1e-10 * scale) fail(v, "P_v^2 != P_v");
    const CMatrix phi = scheme.vertexAnalysisDense(v);
    const double keep = (phi * *P - phi).norm();
    rep.worst = std::max(rep.worst, keep / std::max(1.0, phi.norm()));
    if (keep > 1e-10 * std::max(1.0, phi.norm())) fail(v, "Phi_v P_v != Phi_v");
  }
  return rep;
}

WeightedGraph induceGraph(const LsccScheme& scheme, const Signal& f, double zeroTol) {
  scheme.checkSignal(f);
  if (!(zeroTol >= 0.0)) throw DimensionError("zeroTol must be non-negative");
  const double p = scheme.p();
  const int nv = scheme.graph().numVertices;
  const auto& baseEdges = scheme.graph().edges;
  std::vector<double> wv(static_cast<std::size_t>(nv));
  std::vector<double> we(baseEdges.size());
  double maxW = 0.0;
  for (int v = 0; v < nv; ++v) {
    wv[static_cast<std::size_t>(v)] = pNormPow(scheme.measureVertex(v, f.coords()), p);
    maxW = std::max(maxW, wv[static_cast<std::size_t>(v)]);
  }
  for (std::size_t e = 0; e < baseEdges.size(); ++e) {
    we[e] = pNormPow(scheme.measureEdge(static_cast<int>(e), f.coords()), p);
    maxW = std::max(maxW, we[e]);
  }
  WeightedGraph g;
  g.topology = scheme.graph().topology;
  if (maxW == 0.0) return g;
  const double cut = zeroTol * maxW;
  std::vector<int> compact(static_cast<std::size_t>(nv), -1);
  std::vector<double> weights;
  std::vector<int> ids;
  for (int v = 0; v < nv; ++v) {
    if (wv[static_cast<std::size_t>(v)] > cut) {
      compact[static_cast<std::size_t>(v)] = static_cast<int>(weights.size());
      weights.push_back(wv[static_cast<std::size_t>(v)]);
      ids.push_back(v);
    }
  }
  if (weights.empty()) return g;
  std::vector<WeightedEdge> edges;
  for (std::size_t e = 0; e < baseEdges.size(); ++e) {
    const int cu = compact[static_cast<std::size_t>(baseEdges[e].first)];
    const int cv = compact[static_cast<std::size_t>(baseEdges[e].second)];
    if (cu >= 0 && cv >= 0 && we[e] > cut) edges.push_back({cu, cv, we[e]});
  }
  return makeWeightedGraph(std::move(weights), std::move(edges), scheme.graph().topology, std::move(ids));
}

std::string_view toString(Verdict v) {
  return v == Verdict::RetrievableByConnectivity ? "retrievable-by-connectivity" : "inconclusive";
}

Verdict verdictFromString(std::string_view s) {
  if (s == "retrievable-by-connectivity") return Verdict::RetrievableByConnectivity;
  if (s == "inconclusive") return Verdict::Inconclusive;
  throw FormatError("unknown verdict '" + std::string(s) + "'");
}

Verdict isPhaseRetrievable(const LsccScheme& scheme, const Signal& f, double zeroTol) {
  const WeightedGraph g = induceGraph(scheme, f, zeroTol);
  if (g.empty()) return Verdict::Inconclusive;
  return isConnected(g) ? Verdict::RetrievableByConnectivity : Verdict::Inconclusive;
}

EdgeGapCheck edgeGapCheck(const LsccScheme& scheme, const Signal& f, const Signal& g, double zeroTol) {
  return edgeGapCheck(scheme, induceGraph(scheme, f, zeroTol), f, g);
}

EdgeGapCheck edgeGapCheck(const LsccScheme& scheme, const WeightedGraph& gf, const Signal& f, const Signal& g) {
  scheme.checkSignal(g);
  EdgeGapCheck out;
  if (gf.empty()) return out;
  const double p = scheme.p();
  const SchemeConstants& c = scheme.constants();
  const double factor = std::pow(2.0, p - 1.0) * std::pow(c.C0 * c.C1, p);
  std::vector<Complex> xi(gf.vertexIds.size());
  std::vector<double> gapPow(gf.vertexIds.size());
  for (std::size_t i = 0; i < gf.vertexIds.size(); ++i) {
    const CVector x = scheme.measureVertex(gf.vertexIds[i], f.coords());
    const CVector y = scheme.measureVertex(gf.vertexIds[i], g.coords());
    xi[i] = alignPhase(x, y, scheme.field(), p).xi;
    gapPow[i] = std::pow(modulusDistance(x, y, p), p);
  }
  for (const WeightedEdge& e : gf.edges) {
    const double lhs = std::pow(std::abs(xi[static_cast<std::size_t>(e.u)] - xi[static_cast<std::size_t>(e.v)]), p) * e.w;
    const double rhs = factor * (gapPow[static_cast<std::size_t>(e.u)] + gapPow[static_cast<std::size_t>(e.v)]);
    ++out.edgesChecked;
    const double slack = 1e-12 * e.w;
    if (lhs > rhs * (1.0 + 1e-9) + slack) out.holds = false;
    if (rhs > 0.0) out.worstQuotient = std::max(out.worstQuotient, lhs / rhs);
    else if (lhs > slack) out.worstQuotient = kInf;
  }
  return out;
}

LocalFrameConstants localFrameConstants(const CMatrix& localAnalysis, Field field, double p, std::uint64_t seed) {
  const Frame frame = Frame::withComputedBounds(field, localAnalysis.conjugate(), p);
  LocalFrameConstants out;
  out.A = frame.lower();
  out.B = frame.upper();
  out.C0 = localStabilityConstant(localAnalysis, field, p, seed);
  return out;
}

LsccScheme toyScheme(double p) {
  CMatrix local(3, 2);
  local << 1.0, 0.0, 0.0, 1.0, 1.0, 1.0;
  std::vector<LocalFunctionals> frames;
  std::vector<std::optional<CMatrix>> projections;
  for (int k = 0; k < 3; ++k) {
    frames.push_back({{k, k + 1}, local});
    projections.emplace_back(std::nullopt);
  }
  std::vector<LocalFunctionals> edges;
  for (int k = 0; k < 2; ++k) edges.push_back({{k + 1}, CMatrix::Ones(1, 1)});
  const LocalFrameConstants lc = localFrameConstants(local.conjugate(), Field::Real, p, 0);
  SchemeConstants c;
  c.p = p;
  c.D = 2;
  c.A = lc.A;
  c.B = lc.B;
  c.C0 = lc.C0.value;
  c.c0Certified = lc.C0.certified;
  c.C1 = 1.0 / lc.A;
  c.exhaustionLow = 1.0;
  c.exhaustionHigh = std::pow(2.0, 1.0 / p);
  return LsccScheme("toy", Field::Real, 4, BaseGraph::path(3), std::move(frames), std::move(projections), std::move(edges), c);
}

}  // namespace lscc
