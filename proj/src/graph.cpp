#include "lscc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "lscc/errors.hpp"

namespace lscc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void requireNonEmpty(const WeightedGraph& g, const char* what) {
  if (g.empty()) throw EmptyGraphError(std::string(what) + " on a graph without vertices");
}

bool lexLess(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/// Keeps the smallest ratio; exact ties go to the lexicographically smaller member list.
struct BestCut {
  double ratio = kInf;
  std::vector<int> members;

  void offer(double r, const std::vector<char>& inS, bool side) {
    if (r > ratio) return;
    std::vector<int> cand;
    for (int i = 0; i < static_cast<int>(inS.size()); ++i)
      if ((inS[static_cast<std::size_t>(i)] != 0) == side) cand.push_back(i);
    if (r < ratio || members.empty() || lexLess(cand, members)) {
      ratio = r;
      members = std::move(cand);
    }
  }
};

}  // namespace

std::string_view toString(Topology t) {
  switch (t) {
    case Topology::Path: return "path";
    case Topology::Cycle: return "cycle";
    default: return "general";
  }
}

Topology topologyFromString(std::string_view name) {
  if (name == "path") return Topology::Path;
  if (name == "cycle") return Topology::Cycle;
  if (name == "general") return Topology::General;
  throw FormatError("unknown topology '" + std::string(name) + "'");
}

std::string_view toString(CheegerMethod m) {
  switch (m) {
    case CheegerMethod::ExactEnumeration: return "exact";
    case CheegerMethod::IntervalReduction: return "interval";
    default: return "sweep";
  }
}

double WeightedGraph::volume() const {
  double s = 0.0;
  for (double w : vertexWeights) s += w;
  return s;
}

WeightedGraph makeWeightedGraph(std::vector<double> vertexWeights, std::vector<WeightedEdge> edges, Topology topology,
                                std::vector<int> vertexIds) {
  const int n = static_cast<int>(vertexWeights.size());
  for (double w : vertexWeights)
    if (!(w > 0.0) || !std::isfinite(w)) throw InvalidWeight("vertex weights must be positive and finite");
  if (vertexIds.empty()) {
    vertexIds.resize(static_cast<std::size_t>(n));
    std::iota(vertexIds.begin(), vertexIds.end(), 0);
  }
  if (static_cast<int>(vertexIds.size()) != n) throw DimensionError("vertexIds length differs from vertex count");
  for (WeightedEdge& e : edges) {
    if (e.u == e.v) throw TopologyError("self-loop at vertex " + std::to_string(e.u));
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) throw DimensionError("edge endpoint out of range");
    if (!(e.w > 0.0) || !std::isfinite(e.w)) throw InvalidWeight("edge weights must be positive and finite");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v) throw TopologyError("duplicate edge");
  WeightedGraph g;
  g.vertexIds = std::move(vertexIds);
  g.vertexWeights = std::move(vertexWeights);
  g.edges = std::move(edges);
  g.topology = topology;
  return g;
}

WeightedGraph unitCycle(int n) {
  std::vector<WeightedEdge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
  if (n == 2) edges.pop_back();
  return makeWeightedGraph(std::vector<double>(static_cast<std::size_t>(n), 1.0), std::move(edges), Topology::Cycle);
}

WeightedGraph unitPath(int n) {
  std::vector<WeightedEdge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return makeWeightedGraph(std::vector<double>(static_cast<std::size_t>(n), 1.0), std::move(edges), Topology::Path);
}

WeightedGraph scaledWeights(const WeightedGraph& g, double c) {
  WeightedGraph out = g;
  for (double& w : out.vertexWeights) w *= c;
  for (WeightedEdge& e : out.edges) e.w *= c;
  return out;
}

std::vector<int> componentLabels(const WeightedGraph& g) {
  const int n = g.numVertices();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const WeightedEdge& e : g.edges) {
    const int a = find(e.u), b = find(e.v);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  std::vector<int> rootLabel(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (int v = 0; v < n; ++v) {
    const int r = find(v);
    if (rootLabel[static_cast<std::size_t>(r)] < 0) rootLabel[static_cast<std::size_t>(r)] = next++;
    label[static_cast<std::size_t>(v)] = rootLabel[static_cast<std::size_t>(r)];
  }
  return label;
}

bool isConnected(const WeightedGraph& g) {
  requireNonEmpty(g, "isConnected");
  const std::vector<int> labels = componentLabels(g);
  return std::all_of(labels.begin(), labels.end(), [](int l) { return l == 0; });
}

CutValue evaluateCut(const WeightedGraph& g, const std::vector<char>& inS) {
  CutValue c;
  for (std::size_t i = 0; i < g.vertexWeights.size(); ++i)
    if (inS[i] != 0) c.volume += g.vertexWeights[i];
  for (const WeightedEdge& e : g.edges)
    if (inS[static_cast<std::size_t>(e.u)] != inS[static_cast<std::size_t>(e.v)]) c.boundary += e.w;
  return c;
}

namespace {

CheegerResult singleVertexResult(CheegerMethod m) { return {kInf, kInf, m, {}}; }

}  // namespace

CheegerResult cheegerExact(const WeightedGraph& g) {
  requireNonEmpty(g, "cheegerExact");
  const int n = g.numVertices();
  if (n > kExactCheegerLimit)
    throw BudgetExceeded("exact Cheeger enumeration limited to " + std::to_string(kExactCheegerLimit) + " vertices, got " +
                         std::to_string(n));
  if (n == 1) return singleVertexResult(CheegerMethod::ExactEnumeration);

  const double half = g.volume() / 2.0;
  BestCut best;
  std::vector<char> inS(static_cast<std::size_t>(n), 0);
  std::vector<char> inC(static_cast<std::size_t>(n), 0);
  // The last vertex always lies outside the mask: each cut {S, S^c} is visited once.
  const std::uint32_t total = 1U << (n - 1);
  for (std::uint32_t mask = 1; mask < total; ++mask) {
    for (int i = 0; i < n; ++i) {
      inS[static_cast<std::size_t>(i)] = (i < n - 1 && ((mask >> i) & 1U)) ? 1 : 0;
      inC[static_cast<std::size_t>(i)] = inS[static_cast<std::size_t>(i)] ? 0 : 1;
    }
    const CutValue s = evaluateCut(g, inS);
    const CutValue c = evaluateCut(g, inC);
    if (s.volume <= half) best.offer(s.boundary / s.volume, inS, true);
    if (c.volume <= half) best.offer(c.boundary / c.volume, inC, true);
  }
  return {best.ratio, best.ratio, CheegerMethod::ExactEnumeration, best.members};
}

CheegerResult cheegerInterval(const WeightedGraph& g, Topology topology) {
  requireNonEmpty(g, "cheegerInterval");
  const int n = g.numVertices();
  if (topology == Topology::General) throw TopologyError("interval reduction needs a path or cycle order");

  // Index of the edge {i, i+1 (mod n)} in g.edges, or -1.
  std::vector<int> nextEdge(static_cast<std::size_t>(n), -1);
  for (int idx = 0; idx < static_cast<int>(g.edges.size()); ++idx) {
    const WeightedEdge& e = g.edges[static_cast<std::size_t>(idx)];
    if (e.v == e.u + 1) {
      nextEdge[static_cast<std::size_t>(e.u)] = idx;
    } else if (topology == Topology::Cycle && e.u == 0 && e.v == n - 1) {
      nextEdge[static_cast<std::size_t>(n - 1)] = idx;
    } else {
      throw TopologyError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") breaks the " +
                          std::string(toString(topology)) + " order");
    }
  }
  if (n == 1) return singleVertexResult(CheegerMethod::IntervalReduction);

  const double half = g.volume() / 2.0;
  BestCut best;
  std::vector<char> inS(static_cast<std::size_t>(n), 0);

  // Boundary edges summed in edge-list order, matching evaluateCut.
  auto boundary = [&](int left, int right) {
    int a = left, b = right;
    if (a > b) std::swap(a, b);
    double s = 0.0;
    if (a >= 0) s += g.edges[static_cast<std::size_t>(a)].w;
    if (b >= 0 && b != a) s += g.edges[static_cast<std::size_t>(b)].w;
    return s;
  };
  auto offer = [&](int start, int len, double vol, double bnd) {
    if (vol > half) return;
    const double r = bnd / vol;
    if (r > best.ratio) return;
    std::fill(inS.begin(), inS.end(), 0);
    for (int j = 0; j < len; ++j) inS[static_cast<std::size_t>((start + j) % n)] = 1;
    best.offer(r, inS, true);
  };

  for (int k = 0; k < n; ++k) {
    double vol = 0.0;
    const int leftEdge = k > 0 ? nextEdge[static_cast<std::size_t>(k - 1)]
                               : (topology == Topology::Cycle ? nextEdge[static_cast<std::size_t>(n - 1)] : -1);
    for (int l = k; l < n; ++l) {
      vol += g.vertexWeights[static_cast<std::size_t>(l)];
      if (k == 0 && l == n - 1) break;
      const int rightEdge = l < n - 1 ? nextEdge[static_cast<std::size_t>(l)]
                                      : (topology == Topology::Cycle ? nextEdge[static_cast<std::size_t>(n - 1)] : -1);
      offer(k, l - k + 1, vol, boundary(leftEdge, rightEdge));
    }
    if (topology != Topology::Cycle || k == 0) continue;
    // Arcs that wrap past n-1: {k..n-1} + {0..end}, end < k-1.
    for (int end = 0; end < k - 1; ++end) {
      double wrapVol = 0.0;
      for (int i = 0; i < n; ++i)
        if (i <= end || i >= k) wrapVol += g.vertexWeights[static_cast<std::size_t>(i)];
      offer(k, n - k + end + 1, wrapVol, boundary(nextEdge[static_cast<std::size_t>(k - 1)], nextEdge[static_cast<std::size_t>(end)]));
    }
  }
  return {best.ratio, best.ratio, CheegerMethod::IntervalReduction, best.members};
}

Eigen::MatrixXd laplacian(const WeightedGraph& g) {
  const int n = g.numVertices();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (const WeightedEdge& e : g.edges) {
    l(e.u, e.v) -= e.w;
    l(e.v, e.u) -= e.w;
    l(e.u, e.u) += e.w;
    l(e.v, e.v) += e.w;
  }
  return l;
}

Eigen::MatrixXd normalizedLaplacian(const WeightedGraph& g) {
  const int n = g.numVertices();
  Eigen::VectorXd invSqrt(n);
  for (int i = 0; i < n; ++i) {
    const double w = g.vertexWeights[static_cast<std::size_t>(i)];
    if (!(w > 0.0)) throw InvalidWeight("zero vertex weight reached the spectral stage");
    invSqrt[i] = 1.0 / std::sqrt(w);
  }
  return invSqrt.asDiagonal() * laplacian(g) * invSqrt.asDiagonal();
}

double rayleighQuotient(const WeightedGraph& g, const Eigen::VectorXd& z) {
  double num = 0.0, den = 0.0;
  for (const WeightedEdge& e : g.edges) {
    const double d = z[e.u] - z[e.v];
    num += e.w * d * d;
  }
  for (int i = 0; i < g.numVertices(); ++i) den += g.vertexWeights[static_cast<std::size_t>(i)] * z[i] * z[i];
  return num / den;
}

namespace {

void normalizeSign(Eigen::VectorXd& z) {
  const double scale = z.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (std::abs(z[i]) > 1e-10 * scale) {
      if (z[i] < 0.0) z = -z;
      return;
    }
  }
}

}  // namespace

SpectralResult algebraicConnectivity(const WeightedGraph& g) {
  requireNonEmpty(g, "algebraicConnectivity");
  const int n = g.numVertices();
  const Eigen::MatrixXd m = normalizedLaplacian(g);
  SpectralResult out;
  out.frobenius = m.norm();
  if (n == 1) {
    out.lambda = kInf;
    return out;
  }
  Eigen::VectorXd sqrtW(n);
  for (int i = 0; i < n; ++i) sqrtW[i] = std::sqrt(g.vertexWeights[static_cast<std::size_t>(i)]);

  const std::vector<int> labels = componentLabels(g);
  if (std::any_of(labels.begin(), labels.end(), [](int l) { return l != 0; })) {
    // Weighted indicator of the first component, centered: an exact null vector.
    double volC = 0.0;
    for (int i = 0; i < n; ++i)
      if (labels[static_cast<std::size_t>(i)] == 0) volC += g.vertexWeights[static_cast<std::size_t>(i)];
    const double frac = volC / g.volume();
    Eigen::VectorXd z(n);
    for (int i = 0; i < n; ++i) z[i] = (labels[static_cast<std::size_t>(i)] == 0 ? 1.0 : 0.0) - frac;
    double norm2 = 0.0;
    for (int i = 0; i < n; ++i) norm2 += g.vertexWeights[static_cast<std::size_t>(i)] * z[i] * z[i];
    z /= std::sqrt(norm2);
    normalizeSign(z);
    out.lambda = 0.0;
    out.fiedlerVector = z;
    const Eigen::VectorXd u = sqrtW.cwiseProduct(z);
    out.residual = (m * u).norm();
    return out;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  if (eig.info() != Eigen::Success) throw Error("eigensolver failed to converge");
  Eigen::VectorXd u = eig.eigenvectors().col(1);
  const Eigen::VectorXd e = sqrtW / sqrtW.norm();
  u -= e.dot(u) * e;
  u.normalize();
  const double lambda = std::max(0.0, eig.eigenvalues()[1]);
  Eigen::VectorXd z = u.cwiseQuotient(sqrtW);
  normalizeSign(z);
  out.lambda = lambda;
  out.fiedlerVector = z;
  const Eigen::VectorXd uSigned = sqrtW.cwiseProduct(z);
  out.residual = (m * uSigned - lambda * uSigned).norm();
  return out;
}

CheegerResult cheegerSweep(const WeightedGraph& g) {
  requireNonEmpty(g, "cheegerSweep");
  const int n = g.numVertices();
  if (n < 2) throw DimensionError("sweep cut needs at least two vertices");
  const SpectralResult spec = algebraicConnectivity(g);
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return spec.fiedlerVector[a] < spec.fiedlerVector[b]; });

  const double half = g.volume() / 2.0;
  BestCut best;
  std::vector<char> inS(static_cast<std::size_t>(n), 0);
  std::vector<char> inC(static_cast<std::size_t>(n), 1);
  for (int i = 0; i + 1 < n; ++i) {
    inS[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = 1;
    inC[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = 0;
    const CutValue s = evaluateCut(g, inS);
    const CutValue c = evaluateCut(g, inC);
    if (s.volume <= half) best.offer(s.boundary / s.volume, inS, true);
    if (c.volume <= half) best.offer(c.boundary / c.volume, inC, true);
  }
  CheegerResult r;
  r.method = CheegerMethod::SpectralSweepSandwich;
  r.upperBound = best.ratio;
  r.lowerBound = std::min(spec.lambda / 2.0, best.ratio);
  r.witnessCut = best.members;
  return r;
}

CheegerResult cheeger(const WeightedGraph& g) {
  requireNonEmpty(g, "cheeger");
  if (g.topology != Topology::General) return cheegerInterval(g, g.topology);
  if (g.numVertices() <= kExactCheegerLimit) return cheegerExact(g);
  return cheegerSweep(g);
}

double normalizedDegree(const WeightedGraph& g) {
  std::vector<double> incident(g.vertexWeights.size(), 0.0);
  for (const WeightedEdge& e : g.edges) {
    incident[static_cast<std::size_t>(e.u)] += e.w;
    incident[static_cast<std::size_t>(e.v)] += e.w;
  }
  double dn = 0.0;
  for (std::size_t i = 0; i < incident.size(); ++i) dn = std::max(dn, incident[i] / g.vertexWeights[i]);
  return dn;
}

CheegerInequalityCheck checkCheegerInequality(const WeightedGraph& g, double normalizedDegreeValue,
                                              const CheegerResult& cheeger, const SpectralResult& spectral) {
  CheegerInequalityCheck c;
  c.cheegerUpper = cheeger.upperBound;
  c.cheegerLower = cheeger.lowerBound;
  c.lambda = spectral.lambda;
  c.normalizedDegree = normalizedDegreeValue;
  if (g.numVertices() <= 1) {
    c.upperSlack = c.lowerSlack = kInf;
    return c;
  }
  c.upperSlack = 2.0 * cheeger.upperBound - spectral.lambda;
  const double lowerTerm =
      cheeger.lowerBound == 0.0 ? 0.0 : cheeger.lowerBound * cheeger.lowerBound / (2.0 * normalizedDegreeValue);
  c.lowerSlack = spectral.lambda - lowerTerm;
  c.holds = c.upperSlack >= -1e-9 && c.lowerSlack >= -1e-9;
  return c;
}

CheegerInequalityCheck checkCheegerInequality(const WeightedGraph& g, double normalizedDegreeValue) {
  requireNonEmpty(g, "checkCheegerInequality");
  const CheegerResult ch = g.numVertices() <= kExactCheegerLimit ? cheegerExact(g) : cheeger(g);
  return checkCheegerInequality(g, normalizedDegreeValue, ch, algebraicConnectivity(g));
}

}  // namespace lscc
