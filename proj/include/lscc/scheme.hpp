#pragma once

// LSCC measurement schemes: base graph, per-vertex frames and projections,
// edge functionals, axiom validators, and the signal-induced graph G_f.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lscc/graph.hpp"
#include "lscc/measurement.hpp"

namespace lscc {

struct BaseGraph {
  int numVertices = 0;
  /// Unordered pairs stored with first < second, lexicographically sorted.
  std::vector<std::pair<int, int>> edges;
  Topology topology = Topology::General;
  /// Display labels (e.g. lattice positions); defaults to 0..n-1.
  std::vector<int> labels;

  static BaseGraph path(int n, int firstLabel = 0);
  static BaseGraph cycle(int n);
  static BaseGraph make(int n, std::vector<std::pair<int, int>> edges, Topology topology = Topology::General,
                        std::vector<int> labels = {});

  int maxDegree() const;
};

/// A block of functionals acting on the coordinates listed in `support`.
/// rows(i, j) pairs with coordinate support[j]; functional i maps f to sum_j conj(rows(i, j)) f(support[j]).
struct LocalFunctionals {
  std::vector<int> support;
  CMatrix rows;
};

struct SchemeConstants {
  double p = 2.0;
  int D = 0;
  double C0 = 0.0;
  double C1 = 0.0;
  double A = 0.0;
  double B = 0.0;
  double exhaustionLow = 1.0;
  double exhaustionHigh = 1.0;
  bool c0Certified = false;
};

class LsccScheme {
 public:
  /// `projections[v]` is empty when P_v is the coordinate projection onto the support of vertex v.
  LsccScheme(std::string name, Field field, int ambientDim, BaseGraph graph, std::vector<LocalFunctionals> vertexFrames,
             std::vector<std::optional<CMatrix>> projections, std::vector<LocalFunctionals> edgeFunctionals,
             SchemeConstants constants);

  const std::string& name() const { return name_; }
  Field field() const { return field_; }
  int ambientDim() const { return ambientDim_; }
  const BaseGraph& graph() const { return graph_; }
  const std::vector<LocalFunctionals>& vertexFrames() const { return vertexFrames_; }
  const std::vector<std::optional<CMatrix>>& projections() const { return projections_; }
  const std::vector<LocalFunctionals>& edgeFunctionals() const { return edgeFunctionals_; }
  const SchemeConstants& constants() const { return constants_; }
  double p() const { return constants_.p; }

  LsccScheme withConstants(SchemeConstants c) const;
  LsccScheme withEdgeScale(double factor) const;

  /// Phi_v(f), Psi_e(f) and the concatenation Phi(f) = (Phi_0(f), Phi_1(f), ...).
  CVector measureVertex(int v, const CVector& f) const;
  CVector measureEdge(int e, const CVector& f) const;
  CVector measureAll(const CVector& f) const;
  Eigen::Index totalFunctionals() const;

  /// P_v f as an ambient vector.
  CVector project(int v, const CVector& f) const;
  /// Matrix of Phi_v restricted to range(P_v), in an orthonormal basis of that range.
  CMatrix localAnalysis(int v) const;
  /// Dense ambient analysis matrix of Phi_v (rows conjugated).
  CMatrix vertexAnalysisDense(int v) const;

  /// Map from a local-space coefficient vector back to an ambient signal.
  CVector embedLocal(int v, const CVector& local) const;

  void checkSignal(const Signal& f) const;

 private:
  std::string name_;
  Field field_;
  int ambientDim_;
  BaseGraph graph_;
  std::vector<LocalFunctionals> vertexFrames_;
  std::vector<std::optional<CMatrix>> projections_;
  std::vector<LocalFunctionals> edgeFunctionals_;
  SchemeConstants constants_;
};

struct Witness {
  int vertex = -1;
  int edge = -1;
  CVector f;
  CVector g;
  double ratio = 0.0;
  std::string note;
};

struct ValidationReport {
  std::string axiom;
  bool passed = true;
  /// Worst observed ratio against the declared constant (largest; for exhaustion also the smallest).
  double worst = 0.0;
  double smallest = 0.0;
  double declared = 0.0;
  double declaredLow = 0.0;
  /// Envelope of per-vertex frame constants estimated from the samples.
  double frameLower = 0.0;
  double frameUpper = 0.0;
  long samples = 0;
  std::optional<Witness> witness;
};

ValidationReport validateLocalPhaseRetrieval(const LsccScheme& scheme, int trials, std::uint64_t seed);
ValidationReport validateEdgeDomination(const LsccScheme& scheme, int trials, std::uint64_t seed);
ValidationReport validateExhaustion(const LsccScheme& scheme, int trials, std::uint64_t seed);
/// Phi_v P_v = Phi_v and P_v^2 = P_v (1e-10), support ranges, D equal to the maximum degree.
ValidationReport validateStructure(const LsccScheme& scheme);

inline constexpr double kDefaultZeroTol = 1e-12;

/// G_f with w_v = ||Phi_v(f)||_p^p and w_e = ||Psi_e(f)||_p^p. Weights at or below
/// zeroTol times the largest weight are dropped; vertexIds refer to base-graph vertices.
WeightedGraph induceGraph(const LsccScheme& scheme, const Signal& f, double zeroTol = kDefaultZeroTol);

enum class Verdict { RetrievableByConnectivity, Inconclusive };
std::string_view toString(Verdict v);
Verdict verdictFromString(std::string_view s);

Verdict isPhaseRetrievable(const LsccScheme& scheme, const Signal& f, double zeroTol = kDefaultZeroTol);

struct EdgeGapCheck {
  bool holds = true;
  int edgesChecked = 0;
  /// max over edges of lhs / rhs (0 when every rhs vanishes with lhs).
  double worstQuotient = 0.0;
};

/// |xi_u - xi_v|^p w_uv <= 2^{p-1} C0^p C1^p (gap_v^p + gap_u^p) on every edge of G_f.
EdgeGapCheck edgeGapCheck(const LsccScheme& scheme, const Signal& f, const Signal& g, double zeroTol = kDefaultZeroTol);
/// Same check on a precomputed G_f.
EdgeGapCheck edgeGapCheck(const LsccScheme& scheme, const WeightedGraph& gf, const Signal& f, const Signal& g);

/// The four-coordinate fixture: vertices k = 0,1,2 with frames {e_k, e_{k+1}, e_k + e_{k+1}}, Psi_{k,k+1} = {delta_{k+1}}.
LsccScheme toyScheme(double p = 2.0);

/// Constants C0 (certified when possible), C1 = 1/A and (A, B) of a scheme whose vertex frames
/// all share one local frame, returned with the local frame's analysis matrix.
struct LocalFrameConstants {
  double A = 0.0;
  double B = 0.0;
  LocalConstant C0;
};
LocalFrameConstants localFrameConstants(const CMatrix& localAnalysis, Field field, double p, std::uint64_t seed);

}  // namespace lscc
