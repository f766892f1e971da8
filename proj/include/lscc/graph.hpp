#pragma once

// Weighted graphs G_f: connectivity, Cheeger constant, Laplacian, algebraic
// connectivity, and the Cheeger-inequality sandwich.

#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace lscc {

/// Vertex-order hint inherited from the base graph of a scheme.
enum class Topology { General, Path, Cycle };

std::string_view toString(Topology t);
Topology topologyFromString(std::string_view name);

struct WeightedEdge {
  int u = 0;  // compact index, u < v
  int v = 0;
  double w = 0.0;
};

/// Vertex and edge weights of an induced graph. Vertices are compact indices
/// 0..n-1; `vertexIds` maps them back to base-graph labels. Edges are stored
/// with u < v in lexicographic order.
struct WeightedGraph {
  std::vector<int> vertexIds;
  std::vector<double> vertexWeights;
  std::vector<WeightedEdge> edges;
  Topology topology = Topology::General;

  int numVertices() const { return static_cast<int>(vertexWeights.size()); }
  bool empty() const { return vertexWeights.empty(); }
  double volume() const;
};

/// Builds a graph from raw weights; validates positivity and sorts edges.
WeightedGraph makeWeightedGraph(std::vector<double> vertexWeights, std::vector<WeightedEdge> edges,
                                Topology topology = Topology::General, std::vector<int> vertexIds = {});

/// Unweighted cycle / path with unit vertex and edge weights.
WeightedGraph unitCycle(int n);
WeightedGraph unitPath(int n);

/// Multiplies every vertex and edge weight by c > 0.
WeightedGraph scaledWeights(const WeightedGraph& g, double c);

bool isConnected(const WeightedGraph& g);
/// Component label per vertex; labels are 0.. in order of first appearance.
std::vector<int> componentLabels(const WeightedGraph& g);

enum class CheegerMethod { ExactEnumeration, IntervalReduction, SpectralSweepSandwich };
std::string_view toString(CheegerMethod m);

struct CheegerResult {
  double lowerBound = 0.0;
  double upperBound = 0.0;
  CheegerMethod method = CheegerMethod::ExactEnumeration;
  /// Sorted compact indices of a cut S with vol(S) <= vol(V)/2 achieving upperBound.
  /// Empty for a single-vertex graph, where no admissible cut exists and both bounds are +inf.
  std::vector<int> witnessCut;

  bool exact() const { return method != CheegerMethod::SpectralSweepSandwich; }
};

/// Boundary weight and volume of S, each summed in ascending (vertex / edge) order.
struct CutValue {
  double boundary = 0.0;
  double volume = 0.0;
};
CutValue evaluateCut(const WeightedGraph& g, const std::vector<char>& inS);

inline constexpr int kExactCheegerLimit = 24;

/// Exact Cheeger constant by enumerating all 2^(|V|-1) cuts. |V| <= 24.
CheegerResult cheegerExact(const WeightedGraph& g);
/// Exact Cheeger constant over contiguous intervals (arcs) of a path (cycle) order.
CheegerResult cheegerInterval(const WeightedGraph& g, Topology topology);
/// Fiedler sweep cut with the certified sandwich lambda/2 <= C_G <= best sweep ratio.
CheegerResult cheegerSweep(const WeightedGraph& g);
/// Interval method when the topology is known, exact enumeration up to 24 vertices, sweep otherwise.
CheegerResult cheeger(const WeightedGraph& g);

/// L = D - A, dense.
Eigen::MatrixXd laplacian(const WeightedGraph& g);
/// S^{-1/2} L S^{-1/2} with S = diag(vertex weights).
Eigen::MatrixXd normalizedLaplacian(const WeightedGraph& g);

struct SpectralResult {
  double lambda = 0.0;
  /// Unit norm in l^2(V, w), orthogonal to 1 in l^2(V, w), first significant entry positive.
  Eigen::VectorXd fiedlerVector;
  /// ||M u - lambda u||_2 and ||M||_F of the normalized Laplacian, for certification.
  double residual = 0.0;
  double frobenius = 0.0;
};

/// Second-smallest eigenvalue of the normalized Laplacian. Exactly 0 for
/// disconnected graphs, +inf for a single vertex (no admissible z).
SpectralResult algebraicConnectivity(const WeightedGraph& g);

/// R(z) = sum_e w_e |z_u - z_v|^2 / sum_v w_v |z_v|^2.
double rayleighQuotient(const WeightedGraph& g, const Eigen::VectorXd& z);

/// max_v sum_{u ~ v} w_{u,v} / w_v.
double normalizedDegree(const WeightedGraph& g);

struct CheegerInequalityCheck {
  bool holds = true;
  double cheegerUpper = 0.0;
  double cheegerLower = 0.0;
  double lambda = 0.0;
  double normalizedDegree = 0.0;
  /// 2 C_G - lambda and lambda - C_G^2 / (2 D_N); both must be >= -1e-9.
  double upperSlack = 0.0;
  double lowerSlack = 0.0;
};

/// Checks 2 C_G >= lambda >= C_G^2 / (2 D_N). For a sandwiched Cheeger value uses
/// 2 * upper >= lambda and lambda >= lower^2 / (2 D_N).
CheegerInequalityCheck checkCheegerInequality(const WeightedGraph& g, double normalizedDegree,
                                              const CheegerResult& cheeger, const SpectralResult& spectral);
CheegerInequalityCheck checkCheegerInequality(const WeightedGraph& g, double normalizedDegree);

}  // namespace lscc
