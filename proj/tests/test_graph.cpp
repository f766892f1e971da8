#include <gtest/gtest.h>

#include <cmath>

#include "lscc/errors.hpp"
#include "lscc/graph.hpp"
#include "lscc/rng.hpp"
#include "lscc/scheme.hpp"
#include "oracles.hpp"

using namespace lscc;

namespace {

WeightedGraph randomConnected(Rng& rng, int n, double edgeProb) {
  std::vector<double> vw(static_cast<std::size_t>(n));
  for (double& w : vw) w = rng.uniform(0.1, 3.0);
  std::vector<WeightedEdge> edges;
  for (int v = 1; v < n; ++v) edges.push_back({static_cast<int>(rng.below(static_cast<std::uint64_t>(v))), v, rng.uniform(0.05, 2.0)});
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      bool present = false;
      for (const auto& e : edges) present = present || (std::min(e.u, e.v) == u && std::max(e.u, e.v) == v);
      if (!present && rng.uniform() < edgeProb) edges.push_back({u, v, rng.uniform(0.05, 2.0)});
    }
  for (auto& e : edges)
    if (e.u > e.v) std::swap(e.u, e.v);
  return makeWeightedGraph(vw, edges);
}

WeightedGraph randomPath(Rng& rng, int n, bool cycle) {
  std::vector<double> vw(static_cast<std::size_t>(n));
  for (double& w : vw) w = rng.uniform(0.01, 2.0);
  std::vector<WeightedEdge> edges;
  for (int v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, rng.uniform(0.01, 2.0)});
  if (cycle) edges.push_back({0, n - 1, rng.uniform(0.01, 2.0)});
  return makeWeightedGraph(vw, edges, cycle ? Topology::Cycle : Topology::Path);
}

}  // namespace

TEST(Construction, RejectsBadWeights) {
  EXPECT_THROW(makeWeightedGraph({1.0, -1.0}, {}), InvalidWeight);
  EXPECT_THROW(makeWeightedGraph({1.0, 1.0}, {{0, 1, 0.0}}), InvalidWeight);
  EXPECT_THROW(makeWeightedGraph({1.0, std::nan("")}, {}), InvalidWeight);
  EXPECT_THROW(makeWeightedGraph({1.0, 1.0}, {{0, 1, 1.0}, {1, 0, 2.0}}), TopologyError);
}

TEST(Cheeger, UnitFourCycle) {
  const WeightedGraph c4 = unitCycle(4);
  EXPECT_DOUBLE_EQ(cheegerExact(c4).lowerBound, 1.0);
  EXPECT_DOUBLE_EQ(cheegerInterval(c4, Topology::Cycle).lowerBound, 1.0);
  const CheegerResult sweep = cheegerSweep(c4);
  EXPECT_DOUBLE_EQ(sweep.upperBound, 1.0);
  EXPECT_EQ(sweep.witnessCut.size(), 2u);
}

TEST(Cheeger, TwoVertexPath) {
  const WeightedGraph p2 = unitPath(2);
  EXPECT_DOUBLE_EQ(cheegerExact(p2).lowerBound, 1.0);
  EXPECT_DOUBLE_EQ(cheegerInterval(p2, Topology::Path).lowerBound, 1.0);
  const CheegerResult s = cheegerSweep(p2);
  EXPECT_DOUBLE_EQ(s.upperBound, 1.0);
}

TEST(Cheeger, DisconnectedIsZeroWithComponentWitness) {
  const WeightedGraph g = makeWeightedGraph({1, 1, 1, 1}, {{0, 1, 1.0}, {2, 3, 1.0}});
  const CheegerResult c = cheegerExact(g);
  EXPECT_EQ(c.lowerBound, 0.0);
  ASSERT_EQ(c.witnessCut.size(), 2u);
  const std::vector<int> labels = componentLabels(g);
  EXPECT_EQ(labels[static_cast<std::size_t>(c.witnessCut[0])], labels[static_cast<std::size_t>(c.witnessCut[1])]);
  EXPECT_EQ(algebraicConnectivity(g).lambda, 0.0);
}

TEST(Cheeger, SingleVertexIsInfinite) {
  const WeightedGraph g = makeWeightedGraph({2.0}, {});
  EXPECT_TRUE(isConnected(g));
  EXPECT_TRUE(std::isinf(cheeger(g).lowerBound));
  EXPECT_TRUE(std::isinf(algebraicConnectivity(g).lambda));
}

TEST(ClosedForms, UnweightedCycles) {
  for (int L = 3; L <= 64; ++L) {
    const WeightedGraph c = unitCycle(L);
    EXPECT_NEAR(algebraicConnectivity(c).lambda, oracle::cycleLambda(L), 1e-10) << L;
    EXPECT_NEAR(cheegerInterval(c, Topology::Cycle).lowerBound, oracle::cycleCheeger(L), 1e-10) << L;
  }
  EXPECT_NEAR(algebraicConnectivity(unitCycle(8)).lambda, 2.0 - std::sqrt(2.0), 1e-12);
}

TEST(Laplacian, SmallGraphs) {
  Eigen::MatrixXd expect(2, 2);
  expect << 1, -1, -1, 1;
  EXPECT_EQ(laplacian(unitPath(2)), expect);
  const WeightedGraph tri = makeWeightedGraph({1, 1, 1}, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}});
  Eigen::MatrixXd t = -Eigen::MatrixXd::Ones(3, 3);
  t.diagonal().setConstant(2.0);
  EXPECT_EQ(laplacian(tri), t);
  // Unit vertex weights: the normalized Laplacian equals L, with eigenvalues {0, 3, 3}.
  EXPECT_NEAR(algebraicConnectivity(tri).lambda, 3.0, 1e-12);
}

TEST(Laplacian, ToyGraphRowSums) {
  const WeightedGraph g = induceGraph(toyScheme(), Signal::fromReal({1, 2, 3, 4}));
  const Eigen::VectorXd rows = laplacian(g).rowwise().sum();
  EXPECT_LT(rows.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Spectral, FiedlerVectorNormalization) {
  Rng rng(5);
  const WeightedGraph g = randomConnected(rng, 9, 0.3);
  const SpectralResult s = algebraicConnectivity(g);
  double mass = 0.0, norm = 0.0;
  for (int v = 0; v < g.numVertices(); ++v) {
    mass += g.vertexWeights[static_cast<std::size_t>(v)] * s.fiedlerVector[v];
    norm += g.vertexWeights[static_cast<std::size_t>(v)] * s.fiedlerVector[v] * s.fiedlerVector[v];
  }
  EXPECT_NEAR(mass, 0.0, 1e-10);
  EXPECT_NEAR(norm, 1.0, 1e-10);
  EXPECT_NEAR(rayleighQuotient(g, s.fiedlerVector), s.lambda, 1e-10);
  EXPECT_LT(s.residual, 1e-10 * std::max(1.0, s.frobenius));
}

TEST(CheegerInequality, FourCycle) {
  const WeightedGraph c4 = unitCycle(4);
  EXPECT_DOUBLE_EQ(normalizedDegree(c4), 2.0);
  const CheegerInequalityCheck ci = checkCheegerInequality(c4, 2.0);
  EXPECT_TRUE(ci.holds);
  EXPECT_NEAR(ci.lambda, 2.0, 1e-12);
  EXPECT_NEAR(ci.upperSlack, 0.0, 1e-12);
}

TEST(CheegerInequality, Disconnected) {
  const WeightedGraph g = makeWeightedGraph({1, 1, 1}, {{0, 1, 1.0}});
  EXPECT_TRUE(checkCheegerInequality(g, normalizedDegree(g)).holds);
}

TEST(CheegerInequality, RandomConnectedGraphs) {
  Rng rng(17);
  for (int t = 0; t < 500; ++t) {
    const int n = 2 + static_cast<int>(rng.below(11));
    const WeightedGraph g = randomConnected(rng, n, rng.uniform(0.0, 0.6));
    const CheegerInequalityCheck ci = checkCheegerInequality(g, normalizedDegree(g));
    ASSERT_TRUE(ci.holds) << "graph " << t << " slacks " << ci.upperSlack << " " << ci.lowerSlack;
  }
}

TEST(CheegerExact, MatchesBruteForceOracle) {
  Rng rng(23);
  for (int t = 0; t < 60; ++t) {
    const WeightedGraph g = randomConnected(rng, 2 + static_cast<int>(rng.below(9)), 0.35);
    const CheegerResult c = cheegerExact(g);
    EXPECT_NEAR(c.lowerBound, oracle::cheegerBrute(g), 1e-12) << t;
    std::vector<char> in(static_cast<std::size_t>(g.numVertices()), 0);
    for (int v : c.witnessCut) in[static_cast<std::size_t>(v)] = 1;
    const CutValue cut = evaluateCut(g, in);
    EXPECT_LE(cut.volume, g.volume() / 2.0 * (1 + 1e-12));
    EXPECT_NEAR(cut.boundary / cut.volume, c.upperBound, 1e-12);
  }
}

TEST(CheegerExact, Budget) { EXPECT_THROW(cheegerExact(unitPath(25)), BudgetExceeded); }

TEST(CheegerInterval, MatchesExactOnPathsAndCycles) {
  Rng rng(29);
  for (int t = 0; t < 80; ++t) {
    const bool cycle = t % 2 == 1;
    const WeightedGraph g = randomPath(rng, (cycle ? 3 : 2) + static_cast<int>(rng.below(12)), cycle);
    EXPECT_NEAR(cheegerInterval(g, g.topology).lowerBound, cheegerExact(g).lowerBound, 1e-12) << t;
  }
}

TEST(CheegerInterval, RejectsWrongTopology) {
  const WeightedGraph tri = makeWeightedGraph({1, 1, 1, 1}, {{0, 2, 1}, {1, 3, 1}, {0, 1, 1}});
  EXPECT_THROW(cheegerInterval(tri, Topology::Path), TopologyError);
}

TEST(CheegerSweep, SandwichesExactValue) {
  Rng rng(31);
  for (int t = 0; t < 60; ++t) {
    const WeightedGraph g = randomConnected(rng, 2 + static_cast<int>(rng.below(12)), 0.4);
    const double exact = cheegerExact(g).lowerBound;
    const CheegerResult s = cheegerSweep(g);
    EXPECT_LE(s.lowerBound, exact * (1 + 1e-12)) << t;
    EXPECT_GE(s.upperBound, exact * (1 - 1e-12)) << t;
  }
}

TEST(Cheeger, PolicyUsesSweepOnLargeGeneralGraphs) {
  Rng rng(37);
  const WeightedGraph g = randomConnected(rng, 30, 0.1);
  const CheegerResult c = cheeger(g);
  EXPECT_EQ(c.method, CheegerMethod::SpectralSweepSandwich);
  EXPECT_LE(c.lowerBound, c.upperBound);
}

TEST(Properties, ScalingWeightsKeepsCheegerAndLambda) {
  Rng rng(41);
  for (int t = 0; t < 20; ++t) {
    const WeightedGraph g = randomConnected(rng, 7, 0.4);
    const WeightedGraph h = scaledWeights(g, 17.5);
    EXPECT_NEAR(cheegerExact(h).lowerBound, cheegerExact(g).lowerBound, 1e-12);
    EXPECT_NEAR(algebraicConnectivity(h).lambda, algebraicConnectivity(g).lambda, 1e-10);
  }
}

TEST(Properties, LambdaWithinZeroAndTwiceNormalizedDegree) {
  Rng rng(43);
  for (int t = 0; t < 50; ++t) {
    const WeightedGraph g = randomConnected(rng, 2 + static_cast<int>(rng.below(10)), 0.5);
    const double lambda = algebraicConnectivity(g).lambda;
    EXPECT_GT(lambda, 0.0);
    EXPECT_LE(lambda, 2.0 * normalizedDegree(g) + 1e-10);
  }
}
