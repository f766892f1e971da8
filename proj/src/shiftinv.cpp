#include "lscc/shiftinv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lscc/errors.hpp"
#include "lscc/stability.hpp"
#include "lscc/windowed.hpp"

namespace lscc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void checkGenerator(const GeneratorModel& gen) {
  if (gen.N < 2) throw DimensionError("generator order N must be at least 2");
  if (!(gen.p >= 1.0)) throw UnsupportedP("p must be at least 1");
  if (gen.matrix.rows() != static_cast<Eigen::Index>(gen.gamma.size()) || gen.matrix.cols() != gen.N)
    throw DimensionError("generator matrix must be |Gamma| x N");
  for (double g : gen.gamma)
    if (!(g > 0.0 && g < 1.0)) throw DimensionError("sampling offsets must lie in (0, 1)");
}

CMatrix asComplex(const Eigen::MatrixXd& m) { return m.cast<Complex>(); }

}  // namespace

double cardinalBSpline(int N, double x) {
  if (N < 1) throw DimensionError("B-spline order must be positive");
  if (N == 1) return (x >= 0.0 && x < 1.0) ? 1.0 : 0.0;
  if (x <= 0.0 || x >= N) return 0.0;
  return (x * cardinalBSpline(N - 1, x) + (N - x) * cardinalBSpline(N - 1, x - 1.0)) / (N - 1);
}

GeneratorModel GeneratorModel::bspline(int N, double p, std::vector<double> gamma) {
  if (N < 2) throw DimensionError("generator order N must be at least 2");
  if (gamma.empty())
    for (int j = 1; j <= 2 * N - 1; ++j) gamma.push_back(static_cast<double>(j) / (2 * N));
  GeneratorModel gen;
  gen.N = N;
  gen.p = p;
  gen.gamma = std::move(gamma);
  gen.matrix.resize(static_cast<Eigen::Index>(gen.gamma.size()), N);
  for (Eigen::Index i = 0; i < gen.matrix.rows(); ++i)
    for (int j = 0; j < N; ++j) gen.matrix(i, j) = cardinalBSpline(N, gen.gamma[i] - (-N + 1 + j));
  checkGenerator(gen);
  return gen;
}

bool locallyIndependent(const GeneratorModel& gen, int cells) {
  checkGenerator(gen);
  if (cells < 1) throw DimensionError("need at least one cell");
  for (int c = 0; c < cells; ++c) {
    Eigen::MatrixXd m(gen.N, gen.N);
    for (int i = 0; i < gen.N; ++i) {
      const double x = (c + (i + 1.0) / (gen.N + 1.0)) / cells;
      for (int j = 0; j < gen.N; ++j) m(i, j) = cardinalBSpline(gen.N, x - (-gen.N + 1 + j));
    }
    if (!(singularRange(asComplex(m)).smallest > 1e-12)) return false;
  }
  return true;
}

double sigmaConstant(const GeneratorModel& gen) {
  checkGenerator(gen);
  return strongComplementConstant(asComplex(gen.matrix));
}

double corollaryCV(double sigma, double lambdaMax, int N) {
  return std::max(2.0 * std::sqrt(static_cast<double>(N)) * lambdaMax / sigma,
                  4.0 * std::sqrt(2.0) * N * lambdaMax / (sigma * sigma));
}

CorollaryConstants corollaryConstants(const GeneratorModel& gen) {
  CorollaryConstants c;
  c.sigma = sigmaConstant(gen);
  if (!(c.sigma > 0.0)) throw DegenerateFrame("sampling set does not give phase retrieval on K0");
  c.lambdaMax = singularRange(asComplex(gen.matrix)).largest;
  const double n = gen.N;
  c.C0 = std::sqrt(2.0) * std::sqrt(n) * c.lambdaMax / c.sigma;
  c.C1 = std::sqrt(2.0) / c.sigma;
  c.CV = corollaryCV(c.sigma, c.lambdaMax, gen.N);
  c.C2 = constantC2(2.0, 2.0, c.C0, c.C1);
  return c;
}

LsccScheme buildShiftInvScheme(const GeneratorModel& gen, int R) {
  checkGenerator(gen);
  const int N = gen.N;
  if (R < N) throw DimensionError("truncation radius R must be at least N");
  const CMatrix local = asComplex(gen.matrix);
  if (!complementProperty(local).holds) throw SchemeError("sampling set does not give phase retrieval on K0");

  const int n = 2 * R + N;
  std::vector<LocalFunctionals> frames;
  std::vector<std::optional<CMatrix>> projections;
  for (int l = -R; l <= R; ++l) {
    std::vector<int> support;
    for (int k = l - N + 1; k <= l; ++k) support.push_back(coefficientIndex(k, N, R));
    frames.push_back({std::move(support), local});
    projections.emplace_back(std::nullopt);
  }
  BaseGraph graph = BaseGraph::path(2 * R + 1, -R);
  std::vector<LocalFunctionals> edges;
  for (const auto& [u, v] : graph.edges) {
    (void)u;
    const int l = v - R;
    std::vector<int> overlap;
    for (int k = l - N + 1; k <= l - 1; ++k) overlap.push_back(coefficientIndex(k, N, R));
    edges.push_back({std::move(overlap), CMatrix::Identity(N - 1, N - 1)});
  }

  SchemeConstants c;
  c.p = gen.p;
  c.D = 2;
  c.exhaustionLow = 1.0;
  c.exhaustionHigh = std::pow(static_cast<double>(N), 1.0 / gen.p);
  if (gen.p == 2.0) {
    const CorollaryConstants cc = corollaryConstants(gen);
    c.A = singularRange(local).smallest;
    c.B = cc.lambdaMax;
    c.C0 = cc.C0;
    c.C1 = cc.C1;
    c.c0Certified = true;
  } else {
    const LocalFrameConstants lc = localFrameConstants(local, Field::Real, gen.p, 0);
    c.A = lc.A;
    c.B = lc.B;
    c.C0 = lc.C0.value;
    c.c0Certified = lc.C0.certified;
    c.C1 = normRatioHigh(N - 1, gen.p) /
           (singularRange(local).smallest * normRatioLow(static_cast<Eigen::Index>(gen.gamma.size()), gen.p));
  }
  return LsccScheme("shiftinv", Field::Real, n, std::move(graph), std::move(frames), std::move(projections),
                    std::move(edges), c);
}

std::string_view toString(DecayProfile::Kind k) {
  return k == DecayProfile::Kind::Exponential ? "exp" : "poly";
}

DecayProfile::Kind decayKindFromString(std::string_view s) {
  if (s == "exp" || s == "exponential") return DecayProfile::Kind::Exponential;
  if (s == "poly" || s == "polynomial") return DecayProfile::Kind::Polynomial;
  throw FormatError("unknown decay kind '" + std::string(s) + "'");
}

namespace {

void checkProfile(const DecayProfile& profile) {
  if (!(profile.beta > 0.0)) throw ClassError("decay rate beta must be positive");
  if (profile.kind == DecayProfile::Kind::Polynomial && !(profile.beta > 1.0))
    throw ClassError("polynomial decay needs beta > 1");
}

double decayPow(const DecayProfile& profile, double k) {
  return profile.kind == DecayProfile::Kind::Exponential ? std::exp(-profile.beta * std::abs(k))
                                                         : std::pow(1.0 + std::abs(k), -profile.beta);
}

}  // namespace

Signal decaySignal(const DecayProfile& profile, int N, int R, double p) {
  checkProfile(profile);
  if (N < 2 || R < 0) throw DimensionError("need N >= 2 and R >= 0");
  CVector c = CVector::Zero(2 * R + N);
  for (int k = -R; k <= R; ++k) c[coefficientIndex(k, N, R)] = std::pow(decayPow(profile, k), 1.0 / p);
  return Signal(Field::Real, c);
}

double exponentialFloor(int N, double B, double p, double beta) {
  return (N - 1.0) / (N * std::pow(B, p)) * (1.0 - std::exp(-beta)) * std::exp(-2.0 * N * beta);
}

DecayStudy decayCheegerStudy(const GeneratorModel& gen, const DecayProfile& profile, const std::vector<int>& Rvalues) {
  checkProfile(profile);
  if (Rvalues.empty()) throw DimensionError("empty R range");
  const int N = gen.N;
  const double p = gen.p;
  DecayStudy study;
  std::vector<double> xs, ys;
  for (int R : Rvalues) {
    const LsccScheme scheme = buildShiftInvScheme(gen, R);
    const Signal f = decaySignal(profile, N, R, p);
    // Tail weights of the exponential profile fall far below any relative cutoff but are exactly positive.
    const WeightedGraph g = induceGraph(scheme, f, 0.0);
    DecayRow row;
    row.R = R;
    row.vertices = g.numVertices();
    row.cheeger = cheegerInterval(g, Topology::Path).lowerBound;
    const SchemeConstants& c = scheme.constants();
    if (profile.kind == DecayProfile::Kind::Exponential) {
      row.reference = exponentialFloor(N, c.B, p, profile.beta);
      row.pass = row.cheeger >= row.reference * (1.0 - 1e-9);
    } else {
      // Tail cuts S_k = {l >= k}: one boundary edge of weight <= (N-1) h(k-N+1) and
      // vol(S_k) >= A^p sum_{l >= k} h(l), where h(x) = (1 + x)^{-beta}.
      double total = g.volume();
      std::vector<double> tailVol(2 * R + 2, 0.0);
      for (int v = g.numVertices() - 1; v >= 0; --v) {
        const int l = scheme.graph().labels[g.vertexIds[v]];
        tailVol[l + R] = g.vertexWeights[v] + tailVol[l + R + 1];
      }
      double tailH = 0.0;
      row.reference = kInf;
      for (int k = R; k >= N; --k) {
        tailH += decayPow(profile, k);
        if (tailVol[k + R] > total / 2.0) continue;
        const double ceil = (N - 1.0) * decayPow(profile, k - N + 1) / (std::pow(c.A, p) * tailH);
        row.reference = std::min(row.reference, ceil);
      }
      row.pass = row.cheeger <= row.reference * (1.0 + 1e-9);
    }
    study.pass = study.pass && row.pass;
    xs.push_back(R);
    ys.push_back(row.cheeger);
    study.rows.push_back(row);
  }
  study.slope = logLogSlope(xs, ys);
  return study;
}

}  // namespace lscc
