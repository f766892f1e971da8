#pragma once

// Explicit stability constants and per-signal stability reports.

#include <cstdint>
#include <optional>
#include <string_view>

#include "lscc/graph.hpp"
#include "lscc/scheme.hpp"

namespace lscc {

/// (max{2^{p-1} C0^p, 2^{2p-2} D C1^p C0^p})^{1/p}
double constantC2(double p, double D, double C0, double C1);
double constantC2(const SchemeConstants& c);
/// max{4 C0 C1 sqrt(D), sqrt(8 C0^2 + 2)}; p must be 2.
double constantC3(double p, double D, double C0, double C1);
double constantC3(const SchemeConstants& c);

/// C2 (1 + C_G^{-1/p}); +inf when C_G = 0, C2 when C_G = +inf.
double realBoundFromCheeger(double C2, double cheeger, double p);
/// C3 (1 + lambda^{-1/2}); +inf when lambda = 0.
double complexBoundFromLambda(double C3, double lambda);

/// G_f together with its connectivity measures.
struct GraphMeasures {
  WeightedGraph graph;
  bool empty = true;
  bool connected = false;
  CheegerResult cheeger;
  SpectralResult spectral;
  double normalizedDegree = 0.0;
};

GraphMeasures graphMeasures(const LsccScheme& scheme, const Signal& f, double zeroTol = kDefaultZeroTol,
                            bool withSpectral = true);

/// Bounds computed from the certified lower Cheeger value (exact when available).
double realBound(const LsccScheme& scheme, const Signal& f);
double complexBound(const LsccScheme& scheme, const Signal& f);
/// realBound for real schemes, complexBound for complex ones.
double applicableBound(const LsccScheme& scheme, const GraphMeasures& gm);

/// min_xi ||Phi f - xi Phi g||_p / || |Phi f| - |Phi g| ||_p on measurement vectors.
struct PairRatio {
  double numerator = 0.0;
  double denominator = 0.0;
  /// Undefined (both terms negligible); such samples are skipped.
  bool skipped = false;
  /// Denominator negligible but numerator not: a phaseless collision.
  bool collision = false;
  double ratio = 0.0;
};
PairRatio pairRatio(const CVector& phiF, const CVector& phiG, Field field, double p);

enum class Strategy { RandomGaussian, LocalPerturbation, SignFlips, Adversarial };
std::string_view toString(Strategy s);
Strategy strategyFromString(std::string_view s);

struct EmpiricalRatio {
  double ratio = 0.0;
  std::optional<Signal> witness;
  /// A g with |Phi(g)| = |Phi(f)| that is not a global phase multiple of f was found.
  bool retrievalFailure = false;
  long valid = 0;
  long skipped = 0;
};

/// Largest sampled stability ratio. Throws DegenerateFamily when every sample is skipped.
EmpiricalRatio empiricalWorstRatio(const LsccScheme& scheme, const Signal& f, Strategy strategy, int trials,
                                   std::uint64_t seed);

struct StabilityReport {
  std::string schemeName;
  Field field = Field::Real;
  double p = 2.0;
  Verdict verdict = Verdict::Inconclusive;
  bool graphEmpty = true;
  int numVertices = 0;
  int numEdges = 0;
  CheegerResult cheeger;
  double lambda = 0.0;
  double normalizedDegree = 0.0;
  CheegerInequalityCheck cheegerInequality;
  double C2 = 0.0;
  /// Only defined for p = 2 (NaN otherwise).
  double C3 = 0.0;
  double realBound = 0.0;
  /// Only evaluated for complex schemes (NaN otherwise).
  double complexBound = 0.0;
  double bound = 0.0;
  double empiricalWorstRatio = 0.0;
  bool retrievalFailure = false;
  bool boundSatisfied = true;
  long samples = 0;
};

struct AnalyzeOptions {
  int trials = 2000;
  std::uint64_t seed = 0;
  double zeroTol = kDefaultZeroTol;
};

/// Full pipeline: G_f, Cheeger / spectral measures, bounds and empirical ratios over all strategies.
StabilityReport analyzeSignal(const LsccScheme& scheme, const Signal& f, const AnalyzeOptions& opts);

/// ratio <= bound (1 + 1e-9); an infinite ratio is only dominated by an infinite bound.
bool dominated(double ratio, double bound);

}  // namespace lscc
