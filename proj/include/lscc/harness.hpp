#pragma once

// Noise-injection recovery experiments, randomized bound fuzzing and lemma checks.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lscc/scheme.hpp"

namespace lscc {

struct ExperimentSpec {
  std::string schemeRef;
  std::string signalFamily;
  std::vector<double> signalParams;
  double noiseLevel = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;
};

struct NoisyRow {
  int trial = 0;
  /// ||eta||_p after clipping z = |Phi(f)| + eta at zero.
  double effectiveEta = 0.0;
  /// || |Phi(g_hat)| - z ||_p reached by the descent.
  double objective = 0.0;
  /// min_xi ||Phi(f) - xi Phi(g_hat)||_p
  double gap = 0.0;
  /// 2 bound(f) ||eta||_p
  double allowed = 0.0;
  /// Descent did not reach objective <= ||eta||_p; the row says nothing about the bound.
  bool censored = false;
  bool pass = true;
};

struct NoisyRecoveryResult {
  double bound = 0.0;
  /// Infinite bound: rows are recorded but nothing is asserted.
  bool witnessOnly = false;
  std::vector<NoisyRow> rows;
  bool pass = true;
};

/// Multi-start pattern search for g_hat minimizing || |Phi(g)| - z ||_p; one start is f itself.
NoisyRecoveryResult noisyRecoveryGap(const LsccScheme& scheme, const Signal& f, double etaNorm, int trials,
                                     std::uint64_t seed, int starts = 32);

struct FuzzTarget {
  std::string label;
  LsccScheme scheme;
};

struct FuzzSchemeReport {
  std::string label;
  Field field = Field::Real;
  long pairs = 0;
  long skipped = 0;
  long collisions = 0;
  long infiniteBounds = 0;
  /// max ratio / bound over pairs with a finite bound.
  double maxQuotient = 0.0;
  double maxRatio = 0.0;
  bool boundsHold = true;
  long edgeGapChecked = 0;
  double edgeLemmaWorst = 0.0;
  bool edgeLemmaHolds = true;
  /// Only run for p = 2.
  long modulusLemmaChecked = 0;
  bool modulusLemmaHolds = true;
  /// Pair with the largest quotient, or the first violation.
  std::optional<Witness> witness;
};

struct FuzzReport {
  std::vector<FuzzSchemeReport> schemes;
  bool pass = true;
};

/// Random (f, g) pairs: each f is reused for several g (independent, perturbed,
/// phase-multiplied, flipped across the Cheeger witness cut).
FuzzReport fuzzBounds(const std::vector<FuzzTarget>& targets, long pairsPerScheme, std::uint64_t seed);

struct LemmaSuiteReport {
  long modulusChecked = 0;
  bool modulusHolds = true;
  /// max over samples of lhs / rhs.
  double modulusWorst = 0.0;
  long edgeGapChecked = 0;
  bool edgeLemmaHolds = true;
  double edgeLemmaWorst = 0.0;
};

/// Complex length-16 pairs for the modulus lemma, and random pairs on the toy and a
/// small complex windowed scheme for the edge lemma.
LemmaSuiteReport lemmaSuite(std::uint64_t seed, long trials);

}  // namespace lscc
