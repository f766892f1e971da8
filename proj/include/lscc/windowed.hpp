#pragma once

// Locally supported measurements on F^d, d = a L: shifted copies of one local
// frame on windows of 2a cyclically consecutive coordinates.

#include <cstdint>
#include <optional>
#include <vector>

#include "lscc/rng.hpp"
#include "lscc/scheme.hpp"

namespace lscc {

struct WindowedConfig {
  int a = 2;
  int L = 8;
  Field field = Field::Real;
  double p = 2.0;
  double s = 1.0;
  double t = 1.0;
  std::uint64_t seed = 0;
  /// Functionals of the local frame on 2a coordinates (Frame row convention). Generated from `seed` when absent.
  std::optional<CMatrix> localFrame;

  int d() const { return a * L; }
};

/// Gaussian local frame: 4a + 2 rows over R, 8a rows over C.
CMatrix defaultLocalFrame(int a, Field field, std::uint64_t seed);

LsccScheme buildWindowedScheme(const WindowedConfig& cfg);

struct BstMembership {
  std::vector<double> windowAverages;
  bool inClass = false;
};

/// Averages of |f|^2 over all d cyclic windows of a consecutive entries.
BstMembership checkBst(const WindowedConfig& cfg, const Signal& f);
/// |f(k)| uniform in [s, t] with uniform phases (signs over R); always a member.
Signal sampleBst(const WindowedConfig& cfg, Rng& rng);

struct AdversarialPair {
  Signal f;
  Signal g;
  double measuredRatio = 0.0;
  /// (A/B)(1 - cos(4 pi a / L))^{-1/2}; +inf when the cosine equals one.
  double statementForm = 0.0;
  /// (A/B)(1 - cos(4 pi a / d))^{-1/2}.
  double proofForm = 0.0;
};

/// f = 1, g(k) = exp(2 pi i k / d) on a complex windowed scheme.
AdversarialPair adversarialPair(const WindowedConfig& cfg, const LsccScheme& scheme);

struct LowerBounds {
  double cheegerLB = 0.0;
  double lambdaLB = 0.0;
  double cheeger = 0.0;
  double lambda = 0.0;
  bool cheegerHolds = false;
  bool lambdaHolds = false;
};

/// s^2/(2 B^2 t^2) times the unweighted cycle values 2/floor(L/2) and 2(1 - cos(2 pi / L)),
/// compared with C_G(f) and lambda_G(f). Throws ClassError when f is not in the class.
LowerBounds lowerBoundConstants(const WindowedConfig& cfg, const LsccScheme& scheme, const Signal& f);

struct SweepRow {
  int L = 0;
  int d = 0;
  double bound = 0.0;
  double empiricalRatio = 0.0;
  double adversarialRatio = 0.0;
  double statementForm = 0.0;
  double proofForm = 0.0;
  double cheeger = 0.0;
  double lambda = 0.0;
  double constant = 0.0;
  bool pass = true;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double boundSlope = 0.0;
  double adversarialSlope = 0.0;
  bool pass = true;
};

/// One scheme per L (same local frame), f = 1: bound, sampled and adversarial ratios.
SweepResult scalingSweep(int a, const std::vector<int>& Lvalues, Field field, int trials, std::uint64_t seed);

/// Least-squares slope of log y against log x over the finite positive pairs.
double logLogSlope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace lscc
