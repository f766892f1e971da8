#pragma once

// Finite truncation of the real shift-invariant space spanned by integer shifts
// of a cardinal B-spline, sampled at Gamma + l on every unit cell.

#include <string_view>
#include <vector>

#include "lscc/scheme.hpp"

namespace lscc {

/// Cardinal B-spline of order N, supported on [0, N] (Cox-de Boor recursion).
double cardinalBSpline(int N, double x);

struct GeneratorModel {
  int N = 2;
  std::vector<double> gamma;
  /// |Gamma| x N matrix (B_N(gamma - k)), columns k = -N+1, ..., 0.
  Eigen::MatrixXd matrix;
  double p = 2.0;

  /// Gamma defaults to {j / (2N) : j = 1, ..., 2N-1}.
  static GeneratorModel bspline(int N, double p = 2.0, std::vector<double> gamma = {});
};

/// Rank test of (B_N(x - k))_{x, k in K0} on N interior points of each of `cells` open subintervals of (0, 1).
bool locallyIndependent(const GeneratorModel& gen, int cells = 16);

/// Vertices l = -R..R on a path; coefficient indices -R-N+1..R; vertex l sees K_l = {l-N+1, ..., l}.
LsccScheme buildShiftInvScheme(const GeneratorModel& gen, int R);

/// Ambient coordinate of coefficient index k in a scheme of radius R.
inline int coefficientIndex(int k, int N, int R) { return k + R + N - 1; }

/// min over Gamma' of max(smallest singular value on Gamma', on Gamma \ Gamma'). |Gamma| <= 20.
double sigmaConstant(const GeneratorModel& gen);

struct CorollaryConstants {
  double sigma = 0.0;
  double lambdaMax = 0.0;
  double C0 = 0.0;
  double C1 = 0.0;
  /// max{2 sigma^-1 sqrt(#K0) lambda_max, 4 sqrt(2) sigma^-2 #K0 lambda_max}, as displayed.
  double CV = 0.0;
  /// C2 recomputed from C0, C1 and D = 2.
  double C2 = 0.0;
};

CorollaryConstants corollaryConstants(const GeneratorModel& gen);
double corollaryCV(double sigma, double lambdaMax, int N);

struct DecayProfile {
  enum class Kind { Exponential, Polynomial };
  Kind kind = Kind::Exponential;
  double beta = 1.0;
};
std::string_view toString(DecayProfile::Kind k);
DecayProfile::Kind decayKindFromString(std::string_view s);

/// Coefficients with |c_k|^p = e^{-beta |k|} or (1 + |k|)^{-beta} for |k| <= R, zero elsewhere.
Signal decaySignal(const DecayProfile& profile, int N, int R, double p);

/// (N-1) / (N B^p) (1 - e^{-beta}) e^{-2 N beta}
double exponentialFloor(int N, double B, double p, double beta);

struct DecayRow {
  int R = 0;
  int vertices = 0;
  double cheeger = 0.0;
  /// Floor (exponential) or tail-cut ceiling (polynomial); +inf when no admissible tail cut exists.
  double reference = 0.0;
  bool pass = true;
};

struct DecayStudy {
  std::vector<DecayRow> rows;
  double slope = 0.0;
  bool pass = true;
};

DecayStudy decayCheegerStudy(const GeneratorModel& gen, const DecayProfile& profile, const std::vector<int>& Rvalues);

}  // namespace lscc
