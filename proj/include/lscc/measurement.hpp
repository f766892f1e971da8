#pragma once

// Vectors over R or C, frames, phaseless measurement and global-phase alignment.

#include <complex>
#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace lscc {

enum class Field { Real, Complex };

std::string_view toString(Field field);
Field fieldFromString(std::string_view name);

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// A finite coordinate vector over the scalar field. Real signals carry exactly zero imaginary parts.
class Signal {
 public:
  Signal(Field field, CVector coords);

  static Signal fromReal(const std::vector<double>& values);
  static Signal zeros(Field field, Eigen::Index n);

  Field field() const { return field_; }
  const CVector& coords() const { return coords_; }
  Eigen::Index size() const { return coords_.size(); }

  /// Multiplies by `c`. For a real signal `c` must be real.
  Signal scaled(Complex c) const;

 private:
  Field field_;
  CVector coords_;
};

/// Rows are the functionals phi; phi(f) = <row, f> = sum conj(row_k) f_k.
class Frame {
 public:
  Frame(Field field, CMatrix rows, double p, double lower, double upper);

  /// Frame constants computed from the singular values (exact for p = 2, norm-equivalence bounds otherwise).
  static Frame withComputedBounds(Field field, CMatrix rows, double p = 2.0);

  Field field() const { return field_; }
  const CMatrix& rows() const { return rows_; }
  /// Matrix M with M f = Phi(f).
  CMatrix analysis() const { return rows_.conjugate(); }
  double p() const { return p_; }
  double lower() const { return lower_; }
  double upper() const { return upper_; }
  Eigen::Index numFunctionals() const { return rows_.rows(); }
  Eigen::Index dim() const { return rows_.cols(); }

 private:
  Field field_;
  CMatrix rows_;
  double p_;
  double lower_;
  double upper_;
};

struct MeasurementVector {
  CVector values;
  double p = 2.0;
};

MeasurementVector measure(const Frame& frame, const Signal& f);
MeasurementVector phaselessMeasure(const Frame& frame, const Signal& f);

double pNorm(const MeasurementVector& v);
double pNorm(const CVector& v, double p);
/// sum |v_i|^p, i.e. pNorm(v)^p without the final root.
double pNormPow(const CVector& v, double p);
/// || |x| - |y| ||_p
double modulusDistance(const CVector& x, const CVector& y, double p);

struct PhaseAlignment {
  Complex xi{1.0, 0.0};
  double residual = 0.0;
  /// True when the minimizer came from numerical search (complex field, p != 2).
  bool approximate = false;
};

/// argmin over unimodular xi of ||x - xi y||_p.
PhaseAlignment alignPhase(const MeasurementVector& x, const MeasurementVector& y, Field field);
PhaseAlignment alignPhase(const CVector& x, const CVector& y, Field field, double p);

struct ModulusGapTerms {
  double unimodular = 0.0;     // min_{|xi|=1} ||x - xi y||_2
  double leastSquares = 0.0;   // min_{c in C} ||x - c y||_2
  double modulusGap = 0.0;     // || |x| - |y| ||_2
  bool holds = true;
};

ModulusGapTerms modulusGapTerms(const CVector& x, const CVector& y);
/// min_xi ||x - xi y|| <= sqrt(2) min_c ||x - c y|| + || |x| - |y| || (tolerance 1e-9). Violations are logged.
bool checkModulusGap(const MeasurementVector& x, const MeasurementVector& y);

// ---------------------------------------------------------------------------
// Frame analysis. `analysis` is always a matrix M acting as f -> Phi(f) on the
// coordinates of the local space.

struct SingularRange {
  double smallest = 0.0;  // zero when rows < cols
  double largest = 0.0;
};

SingularRange singularRange(const CMatrix& analysis);

/// Bounds relating ||x||_p and ||x||_2 on R^m / C^m: lo*||x||_2 <= ||x||_p <= hi*||x||_2.
double normRatioLow(Eigen::Index m, double p);
double normRatioHigh(Eigen::Index m, double p);

/// min over row subsets S of max(smallest singular value of M_S, of M_{S^c}).
/// Throws BudgetExceeded for more than 20 rows.
double strongComplementConstant(const CMatrix& analysis);

struct ComplementCheck {
  bool holds = true;
  /// Row subset whose two sides both fail to span, when !holds.
  std::vector<int> side;
  /// Distinct (not sign-equivalent) signals with equal phaseless measurements, when !holds.
  CVector f, g;
};

/// Complement property of a real frame, by enumerating every row split.
ComplementCheck complementProperty(const CMatrix& analysis);

struct LocalConstant {
  double value = 0.0;
  /// True when `value` is a proven upper bound; otherwise an inflated sampled estimate.
  bool certified = false;
  /// Raw largest ratio observed by the sampler (0 when not sampled).
  double sampled = 0.0;
};

/// Local phase-retrieval stability constant of a frame on its own coordinates.
///
/// Real field: C0 = B / sigma, certified by the row-split argument (any split
/// leaves one side with lower bound >= sigma), then converted to the l^p norm
/// by norm equivalence on R^m.
///
/// Complex field (p = 2 only): no computable certificate is known, so the value
/// is the worst ratio found by random, near-collision and hill-climbing probes,
/// inflated by kComplexSafetyFactor.
LocalConstant localStabilityConstant(const CMatrix& analysis, Field field, double p, std::uint64_t seed);

/// Largest ratio min_xi ||M f - xi M g|| / || |M f| - |M g| || found by sampling.
double sampleLocalRatio(const CMatrix& analysis, Field field, double p, std::uint64_t seed, int budget);

inline constexpr double kComplexSafetyFactor = 1.5;

}  // namespace lscc
