#include "lscc/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "lscc/errors.hpp"
#include "lscc/rng.hpp"

namespace lscc {

std::string_view toString(Field field) { return field == Field::Real ? "real" : "complex"; }

Field fieldFromString(std::string_view name) {
  if (name == "real" || name == "R") return Field::Real;
  if (name == "complex" || name == "C") return Field::Complex;
  throw FormatError("unknown field '" + std::string(name) + "'");
}

Signal::Signal(Field field, CVector coords) : field_(field), coords_(std::move(coords)) {
  if (coords_.size() < 1) throw DimensionError("signal must have at least one coordinate");
  if (field_ == Field::Real) {
    for (Eigen::Index i = 0; i < coords_.size(); ++i)
      if (coords_[i].imag() != 0.0) throw FieldError("real signal with nonzero imaginary part at " + std::to_string(i));
  }
}

Signal Signal::fromReal(const std::vector<double>& values) {
  CVector c(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) c[static_cast<Eigen::Index>(i)] = values[i];
  return Signal(Field::Real, std::move(c));
}

Signal Signal::zeros(Field field, Eigen::Index n) { return Signal(field, CVector::Zero(n)); }

Signal Signal::scaled(Complex c) const {
  if (field_ == Field::Real && c.imag() != 0.0) throw FieldError("non-real scalar applied to a real signal");
  return Signal(field_, coords_ * c);
}

Frame::Frame(Field field, CMatrix rows, double p, double lower, double upper)
    : field_(field), rows_(std::move(rows)), p_(p), lower_(lower), upper_(upper) {
  if (rows_.rows() < 1 || rows_.cols() < 1) throw DimensionError("frame needs m >= 1 and n >= 1");
  if (!(p_ >= 1.0) || !std::isfinite(p_)) throw UnsupportedP("frame p must lie in [1, inf)");
  if (!(lower_ > 0.0) || !(lower_ <= upper_)) throw DegenerateFrame("frame constants must satisfy 0 < A <= B");
  if (field_ == Field::Real && rows_.imag().cwiseAbs().maxCoeff() != 0.0)
    throw FieldError("real frame with complex entries");
}

Frame Frame::withComputedBounds(Field field, CMatrix rows, double p) {
  const SingularRange sr = singularRange(rows.conjugate());
  double lower = sr.smallest;
  double upper = sr.largest;
  if (p != 2.0) {
    lower *= normRatioLow(rows.rows(), p) / normRatioHigh(rows.cols(), p);
    upper *= normRatioHigh(rows.rows(), p) / normRatioLow(rows.cols(), p);
  }
  if (!(lower > 0.0)) throw DegenerateFrame("functionals do not span the signal space");
  return Frame(field, std::move(rows), p, lower, upper);
}

namespace {

void checkCompatible(const Frame& frame, const Signal& f) {
  if (frame.dim() != f.size())
    throw DimensionError("frame acts on dimension " + std::to_string(frame.dim()) + " but signal has length " +
                         std::to_string(f.size()));
  if (frame.field() == Field::Real && f.field() == Field::Complex)
    throw FieldError("real frame cannot measure a complex signal");
}

}  // namespace

MeasurementVector measure(const Frame& frame, const Signal& f) {
  checkCompatible(frame, f);
  return {frame.rows().conjugate() * f.coords(), frame.p()};
}

MeasurementVector phaselessMeasure(const Frame& frame, const Signal& f) {
  MeasurementVector m = measure(frame, f);
  m.values = m.values.cwiseAbs().cast<Complex>();
  return m;
}

double pNormPow(const CVector& v, double p) {
  if (p == 2.0) return v.squaredNorm();
  if (p == 1.0) return v.cwiseAbs().sum();
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += std::pow(std::abs(v[i]), p);
  return s;
}

double pNorm(const CVector& v, double p) {
  if (p == 2.0) return v.norm();
  if (p == 1.0) return v.cwiseAbs().sum();
  return std::pow(pNormPow(v, p), 1.0 / p);
}

double pNorm(const MeasurementVector& v) { return pNorm(v.values, v.p); }

double modulusDistance(const CVector& x, const CVector& y, double p) {
  if (x.size() != y.size()) throw DimensionError("modulus distance of vectors with different lengths");
  const Eigen::VectorXd d = x.cwiseAbs() - y.cwiseAbs();
  return pNorm(d.cast<Complex>(), p);
}

PhaseAlignment alignPhase(const CVector& x, const CVector& y, Field field, double p) {
  if (x.size() != y.size()) throw DimensionError("alignPhase: length mismatch");
  PhaseAlignment out;
  if (field == Field::Real) {
    const double plus = pNorm(x - y, p);
    const double minus = pNorm(x + y, p);
    if (plus <= minus) {
      out.xi = 1.0;
      out.residual = plus;
    } else {
      out.xi = -1.0;
      out.residual = minus;
    }
    return out;
  }
  if (p == 2.0) {
    const Complex ip = y.dot(x);  // <x, y> = sum x_k conj(y_k)
    const double mag = std::abs(ip);
    out.xi = mag == 0.0 ? Complex(1.0, 0.0) : ip / mag;
    out.residual = (x - out.xi * y).norm();
    return out;
  }

  // General p: grid search then golden-section refinement. Approximate.
  auto cost = [&](double theta) { return pNorm(x - std::polar(1.0, theta) * y, p); };
  constexpr int kGrid = 4096;
  const double h = 2.0 * std::numbers::pi / kGrid;
  int best = 0;
  double bestCost = cost(0.0);
  for (int j = 1; j < kGrid; ++j) {
    const double c = cost(j * h);
    if (c < bestCost) {
      bestCost = c;
      best = j;
    }
  }
  double a = (best - 1) * h, b = (best + 1) * h;
  const double invPhi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invPhi * (b - a), d = a + invPhi * (b - a);
  double fc = cost(c), fd = cost(d);
  while ((b - a) > 1e-10 * 2.0 * std::numbers::pi) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invPhi * (b - a);
      fc = cost(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invPhi * (b - a);
      fd = cost(d);
    }
  }
  const double theta = 0.5 * (a + b);
  const double refined = cost(theta);
  out.approximate = true;
  if (refined <= bestCost) {
    out.xi = std::polar(1.0, theta);
    out.residual = refined;
  } else {
    out.xi = std::polar(1.0, best * h);
    out.residual = bestCost;
  }
  return out;
}

PhaseAlignment alignPhase(const MeasurementVector& x, const MeasurementVector& y, Field field) {
  return alignPhase(x.values, y.values, field, x.p);
}

ModulusGapTerms modulusGapTerms(const CVector& x, const CVector& y) {
  if (x.size() != y.size()) throw DimensionError("lemma check: length mismatch");
  ModulusGapTerms t;
  t.unimodular = alignPhase(x, y, Field::Complex, 2.0).residual;
  const double yy = y.squaredNorm();
  if (yy == 0.0) {
    t.leastSquares = x.norm();
  } else {
    const Complex c = y.dot(x) / yy;
    t.leastSquares = (x - c * y).norm();
  }
  t.modulusGap = modulusDistance(x, y, 2.0);
  t.holds = t.unimodular <= std::sqrt(2.0) * t.leastSquares + t.modulusGap + 1e-9;
  return t;
}

bool checkModulusGap(const MeasurementVector& x, const MeasurementVector& y) {
  const ModulusGapTerms t = modulusGapTerms(x.values, y.values);
  if (!t.holds) {
    std::cerr << "lemma violation: unimodular=" << t.unimodular << " leastSquares=" << t.leastSquares
              << " modulusGap=" << t.modulusGap << "\n  x=" << x.values.transpose() << "\n  y=" << y.values.transpose()
              << '\n';
  }
  return t.holds;
}

SingularRange singularRange(const CMatrix& analysis) {
  SingularRange r;
  if (analysis.rows() == 0 || analysis.cols() == 0) return r;
  Eigen::JacobiSVD<CMatrix> svd(analysis);
  const Eigen::VectorXd& s = svd.singularValues();
  r.largest = s[0];
  r.smallest = analysis.rows() < analysis.cols() ? 0.0 : s[s.size() - 1];
  return r;
}

double normRatioLow(Eigen::Index m, double p) {
  return std::min(1.0, std::pow(static_cast<double>(m), 1.0 / p - 0.5));
}

double normRatioHigh(Eigen::Index m, double p) {
  return std::max(1.0, std::pow(static_cast<double>(m), 1.0 / p - 0.5));
}

namespace {

CMatrix selectRows(const CMatrix& m, std::uint32_t mask, bool inside) {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    if ((((mask >> r) & 1U) != 0U) == inside) idx.push_back(r);
  CMatrix out(static_cast<Eigen::Index>(idx.size()), m.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = m.row(idx[i]);
  return out;
}

constexpr int kMaxSubsetRows = 20;

}  // namespace

double strongComplementConstant(const CMatrix& analysis) {
  const Eigen::Index m = analysis.rows();
  if (m > kMaxSubsetRows) throw BudgetExceeded("subset enumeration limited to 20 rows, got " + std::to_string(m));
  double best = std::numeric_limits<double>::infinity();
  const std::uint32_t total = 1U << m;
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    const double in = singularRange(selectRows(analysis, mask, true)).smallest;
    const double out = singularRange(selectRows(analysis, mask, false)).smallest;
    best = std::min(best, std::max(in, out));
  }
  return best;
}

ComplementCheck complementProperty(const CMatrix& analysis) {
  const Eigen::Index m = analysis.rows();
  const Eigen::Index n = analysis.cols();
  if (m > kMaxSubsetRows) throw BudgetExceeded("complement property check limited to 20 rows");
  const double scale = std::max(singularRange(analysis).largest, 1.0);
  const double tol = 1e-10 * scale;

  // Unit vector in the null space of `rows` (any unit vector when there are no rows).
  auto nullVector = [&](const Eigen::MatrixXd& rows) -> std::optional<Eigen::VectorXd> {
    if (rows.rows() == 0) return Eigen::VectorXd::Unit(n, 0);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV);
    const Eigen::VectorXd& s = svd.singularValues();
    const double smallest = rows.rows() < n ? 0.0 : s[s.size() - 1];
    if (smallest > tol) return std::nullopt;
    return svd.matrixV().col(n - 1);
  };

  ComplementCheck out;
  const std::uint32_t total = 1U << m;
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    const Eigen::MatrixXd in = selectRows(analysis, mask, true).real();
    const Eigen::MatrixXd rest = selectRows(analysis, mask, false).real();
    const auto u = nullVector(in);
    if (!u) continue;
    const auto v = nullVector(rest);
    if (!v) continue;
    out.holds = false;
    for (Eigen::Index r = 0; r < m; ++r)
      if ((mask >> r) & 1U) out.side.push_back(static_cast<int>(r));
    out.f = (*u + *v).cast<Complex>();
    out.g = (*u - *v).cast<Complex>();
    return out;
  }
  return out;
}

namespace {

CVector randomVector(Rng& rng, Field field, Eigen::Index n) {
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i)
    v[i] = field == Field::Real ? Complex(rng.normal(), 0.0) : Complex(rng.normal(), rng.normal()) / std::sqrt(2.0);
  return v;
}

struct Probe {
  double ratio;
  CVector f, g;
};

double localRatio(const CMatrix& m, const CVector& f, const CVector& g, Field field, double p) {
  const CVector mf = m * f;
  const CVector mg = m * g;
  const double num = alignPhase(mf, mg, field, p).residual;
  const double den = modulusDistance(mf, mg, p);
  const double scale = pNorm(mf, p) + pNorm(mg, p);
  if (den <= 1e-14 * scale) {
    if (num <= 1e-12 * scale) return 0.0;
    return std::numeric_limits<double>::infinity();
  }
  return num / den;
}

}  // namespace

double sampleLocalRatio(const CMatrix& analysis, Field field, double p, std::uint64_t seed, int budget) {
  Rng rng(seed);
  const Eigen::Index n = analysis.cols();
  const Eigen::Index m = analysis.rows();
  std::vector<Probe> top;
  constexpr std::size_t kKeep = 16;
  double worst = 0.0;

  auto consider = [&](CVector f, CVector g) {
    const double r = localRatio(analysis, f, g, field, p);
    worst = std::max(worst, r);
    if (!std::isfinite(r)) return;
    if (top.size() < kKeep) {
      top.push_back({r, std::move(f), std::move(g)});
    } else {
      auto it = std::min_element(top.begin(), top.end(), [](const Probe& a, const Probe& b) { return a.ratio < b.ratio; });
      if (r > it->ratio) *it = {r, std::move(f), std::move(g)};
    }
  };
  auto unimodular = [&]() -> Complex {
    if (field == Field::Real) return rng.coin() ? 1.0 : -1.0;
    return std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi));
  };

  const int third = std::max(1, budget / 3);
  for (int i = 0; i < third; ++i) consider(randomVector(rng, field, n), randomVector(rng, field, n));
  for (int i = 0; i < third; ++i) {
    CVector f = randomVector(rng, field, n);
    const double eps = std::pow(10.0, rng.uniform(-4.0, 0.0)) * f.norm();
    CVector g = unimodular() * (f + eps * randomVector(rng, field, n));
    consider(std::move(f), std::move(g));
  }
  // Signals annihilated by a random subset of the functionals: the collision-prone region.
  for (int i = 0; i < third; ++i) {
    const Eigen::Index k = 1 + static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(std::max<Eigen::Index>(1, n - 1))));
    std::vector<Eigen::Index> rowsPicked;
    for (Eigen::Index r = 0; r < m && static_cast<Eigen::Index>(rowsPicked.size()) < k; ++r)
      if (rng.uniform() < static_cast<double>(k) / static_cast<double>(m)) rowsPicked.push_back(r);
    CVector f;
    if (rowsPicked.empty()) {
      f = randomVector(rng, field, n);
    } else {
      CMatrix sub(static_cast<Eigen::Index>(rowsPicked.size()), n);
      for (std::size_t j = 0; j < rowsPicked.size(); ++j) sub.row(static_cast<Eigen::Index>(j)) = analysis.row(rowsPicked[j]);
      Eigen::JacobiSVD<CMatrix> svd(sub, Eigen::ComputeFullV);
      const Eigen::Index rank = std::min<Eigen::Index>(sub.rows(), n);
      f = CVector::Zero(n);
      for (Eigen::Index c = rank; c < n; ++c) f += svd.matrixV().col(c) * randomVector(rng, field, 1)[0];
      if (f.norm() == 0.0) f = randomVector(rng, field, n);
    }
    const double eps = std::pow(10.0, rng.uniform(-4.0, -0.5)) * f.norm();
    CVector g = unimodular() * (f + eps * randomVector(rng, field, n));
    consider(std::move(f), std::move(g));
  }
  if (!std::isfinite(worst)) return worst;

  // Hill climbing from the strongest probes.
  for (Probe& probe : top) {
    double step = 0.05;
    for (int it = 0; it < 300; ++it) {
      const double scale = step * probe.f.norm();
      CVector f2 = probe.f + scale * randomVector(rng, field, n);
      CVector g2 = probe.g + scale * randomVector(rng, field, n);
      const double r = localRatio(analysis, f2, g2, field, p);
      if (!std::isfinite(r)) return r;
      if (r > probe.ratio) {
        probe = {r, std::move(f2), std::move(g2)};
        step = std::min(step * 1.5, 0.5);
      } else {
        step = std::max(step * 0.8, 1e-6);
      }
    }
    worst = std::max(worst, probe.ratio);
  }
  return worst;
}

LocalConstant localStabilityConstant(const CMatrix& analysis, Field field, double p, std::uint64_t seed) {
  LocalConstant out;
  if (field == Field::Real) {
    if (analysis.rows() <= kMaxSubsetRows) {
      const double sigma = strongComplementConstant(analysis);
      if (!(sigma > 0.0)) throw DegenerateFrame("frame fails the complement property (sigma = 0)");
      const double mismatch = normRatioHigh(analysis.rows(), p) / normRatioLow(analysis.rows(), p);
      out.value = singularRange(analysis).largest / sigma * mismatch;
      out.certified = true;
      return out;
    }
  } else if (p != 2.0) {
    throw UnsupportedP("complex local stability constants are only estimated for p = 2");
  }
  out.sampled = sampleLocalRatio(analysis, field, p, seed, 9000);
  if (!std::isfinite(out.sampled)) throw DegenerateFrame("sampler found a phaseless collision: frame is not phase retrieving");
  out.value = kComplexSafetyFactor * out.sampled;
  out.certified = false;
  return out;
}

}  // namespace lscc
