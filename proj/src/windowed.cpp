#include "lscc/windowed.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "lscc/errors.hpp"
#include "lscc/stability.hpp"

namespace lscc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void checkConfig(const WindowedConfig& cfg) {
  if (cfg.a < 1) throw DimensionError("a must be at least 1");
  if (cfg.L < 3) throw DimensionError("L must be at least 3");
  if (!(cfg.s > 0.0) || !(cfg.s <= cfg.t)) throw ClassError("need 0 < s <= t");
}

}  // namespace

CMatrix defaultLocalFrame(int a, Field field, std::uint64_t seed) {
  if (a < 1) throw DimensionError("a must be at least 1");
  Rng rng(deriveSeed(seed, 0x77696e64ULL));
  const Eigen::Index rows = field == Field::Real ? 4 * a + 2 : 8 * a;
  CMatrix m(rows, 2 * a);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < 2 * a; ++j)
      m(i, j) = field == Field::Real ? Complex(rng.normal(), 0.0) : Complex(rng.normal(), rng.normal()) / std::sqrt(2.0);
  return m;
}

LsccScheme buildWindowedScheme(const WindowedConfig& cfg) {
  checkConfig(cfg);
  const int a = cfg.a, L = cfg.L, d = cfg.d();
  const CMatrix local = cfg.localFrame ? *cfg.localFrame : defaultLocalFrame(a, cfg.field, cfg.seed);
  if (local.cols() != 2 * a) throw DimensionError("local frame must act on 2a coordinates");

  LocalFrameConstants lc;
  try {
    lc = localFrameConstants(local.conjugate(), cfg.field, cfg.p, deriveSeed(cfg.seed, 0x6330ULL));
  } catch (const DegenerateFrame& e) {
    throw SchemeError(std::string("local frame is not phase retrieving: ") + e.what());
  }

  std::vector<LocalFunctionals> frames;
  std::vector<std::optional<CMatrix>> projections;
  for (int l = 0; l < L; ++l) {
    std::vector<int> support;
    for (int j = 0; j < 2 * a; ++j) support.push_back((l * a + j) % d);
    frames.push_back({std::move(support), local});
    projections.emplace_back(std::nullopt);
  }
  BaseGraph graph = BaseGraph::cycle(L);
  std::vector<LocalFunctionals> edges;
  for (const auto& [u, v] : graph.edges) {
    const int later = v == u + 1 ? v : 0;
    std::vector<int> overlap;
    for (int j = 0; j < a; ++j) overlap.push_back((later * a + j) % d);
    edges.push_back({std::move(overlap), CMatrix::Identity(a, a)});
  }

  SchemeConstants c;
  c.p = cfg.p;
  c.D = 2;
  c.A = lc.A;
  c.B = lc.B;
  c.C0 = lc.C0.value;
  c.c0Certified = lc.C0.certified;
  c.C1 = 1.0 / lc.A;
  c.exhaustionLow = c.exhaustionHigh = std::pow(2.0, 1.0 / cfg.p);
  return LsccScheme("windowed", cfg.field, d, std::move(graph), std::move(frames), std::move(projections),
                    std::move(edges), c);
}

BstMembership checkBst(const WindowedConfig& cfg, const Signal& f) {
  checkConfig(cfg);
  const int d = cfg.d();
  if (f.size() != d) throw DimensionError("signal length must equal d = a L");
  BstMembership m;
  m.inClass = true;
  const double lo = cfg.s * cfg.s * (1.0 - 1e-12);
  const double hi = cfg.t * cfg.t * (1.0 + 1e-12);
  for (int k = 0; k < d; ++k) {
    double sum = 0.0;
    for (int j = 0; j < cfg.a; ++j) sum += std::norm(f.coords()[(k + j) % d]);
    const double avg = sum / cfg.a;
    m.windowAverages.push_back(avg);
    if (avg < lo || avg > hi) m.inClass = false;
  }
  return m;
}

Signal sampleBst(const WindowedConfig& cfg, Rng& rng) {
  checkConfig(cfg);
  CVector v(cfg.d());
  for (int k = 0; k < cfg.d(); ++k) {
    const double mag = rng.uniform(cfg.s, cfg.t);
    v[k] = cfg.field == Field::Real ? Complex(rng.coin() ? mag : -mag, 0.0)
                                    : std::polar(mag, rng.uniform(0.0, 2.0 * std::numbers::pi));
  }
  return Signal(cfg.field, v);
}

AdversarialPair adversarialPair(const WindowedConfig& cfg, const LsccScheme& scheme) {
  if (cfg.field != Field::Complex) throw UnsupportedField("the adversarial pair needs complex signals");
  if (cfg.p != 2.0) throw UnsupportedP("the adversarial pair is stated for p = 2");
  const int d = cfg.d();
  CVector g(d);
  for (int k = 0; k < d; ++k) g[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / d);
  AdversarialPair out{Signal(Field::Complex, CVector::Ones(d)), Signal(Field::Complex, g)};
  const PairRatio r = pairRatio(scheme.measureAll(out.f.coords()), scheme.measureAll(g), Field::Complex, 2.0);
  out.measuredRatio = r.skipped ? 0.0 : r.ratio;
  const double ab = scheme.constants().A / scheme.constants().B;
  auto form = [&](double arg) {
    const double c = 1.0 - std::cos(arg);
    return c <= 0.0 ? kInf : ab / std::sqrt(c);
  };
  out.statementForm = form(4.0 * std::numbers::pi * cfg.a / cfg.L);
  out.proofForm = form(4.0 * std::numbers::pi * cfg.a / d);
  return out;
}

LowerBounds lowerBoundConstants(const WindowedConfig& cfg, const LsccScheme& scheme, const Signal& f) {
  if (scheme.p() != 2.0) throw UnsupportedP("the weighted-versus-unweighted comparison is stated for p = 2");
  if (!checkBst(cfg, f).inClass) throw ClassError("signal is not in the (s, t) class");
  const double B = scheme.constants().B;
  const double factor = cfg.s * cfg.s / (2.0 * B * B * cfg.t * cfg.t);
  LowerBounds lb;
  lb.cheegerLB = factor * 2.0 / std::floor(cfg.L / 2.0);
  lb.lambdaLB = factor * 2.0 * (1.0 - std::cos(2.0 * std::numbers::pi / cfg.L));
  const GraphMeasures gm = graphMeasures(scheme, f);
  lb.cheeger = gm.cheeger.lowerBound;
  lb.lambda = gm.spectral.lambda;
  lb.cheegerHolds = lb.cheeger >= lb.cheegerLB * (1.0 - 1e-9);
  lb.lambdaHolds = lb.lambda >= lb.lambdaLB * (1.0 - 1e-9);
  return lb;
}

double logLogSlope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(x[i]) || !std::isfinite(y[i])) continue;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SweepResult scalingSweep(int a, const std::vector<int>& Lvalues, Field field, int trials, std::uint64_t seed) {
  if (Lvalues.empty()) throw DimensionError("empty L range");
  SweepResult res;
  std::vector<double> xs, bounds, adversarial;
  for (int L : Lvalues) {
    WindowedConfig cfg;
    cfg.a = a;
    cfg.L = L;
    cfg.field = field;
    cfg.seed = seed;
    const LsccScheme scheme = buildWindowedScheme(cfg);
    const Signal f(field, CVector::Ones(cfg.d()));
    const GraphMeasures gm = graphMeasures(scheme, f);
    SweepRow row;
    row.L = L;
    row.d = cfg.d();
    row.bound = applicableBound(scheme, gm);
    row.cheeger = gm.cheeger.lowerBound;
    row.lambda = gm.spectral.lambda;
    row.constant = field == Field::Real ? constantC2(scheme.constants()) : constantC3(scheme.constants());
    const std::uint64_t rowSeed = deriveSeed(seed, static_cast<std::uint64_t>(L));
    for (Strategy s : {Strategy::RandomGaussian, Strategy::LocalPerturbation}) {
      const EmpiricalRatio r = empiricalWorstRatio(scheme, f, s, trials, deriveSeed(rowSeed, static_cast<std::uint64_t>(s)));
      row.empiricalRatio = std::max(row.empiricalRatio, r.ratio);
    }
    if (field == Field::Complex) {
      const AdversarialPair ap = adversarialPair(cfg, scheme);
      row.adversarialRatio = ap.measuredRatio;
      row.statementForm = ap.statementForm;
      row.proofForm = ap.proofForm;
      if (ap.measuredRatio < std::min(ap.statementForm, ap.proofForm) * (1.0 - 1e-9)) row.pass = false;
    } else {
      row.adversarialRatio = empiricalWorstRatio(scheme, f, Strategy::Adversarial, trials, deriveSeed(rowSeed, 9)).ratio;
      row.statementForm = row.proofForm = std::numeric_limits<double>::quiet_NaN();
    }
    if (!dominated(row.empiricalRatio, row.bound) || !dominated(row.adversarialRatio, row.bound)) row.pass = false;
    res.pass = res.pass && row.pass;
    xs.push_back(L);
    bounds.push_back(row.bound);
    adversarial.push_back(row.adversarialRatio);
    res.rows.push_back(row);
  }
  res.boundSlope = logLogSlope(xs, bounds);
  res.adversarialSlope = logLogSlope(xs, adversarial);
  return res;
}

}  // namespace lscc
