#include "lscc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "lscc/errors.hpp"
#include "lscc/rng.hpp"
#include "lscc/stability.hpp"
#include "lscc/windowed.hpp"

namespace lscc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

CVector gaussian(Rng& rng, Field field, Eigen::Index n) {
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i)
    v[i] = field == Field::Real ? Complex(rng.normal(), 0.0) : Complex(rng.normal(), rng.normal()) / std::sqrt(2.0);
  return v;
}

Complex unimodular(Rng& rng, Field field) {
  if (field == Field::Real) return rng.coin() ? 1.0 : -1.0;
  return std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi));
}

double rms(const CVector& v) { return v.size() == 0 ? 0.0 : v.norm() / std::sqrt(static_cast<double>(v.size())); }

/// Coordinate pattern search on the real parameters of g (real and imaginary parts over C).
class PatternSearch {
 public:
  PatternSearch(const LsccScheme& scheme, const CVector& z) : scheme_(scheme), z_(z) {}

  double objective(const CVector& g) const {
    const CVector phi = scheme_.measureAll(g);
    return pNorm(CVector((phi.cwiseAbs() - z_.real()).cast<Complex>()), scheme_.p());
  }

  double run(CVector& g, double step, int budget) const {
    const bool complex = scheme_.field() == Field::Complex;
    const Eigen::Index n = g.size();
    double best = objective(g);
    const double minStep = step * 1e-7;
    int evals = 1;
    while (step > minStep && evals < budget && best > 0.0) {
      bool improved = false;
      for (Eigen::Index i = 0; i < n && evals < budget; ++i) {
        for (int part = 0; part < (complex ? 2 : 1); ++part) {
          const Complex dir = part == 0 ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
          for (double sgn : {1.0, -1.0}) {
            g[i] += sgn * step * dir;
            const double val = objective(g);
            ++evals;
            if (val < best) {
              best = val;
              improved = true;
              break;
            }
            g[i] -= sgn * step * dir;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    return best;
  }

 private:
  const LsccScheme& scheme_;
  CVector z_;
};

std::vector<int> cutCoordinates(const LsccScheme& scheme, const GraphMeasures& gm) {
  for (const auto& P : scheme.projections())
    if (P) return {};
  std::set<int> coords;
  for (int i : gm.cheeger.witnessCut)
    for (int k : scheme.vertexFrames()[static_cast<std::size_t>(gm.graph.vertexIds[static_cast<std::size_t>(i)])].support)
      coords.insert(k);
  return {coords.begin(), coords.end()};
}

}  // namespace

NoisyRecoveryResult noisyRecoveryGap(const LsccScheme& scheme, const Signal& f, double etaNorm, int trials,
                                     std::uint64_t seed, int starts) {
  scheme.checkSignal(f);
  if (!(etaNorm >= 0.0)) throw DimensionError("noise level must be non-negative");
  if (trials < 0 || starts < 1) throw DimensionError("need trials >= 0 and at least one start");
  const double p = scheme.p();
  NoisyRecoveryResult res;
  res.bound = applicableBound(scheme, graphMeasures(scheme, f));
  res.witnessOnly = std::isinf(res.bound);
  const CVector phiF = scheme.measureAll(f.coords());
  const Eigen::VectorXd modF = phiF.cwiseAbs();
  const double scale = std::max(rms(f.coords()), 1e-3);
  const int budget = 2000 + 200 * static_cast<int>(f.size()) * (scheme.field() == Field::Complex ? 2 : 1);

  for (int t = 0; t < trials; ++t) {
    Rng rng(deriveSeed(seed, static_cast<std::uint64_t>(t)));
    Eigen::VectorXd eta = Eigen::VectorXd::Zero(modF.size());
    if (etaNorm > 0.0) {
      for (Eigen::Index i = 0; i < eta.size(); ++i) eta[i] = rng.normal();
      eta *= etaNorm / pNorm(CVector(eta.cast<Complex>()), p);
    }
    const Eigen::VectorXd z = (modF + eta).cwiseMax(0.0);
    NoisyRow row;
    row.trial = t;
    row.effectiveEta = pNorm(CVector((z - modF).cast<Complex>()), p);

    const PatternSearch search(scheme, z.cast<Complex>());
    CVector best = f.coords();
    double bestObj = search.run(best, 0.1 * scale, budget);
    for (int s = 1; s < starts; ++s) {
      CVector g = gaussian(rng, scheme.field(), f.size()) * scale;
      const double obj = search.run(g, 0.25 * scale, budget);
      if (obj < bestObj) {
        bestObj = obj;
        best = g;
      }
    }
    row.objective = bestObj;
    row.gap = alignPhase(phiF, scheme.measureAll(best), scheme.field(), p).residual;
    row.allowed = 2.0 * res.bound * row.effectiveEta;
    row.censored = bestObj > row.effectiveEta;
    row.pass = res.witnessOnly || row.censored || row.gap <= row.allowed * (1.0 + 1e-9);
    res.pass = res.pass && row.pass;
    res.rows.push_back(row);
  }
  return res;
}

FuzzReport fuzzBounds(const std::vector<FuzzTarget>& targets, long pairsPerScheme, std::uint64_t seed) {
  FuzzReport report;
  constexpr int kPerF = 25;
  for (std::size_t ti = 0; ti < targets.size(); ++ti) {
    const LsccScheme& scheme = targets[ti].scheme;
    const Field field = scheme.field();
    const double p = scheme.p();
    const Eigen::Index n = scheme.ambientDim();
    Rng rng(deriveSeed(seed, ti));
    FuzzSchemeReport rep;
    rep.label = targets[ti].label;
    rep.field = field;
    long drawn = 0;
    while (rep.pairs < pairsPerScheme) {
      CVector fc = gaussian(rng, field, n);
      if (drawn++ % 10 == 9) {
        // Occasionally cut a block of zeros so G_f loses edges or splits.
        const Eigen::Index len = 1 + static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(std::max<Eigen::Index>(1, n / 2))));
        const Eigen::Index start = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
        for (Eigen::Index k = 0; k < len; ++k) fc[(start + k) % n] = 0.0;
      }
      const Signal f(field, fc);
      const GraphMeasures gm = graphMeasures(scheme, f, kDefaultZeroTol, field == Field::Complex);
      const double bound = applicableBound(scheme, gm);
      if (std::isinf(bound)) ++rep.infiniteBounds;
      const CVector phiF = scheme.measureAll(fc);
      const std::vector<int> cut = cutCoordinates(scheme, gm);
      const double s = std::max(rms(fc), 1e-12);

      for (int j = 0; j < kPerF && rep.pairs < pairsPerScheme; ++j) {
        CVector gc;
        switch (j % 5) {
          case 0:
            gc = gaussian(rng, field, n);
            break;
          case 1:
            gc = unimodular(rng, field) * fc + std::pow(10.0, -rng.uniform(1.0, 6.0)) * s * gaussian(rng, field, n);
            break;
          case 2: {
            gc = fc;
            const Complex xi = unimodular(rng, field == Field::Real ? Field::Real : Field::Complex);
            if (!cut.empty()) {
              for (int k : cut) gc[k] *= field == Field::Real ? Complex(-1.0, 0.0) : xi;
            } else {
              gc[static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)))] *= -1.0;
            }
            if (rng.coin()) gc += 1e-4 * s * gaussian(rng, field, n);
            break;
          }
          case 3: {
            gc = fc;
            const Eigen::Index a = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
            const Eigen::Index len = 1 + static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
            const Complex xi = unimodular(rng, field);
            for (Eigen::Index k = 0; k < len; ++k) gc[(a + k) % n] *= xi;
            break;
          }
          default:
            gc = unimodular(rng, field) * fc + 0.3 * s * gaussian(rng, field, n);
            break;
        }
        const Signal g(field, gc);
        const CVector phiG = scheme.measureAll(gc);
        const PairRatio pr = pairRatio(phiF, phiG, field, p);
        if (pr.skipped) {
          ++rep.skipped;
          continue;
        }
        ++rep.pairs;
        if (pr.collision) ++rep.collisions;
        rep.maxRatio = std::max(rep.maxRatio, pr.ratio);
        const bool ok = dominated(pr.ratio, bound);
        const double quotient = std::isinf(bound) ? 0.0 : pr.ratio / bound;
        if (rep.boundsHold && (!ok || quotient > rep.maxQuotient || !rep.witness))
          rep.witness = Witness{-1, -1, fc, gc, pr.ratio, ok ? "largest quotient" : "bound violated"};
        rep.maxQuotient = std::max(rep.maxQuotient, quotient);
        rep.boundsHold = rep.boundsHold && ok;

        const EdgeGapCheck l2 = edgeGapCheck(scheme, gm.graph, f, g);
        ++rep.edgeGapChecked;
        rep.edgeLemmaWorst = std::max(rep.edgeLemmaWorst, l2.worstQuotient);
        rep.edgeLemmaHolds = rep.edgeLemmaHolds && l2.holds;
        if (p == 2.0) {
          const ModulusGapTerms t = modulusGapTerms(phiF, phiG);
          ++rep.modulusLemmaChecked;
          const double tol = 1e-9 * std::max(1.0, std::max(phiF.norm(), phiG.norm()));
          rep.modulusLemmaHolds = rep.modulusLemmaHolds && t.unimodular <= std::sqrt(2.0) * t.leastSquares + t.modulusGap + tol;
        }
      }
    }
    report.pass = report.pass && rep.boundsHold && rep.edgeLemmaHolds && rep.modulusLemmaHolds;
    report.schemes.push_back(std::move(rep));
  }
  return report;
}

LemmaSuiteReport lemmaSuite(std::uint64_t seed, long trials) {
  LemmaSuiteReport rep;
  Rng rng(deriveSeed(seed, 0x746f43ULL));
  for (long i = 0; i < trials; ++i) {
    const CVector x = gaussian(rng, Field::Complex, 16);
    CVector y;
    switch (i % 4) {
      case 0:
        y = gaussian(rng, Field::Complex, 16);
        break;
      case 1:
        y = CVector::Zero(16);
        break;
      case 2:
        y = Complex(rng.normal(), rng.normal()) * x + 1e-3 * gaussian(rng, Field::Complex, 16);
        break;
      default:
        y = x;
        for (Eigen::Index k = 0; k < 16; ++k) y[k] *= std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi));
        break;
    }
    const ModulusGapTerms t = modulusGapTerms(x, y);
    const double rhs = std::sqrt(2.0) * t.leastSquares + t.modulusGap;
    ++rep.modulusChecked;
    rep.modulusHolds = rep.modulusHolds && t.unimodular <= rhs + 1e-9 * std::max(1.0, x.norm());
    if (rhs > 0.0) rep.modulusWorst = std::max(rep.modulusWorst, t.unimodular / rhs);
  }

  WindowedConfig cfg;
  cfg.a = 1;
  cfg.L = 8;
  cfg.field = Field::Complex;
  cfg.seed = seed;
  const LsccScheme schemes[] = {toyScheme(), buildWindowedScheme(cfg)};
  for (long i = 0; i < trials; ++i) {
    const LsccScheme& scheme = schemes[i % 2];
    const Field field = scheme.field();
    const CVector fc = gaussian(rng, field, scheme.ambientDim());
    const CVector gc = i % 3 == 0 ? gaussian(rng, field, scheme.ambientDim())
                                  : CVector(unimodular(rng, field) * fc +
                                            std::pow(10.0, -rng.uniform(0.0, 4.0)) * gaussian(rng, field, scheme.ambientDim()));
    const EdgeGapCheck l2 = edgeGapCheck(scheme, Signal(field, fc), Signal(field, gc));
    ++rep.edgeGapChecked;
    rep.edgeLemmaHolds = rep.edgeLemmaHolds && l2.holds;
    rep.edgeLemmaWorst = std::max(rep.edgeLemmaWorst, l2.worstQuotient);
  }
  return rep;
}

}  // namespace lscc
