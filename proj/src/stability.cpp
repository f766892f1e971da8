#include "lscc/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "lscc/errors.hpp"
#include "lscc/rng.hpp"

namespace lscc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

CVector randomVector(Rng& rng, Field field, Eigen::Index n) {
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i)
    v[i] = field == Field::Real ? Complex(rng.normal(), 0.0) : Complex(rng.normal(), rng.normal()) / std::sqrt(2.0);
  return v;
}

Complex randomUnimodular(Rng& rng, Field field) {
  if (field == Field::Real) return rng.coin() ? 1.0 : -1.0;
  return std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi));
}

}  // namespace

double constantC2(double p, double D, double C0, double C1) {
  const double a = std::pow(2.0, p - 1.0) * std::pow(C0, p);
  const double b = std::pow(2.0, 2.0 * p - 2.0) * D * std::pow(C1, p) * std::pow(C0, p);
  return std::pow(std::max(a, b), 1.0 / p);
}

double constantC2(const SchemeConstants& c) { return constantC2(c.p, c.D, c.C0, c.C1); }

double constantC3(double p, double D, double C0, double C1) {
  if (p != 2.0) throw UnsupportedP("the complex-case constant is only defined for p = 2");
  return std::max(4.0 * C0 * C1 * std::sqrt(D), std::sqrt(8.0 * C0 * C0 + 2.0));
}

double constantC3(const SchemeConstants& c) { return constantC3(c.p, c.D, c.C0, c.C1); }

double realBoundFromCheeger(double C2, double cheeger, double p) {
  if (!(cheeger > 0.0)) return kInf;
  if (std::isinf(cheeger)) return C2;
  return C2 * (1.0 + std::pow(cheeger, -1.0 / p));
}

double complexBoundFromLambda(double C3, double lambda) {
  if (!(lambda > 0.0)) return kInf;
  if (std::isinf(lambda)) return C3;
  return C3 * (1.0 + 1.0 / std::sqrt(lambda));
}

GraphMeasures graphMeasures(const LsccScheme& scheme, const Signal& f, double zeroTol, bool withSpectral) {
  GraphMeasures gm;
  gm.graph = induceGraph(scheme, f, zeroTol);
  gm.empty = gm.graph.empty();
  if (gm.empty) {
    gm.cheeger = {0.0, 0.0, CheegerMethod::ExactEnumeration, {}};
    return gm;
  }
  gm.connected = isConnected(gm.graph);
  gm.cheeger = cheeger(gm.graph);
  if (withSpectral) gm.spectral = algebraicConnectivity(gm.graph);
  gm.normalizedDegree = normalizedDegree(gm.graph);
  return gm;
}

double applicableBound(const LsccScheme& scheme, const GraphMeasures& gm) {
  if (gm.empty) return kInf;
  if (scheme.field() == Field::Real)
    return realBoundFromCheeger(constantC2(scheme.constants()), gm.cheeger.lowerBound, scheme.p());
  return complexBoundFromLambda(constantC3(scheme.constants()), gm.spectral.lambda);
}

double realBound(const LsccScheme& scheme, const Signal& f) {
  if (scheme.field() != Field::Real) throw UnsupportedField("the Cheeger-based bound applies to real schemes");
  return applicableBound(scheme, graphMeasures(scheme, f, kDefaultZeroTol, false));
}

double complexBound(const LsccScheme& scheme, const Signal& f) {
  if (scheme.field() != Field::Complex) throw UnsupportedField("the spectral bound applies to complex schemes");
  if (scheme.p() != 2.0) throw UnsupportedP("the complex bound is only stated for p = 2");
  return applicableBound(scheme, graphMeasures(scheme, f));
}

PairRatio pairRatio(const CVector& phiF, const CVector& phiG, Field field, double p) {
  PairRatio r;
  r.numerator = alignPhase(phiF, phiG, field, p).residual;
  r.denominator = modulusDistance(phiF, phiG, p);
  const double scale = std::max(pNorm(phiF, p), pNorm(phiG, p));
  if (r.denominator < 1e-14 * scale || r.denominator == 0.0) {
    if (r.numerator > 1e-9 * scale) {
      r.collision = true;
      r.ratio = kInf;
    } else {
      r.skipped = true;
    }
    return r;
  }
  r.ratio = r.numerator / r.denominator;
  return r;
}

std::string_view toString(Strategy s) {
  switch (s) {
    case Strategy::RandomGaussian: return "random";
    case Strategy::LocalPerturbation: return "local";
    case Strategy::SignFlips: return "signflips";
    default: return "adversarial";
  }
}

Strategy strategyFromString(std::string_view s) {
  if (s == "random") return Strategy::RandomGaussian;
  if (s == "local") return Strategy::LocalPerturbation;
  if (s == "signflips") return Strategy::SignFlips;
  if (s == "adversarial") return Strategy::Adversarial;
  throw FormatError("unknown strategy '" + std::string(s) + "'");
}

namespace {

/// Coordinates grouped by the first vertex whose support contains them.
std::vector<std::vector<int>> coordinateRegions(const LsccScheme& scheme) {
  const int n = scheme.ambientDim();
  std::vector<std::vector<int>> regions;
  const bool coordinateProjections = std::none_of(scheme.projections().begin(), scheme.projections().end(),
                                                  [](const auto& P) { return P.has_value(); });
  if (!coordinateProjections) {
    for (int k = 0; k < n; ++k) regions.push_back({k});
    return regions;
  }
  std::vector<char> taken(static_cast<std::size_t>(n), 0);
  for (const LocalFunctionals& b : scheme.vertexFrames()) {
    std::vector<int> region;
    for (int k : b.support)
      if (!taken[static_cast<std::size_t>(k)]) {
        taken[static_cast<std::size_t>(k)] = 1;
        region.push_back(k);
      }
    std::sort(region.begin(), region.end());
    if (!region.empty()) regions.push_back(std::move(region));
  }
  for (int k = 0; k < n; ++k)
    if (!taken[static_cast<std::size_t>(k)]) regions.push_back({k});
  return regions;
}

/// Average Fiedler value over the vertices whose support holds each coordinate; empty when unavailable.
std::vector<double> coordinatePotential(const LsccScheme& scheme, const GraphMeasures& gm) {
  if (gm.empty || gm.graph.numVertices() < 2 || gm.spectral.fiedlerVector.size() == 0) return {};
  for (const auto& P : scheme.projections())
    if (P) return {};
  const int n = scheme.ambientDim();
  std::vector<double> sum(static_cast<std::size_t>(n), 0.0);
  std::vector<int> count(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < gm.graph.numVertices(); ++i) {
    const int v = gm.graph.vertexIds[static_cast<std::size_t>(i)];
    for (int k : scheme.vertexFrames()[static_cast<std::size_t>(v)].support) {
      sum[static_cast<std::size_t>(k)] += gm.spectral.fiedlerVector[i];
      ++count[static_cast<std::size_t>(k)];
    }
  }
  for (int k = 0; k < n; ++k)
    if (count[static_cast<std::size_t>(k)] > 0) sum[static_cast<std::size_t>(k)] /= count[static_cast<std::size_t>(k)];
  return sum;
}

}  // namespace

EmpiricalRatio empiricalWorstRatio(const LsccScheme& scheme, const Signal& f, Strategy strategy, int trials,
                                   std::uint64_t seed) {
  scheme.checkSignal(f);
  if (trials < 1) throw DimensionError("trials must be positive");
  const Field field = scheme.field();
  const double p = scheme.p();
  const int n = scheme.ambientDim();
  const CVector& fc = f.coords();
  const CVector phiF = scheme.measureAll(fc);
  Rng rng(seed);
  EmpiricalRatio out;

  auto consider = [&](const CVector& g) {
    const PairRatio r = pairRatio(phiF, scheme.measureAll(g), field, p);
    if (r.skipped) {
      ++out.skipped;
      return;
    }
    ++out.valid;
    if (r.collision) {
      if (!out.retrievalFailure) {
        out.retrievalFailure = true;
        out.ratio = kInf;
        out.witness = Signal(field, g);
      }
      return;
    }
    if (!out.retrievalFailure && r.ratio > out.ratio) {
      out.ratio = r.ratio;
      out.witness = Signal(field, g);
    }
  };

  const double fNorm = fc.norm() > 0.0 ? fc.norm() : 1.0;
  switch (strategy) {
    case Strategy::RandomGaussian:
      for (int t = 0; t < trials; ++t) {
        CVector g = randomVector(rng, field, n);
        g *= fNorm * std::pow(10.0, rng.uniform(-1.0, 1.0)) / g.norm();
        consider(g);
      }
      break;
    case Strategy::LocalPerturbation:
      for (int t = 0; t < trials; ++t) {
        CVector h = randomVector(rng, field, n);
        h *= fNorm * std::pow(10.0, rng.uniform(-6.0, 0.0)) / h.norm();
        consider(randomUnimodular(rng, field) * (fc + h));
      }
      break;
    case Strategy::SignFlips: {
      const auto regions = coordinateRegions(scheme);
      const int r = static_cast<int>(regions.size());
      auto applyPattern = [&](auto&& phaseOf) {
        CVector g = fc;
        for (int j = 0; j < r; ++j) {
          const Complex s = phaseOf(j);
          for (int k : regions[static_cast<std::size_t>(j)]) g[k] *= s;
        }
        return g;
      };
      const long full = r <= 21 ? (1L << std::max(0, r - 1)) : -1;
      if (field == Field::Real && full > 0 && full <= std::max<long>(trials, 4096)) {
        for (long mask = 0; mask < full; ++mask)
          consider(applyPattern([&](int j) { return j > 0 && ((mask >> (j - 1)) & 1L) ? -1.0 : 1.0; }));
      } else {
        for (int t = 0; t < trials; ++t) consider(applyPattern([&](int) { return randomUnimodular(rng, field); }));
      }
      break;
    }
    case Strategy::Adversarial: {
      int budget = trials;
      if (field == Field::Complex) {
        for (int m = 1; m < n && budget > 0; ++m, --budget) {
          CVector g = fc;
          for (int k = 0; k < n; ++k) g[k] *= std::polar(1.0, 2.0 * std::numbers::pi * m * k / n);
          consider(g);
        }
      }
      const GraphMeasures gm = graphMeasures(scheme, f);
      const std::vector<double> phi = coordinatePotential(scheme, gm);
      if (!phi.empty()) {
        const auto [lo, hi] = std::minmax_element(phi.begin(), phi.end());
        const double range = *hi - *lo;
        if (field == Field::Real) {
          std::vector<double> cuts(phi);
          std::sort(cuts.begin(), cuts.end());
          cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
          for (std::size_t i = 0; i + 1 < cuts.size() && budget > 0; ++i, --budget) {
            CVector g = fc;
            for (int k = 0; k < n; ++k)
              if (phi[static_cast<std::size_t>(k)] > cuts[i]) g[k] = -g[k];
            consider(g);
          }
        } else if (range > 0.0) {
          for (int j = 1; j <= 64 && budget > 0; ++j, --budget) {
            const double theta = 2.0 * std::numbers::pi * j / 64.0;
            CVector g = fc;
            for (int k = 0; k < n; ++k) g[k] *= std::polar(1.0, theta * (phi[static_cast<std::size_t>(k)] - *lo) / range);
            consider(g);
          }
        }
      }
      if (!gm.empty && !gm.cheeger.witnessCut.empty() && budget > 0) {
        std::vector<char> inCut(static_cast<std::size_t>(n), 0);
        for (int i : gm.cheeger.witnessCut)
          for (int k : scheme.vertexFrames()[static_cast<std::size_t>(gm.graph.vertexIds[static_cast<std::size_t>(i)])].support)
            inCut[static_cast<std::size_t>(k)] = 1;
        const Complex flip = field == Field::Real ? Complex(-1.0) : Complex(0.0, 1.0);
        CVector g = fc;
        for (int k = 0; k < n; ++k)
          if (inCut[static_cast<std::size_t>(k)]) g[k] *= flip;
        consider(g);
        --budget;
      }
      // Remaining budget: small perturbations of the strongest candidate so far.
      while (budget-- > 0) {
        const CVector base = out.witness && !out.retrievalFailure ? out.witness->coords() : fc;
        CVector h = randomVector(rng, field, n);
        h *= fNorm * std::pow(10.0, rng.uniform(-4.0, -1.0)) / h.norm();
        consider(base + h);
      }
      break;
    }
  }
  if (out.valid == 0) throw DegenerateFamily("every sampled g was a global phase multiple of f");
  return out;
}

bool dominated(double ratio, double bound) {
  if (std::isinf(ratio)) return std::isinf(bound);
  return ratio <= bound * (1.0 + 1e-9);
}

StabilityReport analyzeSignal(const LsccScheme& scheme, const Signal& f, const AnalyzeOptions& opts) {
  scheme.checkSignal(f);
  if (scheme.field() == Field::Complex && scheme.p() != 2.0)
    throw UnsupportedP("complex schemes are only analysed for p = 2");
  StabilityReport rep;
  rep.schemeName = scheme.name();
  rep.field = scheme.field();
  rep.p = scheme.p();
  const GraphMeasures gm = graphMeasures(scheme, f, opts.zeroTol);
  rep.graphEmpty = gm.empty;
  rep.numVertices = gm.graph.numVertices();
  rep.numEdges = static_cast<int>(gm.graph.edges.size());
  rep.verdict = !gm.empty && gm.connected ? Verdict::RetrievableByConnectivity : Verdict::Inconclusive;
  rep.cheeger = gm.cheeger;
  rep.lambda = gm.empty ? 0.0 : gm.spectral.lambda;
  rep.normalizedDegree = gm.normalizedDegree;
  if (!gm.empty) rep.cheegerInequality = checkCheegerInequality(gm.graph, gm.normalizedDegree, gm.cheeger, gm.spectral);
  const SchemeConstants& c = scheme.constants();
  rep.C2 = constantC2(c);
  rep.C3 = c.p == 2.0 ? constantC3(c) : kNaN;
  rep.bound = applicableBound(scheme, gm);
  rep.realBound = scheme.field() == Field::Real ? rep.bound : kNaN;
  rep.complexBound = scheme.field() == Field::Complex ? rep.bound : kNaN;

  const Strategy all[] = {Strategy::RandomGaussian, Strategy::LocalPerturbation, Strategy::SignFlips, Strategy::Adversarial};
  for (std::size_t i = 0; i < std::size(all); ++i) {
    try {
      const EmpiricalRatio r = empiricalWorstRatio(scheme, f, all[i], opts.trials, deriveSeed(opts.seed, 100 + i));
      rep.samples += r.valid;
      rep.retrievalFailure = rep.retrievalFailure || r.retrievalFailure;
      rep.empiricalWorstRatio = std::max(rep.empiricalWorstRatio, r.ratio);
    } catch (const DegenerateFamily&) {
    }
  }
  rep.boundSatisfied = dominated(rep.empiricalWorstRatio, rep.bound);
  return rep;
}

}  // namespace lscc
