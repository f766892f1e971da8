#pragma once

// Independent reference computations used by the tests.

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include "lscc/graph.hpp"
#include "lscc/measurement.hpp"
#include "lscc/scheme.hpp"

namespace oracle {

using lscc::CMatrix;
using lscc::CVector;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Strong complement constant by recursive assignment of rows to two sides.
inline double sigmaRecursive(const CMatrix& m) {
  const Eigen::Index rows = m.rows();
  std::vector<int> side(static_cast<std::size_t>(rows), 0);
  double best = kInf;
  std::function<void(Eigen::Index)> assign = [&](Eigen::Index i) {
    if (i == rows) {
      double sides[2];
      for (int s = 0; s < 2; ++s) {
        std::vector<Eigen::Index> idx;
        for (Eigen::Index r = 0; r < rows; ++r)
          if (side[static_cast<std::size_t>(r)] == s) idx.push_back(r);
        CMatrix sub(static_cast<Eigen::Index>(idx.size()), m.cols());
        for (std::size_t k = 0; k < idx.size(); ++k) sub.row(static_cast<Eigen::Index>(k)) = m.row(idx[k]);
        sides[s] = idx.empty() ? 0.0 : lscc::singularRange(sub).smallest;
      }
      best = std::min(best, std::max(sides[0], sides[1]));
      return;
    }
    for (int s = 0; s < 2; ++s) {
      side[static_cast<std::size_t>(i)] = s;
      assign(i + 1);
    }
  };
  assign(0);
  return best;
}

/// Smallest singular value through the eigenvalues of the Gram matrix.
inline double sigmaMinGram(const CMatrix& m) {
  if (m.rows() < m.cols()) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m.adjoint() * m);
  return std::sqrt(std::max(0.0, es.eigenvalues().minCoeff()));
}

/// Cheeger constant by listing every proper subset with at most half the volume.
inline double cheegerBrute(const lscc::WeightedGraph& g) {
  const int n = g.numVertices();
  if (n < 2) return kInf;
  double total = 0.0;
  for (double w : g.vertexWeights) total += w;
  double best = kInf;
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      double vol = 0.0, bnd = 0.0;
      int count = 0;
      for (int v = 0; v < n; ++v)
        if (in[static_cast<std::size_t>(v)]) {
          vol += g.vertexWeights[static_cast<std::size_t>(v)];
          ++count;
        }
      if (count == 0 || count == n || vol > total / 2.0) return;
      for (const auto& e : g.edges)
        if (in[static_cast<std::size_t>(e.u)] != in[static_cast<std::size_t>(e.v)]) bnd += e.w;
      best = std::min(best, bnd / vol);
      return;
    }
    in[static_cast<std::size_t>(i)] = 0;
    rec(i + 1);
    in[static_cast<std::size_t>(i)] = 1;
    rec(i + 1);
  };
  rec(0);
  return best;
}

inline double cycleLambda(int L) { return 2.0 * (1.0 - std::cos(2.0 * std::numbers::pi / L)); }
inline double cycleCheeger(int L) { return 2.0 / std::floor(L / 2.0); }

/// min over unimodular xi of ||x - xi y||_2 by a fine angle grid followed by golden-section refinement.
inline double alignResidualGrid(const CVector& x, const CVector& y) {
  auto f = [&](double t) { return (x - std::polar(1.0, t) * y).norm(); };
  const int grid = 4096;
  double bestT = 0.0, best = f(0.0);
  for (int i = 1; i < grid; ++i) {
    const double t = 2.0 * std::numbers::pi * i / grid;
    if (f(t) < best) {
      best = f(t);
      bestT = t;
    }
  }
  double a = bestT - 2.0 * std::numbers::pi / grid, b = bestT + 2.0 * std::numbers::pi / grid;
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 200; ++it) {
    const double c = b - r * (b - a), d = a + r * (b - a);
    if (f(c) < f(d)) b = d;
    else a = c;
  }
  return std::min(best, f((a + b) / 2.0));
}

/// Dense ambient analysis matrix of the whole scheme (coordinate projections only).
inline CMatrix denseAnalysis(const lscc::LsccScheme& s) {
  CMatrix M = CMatrix::Zero(s.totalFunctionals(), s.ambientDim());
  Eigen::Index row = 0;
  for (const auto& b : s.vertexFrames()) {
    for (Eigen::Index i = 0; i < b.rows.rows(); ++i, ++row)
      for (std::size_t j = 0; j < b.support.size(); ++j)
        M(row, b.support[j]) += std::conj(b.rows(i, static_cast<Eigen::Index>(j)));
  }
  return M;
}

inline double lp(const CVector& v, double p) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += std::pow(std::abs(v[i]), p);
  return std::pow(s, 1.0 / p);
}

}  // namespace oracle
