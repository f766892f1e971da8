#include <gtest/gtest.h>

#include <cmath>

#include "lscc/errors.hpp"
#include "lscc/measurement.hpp"
#include "lscc/rng.hpp"
#include "oracles.hpp"

using namespace lscc;

namespace {

CMatrix toyLocal() {
  CMatrix m(3, 2);
  m << 1.0, 0.0, 0.0, 1.0, 1.0, 1.0;
  return m;
}

CVector randomComplex(Rng& rng, Eigen::Index n) {
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = Complex(rng.normal(), rng.normal());
  return v;
}

}  // namespace

TEST(Measure, IdentityFrame) {
  const Frame id = Frame::withComputedBounds(Field::Real, CMatrix::Identity(4, 4));
  const MeasurementVector m = measure(id, Signal::fromReal({1, 2, 3, 4}));
  for (int i = 0; i < 4; ++i) EXPECT_EQ(m.values[i], Complex(i + 1.0, 0.0));
  EXPECT_DOUBLE_EQ(id.lower(), 1.0);
  EXPECT_DOUBLE_EQ(id.upper(), 1.0);
}

TEST(Measure, ToyVertexFrameOnFirstCoordinates) {
  // The first vertex frame sees coordinates (1, 2) of f = (1, 2, 0, 1).
  const Frame phi = Frame::withComputedBounds(Field::Real, toyLocal());
  const MeasurementVector m = measure(phi, Signal::fromReal({1, 2}));
  EXPECT_EQ(m.values[0], Complex(1.0, 0.0));
  EXPECT_EQ(m.values[1], Complex(2.0, 0.0));
  EXPECT_EQ(m.values[2], Complex(3.0, 0.0));
}

TEST(Measure, ZeroSignalMeasuresToZero) {
  Rng rng(3);
  CMatrix rows(5, 3);
  for (Eigen::Index i = 0; i < 5; ++i)
    for (Eigen::Index j = 0; j < 3; ++j) rows(i, j) = rng.normal();
  const Frame phi = Frame::withComputedBounds(Field::Real, rows);
  EXPECT_EQ(measure(phi, Signal::zeros(Field::Real, 3)).values.norm(), 0.0);
}

TEST(Measure, ToySignFlipHasSameModuliOnEveryVertex) {
  const Frame phi = Frame::withComputedBounds(Field::Real, toyLocal());
  const double f[] = {1, 2, 0, 1}, g[] = {1, 2, 0, -1};
  for (int k = 0; k < 3; ++k) {
    const auto mf = phaselessMeasure(phi, Signal::fromReal({f[k], f[k + 1]}));
    const auto mg = phaselessMeasure(phi, Signal::fromReal({g[k], g[k + 1]}));
    EXPECT_EQ(mf.values, mg.values) << "vertex " << k;
  }
  // Last vertex: (0, 1) and (0, -1) both give moduli (0, 1, 1).
  const auto last = phaselessMeasure(phi, Signal::fromReal({0, -1}));
  EXPECT_EQ(last.values[0], Complex(0.0, 0.0));
  EXPECT_EQ(last.values[1], Complex(1.0, 0.0));
  EXPECT_EQ(last.values[2], Complex(1.0, 0.0));
}

TEST(Measure, GlobalSignInvariance) {
  Rng rng(4);
  CMatrix rows(6, 3);
  for (Eigen::Index i = 0; i < 6; ++i)
    for (Eigen::Index j = 0; j < 3; ++j) rows(i, j) = rng.normal();
  const Frame phi = Frame::withComputedBounds(Field::Real, rows);
  const Signal f = Signal::fromReal({0.3, -1.2, 2.0});
  EXPECT_EQ(phaselessMeasure(phi, f).values, phaselessMeasure(phi, f.scaled(-1.0)).values);
}

TEST(Measure, ComplexFunctionalModulus) {
  CMatrix rows(2, 2);
  rows << 1.0, Complex(0.0, -1.0), 1.0, 0.0;  // conj gives the analysis row (1, i)
  const Frame phi = Frame::withComputedBounds(Field::Complex, rows);
  const auto m = phaselessMeasure(phi, Signal(Field::Complex, CVector::Ones(2)));
  EXPECT_NEAR(m.values[0].real(), std::sqrt(2.0), 1e-15);
}

TEST(Measure, RealFrameRejectsComplexSignal) {
  const Frame phi = Frame::withComputedBounds(Field::Real, toyLocal());
  CVector v(2);
  v << Complex(1, 1), 1.0;
  EXPECT_THROW(measure(phi, Signal(Field::Complex, v)), FieldError);
  EXPECT_THROW(measure(phi, Signal::fromReal({1, 2, 3})), DimensionError);
}

TEST(PNorm, Values) {
  EXPECT_DOUBLE_EQ(pNorm(CVector(Eigen::Vector2cd(3, 4)), 2.0), 5.0);
  EXPECT_DOUBLE_EQ(pNorm(CVector(Eigen::Vector3cd(1, 1, 1)), 1.0), 3.0);
  EXPECT_NEAR(pNorm(CVector(Eigen::Vector3cd(1, 2, 3)), 3.0), std::cbrt(36.0), 1e-14);
}

TEST(AlignPhase, ClosedFormCases) {
  const CVector x = Eigen::Vector2cd(1, 2);
  EXPECT_EQ(alignPhase(x, x, Field::Real, 2.0).xi, Complex(1.0, 0.0));
  EXPECT_EQ(alignPhase(x, x, Field::Real, 2.0).residual, 0.0);
  const auto flip = alignPhase(x, CVector(-x), Field::Real, 2.0);
  EXPECT_EQ(flip.xi, Complex(-1.0, 0.0));
  EXPECT_EQ(flip.residual, 0.0);
  const CVector a = Eigen::Vector2cd(1, 0), b = Eigen::Vector2cd(Complex(0, 1), 0);
  const auto r = alignPhase(a, b, Field::Complex, 2.0);
  EXPECT_NEAR(std::abs(r.xi - Complex(0, -1)), 0.0, 1e-15);
  EXPECT_NEAR(r.residual, 0.0, 1e-15);
}

TEST(AlignPhase, MatchesGridSearchOracle) {
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const CVector x = randomComplex(rng, 6), y = randomComplex(rng, 6);
    EXPECT_NEAR(alignPhase(x, y, Field::Complex, 2.0).residual, oracle::alignResidualGrid(x, y), 1e-9);
  }
}

TEST(AlignPhase, ComplexPNotTwoIsFlaggedApproximate) {
  Rng rng(12);
  const CVector x = randomComplex(rng, 5), y = randomComplex(rng, 5);
  const auto r = alignPhase(x, y, Field::Complex, 3.0);
  EXPECT_TRUE(r.approximate);
  EXPECT_NEAR(std::abs(r.xi), 1.0, 1e-12);
  // No sampled phase does better than the returned one.
  for (int i = 0; i < 720; ++i)
    EXPECT_LE(r.residual, oracle::lp(x - std::polar(1.0, i * std::numbers::pi / 360) * y, 3.0) + 1e-9);
}

TEST(ModulusGap, TrivialCases) {
  const CVector x = Eigen::Vector3cd(1, Complex(0, 2), -1);
  const ModulusGapTerms zero = modulusGapTerms(x, CVector::Zero(3));
  EXPECT_TRUE(zero.holds);
  EXPECT_DOUBLE_EQ(zero.unimodular, x.norm());
  EXPECT_DOUBLE_EQ(zero.leastSquares, x.norm());
  const ModulusGapTerms same = modulusGapTerms(x, x);
  EXPECT_TRUE(same.holds);
  EXPECT_NEAR(same.unimodular, 0.0, 1e-15);
}

TEST(ModulusGap, RandomComplexPairsLengthEight) {
  Rng rng(13);
  for (int t = 0; t < 10000; ++t) {
    const CVector x = randomComplex(rng, 8), y = randomComplex(rng, 8);
    ASSERT_TRUE(checkModulusGap({x, 2.0}, {y, 2.0})) << t;
  }
}

TEST(FrameAnalysis, NormRatios) {
  EXPECT_DOUBLE_EQ(normRatioLow(4, 2.0), 1.0);
  EXPECT_DOUBLE_EQ(normRatioHigh(4, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(normRatioLow(4, 4.0), std::pow(4.0, -0.25));
}

TEST(FrameAnalysis, StrongComplementMatchesRecursiveOracle) {
  Rng rng(21);
  for (int t = 0; t < 20; ++t) {
    const Eigen::Index rows = 3 + static_cast<Eigen::Index>(rng.below(6)), cols = 2 + static_cast<Eigen::Index>(rng.below(2));
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.normal();
    EXPECT_EQ(strongComplementConstant(m), oracle::sigmaRecursive(m));
  }
}

TEST(FrameAnalysis, ToySigmaIsInverseGoldenRatio) {
  // Worst split keeps {e1, e1 + e2}: singular values of [[1,0],[1,1]] are the golden ratio and its inverse.
  EXPECT_NEAR(strongComplementConstant(toyLocal()), (std::sqrt(5.0) - 1.0) / 2.0, 1e-14);
}

TEST(FrameAnalysis, SubsetBudget) {
  EXPECT_THROW(strongComplementConstant(CMatrix::Ones(21, 2)), BudgetExceeded);
}

TEST(FrameAnalysis, ComplementPropertyOfToyFrame) { EXPECT_TRUE(complementProperty(toyLocal()).holds); }

TEST(FrameAnalysis, TwoRowFrameFailsWithCollidingPair) {
  const CMatrix two = CMatrix::Identity(2, 2);
  const ComplementCheck c = complementProperty(two);
  ASSERT_FALSE(c.holds);
  const CVector mf = (two * c.f).cwiseAbs().cast<Complex>(), mg = (two * c.g).cwiseAbs().cast<Complex>();
  EXPECT_NEAR((mf - mg).norm(), 0.0, 1e-12);
  EXPECT_GT(std::min((c.f - c.g).norm(), (c.f + c.g).norm()), 0.1);
}

TEST(LocalConstant, ToyCertifiedValue) {
  const LocalConstant c = localStabilityConstant(toyLocal(), Field::Real, 2.0, 1);
  EXPECT_TRUE(c.certified);
  const double sigma = oracle::sigmaRecursive(toyLocal());
  EXPECT_NEAR(c.value, std::sqrt(3.0) / sigma, 1e-12);
  EXPECT_NEAR(c.value, 2.80252, 1e-5);
}

TEST(LocalConstant, SampledRatioNeverExceedsCertificate) {
  Rng rng(31);
  for (int t = 0; t < 5; ++t) {
    CMatrix m(5, 3);
    for (Eigen::Index i = 0; i < 5; ++i)
      for (Eigen::Index j = 0; j < 3; ++j) m(i, j) = rng.normal();
    for (double p : {1.0, 2.0, 3.0}) {
      const LocalConstant c = localStabilityConstant(m, Field::Real, p, 7);
      ASSERT_TRUE(c.certified);
      EXPECT_LE(sampleLocalRatio(m, Field::Real, p, 9, 3000), c.value * (1 + 1e-9));
    }
  }
}

TEST(LocalConstant, ComplexEstimateIsInflatedAndUncertified) {
  Rng rng(41);
  CMatrix m(8, 2);
  for (Eigen::Index i = 0; i < 8; ++i)
    for (Eigen::Index j = 0; j < 2; ++j) m(i, j) = Complex(rng.normal(), rng.normal());
  const LocalConstant c = localStabilityConstant(m, Field::Complex, 2.0, 5);
  EXPECT_FALSE(c.certified);
  EXPECT_NEAR(c.value, kComplexSafetyFactor * c.sampled, 1e-12);
  EXPECT_THROW(localStabilityConstant(m, Field::Complex, 3.0, 5), UnsupportedP);
}
