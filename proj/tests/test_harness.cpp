#include <gtest/gtest.h>

#include <cmath>

#include "lscc/harness.hpp"
#include "lscc/shiftinv.hpp"
#include "lscc/stability.hpp"
#include "lscc/windowed.hpp"

using namespace lscc;

namespace {
const Signal f0 = Signal::fromReal({1, 2, 3, 4});
const Signal f1 = Signal::fromReal({1, 2, 0, 1});
}  // namespace

TEST(Noise, ZeroNoiseRecoversSignal) {
  const NoisyRecoveryResult r = noisyRecoveryGap(toyScheme(), f0, 0.0, 3, 1, 4);
  ASSERT_EQ(r.rows.size(), 3u);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.effectiveEta, 0.0);
    EXPECT_EQ(row.gap, 0.0);
    EXPECT_TRUE(row.pass);
  }
}

TEST(Noise, ToyGapWithinTwiceBound) {
  const double eta = 0.05;
  const NoisyRecoveryResult r = noisyRecoveryGap(toyScheme(), f0, eta, 6, 2, 8);
  EXPECT_FALSE(r.witnessOnly);
  EXPECT_NEAR(r.bound, realBound(toyScheme(), f0), 1e-12);
  EXPECT_TRUE(r.pass);
  for (const auto& row : r.rows) {
    EXPECT_LE(row.effectiveEta, eta * (1 + 1e-12));
    if (!row.censored) EXPECT_LE(row.gap, 2.0 * r.bound * row.effectiveEta * (1 + 1e-9));
  }
}

TEST(Noise, DisconnectedSignalIsWitnessOnly) {
  const NoisyRecoveryResult r = noisyRecoveryGap(toyScheme(), f1, 0.1, 2, 3, 4);
  EXPECT_TRUE(r.witnessOnly);
  EXPECT_TRUE(std::isinf(r.bound));
  EXPECT_TRUE(r.pass);
}

TEST(Noise, Deterministic) {
  const NoisyRecoveryResult a = noisyRecoveryGap(toyScheme(), f0, 0.1, 3, 9, 4);
  const NoisyRecoveryResult b = noisyRecoveryGap(toyScheme(), f0, 0.1, 3, 9, 4);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].gap, b.rows[i].gap);
    EXPECT_EQ(a.rows[i].objective, b.rows[i].objective);
  }
}

TEST(Fuzz, SmallRunAcrossFields) {
  WindowedConfig cfg;
  cfg.a = 1;
  cfg.L = 16;
  cfg.field = Field::Complex;
  std::vector<FuzzTarget> targets{{"toy", toyScheme()},
                                  {"windowed-complex", buildWindowedScheme(cfg)},
                                  {"shiftinv", buildShiftInvScheme(GeneratorModel::bspline(2), 8)}};
  const FuzzReport r = fuzzBounds(targets, 3000, 5);
  EXPECT_TRUE(r.pass);
  ASSERT_EQ(r.schemes.size(), 3u);
  for (const auto& s : r.schemes) {
    EXPECT_EQ(s.pairs, 3000);
    EXPECT_LE(s.maxQuotient, 1.0 + 1e-9) << s.label;
    EXPECT_TRUE(s.edgeLemmaHolds) << s.label;
    EXPECT_TRUE(s.modulusLemmaHolds) << s.label;
    EXPECT_GT(s.edgeGapChecked, 0);
  }
  EXPECT_EQ(r.schemes[1].field, Field::Complex);
}

TEST(Fuzz, Deterministic) {
  const std::vector<FuzzTarget> targets{{"toy", toyScheme()}};
  const FuzzReport a = fuzzBounds(targets, 500, 6), b = fuzzBounds(targets, 500, 6);
  EXPECT_EQ(a.schemes[0].maxQuotient, b.schemes[0].maxQuotient);
  EXPECT_EQ(a.schemes[0].maxRatio, b.schemes[0].maxRatio);
  EXPECT_EQ(a.schemes[0].skipped, b.schemes[0].skipped);
}

TEST(Fuzz, CorruptedConstantsAreCaught) {
  SchemeConstants c = toyScheme().constants();
  c.C0 *= 0.01;
  c.C1 *= 0.01;
  const FuzzReport r = fuzzBounds({{"toy-corrupted", toyScheme().withConstants(c)}}, 2000, 7);
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.schemes[0].witness.has_value());
  EXPECT_GT(r.schemes[0].maxQuotient, 1.0);
}

TEST(Lemmas, Suite) {
  const LemmaSuiteReport r = lemmaSuite(8, 5000);
  EXPECT_TRUE(r.modulusHolds);
  EXPECT_TRUE(r.edgeLemmaHolds);
  EXPECT_GE(r.modulusChecked, 5000);
  EXPECT_GE(r.edgeGapChecked, 5000);
  EXPECT_LE(r.modulusWorst, 1.0 + 1e-9);
  EXPECT_LE(r.edgeLemmaWorst, 1.0 + 1e-9);
}
