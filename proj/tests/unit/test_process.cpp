#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "rasim/process.hpp"

namespace rasim {
namespace {

TEST(SourceState, StartsAtZero) {
  const auto s = SourceState::initial(7, 1.5);
  ASSERT_EQ(s.values.size(), 7U);
  for (double v : s.values) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(s.slot, 0);
}

TEST(SourceState, RejectsNegativeSigma) {
  EXPECT_THROW(SourceState::initial(3, -1.0), std::invalid_argument);
}

TEST(StepSources, ZeroSigmaKeepsValues) {
  SourceBank bank(4, 0.0, 11);
  for (int k = 0; k < 100; ++k) bank.step();
  for (double v : bank.state().values) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(bank.slot(), 100);
}

TEST(StepSources, IncrementEqualsSigmaTimesDraw) {
  SourceState s = SourceState::initial(3, 0.7);
  auto streams = make_source_streams(5, 3);
  auto replay = make_source_streams(5, 3);
  for (int k = 0; k < 20; ++k) {
    const auto before = s.values;
    step_sources(s, streams);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_NEAR(s.values[i] - before[i], 0.7 * replay[i].normal(), 1e-12);
    }
  }
  EXPECT_EQ(streams[0].cursor(), 20U);
}

TEST(StepSources, RejectsStreamCountMismatch) {
  SourceState s = SourceState::initial(3, 1.0);
  auto streams = make_source_streams(5, 2);
  EXPECT_THROW(step_sources(s, streams), std::invalid_argument);
}

TEST(StepSources, IncrementVarianceMatchesSigmaSquared) {
  SourceBank bank(1, 1.0, 2024);
  double prev = 0.0;
  double sum = 0.0;
  double sum_sq = 0.0;
  constexpr int n = 1'000'000;
  for (int k = 0; k < n; ++k) {
    bank.step();
    const double d = bank.state().values[0] - prev;
    prev = bank.state().values[0];
    sum += d;
    sum_sq += d * d;
  }
  const double mean = sum / n;
  const double var = (sum_sq - n * mean * mean) / (n - 1);
  EXPECT_GE(var, 0.99);
  EXPECT_LE(var, 1.01);
}

TEST(SourceBank, Reproducible) {
  SourceBank a(10, 1.0, 77);
  SourceBank b(10, 1.0, 77);
  for (int k = 0; k < 500; ++k) {
    a.step();
    b.step();
  }
  EXPECT_EQ(a.state().values, b.state().values);
}

TEST(SourceBank, DifferentSeedsDiffer) {
  SourceBank a(3, 1.0, 1);
  SourceBank b(3, 1.0, 2);
  a.step();
  b.step();
  EXPECT_NE(a.state().values, b.state().values);
}

TEST(SourceBank, ScaleEquivariantValueByValue) {
  SourceBank one(20, 1.0, 9);
  SourceBank three(20, 3.0, 9);
  for (int k = 0; k < 1000; ++k) {
    one.step();
    three.step();
    for (std::size_t i = 0; i < 20; ++i) {
      ASSERT_NEAR(three.state().values[i], 3.0 * one.state().values[i],
                  1e-12 * (1.0 + std::abs(three.state().values[i])));
    }
  }
}

TEST(SourceBank, PowerOfTwoScaleIsBitExact) {
  SourceBank one(20, 1.0, 9);
  SourceBank two(20, 2.0, 9);
  for (int k = 0; k < 1000; ++k) {
    one.step();
    two.step();
  }
  for (std::size_t i = 0; i < 20; ++i) EXPECT_EQ(two.state().values[i], 2.0 * one.state().values[i]);
}

TEST(SourceBank, NodeStreamsUncorrelated) {
  SourceBank bank(2, 1.0, 31337, InnovationLog::kUnbounded);
  constexpr int n = 100'000;
  for (int k = 0; k < n; ++k) bank.step();
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (int k = 0; k < n; ++k) {
    const double x = bank.log().at(0, k);
    const double y = bank.log().at(1, k);
    sxy += x * y;
    sxx += x * x;
    syy += y * y;
  }
  EXPECT_LT(std::abs(sxy / std::sqrt(sxx * syy)), 0.02);
}

TEST(IncrementWindowSum, EmptyWindowIsZero) {
  SourceBank bank(2, 1.0, 3, InnovationLog::kUnbounded);
  for (int k = 0; k < 10; ++k) bank.step();
  EXPECT_EQ(bank.increment_window_sum(1, 4, 4), 0.0);
}

TEST(IncrementWindowSum, FromZeroTelescopesToValue) {
  SourceBank bank(3, 1.3, 4, InnovationLog::kUnbounded);
  for (int k = 0; k < 50; ++k) bank.step();
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(bank.increment_window_sum(i, 0, 50), bank.state().values[i]);
  }
}

TEST(IncrementWindowSum, InteriorWindowMatchesTrajectoryDifference) {
  SourceBank bank(2, 1.0, 8, InnovationLog::kUnbounded);
  std::vector<double> traj{0.0};
  for (int k = 0; k < 10; ++k) {
    bank.step();
    traj.push_back(bank.state().values[1]);
  }
  EXPECT_NEAR(bank.increment_window_sum(1, 3, 7), traj[7] - traj[3], 1e-12);
}

TEST(IncrementWindowSum, OutOfRangeThrows) {
  SourceBank bank(2, 1.0, 8, InnovationLog::kUnbounded);
  for (int k = 0; k < 5; ++k) bank.step();
  EXPECT_THROW(bank.increment_window_sum(0, 2, 6), std::out_of_range);
  EXPECT_THROW(bank.increment_window_sum(0, -1, 2), std::out_of_range);
  EXPECT_THROW(bank.increment_window_sum(0, 3, 2), std::out_of_range);
  EXPECT_THROW(bank.increment_window_sum(2, 0, 1), std::out_of_range);
}

TEST(IncrementWindowSum, WithoutLogThrows) {
  SourceBank bank(2, 1.0, 8);
  for (int k = 0; k < 5; ++k) bank.step();
  EXPECT_THROW(bank.increment_window_sum(0, 1, 3), std::out_of_range);
}

TEST(InnovationLog, RingKeepsMostRecentSlots) {
  SourceBank bank(2, 1.0, 8, 4);
  SourceBank full(2, 1.0, 8, InnovationLog::kUnbounded);
  for (int k = 0; k < 10; ++k) {
    bank.step();
    full.step();
  }
  EXPECT_EQ(bank.log().first_slot(), 6);
  EXPECT_EQ(bank.log().end_slot(), 10);
  EXPECT_EQ(bank.log().at(1, 7), full.log().at(1, 7));
  EXPECT_THROW(bank.log().at(1, 5), std::out_of_range);
  EXPECT_EQ(bank.increment_window_sum(0, 6, 10), full.increment_window_sum(0, 6, 10));
}

}  // namespace
}  // namespace rasim
