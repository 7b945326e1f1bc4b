#include <gtest/gtest.h>

#include <array>
#include <random>

#include "limitwalk/cycle.hpp"
#include "limitwalk/error.hpp"
#include "support/fixtures.hpp"
#include "support/random_patterns.hpp"

using namespace limitwalk;
using namespace limitwalk::testing;

TEST(Cycle, Example1Summary) {
  const auto s = summarize(example1_pattern());
  EXPECT_EQ(s.period, 1u);
  EXPECT_EQ(s.lower_reach, 3);
  EXPECT_EQ(s.support_floor, -3);
  EXPECT_DOUBLE_EQ(s.drift, -1.0);
  EXPECT_DOUBLE_EQ(s.pmf(-3), 0.5);
  EXPECT_DOUBLE_EQ(s.pmf(1), 0.5);
  EXPECT_EQ(classify(s), CaseLabel::ComputableMleq0);
}

TEST(Cycle, Example2Summary) {
  const auto s = summarize(example2_pattern());
  EXPECT_EQ(s.period, 3u);
  EXPECT_EQ(s.lower_reach, 2);
  EXPECT_EQ(s.prefix_minima, (std::vector<std::int64_t>{1, -2, -2}));
  EXPECT_EQ(s.support_floor, 1);
  EXPECT_EQ(s.period_sum.min_support(), -2);
  EXPECT_NEAR(s.pmf(-2), kEx2MinMass, 1e-12);
  EXPECT_NEAR(s.drift, kEx2Drift, 1e-10);
  EXPECT_LE(s.tail_error_total, 1e-10);
  EXPECT_EQ(classify(s), CaseLabel::ComputableMgt0);
}

TEST(Cycle, SummaryIsOrderInvariantForPeriodSum) {
  const std::array<double, 3> a{0.2, 0.3, 0.5};
  const std::array<double, 2> b{0.6, 0.4};
  const std::array<double, 4> c{0.1, 0.2, 0.3, 0.4};
  const auto abc = summarize(CyclePattern({from_weights(-2, a), from_weights(1, b), from_weights(-1, c)}));
  const auto cba = summarize(CyclePattern({from_weights(-1, c), from_weights(1, b), from_weights(-2, a)}));
  EXPECT_EQ(abc.lower_reach, cba.lower_reach);
  ASSERT_EQ(abc.period_sum.size(), cba.period_sum.size());
  for (std::int64_t x = abc.period_sum.min_support(); x <= abc.period_sum.max_support(); ++x) {
    EXPECT_NEAR(abc.pmf(x), cba.pmf(x), 1e-15);
  }
  // Prefix minima differ with the order.
  EXPECT_EQ(abc.support_floor, -1);
  EXPECT_EQ(cba.support_floor, 0);
}

TEST(Cycle, PgfIdentitiesAtOne) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = summarize(random_pattern(rng));
    EXPECT_NEAR(std::abs(period_pgf(s, 1.0) - 1.0), 0.0, 1e-13);
    EXPECT_NEAR(period_pgf(s, 1.0, 1).real(), s.drift, 1e-12);
    EXPECT_NEAR(period_pgf(s, 1.0, 1).imag(), 0.0, 1e-15);
  }
}

TEST(Cycle, PgfDerivativeMatchesFiniteDifference) {
  const auto s = summarize(example2_pattern());
  const std::complex<double> z(0.3, 0.4);
  const double h = 1e-6;
  for (int order = 0; order < 3; ++order) {
    const auto fd = (period_pgf(s, z + h, order) - period_pgf(s, z - h, order)) / (2 * h);
    EXPECT_LT(std::abs(fd - period_pgf(s, z, order + 1)), 1e-5 * std::max(1.0, std::abs(fd)));
  }
}

TEST(Cycle, PgfRejectsZero) {
  const auto s = summarize(example1_pattern());
  EXPECT_THROW(period_pgf(s, 0.0), Error);
}

TEST(Cycle, Classification) {
  EXPECT_EQ(classify(summarize(two_point_pm1(0.3))), CaseLabel::ZeroFunction);
  EXPECT_EQ(classify(summarize(two_point_pm1(0.5))), CaseLabel::ZeroFunction);
  EXPECT_EQ(classify(summarize(two_point_pm1(0.7))), CaseLabel::ComputableMleq0);
  const std::array<double, 1> one{1.0};
  EXPECT_EQ(classify(summarize(CyclePattern({from_weights(0, one)}))), CaseLabel::DegenerateStep);
  // +1 then -1 every period: S_N = 0 a.s.
  EXPECT_EQ(classify(summarize(CyclePattern({from_weights(1, one), from_weights(-1, one)}))),
            CaseLabel::DegenerateStep);
  const std::array<double, 2> w{0.5, 0.5};
  const auto s = summarize(CyclePattern({from_weights(-2, w)}));
  EXPECT_EQ(s.lower_reach, 2);
  EXPECT_EQ(classify(s), CaseLabel::ComputableMleq0);
  EXPECT_EQ(case_name(CaseLabel::ComputableMgt0), "ComputableMgt0");
}

TEST(Cycle, EmptyPatternRejected) {
  EXPECT_THROW(CyclePattern({}), Error);
}
