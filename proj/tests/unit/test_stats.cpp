// Copyright 2026 The adglab Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "adglab/random.hpp"
#include "adglab/stats.hpp"

namespace adglab {
namespace {

// Reference intervals from statsmodels proportion_confint(method="wilson").
TEST(Wilson, MatchesReferenceValues) {
  const Interval half = wilson_interval(50, 100);
  EXPECT_NEAR(half.lo, 0.4038315303659956, 1e-12);
  EXPECT_NEAR(half.hi, 0.5961684696340044, 1e-12);

  const Interval none = wilson_interval(0, 100);
  EXPECT_NEAR(none.lo, 0.0, 1e-15);
  EXPECT_NEAR(none.hi, 0.03699349820698569, 1e-12);

  const Interval all = wilson_interval(100, 100);
  EXPECT_NEAR(all.lo, 0.9630065017930143, 1e-12);
  EXPECT_NEAR(all.hi, 1.0, 1e-15);

  const Interval rare = wilson_interval(3, 1000);
  EXPECT_NEAR(rare.lo, 0.0010207838811386195, 1e-12);
  EXPECT_NEAR(rare.hi, 0.008783014053503176, 1e-12);
}

TEST(Wilson, AlwaysContainsTheEstimate) {
  for (std::size_t n : {1u, 7u, 1000u}) {
    for (std::size_t k = 0; k <= n; k += (n > 10 ? n / 10 : 1)) {
      const Interval ci = wilson_interval(k, n);
      const double p = static_cast<double>(k) / static_cast<double>(n);
      EXPECT_LE(ci.lo, p);
      EXPECT_GE(ci.hi, p);
    }
  }
}

TEST(RunningMoments, MergeEqualsSinglePass) {
  Rng rng(7);
  RunningMoments all;
  RunningMoments left;
  RunningMoments right;
  for (int i = 0; i < 1000; ++i) {
    const double x = uniform01(rng) * 10.0;
    all.push(x);
    (i < 300 ? left : right).push(x);
  }
  left.merge(right);
  EXPECT_EQ(left.count(), all.count());
  EXPECT_NEAR(left.mean(), all.mean(), 1e-12);
  EXPECT_NEAR(left.variance(), all.variance(), 1e-10);
}

TEST(MeanAndStderr, SmallSample) {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  const MeanEstimate e = mean_and_stderr(v);
  EXPECT_DOUBLE_EQ(e.mean, 2.5);
  // sample variance 5/3
  EXPECT_NEAR(e.stderr, std::sqrt(5.0 / 3.0 / 4.0), 1e-14);
  EXPECT_EQ(e.n, 4u);
}

TEST(FitLine, RecoversExactLine) {
  const std::vector<double> x{0, 1, 2, 3, 4};
  std::vector<double> y;
  for (double xi : x) {
    y.push_back(-2.0 * xi + 3.0);
  }
  const LinearFit fit = fit_line(x, y);
  EXPECT_NEAR(fit.slope, -2.0, 1e-13);
  EXPECT_NEAR(fit.intercept, 3.0, 1e-13);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-13);
}

TEST(FitLine, WeightsPullTowardHeavyPoints) {
  const std::vector<double> x{0, 1, 2};
  const std::vector<double> y{0, 1, 0};
  const std::vector<double> w{1, 1e-9, 1};
  const LinearFit fit = fit_line(x, y, w);
  EXPECT_NEAR(fit.slope, 0.0, 1e-6);
  EXPECT_NEAR(fit.intercept, 0.0, 1e-6);
}

TEST(Isotonic, PoolsViolators) {
  const std::vector<double> y{1.0, 0.8, 0.9, 0.5, 0.6, 0.1};
  const std::vector<double> fit = isotonic_nonincreasing(y);
  const std::vector<double> expected{1.0, 0.85, 0.85, 0.55, 0.55, 0.1};
  ASSERT_EQ(fit.size(), expected.size());
  for (std::size_t i = 0; i < fit.size(); ++i) {
    EXPECT_NEAR(fit[i], expected[i], 1e-14) << i;
  }
}

TEST(Isotonic, LeavesMonotoneInputAlone) {
  const std::vector<double> y{3, 2, 2, 1};
  EXPECT_EQ(isotonic_nonincreasing(y), y);
}

TEST(Isotonic, RespectsWeights) {
  const std::vector<double> y{0.0, 1.0};
  const std::vector<double> w{3.0, 1.0};
  const std::vector<double> fit = isotonic_nonincreasing(y, w);
  EXPECT_NEAR(fit[0], 0.25, 1e-14);
  EXPECT_NEAR(fit[1], 0.25, 1e-14);
}

// Exact finite-n values from scipy.stats.kstwo.sf; the asymptotic series with
// the small-sample correction is good to about 1e-3 there.
TEST(KolmogorovSmirnov, PValueTracksExactDistribution) {
  EXPECT_NEAR(ks_pvalue(0.1, 100), 0.2526927570063874, 4e-3);
  EXPECT_NEAR(ks_pvalue(0.05, 1000), 0.013012074781090332, 1e-3);
  EXPECT_NEAR(ks_pvalue(0.2, 50), 0.03143877776953241, 2e-3);
  EXPECT_LT(ks_pvalue(0.01, 100000), 1e-7);
  EXPECT_DOUBLE_EQ(ks_pvalue(0.0, 100), 1.0);
}

TEST(KolmogorovSmirnov, UniformSamplesPass) {
  Rng rng(11);
  std::vector<double> u(5000);
  for (double& x : u) {
    x = uniform01(rng);
  }
  const double d = ks_statistic(u, [](double x) { return std::clamp(x, 0.0, 1.0); });
  EXPECT_GT(ks_pvalue(d, u.size()), 0.01);
  const double skewed = ks_statistic(u, [](double x) { return std::clamp(x * x, 0.0, 1.0); });
  EXPECT_LT(ks_pvalue(skewed, u.size()), 1e-6);
}

TEST(Dkw, Epsilon) {
  EXPECT_NEAR(dkw_epsilon(100000, 0.05), 0.004294694083467375, 1e-15);
}

TEST(Streams, IndependentOfConsumptionOrder) {
  Rng a = make_stream(42, 3);
  Rng b = make_stream(42, 3);
  Rng c = make_stream(42, 4);
  const auto x = a();
  EXPECT_EQ(x, b());
  EXPECT_NE(x, c());
  EXPECT_NE(stream_seed(1, 0), stream_seed(2, 0));
}

TEST(Uniform01, StaysInHalfOpenUnitInterval) {
  Rng rng(5);
  for (int i = 0; i < 100000; ++i) {
    const double u = uniform01(rng);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

}  // namespace
}  // namespace adglab
