// Copyright 2026 The adglab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace adglab {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Wilson score interval for `successes` out of `n` trials; z = 1.96 gives 95%.
Interval wilson_interval(std::size_t successes, std::size_t n, double z = 1.959963984540054);

/// Welford accumulator.
class RunningMoments {
 public:
  void push(double x) noexcept;
  void merge(const RunningMoments& other) noexcept;

  std::size_t count() const noexcept { return n_; }
  double mean() const noexcept { return mean_; }
  double variance() const noexcept;
  double stderr_of_mean() const noexcept;

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct MeanEstimate {
  double mean = 0.0;
  double stderr = 0.0;
  std::size_t n = 0;
};

MeanEstimate mean_and_stderr(std::span<const double> values);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Least squares y = intercept + slope * x. Empty `weights` means unweighted.
LinearFit fit_line(std::span<const double> x, std::span<const double> y,
                   std::span<const double> weights = {});

/// Pool-adjacent-violators fit to a non-increasing sequence.
std::vector<double> isotonic_nonincreasing(std::span<const double> y,
                                           std::span<const double> weights = {});

/// Two-sided one-sample Kolmogorov-Smirnov statistic against `cdf`.
template <typename Cdf>
double ks_statistic(std::vector<double> samples, Cdf&& cdf);

/// Asymptotic Kolmogorov p-value for statistic `d` with `n` samples
/// (Stephens' small-sample correction applied to the argument).
double ks_pvalue(double d, std::size_t n);

/// Dvoretzky-Kiefer-Wolfowitz band half-width at confidence 1 - alpha.
double dkw_epsilon(std::size_t n, double alpha);

}  // namespace adglab

#include "adglab/detail/stats_impl.hpp"
