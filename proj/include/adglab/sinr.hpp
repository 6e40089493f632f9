// Copyright 2026 The adglab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <cmath>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

#include "adglab/geometry.hpp"
#include "adglab/point_process.hpp"
#include "adglab/propagation.hpp"
#include "adglab/stats.hpp"

namespace adglab {

struct Scenario {
  ProcessModel process = Ppp{0.1};
  PathLossModel path_loss{};
  FadingModel fading = Rayleigh{};
  double noise = 0.0;  // W; mean SNR is 1/(2W) non-singular, 1/W singular
  Window window{};
  std::uint64_t seed = 1;
  // Values above 1 reuse each pattern for several uniform probes. Those
  // samples are correlated and the confidence intervals no longer hold.
  std::size_t probes_per_pattern = 1;
};

/// Throws InvalidModel / WindowTooSmall for inconsistent scenarios.
void validate(const Scenario& s);

/// Noise power W for a mean SNR given in dB under the path-loss convention.
double noise_for_snr_db(const PathLossModel& path_loss, double snr_db);

struct SinrSample {
  double xi = 0.0;            // contact distance
  double h_serving = 0.0;
  double interference = 0.0;  // sum over all non-serving points
  double sinr = 0.0;          // +inf when there is neither noise nor interference
};

/// SINR at `probe` for a fixed pattern. Fading is drawn afresh for every
/// point, in index order, after the nearest-point tie break.
SinrSample sinr_at(std::span<const Point> points, const Window& window, const Point& probe,
                   const PathLossModel& path_loss, FadingSampler& fading, double noise, Rng& rng);

/// One fresh pattern probed at the window centre.
SinrSample sample_sinr(const Scenario& s, Rng& rng);

/// `n` samples; sample i draws from stream (s.seed, i), or pattern
/// i / probes_per_pattern when patterns are reused.
std::vector<SinrSample> simulate(const Scenario& s, std::size_t n, unsigned threads = 0);

std::vector<double> theta_grid_db(double lo_db, double hi_db, double step_db);
/// -40 dB to +20 dB in 1 dB steps.
std::vector<double> default_theta_grid_db();

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double v) { return 10.0 * std::log10(v); }

struct SuccessCurve {
  std::vector<double> theta_db;
  std::vector<double> p_hat;
  std::vector<double> ci_lo;
  std::vector<double> ci_hi;
  std::vector<std::size_t> successes;
  std::size_t n = 0;
};

/// Shares every sample across the grid, so p_hat is exactly non-increasing.
SuccessCurve success_curve_from(std::span<const SinrSample> samples,
                                std::span<const double> theta_db);

SuccessCurve estimate_success_curve(const Scenario& s, std::span<const double> theta_db,
                                    std::size_t n, unsigned threads = 0);

/// CSV header `theta_db,p_hat,ci_lo,ci_hi,n`.
void write_curve_csv(std::ostream& os, const SuccessCurve& curve);

struct KappaEstimate {
  double kappa = 0.0;
  double stderr = 0.0;
  std::size_t n = 0;
};

/// Sample mean of a * l(xi)^-m * (I + W)^m.
KappaEstimate kappa_from(std::span<const SinrSample> samples, const SmallTCoefficient& coeff,
                         const PathLossModel& path_loss, double noise);

/// Throws NoPolynomialDecay for pure log-normal fading.
KappaEstimate estimate_kappa(const Scenario& s, std::size_t n, unsigned threads = 0);

struct XiBin {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
};

/// E[I^order | lo <= xi < hi] by rejection over `reps` samples. Throws
/// BinStarved if fewer than 100 samples land in the bin.
MeanEstimate interference_moment(const Scenario& s, int order, XiBin bin, std::size_t reps,
                                 unsigned threads = 0);
MeanEstimate interference_moment_from(std::span<const SinrSample> samples, int order, XiBin bin);

/// Empirical P(I > level) for ascending levels.
std::vector<double> interference_tail_ccdf(const Scenario& s, std::span<const double> levels,
                                           std::size_t reps, unsigned threads = 0);
std::vector<double> interference_ccdf_from(std::span<const SinrSample> samples,
                                           std::span<const double> levels);

}  // namespace adglab
