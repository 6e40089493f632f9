// Copyright 2026 The adglab Authors
// SPDX-License-Identifier: Apache-2.0

#include "adglab/sinr.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <ostream>

#include "adglab/csv.hpp"
#include "adglab/error.hpp"
#include "adglab/parallel.hpp"

namespace adglab {

unsigned default_thread_count() {
  if (const char* env = std::getenv("ADGLAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) {
      return static_cast<unsigned>(v);
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void validate(const Scenario& s) {
  validate(s.window);
  validate(s.process);
  validate(s.path_loss);
  validate(s.fading);
  if (!(s.noise >= 0.0) || std::isnan(s.noise)) {
    throw Error(ErrorKind::InvalidModel, "noise power must be non-negative");
  }
  if (s.probes_per_pattern == 0) {
    throw Error(ErrorKind::InvalidModel, "probes per pattern must be at least 1");
  }
}

double noise_for_snr_db(const PathLossModel& path_loss, double snr_db) {
  const double snr = db_to_linear(snr_db);
  return path_loss.kind == PathLossKind::NonSingular ? 1.0 / (2.0 * snr) : 1.0 / snr;
}

namespace {

struct KernelScratch {
  std::vector<Point> points;
  std::vector<double> d2;
};

SinrSample sinr_kernel(std::span<const Point> points, const Window& window, const Point& probe,
                       const PathLossModel& path_loss, FadingSampler& fading, double noise,
                       Rng& rng, std::vector<double>& d2) {
  if (points.empty()) {
    throw Error(ErrorKind::EmptyPattern, "no base station in the window");
  }
  d2.resize(points.size());
  double best = std::numeric_limits<double>::infinity();
  std::size_t serving = 0;
  std::size_t ties = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double v = window_distance_squared(points[i], probe, window);
    d2[i] = v;
    if (v < best) {
      best = v;
      serving = i;
      ties = 1;
    } else if (v == best) {
      ++ties;
    }
  }
  if (ties > 1) {
    // Same rule as nearest_point: uniform over the tied indices in index order.
    std::uniform_int_distribution<std::size_t> pick(0, ties - 1);
    std::size_t target = pick(rng);
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (d2[i] == best && target-- == 0) {
        serving = i;
        break;
      }
    }
  }
  if (path_loss.kind == PathLossKind::Singular && best == 0.0) {
    throw Error(ErrorKind::SingularAtZero, "probe coincides with a base station");
  }

  SinrSample out;
  double interference = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double h = fading(rng);
    if (i == serving) {
      out.h_serving = h;
    } else {
      interference += h * path_gain_sq(path_loss, d2[i]);
    }
  }
  out.xi = std::sqrt(best);
  out.interference = interference;
  const double signal = out.h_serving * path_gain_sq(path_loss, best);
  const double denom = noise + interference;
  out.sinr = denom > 0.0 ? signal / denom : std::numeric_limits<double>::infinity();
  return out;
}

Point uniform_probe(const Window& w, Rng& rng) {
  std::uniform_real_distribution<double> ux(0.0, w.width);
  std::uniform_real_distribution<double> uy(0.0, w.height);
  const double x = ux(rng);
  return {x, uy(rng)};
}

}  // namespace

SinrSample sinr_at(std::span<const Point> points, const Window& window, const Point& probe,
                   const PathLossModel& path_loss, FadingSampler& fading, double noise, Rng& rng) {
  std::vector<double> d2;
  return sinr_kernel(points, window, probe, path_loss, fading, noise, rng, d2);
}

SinrSample sample_sinr(const Scenario& s, Rng& rng) {
  validate(s);
  FadingSampler fading(s.fading);
  std::vector<Point> points;
  sample_points(s.process, s.window, rng, points);
  std::vector<double> d2;
  return sinr_kernel(points, s.window, s.window.centre(), s.path_loss, fading, s.noise, rng, d2);
}

std::vector<SinrSample> simulate(const Scenario& s, std::size_t n, unsigned threads) {
  validate(s);
  std::vector<SinrSample> out(n);
  const std::size_t k = s.probes_per_pattern;
  const std::size_t patterns = (n + k - 1) / k;
  parallel_blocks(patterns, threads, [&](unsigned, std::size_t begin, std::size_t end) {
    KernelScratch scratch;
    for (std::size_t p = begin; p < end; ++p) {
      Rng rng = make_stream(s.seed, p);
      FadingSampler fading(s.fading);
      sample_points(s.process, s.window, rng, scratch.points);
      for (std::size_t q = 0; q < k && p * k + q < n; ++q) {
        const Point probe = q == 0 ? s.window.centre() : uniform_probe(s.window, rng);
        out[p * k + q] = sinr_kernel(scratch.points, s.window, probe, s.path_loss, fading,
                                     s.noise, rng, scratch.d2);
      }
    }
  });
  return out;
}

std::vector<double> theta_grid_db(double lo_db, double hi_db, double step_db) {
  if (!(step_db > 0.0) || !(hi_db >= lo_db)) {
    throw Error(ErrorKind::InvalidModel, "theta grid needs lo <= hi and a positive step");
  }
  std::vector<double> grid;
  const auto count = static_cast<std::size_t>(std::floor((hi_db - lo_db) / step_db + 1e-9)) + 1;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    grid.push_back(lo_db + static_cast<double>(i) * step_db);
  }
  return grid;
}

std::vector<double> default_theta_grid_db() { return theta_grid_db(-40.0, 20.0, 1.0); }

SuccessCurve success_curve_from(std::span<const SinrSample> samples,
                                std::span<const double> theta_db) {
  std::vector<double> sinr;
  sinr.reserve(samples.size());
  for (const SinrSample& x : samples) {
    sinr.push_back(x.sinr);
  }
  std::sort(sinr.begin(), sinr.end());

  SuccessCurve curve;
  curve.n = samples.size();
  std::vector<double> grid(theta_db.begin(), theta_db.end());
  std::sort(grid.begin(), grid.end());
  for (double t_db : grid) {
    const double theta = db_to_linear(t_db);
    const auto above = static_cast<std::size_t>(
        sinr.end() - std::upper_bound(sinr.begin(), sinr.end(), theta));
    const Interval ci = wilson_interval(above, curve.n);
    curve.theta_db.push_back(t_db);
    curve.successes.push_back(above);
    curve.p_hat.push_back(curve.n ? static_cast<double>(above) / static_cast<double>(curve.n) : 0.0);
    curve.ci_lo.push_back(ci.lo);
    curve.ci_hi.push_back(ci.hi);
  }
  return curve;
}

SuccessCurve estimate_success_curve(const Scenario& s, std::span<const double> theta_db,
                                    std::size_t n, unsigned threads) {
  const auto samples = simulate(s, n, threads);
  return success_curve_from(samples, theta_db);
}

void write_curve_csv(std::ostream& os, const SuccessCurve& curve) {
  os << "theta_db,p_hat,ci_lo,ci_hi,n\n";
  for (std::size_t i = 0; i < curve.theta_db.size(); ++i) {
    os << format_double(curve.theta_db[i]) << ',' << format_double(curve.p_hat[i]) << ','
       << format_double(curve.ci_lo[i]) << ',' << format_double(curve.ci_hi[i]) << ',' << curve.n
       << '\n';
  }
}

KappaEstimate kappa_from(std::span<const SinrSample> samples, const SmallTCoefficient& coeff,
                         const PathLossModel& path_loss, double noise) {
  RunningMoments acc;
  for (const SinrSample& x : samples) {
    const double inv_gain = 1.0 / path_gain_sq(path_loss, x.xi * x.xi);
    acc.push(coeff.a * std::pow(inv_gain * (x.interference + noise), coeff.m));
  }
  return {acc.mean(), acc.stderr_of_mean(), acc.count()};
}

KappaEstimate estimate_kappa(const Scenario& s, std::size_t n, unsigned threads) {
  const SmallTCoefficient coeff = small_t_coefficient(s.fading);
  const auto samples = simulate(s, n, threads);
  return kappa_from(samples, coeff, s.path_loss, s.noise);
}

MeanEstimate interference_moment_from(std::span<const SinrSample> samples, int order, XiBin bin) {
  if (order < 1 || order > 4) {
    throw Error(ErrorKind::InvalidModel, "interference moment order must be 1..4");
  }
  RunningMoments acc;
  for (const SinrSample& x : samples) {
    if (x.xi >= bin.lo && x.xi < bin.hi) {
      acc.push(std::pow(x.interference, order));
    }
  }
  if (acc.count() < 100) {
    throw Error(ErrorKind::BinStarved,
                std::to_string(acc.count()) + " samples in the contact-distance bin");
  }
  return {acc.mean(), acc.stderr_of_mean(), acc.count()};
}

MeanEstimate interference_moment(const Scenario& s, int order, XiBin bin, std::size_t reps,
                                 unsigned threads) {
  const auto samples = simulate(s, reps, threads);
  return interference_moment_from(samples, order, bin);
}

std::vector<double> interference_ccdf_from(std::span<const SinrSample> samples,
                                           std::span<const double> levels) {
  std::vector<double> values;
  values.reserve(samples.size());
  for (const SinrSample& x : samples) {
    values.push_back(x.interference);
  }
  std::sort(values.begin(), values.end());
  std::vector<double> ccdf;
  ccdf.reserve(levels.size());
  const double n = static_cast<double>(values.size());
  for (double level : levels) {
    const auto above = values.end() - std::upper_bound(values.begin(), values.end(), level);
    ccdf.push_back(static_cast<double>(above) / n);
  }
  return ccdf;
}

std::vector<double> interference_tail_ccdf(const Scenario& s, std::span<const double> levels,
                                           std::size_t reps, unsigned threads) {
  const auto samples = simulate(s, reps, threads);
  return interference_ccdf_from(samples, levels);
}

}  // namespace adglab
