// Copyright 2026 The adglab Authors
// SPDX-License-Identifier: Apache-2.0

#include "adglab/analytic_ppp.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "adglab/error.hpp"
#include "adglab/parallel.hpp"
#include "adglab/stats.hpp"

namespace adglab {

namespace {

void require_alpha(double alpha) {
  if (!(std::isfinite(alpha) && alpha > 2.0)) {
    throw Error(ErrorKind::InvalidModel, "path-loss exponent must exceed 2");
  }
}

// Boost 1.74 declares integrate() const but defines it non-const, so the
// integrator cannot be a const object.
boost::math::quadrature::tanh_sinh<double>& integrator() {
  thread_local boost::math::quadrature::tanh_sinh<double> instance;
  return instance;
}

template <typename F>
double tanh_sinh_01(F&& f) {
  double error = 0.0;
  double l1 = 0.0;
  const double value = integrator().integrate(f, 0.0, 1.0, 1e-13, &error, &l1);
  if (!(error <= 1e-10 * l1)) {
    throw Error(ErrorKind::QuadratureFailure, "PPP success integral");
  }
  return value;
}

// integral_a^inf du / (1 + u^p), p > 1
double tail_integral(double a, double p) {
  if (a >= 0.5) {
    // u = a / s; the integrand stays smooth on [0, 1] for a of order one or more
    const double ap = std::pow(a, p);
    return tanh_sinh_01([&](double s) {
      return s > 0.0 ? a * std::pow(s, p - 2.0) / (std::pow(s, p) + ap) : 0.0;
    });
  }
  // [a, 1] directly plus [1, inf) through u = 1 / s, so the peak near s = a
  // is not squeezed against the origin
  double error = 0.0;
  double l1 = 0.0;
  const double head =
      integrator().integrate([&](double u) { return 1.0 / (1.0 + std::pow(u, p)); }, a, 1.0, 1e-13,
                           &error, &l1);
  if (!(error <= 1e-10 * std::max(l1, 1e-300))) {
    throw Error(ErrorKind::QuadratureFailure, "PPP success integral");
  }
  const double tail = tanh_sinh_01([&](double s) {
    return s > 0.0 ? std::pow(s, p - 2.0) / (std::pow(s, p) + 1.0) : 0.0;
  });
  return head + tail;
}

}  // namespace

double ppp_interference_factor(double theta, double alpha) {
  require_alpha(alpha);
  if (!(theta > 0.0)) {
    throw Error(ErrorKind::InvalidModel, "threshold must be positive");
  }
  const double delta = 2.0 / alpha;
  return std::pow(theta, delta) * tail_integral(std::pow(theta, -delta), 1.0 / delta);
}

double ppp_success_rayleigh(double theta, double alpha) {
  return 1.0 / (1.0 + ppp_interference_factor(theta, alpha));
}

double ppp_outage_rayleigh(double theta, double alpha) {
  const double x = ppp_interference_factor(theta, alpha);
  return x / (1.0 + x);
}

double kappa_ppp_rayleigh(double alpha) {
  require_alpha(alpha);
  return 2.0 / (alpha - 2.0);
}

KappaEstimate kappa_ppp_general(double lambda, const PathLossModel& path_loss,
                                const FadingModel& fading, double noise, const Window& window,
                                std::size_t n, std::uint64_t seed, unsigned threads) {
  validate(window);
  validate(path_loss);
  const SmallTCoefficient coeff = small_t_coefficient(fading);
  if (!(lambda > 0.0) || n == 0) {
    throw Error(ErrorKind::InvalidModel, "kappa_ppp_general needs lambda > 0 and n > 0");
  }
  std::vector<double> values(n);
  const Point probe = window.centre();
  const ProcessModel ppp = Ppp{lambda};
  parallel_blocks(n, threads, [&](unsigned, std::size_t begin, std::size_t end) {
    std::vector<Point> points;
    for (std::size_t i = begin; i < end; ++i) {
      Rng rng = make_stream(seed, i);
      FadingSampler sampler(fading);
      // Stratum i of the contact-distance law, lambda*pi*r^2 ~ Exp(1).
      const double u = (static_cast<double>(i) + uniform01(rng)) / static_cast<double>(n);
      const double r2 = -std::log1p(-u) / (lambda * std::numbers::pi);
      sample_points(ppp, window, rng, points);
      double interference = 0.0;
      for (const Point& p : points) {
        const double d2 = window_distance_squared(p, probe, window);
        if (d2 >= r2) {
          interference += sampler(rng) * path_gain_sq(path_loss, d2);
        }
      }
      const double inv_gain = 1.0 / path_gain_sq(path_loss, r2);
      values[i] = coeff.a * std::pow(inv_gain * (interference + noise), coeff.m);
    }
  });
  const MeanEstimate m = mean_and_stderr(values);
  return {m.mean, m.stderr, m.n};
}

double invert_success(const std::function<double(double)>& success, double p_t, double theta_lo,
                      double theta_hi) {
  double lo = std::log(theta_lo);
  double hi = std::log(theta_hi);
  const double p_lo = success(theta_lo);
  const double p_hi = success(theta_hi);
  if (!(p_t <= p_lo && p_t >= p_hi)) {
    throw Error(ErrorKind::OutOfRange, "target probability outside the curve range");
  }
  // Relative tolerance on theta is an absolute tolerance on log(theta).
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (success(std::exp(mid)) > p_t) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::exp(0.5 * (lo + hi));
}

double invert_success(const SuccessCurve& curve, double p_t) {
  const std::size_t k = curve.theta_db.size();
  if (k < 2) {
    throw Error(ErrorKind::OutOfRange, "curve has fewer than two points");
  }
  const std::vector<double> p = isotonic_nonincreasing(curve.p_hat);
  if (!(p_t <= p.front() && p_t >= p.back())) {
    throw Error(ErrorKind::OutOfRange, "target probability outside the curve range");
  }
  // Flat runs at exactly p_t map to their midpoint.
  std::size_t first_eq = k;
  std::size_t last_eq = k;
  for (std::size_t i = 0; i < k; ++i) {
    if (p[i] == p_t) {
      if (first_eq == k) {
        first_eq = i;
      }
      last_eq = i;
    }
  }
  if (first_eq != k) {
    return db_to_linear(0.5 * (curve.theta_db[first_eq] + curve.theta_db[last_eq]));
  }
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (p[i] > p_t && p_t > p[i + 1]) {
      const double w = (p[i] - p_t) / (p[i] - p[i + 1]);
      return db_to_linear(curve.theta_db[i] + w * (curve.theta_db[i + 1] - curve.theta_db[i]));
    }
  }
  throw Error(ErrorKind::OutOfRange, "target probability not bracketed");
}

}  // namespace adglab
