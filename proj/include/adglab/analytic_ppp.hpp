// Copyright 2026 The adglab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>

#include "adglab/geometry.hpp"
#include "adglab/propagation.hpp"
#include "adglab/sinr.hpp"

namespace adglab {

/// PPP reference for Rayleigh fading, singular path loss and no noise.
struct PppBaseline {
  double lambda = 0.1;
  double alpha = 4.0;

  double delta() const noexcept { return 2.0 / alpha; }
};

/// theta^delta * integral_{theta^-delta}^inf du / (1 + u^(1/delta)), so that
/// P_c = 1 / (1 + x). Evaluated by tanh-sinh quadrature.
double ppp_interference_factor(double theta, double alpha);

/// P(SINR > theta) for the PPP baseline. Requires theta > 0, alpha > 2.
double ppp_success_rayleigh(double theta, double alpha);

/// 1 - ppp_success_rayleigh, without cancellation at small theta.
double ppp_outage_rayleigh(double theta, double alpha);

/// lim (1 - P_c(theta)) / theta = 2 / (alpha - 2).
double kappa_ppp_rayleigh(double alpha);

/// kappa for a PPP of intensity `lambda` under any fading with a small-t
/// coefficient. The contact distance is drawn by stratified inversion of the
/// exact density 2 lambda pi r exp(-lambda pi r^2); the interference beyond
/// it comes from a PPP realization on `window` with the inner disk removed.
KappaEstimate kappa_ppp_general(double lambda, const PathLossModel& path_loss,
                                const FadingModel& fading, double noise, const Window& window,
                                std::size_t n, std::uint64_t seed, unsigned threads = 0);

/// theta with success(theta) = p_t, by bisection in log(theta) to relative
/// tolerance 1e-9. `success` must be non-increasing. Throws OutOfRange if
/// p_t is not bracketed by [theta_lo, theta_hi].
double invert_success(const std::function<double(double)>& success, double p_t,
                      double theta_lo = 1e-12, double theta_hi = 1e12);

/// Inverse of an empirical curve: isotonic fit, then linear interpolation in
/// (theta_dB, P_c). Returns linear theta; throws OutOfRange outside the curve.
double invert_success(const SuccessCurve& curve, double p_t);

/// Closed-form PPP curve as a callable.
struct AnalyticPppCurve {
  double alpha = 4.0;
  double operator()(double theta) const { return ppp_success_rayleigh(theta, alpha); }
};

}  // namespace adglab
