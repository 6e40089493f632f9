// Copyright 2026 The adglab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <random>
#include <string>
#include <variant>

#include "adglab/random.hpp"

namespace adglab {

enum class PathLossKind { NonSingular, Singular };

/// l(d) = 1 / (1 + d^alpha) (non-singular) or d^-alpha (singular), alpha > 2.
struct PathLossModel {
  PathLossKind kind = PathLossKind::NonSingular;
  double alpha = 4.0;
};

void validate(const PathLossModel& model);
std::string path_loss_name(const PathLossModel& model);

/// d^alpha from a squared distance, with cheap paths for common exponents.
inline double distance_power(double d2, double alpha) noexcept {
  if (alpha == 4.0) {
    return d2 * d2;
  }
  if (alpha == 3.0) {
    return d2 * std::sqrt(d2);
  }
  if (alpha == 2.0) {
    return d2;
  }
  return std::exp(0.5 * alpha * std::log(d2));
}

/// Gain from a squared distance. No validation; used by the SINR kernel.
inline double path_gain_sq(const PathLossModel& model, double d2) noexcept {
  const double p = distance_power(d2, model.alpha);
  return model.kind == PathLossKind::NonSingular ? 1.0 / (1.0 + p) : 1.0 / p;
}

/// Throws SingularAtZero for the singular law at d = 0.
double path_loss(const PathLossModel& model, double d);

struct Rayleigh {};
/// Power fading gamma(m, 1/m), unit mean.
struct Nakagami {
  double m = 1.0;
};
/// Shadowing 10^(X/10), X ~ N(0, sigma_db^2). Left unnormalized.
struct LogNormal {
  double sigma_db = 2.0;
};
/// Independent product of Nakagami(m) and LogNormal(sigma_db).
struct Composite {
  double m = 1.0;
  double sigma_db = 2.0;
};

using FadingModel = std::variant<Rayleigh, Nakagami, LogNormal, Composite>;

void validate(const FadingModel& model);
std::string fading_name(const FadingModel& model);

/// E[h].
double fading_mean(const FadingModel& model);

/// E[10^(X/10)] for X ~ N(0, sigma_db^2).
double lognormal_mean(double sigma_db);

/// Stateful sampler: construct once per random stream.
class FadingSampler {
 public:
  explicit FadingSampler(const FadingModel& model);

  double operator()(Rng& rng) {
    switch (kind_) {
      case Kind::Exponential:
        return -std::log(1.0 - uniform01(rng));
      case Kind::Gamma:
        return gamma_(rng);
      case Kind::Shadow:
        return std::exp(shadow_scale_ * normal_(rng));
      case Kind::GammaShadow: {
        const double g = gamma_(rng);
        return g * std::exp(shadow_scale_ * normal_(rng));
      }
      case Kind::ExponentialShadow: {
        const double g = -std::log(1.0 - uniform01(rng));
        return g * std::exp(shadow_scale_ * normal_(rng));
      }
    }
    return 0.0;
  }

 private:
  enum class Kind { Exponential, Gamma, Shadow, GammaShadow, ExponentialShadow };
  Kind kind_ = Kind::Exponential;
  std::gamma_distribution<double> gamma_{1.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
  double shadow_scale_ = 0.0;  // ln(10)/10 * sigma_db
};

double sample_fading(const FadingModel& model, Rng& rng);

/// F_h(t). The composite CDF is an adaptive quadrature over the shadowing
/// variable; throws QuadratureFailure if relative tolerance 1e-6 is missed.
double fading_cdf(const FadingModel& model, double t);

/// F_h(t) ~ a t^m as t -> 0.
struct SmallTCoefficient {
  double a = 1.0;
  double m = 1.0;
};

/// Throws NoPolynomialDecay for pure log-normal shadowing.
SmallTCoefficient small_t_coefficient(const FadingModel& model);

}  // namespace adglab
