// Copyright 2026 The adglab Authors
// SPDX-License-Identifier: Apache-2.0

#include "adglab/propagation.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

#include "adglab/csv.hpp"
#include "adglab/error.hpp"

namespace adglab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kDbToNeper = std::numbers::ln10 / 10.0;
constexpr double kQuadratureRelTol = 1e-6;

std::string format_param(double v) { return format_double(v); }

double standard_normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double nakagami_cdf(double m, double t) {
  return boost::math::gamma_p(m, m * t);
}

// Integrates fn(z) * phi(z) over the standard normal shadowing variable.
// The window covers +-8 standard deviations, extended downward by `shift`
// where an exp(-shift * z) factor moves the integrand mass.
template <typename Fn>
double integrate_over_shadowing(Fn&& fn, double shift, const char* what) {
  auto integrand = [&](double z) { return fn(z) * standard_normal_pdf(z); };
  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, -8.0 - shift, 8.0, 20, 1e-10, &error, &l1);
  if (!(error <= kQuadratureRelTol * std::fabs(value)) && value != 0.0) {
    throw Error(ErrorKind::QuadratureFailure, what);
  }
  return value;
}

}  // namespace

void validate(const PathLossModel& model) {
  if (!(std::isfinite(model.alpha) && model.alpha > 2.0)) {
    throw Error(ErrorKind::InvalidModel, "path-loss exponent must exceed 2");
  }
}

std::string path_loss_name(const PathLossModel& model) {
  return model.kind == PathLossKind::NonSingular ? "nonsingular" : "singular";
}

double path_loss(const PathLossModel& model, double d) {
  validate(model);
  if (!(d >= 0.0)) {
    throw Error(ErrorKind::InvalidModel, "distance must be non-negative");
  }
  if (model.kind == PathLossKind::Singular && d == 0.0) {
    throw Error(ErrorKind::SingularAtZero, "singular path loss at distance 0");
  }
  return path_gain_sq(model, d * d);
}

void validate(const FadingModel& model) {
  auto positive = [](double v, const char* what) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw Error(ErrorKind::InvalidModel, std::string(what) + " must be finite and positive");
    }
  };
  std::visit(overloaded{
                 [](const Rayleigh&) {},
                 [&](const Nakagami& f) { positive(f.m, "Nakagami m"); },
                 [&](const LogNormal& f) { positive(f.sigma_db, "shadowing sigma"); },
                 [&](const Composite& f) {
                   positive(f.m, "Nakagami m");
                   positive(f.sigma_db, "shadowing sigma");
                 },
             },
             model);
}

std::string fading_name(const FadingModel& model) {
  return std::visit(overloaded{
                        [](const Rayleigh&) { return std::string("rayleigh"); },
                        [](const Nakagami& f) { return "nakagami(m=" + format_param(f.m) + ")"; },
                        [](const LogNormal& f) {
                          return "lognormal(sigma=" + format_param(f.sigma_db) + ")";
                        },
                        [](const Composite& f) {
                          return "composite(m=" + format_param(f.m) +
                                 ";sigma=" + format_param(f.sigma_db) + ")";
                        },
                    },
                    model);
}

double lognormal_mean(double sigma_db) {
  const double s = kDbToNeper * sigma_db;
  return std::exp(0.5 * s * s);
}

double fading_mean(const FadingModel& model) {
  return std::visit(overloaded{
                        [](const Rayleigh&) { return 1.0; },
                        [](const Nakagami&) { return 1.0; },
                        [](const LogNormal& f) { return lognormal_mean(f.sigma_db); },
                        [](const Composite& f) { return lognormal_mean(f.sigma_db); },
                    },
                    model);
}

FadingSampler::FadingSampler(const FadingModel& model) {
  validate(model);
  std::visit(overloaded{
                 [&](const Rayleigh&) { kind_ = Kind::Exponential; },
                 [&](const Nakagami& f) {
                   if (f.m == 1.0) {
                     kind_ = Kind::Exponential;
                   } else {
                     kind_ = Kind::Gamma;
                     gamma_ = std::gamma_distribution<double>(f.m, 1.0 / f.m);
                   }
                 },
                 [&](const LogNormal& f) {
                   kind_ = Kind::Shadow;
                   shadow_scale_ = kDbToNeper * f.sigma_db;
                 },
                 [&](const Composite& f) {
                   kind_ = f.m == 1.0 ? Kind::ExponentialShadow : Kind::GammaShadow;
                   gamma_ = std::gamma_distribution<double>(f.m, 1.0 / f.m);
                   shadow_scale_ = kDbToNeper * f.sigma_db;
                 },
             },
             model);
}

double sample_fading(const FadingModel& model, Rng& rng) {
  FadingSampler sampler(model);
  return sampler(rng);
}

double fading_cdf(const FadingModel& model, double t) {
  validate(model);
  if (!(t >= 0.0)) {
    throw Error(ErrorKind::InvalidModel, "fading CDF argument must be non-negative");
  }
  if (t == 0.0) {
    return 0.0;
  }
  return std::visit(
      overloaded{
          [&](const Rayleigh&) { return -std::expm1(-t); },
          [&](const Nakagami& f) { return nakagami_cdf(f.m, t); },
          [&](const LogNormal& f) {
            return 0.5 * std::erfc(-10.0 * std::log10(t) / (f.sigma_db * std::numbers::sqrt2));
          },
          [&](const Composite& f) {
            const double s = kDbToNeper * f.sigma_db;
            // F_h(t) = E[F_nakagami(t / u)], u = exp(s z)
            return integrate_over_shadowing(
                [&](double z) { return nakagami_cdf(f.m, t * std::exp(-s * z)); }, f.m * s,
                "composite fading CDF");
          },
      },
      model);
}

SmallTCoefficient small_t_coefficient(const FadingModel& model) {
  validate(model);
  auto nakagami_a = [](double m) { return std::pow(m, m - 1.0) / std::tgamma(m); };
  return std::visit(
      overloaded{
          [&](const Rayleigh&) { return SmallTCoefficient{1.0, 1.0}; },
          [&](const Nakagami& f) { return SmallTCoefficient{nakagami_a(f.m), f.m}; },
          [&](const LogNormal&) -> SmallTCoefficient {
            throw Error(ErrorKind::NoPolynomialDecay,
                        "log-normal CDF vanishes faster than any power at 0");
          },
          [&](const Composite& f) {
            const double s = kDbToNeper * f.sigma_db;
            // a = m^(m-1)/Gamma(m) * E[u^-m], integrated in the log domain
            const double moment = integrate_over_shadowing(
                [&](double z) { return std::exp(-f.m * s * z); }, f.m * s,
                "composite small-t coefficient");
            return SmallTCoefficient{nakagami_a(f.m) * moment, f.m};
          },
      },
      model);
}

}  // namespace adglab
