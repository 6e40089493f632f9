// Copyright 2026 The adglab Authors
// SPDX-License-Identifier: Apache-2.0

#include "adglab/gain.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <ostream>
#include <variant>

#include "adglab/csv.hpp"
#include "adglab/error.hpp"

namespace adglab {

std::string to_string(AdgMethod method) {
  return method == AdgMethod::KappaRatio ? "kappa_ratio" : "horizontal_shift";
}

double deployment_gain(const SuccessCurve& curve, const SuccessCurve& ref, double p_t) {
  return invert_success(curve, p_t) / invert_success(ref, p_t);
}

double deployment_gain(const SuccessCurve& curve, const SuccessFunction& ref, double p_t) {
  return invert_success(curve, p_t) / invert_success(ref, p_t);
}

AdgEstimate adg_from_kappas(const KappaEstimate& kappa, const KappaEstimate& kappa_ppp, double m) {
  if (!(kappa.kappa > 0.0 && kappa_ppp.kappa > 0.0 && m > 0.0)) {
    throw Error(ErrorKind::InvalidModel, "kappa values and order must be positive");
  }
  AdgEstimate est;
  est.method = AdgMethod::KappaRatio;
  est.kappa = kappa.kappa;
  est.kappa_ppp = kappa_ppp.kappa;
  est.m = m;
  est.g_hat = std::pow(kappa_ppp.kappa / kappa.kappa, 1.0 / m);
  const double rel_a = kappa.stderr / kappa.kappa;
  const double rel_b = kappa_ppp.stderr / kappa_ppp.kappa;
  est.stderr = est.g_hat / m * std::sqrt(rel_a * rel_a + rel_b * rel_b);
  return est;
}

bool closed_form_reference_applies(const Scenario& s) {
  const bool rayleigh = std::holds_alternative<Rayleigh>(s.fading) ||
                        (std::holds_alternative<Nakagami>(s.fading) &&
                         std::get<Nakagami>(s.fading).m == 1.0);
  return rayleigh && s.path_loss.kind == PathLossKind::Singular && s.noise == 0.0;
}

KappaEstimate reference_kappa(const Scenario& s, double ref_lambda, std::size_t n,
                              unsigned threads) {
  if (closed_form_reference_applies(s)) {
    return {kappa_ppp_rayleigh(s.path_loss.alpha), 0.0, 0};
  }
  return kappa_ppp_general(ref_lambda, s.path_loss, s.fading, s.noise, s.window, n,
                           stream_seed(s.seed, 0x7265666572656e63ULL), threads);
}

AdgEstimate adg_from_kappa(const Scenario& s, double ref_lambda, std::size_t n, unsigned threads) {
  const SmallTCoefficient coeff = small_t_coefficient(s.fading);
  const KappaEstimate kappa = estimate_kappa(s, n, threads);
  const KappaEstimate kappa_ppp = reference_kappa(s, ref_lambda, n, threads);
  return adg_from_kappas(kappa, kappa_ppp, coeff.m);
}

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size();
  return k % 2 ? v[k / 2] : 0.5 * (v[k / 2 - 1] + v[k / 2]);
}

std::vector<double> window_targets(ProbabilityWindow window) {
  if (!(window.lo > 0.0 && window.lo < window.hi && window.hi < 1.0)) {
    throw Error(ErrorKind::InvalidModel, "probability window must satisfy 0 < lo < hi < 1");
  }
  constexpr int kPoints = 21;
  const double q_lo = std::log(1.0 - window.lo);
  const double q_hi = std::log(1.0 - window.hi);
  std::vector<double> targets;
  for (int i = 0; i < kPoints; ++i) {
    const double q = std::exp(q_lo + (q_hi - q_lo) * i / (kPoints - 1));
    targets.push_back(1.0 - q);
  }
  return targets;
}

// Relative error of theta at outage q from an n-sample curve:
// d(log q) = m d(log theta) and var(log q_hat) ~ (1 - q) / (n q).
double binomial_rel_error(std::size_t n, double q, double m) {
  if (n == 0) {
    return 0.0;
  }
  return std::sqrt((1.0 - q) / (static_cast<double>(n) * q)) / m;
}

template <typename Ref>
AdgEstimate shift_estimate(const SuccessCurve& curve, const Ref& ref, std::size_t ref_n,
                           ProbabilityWindow window, double m) {
  std::vector<double> gains;
  for (double p_t : window_targets(window)) {
    gains.push_back(deployment_gain(curve, ref, p_t));
  }
  AdgEstimate est;
  est.method = AdgMethod::HorizontalShift;
  est.m = m;
  est.g_hat = median(gains);
  std::vector<double> dev;
  for (double g : gains) {
    dev.push_back(std::fabs(g - est.g_hat));
  }
  const double spread = 1.4826 * median(dev);
  const double q_mid = std::sqrt((1.0 - window.lo) * (1.0 - window.hi));
  const double rel_a = binomial_rel_error(curve.n, q_mid, m);
  const double rel_b = binomial_rel_error(ref_n, q_mid, m);
  const double sampling = est.g_hat * std::sqrt(rel_a * rel_a + rel_b * rel_b);
  est.stderr = std::sqrt(spread * spread + sampling * sampling);
  return est;
}

}  // namespace

AdgEstimate adg_horizontal_shift(const SuccessCurve& curve, const SuccessCurve& ref,
                                 ProbabilityWindow window, double m) {
  return shift_estimate(curve, ref, ref.n, window, m);
}

AdgEstimate adg_horizontal_shift(const SuccessCurve& curve, const SuccessFunction& ref,
                                 ProbabilityWindow window, double m) {
  return shift_estimate(curve, ref, 0, window, m);
}

SlopeFit outage_slope(const SuccessCurve& curve, double lo_db, double hi_db) {
  std::vector<double> x, y;
  const bool empirical = curve.n > 0 && curve.ci_hi.size() == curve.theta_db.size();
  for (std::size_t i = 0; i < curve.theta_db.size(); ++i) {
    const double t = curve.theta_db[i];
    if (t < lo_db || t > hi_db) {
      continue;
    }
    const double q = 1.0 - curve.p_hat[i];
    // empirical points need an outage interval that excludes zero
    if (!(q > 0.0) || (empirical && !(curve.ci_hi[i] < 1.0))) {
      continue;
    }
    x.push_back(t);
    y.push_back(10.0 * std::log10(q));
  }
  if (x.size() < 5) {
    throw Error(ErrorKind::InsufficientPoints,
                std::to_string(x.size()) + " usable grid points in the fit range");
  }
  const LinearFit fit = fit_line(x, y);
  return {10.0 * fit.slope, fit.r_squared, x.size()};
}

SuccessCurve analytic_curve(const SuccessFunction& success, std::span<const double> theta_db) {
  SuccessCurve curve;
  for (double t : theta_db) {
    const double p = success(db_to_linear(t));
    curve.theta_db.push_back(t);
    curve.p_hat.push_back(p);
    curve.ci_lo.push_back(p);
    curve.ci_hi.push_back(p);
  }
  return curve;
}

MeanEstimate ergodic_rate_from(std::span<const SinrSample> samples) {
  RunningMoments acc;
  for (const SinrSample& x : samples) {
    acc.push(std::log1p(x.sinr));
  }
  return {acc.mean(), acc.stderr_of_mean(), acc.count()};
}

MeanEstimate ergodic_rate_mc(const Scenario& s, std::size_t n, unsigned threads) {
  const auto samples = simulate(s, n, threads);
  return ergodic_rate_from(samples);
}

double ergodic_rate_from_adg(double g_hat, double alpha) {
  if (!(g_hat > 0.0)) {
    throw Error(ErrorKind::InvalidModel, "gain must be positive");
  }
  boost::math::quadrature::exp_sinh<double> integrator;
  auto integrand = [&](double x) {
    const double theta = std::expm1(x) / g_hat;
    return theta > 0.0 ? ppp_success_rayleigh(theta, alpha) : 1.0;
  };
  double error = 0.0;
  double l1 = 0.0;
  const double value = integrator.integrate(integrand, 0.0,
                                            std::numeric_limits<double>::infinity(), 1e-9, &error,
                                            &l1);
  if (!(error <= 1e-6 * value)) {
    throw Error(ErrorKind::QuadratureFailure, "ergodic rate integral");
  }
  return value;
}

MeanEstimate mean_sinr_from(std::span<const SinrSample> samples) {
  RunningMoments acc;
  for (const SinrSample& x : samples) {
    acc.push(x.sinr);
  }
  return {acc.mean(), acc.stderr_of_mean(), acc.count()};
}

MeanEstimate mean_sinr_mc(const Scenario& s, std::size_t n, unsigned threads) {
  if (s.path_loss.kind == PathLossKind::Singular) {
    throw Error(ErrorKind::SingularMeanDiverges,
                "mean SINR is infinite under singular path loss");
  }
  const auto samples = simulate(s, n, threads);
  return mean_sinr_from(samples);
}

void write_adg_csv(std::ostream& os, std::span<const AdgRow> rows) {
  os << "process,fading,alpha,method,g_hat,g_hat_db,stderr,kappa,kappa_ppp\n";
  for (const AdgRow& r : rows) {
    const AdgEstimate& e = r.estimate;
    os << r.process << ',' << r.fading << ',' << format_double(r.alpha) << ','
       << to_string(e.method) << ',' << format_double(e.g_hat) << ','
       << format_double(linear_to_db(e.g_hat)) << ',' << format_double(e.stderr) << ','
       << format_double(e.kappa) << ',' << format_double(e.kappa_ppp) << '\n';
  }
}

}  // namespace adglab
