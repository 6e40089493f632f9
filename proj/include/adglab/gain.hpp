// Copyright 2026 The adglab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "adglab/analytic_ppp.hpp"
#include "adglab/sinr.hpp"
#include "adglab/stats.hpp"

namespace adglab {

enum class AdgMethod { KappaRatio, HorizontalShift };

std::string to_string(AdgMethod method);

/// Gains are linear ratios; dB conversion happens only at output.
struct AdgEstimate {
  double g_hat = 1.0;
  AdgMethod method = AdgMethod::KappaRatio;
  double stderr = 0.0;
  double kappa = std::numeric_limits<double>::quiet_NaN();
  double kappa_ppp = std::numeric_limits<double>::quiet_NaN();
  double m = 1.0;
};

using SuccessFunction = std::function<double(double)>;

/// P_c^-1(p_t) / P_ref^-1(p_t). Throws OutOfRange if p_t is not covered.
double deployment_gain(const SuccessCurve& curve, const SuccessCurve& ref, double p_t);
double deployment_gain(const SuccessCurve& curve, const SuccessFunction& ref, double p_t);

/// (kappa_ppp / kappa)^(1/m) with a delta-method standard error.
AdgEstimate adg_from_kappas(const KappaEstimate& kappa, const KappaEstimate& kappa_ppp, double m);

/// True when the closed form 2/(alpha-2) is the exact PPP reference: Rayleigh
/// (or Nakagami with m = 1), singular path loss and no noise.
bool closed_form_reference_applies(const Scenario& s);

/// Reference kappa for a PPP of intensity `ref_lambda` under the scenario's
/// channel: closed form when it applies, otherwise kappa_ppp_general on a
/// stream derived from the scenario seed.
KappaEstimate reference_kappa(const Scenario& s, double ref_lambda, std::size_t n,
                              unsigned threads = 0);

/// ADG from kappa of `s` and of the PPP reference of intensity `ref_lambda`.
AdgEstimate adg_from_kappa(const Scenario& s, double ref_lambda, std::size_t n,
                           unsigned threads = 0);

struct ProbabilityWindow {
  double lo = 0.99;
  double hi = 0.9999;
};

/// Median deployment gain over target probabilities in `window` (21 points,
/// log-spaced in outage). The standard error combines the spread across the
/// window with the binomial error of the empirical curves at the window's
/// geometric-mean outage, propagated through the slope 10m dB/decade.
AdgEstimate adg_horizontal_shift(const SuccessCurve& curve, const SuccessCurve& ref,
                                 ProbabilityWindow window = {}, double m = 1.0);
AdgEstimate adg_horizontal_shift(const SuccessCurve& curve, const SuccessFunction& ref,
                                 ProbabilityWindow window = {}, double m = 1.0);

struct SlopeFit {
  double db_per_decade = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

/// Least-squares slope of 10 log10(1 - p_hat) against theta_dB over
/// [lo_db, hi_db], times ten. Empirical points enter only when their outage
/// interval excludes zero. Throws InsufficientPoints if fewer than 5 qualify.
SlopeFit outage_slope(const SuccessCurve& curve, double lo_db, double hi_db);

/// Curve whose p_hat is `success` on the grid, with no sample count.
SuccessCurve analytic_curve(const SuccessFunction& success, std::span<const double> theta_db);

MeanEstimate ergodic_rate_from(std::span<const SinrSample> samples);
/// E[ln(1 + SINR)] in nats.
MeanEstimate ergodic_rate_mc(const Scenario& s, std::size_t n, unsigned threads = 0);

/// integral_0^inf P_c^PPP((e^x - 1) / g_hat) dx for the closed-form PPP curve.
double ergodic_rate_from_adg(double g_hat, double alpha);

MeanEstimate mean_sinr_from(std::span<const SinrSample> samples);
/// Throws SingularMeanDiverges for singular path loss.
MeanEstimate mean_sinr_mc(const Scenario& s, std::size_t n, unsigned threads = 0);

struct AdgRow {
  std::string process;
  std::string fading;
  double alpha = 4.0;
  AdgEstimate estimate;
};

/// CSV header `process,fading,alpha,method,g_hat,g_hat_db,stderr,kappa,kappa_ppp`.
void write_adg_csv(std::ostream& os, std::span<const AdgRow> rows);

}  // namespace adglab
