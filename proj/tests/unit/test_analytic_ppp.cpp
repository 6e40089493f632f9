// Copyright 2026 The adglab Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "adglab/analytic_ppp.hpp"
#include "adglab/error.hpp"
#include "adglab/gain.hpp"

namespace adglab {
namespace {

double closed_form(double theta) {
  const double r = std::sqrt(theta);
  return 1.0 / (1.0 + r * std::atan(r));
}

TEST(PppSuccess, Examples) {
  EXPECT_NEAR(ppp_success_rayleigh(1.0, 4.0), 0.5600991535115574, 1e-12);
  EXPECT_NEAR(ppp_success_rayleigh(0.01, 4.0), 0.9901314928320367, 1e-12);
  EXPECT_GT(ppp_success_rayleigh(1e-12, 4.0), 1.0 - 1e-5);
  EXPECT_LT(ppp_success_rayleigh(1e6, 4.0), 1e-3);
}

TEST(PppSuccess, MatchesAlphaFourClosedForm) {
  for (int i = 0; i <= 60; ++i) {
    const double theta = std::pow(10.0, -4.0 + 6.0 * i / 60.0);
    ASSERT_NEAR(ppp_success_rayleigh(theta, 4.0), closed_form(theta), 1e-9) << theta;
  }
}

TEST(PppSuccess, SmoothAcrossTheQuadratureSplit) {
  for (double alpha : {2.5, 3.0, 4.0, 4.5}) {
    for (double theta : {0.999999999, 1.0 - 1e-15, 1.0, 1.0 + 1e-15, 1.000000001}) {
      const double p = ppp_success_rayleigh(theta, alpha);
      EXPECT_NEAR(p, ppp_success_rayleigh(1.0, alpha), 1e-8) << alpha << " " << theta;
    }
    for (double e = -14.0; e <= 8.0; e += 0.05) {
      ASSERT_NO_THROW(ppp_success_rayleigh(std::pow(10.0, e), alpha)) << alpha << " 1e" << e;
    }
  }
}

TEST(PppSuccess, OtherExponent) {
  // scipy.integrate.quad of the defining integral at alpha = 3, theta = 1
  EXPECT_NEAR(ppp_success_rayleigh(1.0, 3.0), 0.37434989042936173, 1e-9);
}

TEST(PppSuccess, OutageAvoidsCancellation) {
  for (double theta : {1e-12, 1e-8, 1e-4, 1.0}) {
    const double out = ppp_outage_rayleigh(theta, 4.0);
    const double r = std::sqrt(theta);
    const double x = r * std::atan(r);
    EXPECT_NEAR(out, x / (1.0 + x), 1e-9 * x) << theta;
  }
}

TEST(PppKappa, ClosedForm) {
  EXPECT_DOUBLE_EQ(kappa_ppp_rayleigh(4.0), 1.0);
  EXPECT_DOUBLE_EQ(kappa_ppp_rayleigh(3.0), 2.0);
  EXPECT_NEAR(kappa_ppp_rayleigh(100.0), 0.020408163265306121, 1e-15);
  EXPECT_THROW(kappa_ppp_rayleigh(2.0), Error);
}

TEST(PppKappa, SmallThetaLimit) {
  for (double alpha : {2.5, 3.0, 3.5, 4.0, 4.5}) {
    const double ratio = ppp_outage_rayleigh(1e-4, alpha) / 1e-4;
    EXPECT_NEAR(ratio / kappa_ppp_rayleigh(alpha), 1.0, 0.01) << alpha;
  }
}

TEST(PppKappaGeneral, SingularRayleighMatchesClosedForm) {
  const KappaEstimate k = kappa_ppp_general(0.1, {PathLossKind::Singular, 4.0}, Rayleigh{}, 0.0,
                                            Window{}, 20000, 1);
  EXPECT_NEAR(k.kappa, 1.0, 0.05);
}

TEST(PppKappaGeneral, NonSingularAgreesWithDirectSimulation) {
  const PathLossModel pl{PathLossKind::NonSingular, 4.0};
  const KappaEstimate a = kappa_ppp_general(0.1, pl, Rayleigh{}, 0.0, Window{}, 20000, 2);
  Scenario s;
  s.seed = 3;
  const KappaEstimate b = estimate_kappa(s, 20000);
  EXPECT_NEAR(a.kappa, b.kappa, 3.0 * std::hypot(a.stderr, b.stderr));
}

TEST(PppKappaGeneral, NakagamiTwoIsFinite) {
  for (double alpha : {3.0, 4.0}) {
    const KappaEstimate k = kappa_ppp_general(0.1, {PathLossKind::NonSingular, alpha}, Nakagami{2},
                                              0.0, Window{}, 5000, 4);
    EXPECT_TRUE(std::isfinite(k.kappa));
    EXPECT_GT(k.kappa, 0.0);
  }
}

TEST(PppKappaGeneral, NoiseEffectIsSmall) {
  const PathLossModel pl{PathLossKind::NonSingular, 4.0};
  const KappaEstimate quiet = kappa_ppp_general(0.1, pl, Rayleigh{}, 0.0, Window{}, 20000, 5);
  const KappaEstimate noisy = kappa_ppp_general(0.1, pl, Rayleigh{}, noise_for_snr_db(pl, 20.0),
                                                Window{}, 20000, 5);
  EXPECT_LT(std::fabs(noisy.kappa / quiet.kappa - 1.0), 0.15);
}

TEST(PppKappaGeneral, LogNormalRejected) {
  try {
    kappa_ppp_general(0.1, {}, LogNormal{2}, 0.0, Window{}, 100, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoPolynomialDecay);
  }
}

TEST(PppKappaGeneral, Deterministic) {
  const KappaEstimate a = kappa_ppp_general(0.1, {}, Nakagami{2}, 0.0, Window{}, 500, 9, 1);
  const KappaEstimate b = kappa_ppp_general(0.1, {}, Nakagami{2}, 0.0, Window{}, 500, 9, 3);
  EXPECT_EQ(a.kappa, b.kappa);
  EXPECT_EQ(a.stderr, b.stderr);
}

TEST(Invert, AnalyticExamples) {
  const AnalyticPppCurve f{4.0};
  EXPECT_NEAR(invert_success(f, 0.5600991535115574), 1.0, 1e-6);
  EXPECT_NEAR(invert_success(f, 0.9901314928320367), 0.01, 1e-8);
}

TEST(Invert, AnalyticRoundTrip) {
  const AnalyticPppCurve f{4.0};
  for (int i = 0; i <= 40; ++i) {
    const double theta = std::pow(10.0, -3.0 + 4.0 * i / 40.0);
    ASSERT_NEAR(invert_success(f, f(theta)) / theta, 1.0, 1e-6) << theta;
  }
}

TEST(Invert, OutOfRange) {
  const AnalyticPppCurve f{4.0};
  EXPECT_THROW(invert_success(f, 1.0), Error);
  EXPECT_THROW(invert_success(f, 0.0), Error);
  const SuccessCurve c = analytic_curve(f, default_theta_grid_db());
  try {
    invert_success(c, 0.9999999);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutOfRange);
  }
}

TEST(Invert, EmpiricalSelfConsistency) {
  const AnalyticPppCurve f{4.0};
  const auto grid = default_theta_grid_db();
  const SuccessCurve c = analytic_curve(f, grid);
  for (double p : {0.99, 0.9, 0.75, 0.5600991535115574, 0.3, 0.1}) {
    const double exact_db = linear_to_db(invert_success(f, p));
    const double approx_db = linear_to_db(invert_success(c, p));
    EXPECT_LT(std::fabs(exact_db - approx_db), 1.0) << p;
  }
  EXPECT_NEAR(linear_to_db(invert_success(c, f(1.0))), 0.0, 1e-9);
}

TEST(Invert, IsotonicFitAbsorbsWiggles) {
  SuccessCurve c;
  c.theta_db = {-10, -5, 0, 5, 10};
  c.p_hat = {0.875, 0.5, 0.75, 0.25, 0.125};
  c.ci_lo = c.p_hat;
  c.ci_hi = c.p_hat;
  c.successes = {7, 4, 6, 2, 1};
  c.n = 8;
  // Pooled value 0.625 covers [-5, 0]; a target on the run maps to its midpoint.
  EXPECT_NEAR(linear_to_db(invert_success(c, 0.625)), -2.5, 1e-9);
  EXPECT_NEAR(linear_to_db(invert_success(c, 0.75)), -7.5, 1e-9);
}

}  // namespace
}  // namespace adglab
