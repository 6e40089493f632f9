// Copyright 2026 The adglab Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "adglab/error.hpp"
#include "adglab/point_process.hpp"
#include "adglab/stats.hpp"

namespace adglab {
namespace {

const Window kSquare{};

std::vector<double> counts_over(const ProcessModel& model, const Window& w, std::size_t reps,
                                std::uint64_t seed) {
  std::vector<double> counts;
  std::vector<Point> pts;
  for (std::size_t i = 0; i < reps; ++i) {
    Rng rng = make_stream(seed, i);
    sample_points(model, w, rng, pts);
    counts.push_back(static_cast<double>(pts.size()));
  }
  return counts;
}

TEST(IntensityOf, ClosedForms) {
  EXPECT_DOUBLE_EQ(intensity_of(Ppp{0.1}), 0.1);
  EXPECT_DOUBLE_EQ(intensity_of(TriangularLattice{0.3}), 0.3);
  EXPECT_NEAR(intensity_of(MaternCluster{0.01, 10, 5}), 0.1, 1e-15);
  EXPECT_NEAR(intensity_of(MaternHardCore{0.263, 1.7}), 0.10002764747888644, 1e-12);
  EXPECT_NEAR(intensity_of(MaternHardCore{1e6, 1.7}), 0.11014182912933936, 1e-12);
}

TEST(Validate, RejectsBadParameters) {
  EXPECT_THROW(validate(ProcessModel{Ppp{0.0}}), Error);
  EXPECT_THROW(validate(ProcessModel{MaternCluster{0.01, -1, 5}}), Error);
  EXPECT_THROW(validate(ProcessModel{MaternHardCore{0.263, NAN}}), Error);
  EXPECT_THROW(validate(ProcessModel{TriangularLattice{INFINITY}}), Error);
}

TEST(Sample, WindowTooSmall) {
  Rng rng(1);
  std::vector<Point> pts;
  try {
    sample_points(MaternCluster{0.01, 10, 5}, Window{9.0, 100.0}, rng, pts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WindowTooSmall);
  }
  EXPECT_THROW(sample_points(MaternHardCore{0.263, 1.7}, Window{3.0, 3.0}, rng, pts), Error);
  EXPECT_NO_THROW(sample_points(Ppp{0.1}, Window{1.0, 1.0}, rng, pts));
}

TEST(Sample, PppMeanCount) {
  const auto counts = counts_over(Ppp{0.1}, kSquare, 1000, 1);
  const MeanEstimate e = mean_and_stderr(counts);
  // Poisson(1000): standard error of the mean over 1000 patterns is 1.
  EXPECT_NEAR(e.mean, 1000.0, 3.0);
}

TEST(Sample, MaternClusterMeanCount) {
  const auto counts = counts_over(MaternCluster{0.01, 10, 5}, kSquare, 1000, 2);
  const MeanEstimate e = mean_and_stderr(counts);
  // Compound Poisson count variance 100 * (10 + 100) = 11000.
  EXPECT_NEAR(e.mean, 1000.0, 3.0 * std::sqrt(11000.0 / 1000.0));
}

TEST(Sample, EveryModelMatchesItsIntensity) {
  const std::vector<ProcessModel> models{Ppp{0.1}, MaternCluster{0.01, 10, 5},
                                         MaternHardCore{0.263, 1.7}, TriangularLattice{0.1},
                                         Ppp{0.02}, MaternHardCore{0.5, 1.0}};
  for (const ProcessModel& model : models) {
    const auto counts = counts_over(model, kSquare, 1000, 3);
    const MeanEstimate e = mean_and_stderr(counts);
    const double expected = intensity_of(model) * kSquare.area();
    // Lattice counts barely vary; allow the boundary rounding of one row.
    const double tol = std::max(3.0 * e.stderr, model.index() == 3 ? 1.0 : 0.0);
    EXPECT_NEAR(e.mean, expected, tol) << process_name(model);
  }
}

TEST(Sample, HardCoreIntensityWithinTwoPercent) {
  const auto counts = counts_over(MaternHardCore{0.263, 1.7}, kSquare, 300, 4);
  const double lambda = mean_and_stderr(counts).mean / kSquare.area();
  EXPECT_NEAR(lambda, 0.10002764747888644, 0.02 * 0.10002764747888644);
}

TEST(Sample, HardCoreHasNoClosePairs) {
  for (Topology topology : {Topology::Torus, Topology::PlaneWithGuard}) {
    const Window w{60.0, 40.0, topology};
    std::vector<Point> pts;
    for (std::size_t i = 0; i < 100; ++i) {
      Rng rng = make_stream(5, i);
      sample_points(MaternHardCore{0.263, 1.7}, w, rng, pts);
      for (std::size_t a = 0; a < pts.size(); ++a) {
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
          ASSERT_GE(window_distance(pts[a], pts[b], w), 1.7);
        }
      }
    }
  }
}

// Independent O(n^2) type II thinning on the same base draw.
TEST(Sample, HardCoreMatchesNaiveThinning) {
  const MaternHardCore m{0.8, 2.5};
  for (Topology topology : {Topology::Torus, Topology::PlaneWithGuard}) {
    const Window w{30.0, 20.0, topology};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Rng rng = make_stream(6, seed);
      Rng replay = rng;
      std::vector<Point> fast;
      sample_points(m, w, rng, fast);

      const double guard = topology == Topology::Torus ? 0.0 : m.radius;
      const Window base_w{w.width + 2 * guard, w.height + 2 * guard, topology};
      std::poisson_distribution<long> count(m.base_intensity * base_w.area());
      const long n = count(replay);
      std::vector<Point> base;
      for (long i = 0; i < n; ++i) {
        const double x = base_w.width * uniform01(replay);
        base.push_back({x, base_w.height * uniform01(replay)});
      }
      std::vector<double> marks(base.size());
      for (double& mk : marks) {
        mk = uniform01(replay);
      }
      std::vector<Point> slow;
      for (std::size_t i = 0; i < base.size(); ++i) {
        bool keep = true;
        for (std::size_t j = 0; j < base.size() && keep; ++j) {
          keep = !(j != i && window_distance(base[i], base[j], base_w) < m.radius &&
                   marks[j] < marks[i]);
        }
        const Point p{base[i].x - guard, base[i].y - guard};
        if (keep && w.contains(p)) {
          slow.push_back(p);
        }
      }
      ASSERT_EQ(fast, slow);
    }
  }
}

TEST(Sample, PointsInsideWindow) {
  const Window w{50.0, 70.0, Topology::PlaneWithGuard};
  for (const ProcessModel& model : std::vector<ProcessModel>{
           Ppp{0.1}, MaternCluster{}, MaternHardCore{}, TriangularLattice{0.1}}) {
    for (const Window& win : {w, kSquare}) {
      const PointPattern p = sample(model, win, 99);
      for (const Point& q : p.points) {
        ASSERT_TRUE(win.contains(q)) << process_name(model);
      }
    }
  }
}

TEST(Sample, DeterministicFromSeed) {
  for (const ProcessModel& model : std::vector<ProcessModel>{
           Ppp{0.1}, MaternCluster{}, MaternHardCore{}, TriangularLattice{0.1}}) {
    const PointPattern a = sample(model, kSquare, 1234);
    const PointPattern b = sample(model, kSquare, 1234);
    const PointPattern c = sample(model, kSquare, 1235);
    EXPECT_EQ(a.points, b.points);
    EXPECT_NE(a.points, c.points);
    EXPECT_EQ(a.seed, 1234u);
  }
}

TEST(Lattice, SpacingAndContactBound) {
  const double s = lattice_spacing(0.1);
  EXPECT_NEAR(s, std::sqrt(2.0 / (std::sqrt(3.0) * 0.1)), 1e-14);
  // Away from the torus seam the lattice is exact: contact distance <= s / sqrt(3).
  Rng probe(3);
  for (std::size_t i = 0; i < 200; ++i) {
    const PointPattern p = sample(TriangularLattice{0.1}, kSquare, i);
    for (int q = 0; q < 20; ++q) {
      const Point z{20.0 + 60.0 * uniform01(probe), 20.0 + 60.0 * uniform01(probe)};
      Rng rng(q);
      const double xi = nearest_point(p, z, rng).distance;
      ASSERT_LE(xi, s / std::sqrt(3.0) + 1e-9);
    }
    // The estimators probe the centre.
    Rng rng(i);
    ASSERT_LE(nearest_point(p, kSquare.centre(), rng).distance, s / std::sqrt(3.0) + 1e-9);
  }
}

TEST(Lattice, NearestNeighbourDistanceIsTheSpacing) {
  const PointPattern p = sample(TriangularLattice{0.1}, kSquare, 8);
  const double s = lattice_spacing(0.1);
  for (const Point& a : p.points) {
    if (a.x < 10 || a.x > 90 || a.y < 10 || a.y > 90) {
      continue;
    }
    double best = INFINITY;
    for (const Point& b : p.points) {
      if (!(a == b)) {
        best = std::min(best, torus_distance(a, b, kSquare));
      }
    }
    ASSERT_NEAR(best, s, 1e-9);
  }
}

TEST(ContactCcdf, PppMatchesExponentialAtOne) {
  const std::vector<double> radii{0.0, 1.0};
  const auto c = empirical_contact_ccdf(Ppp{0.1}, kSquare, radii, 10000, 10);
  EXPECT_DOUBLE_EQ(c[0], 1.0);
  EXPECT_NEAR(c[1], std::exp(-0.1 * std::numbers::pi), 0.01);
}

TEST(ContactCcdf, ZeroRadiusIsOneForEveryModel) {
  const std::vector<double> radii{0.0};
  for (const ProcessModel& model : std::vector<ProcessModel>{
           Ppp{0.1}, MaternCluster{}, MaternHardCore{}, TriangularLattice{0.1}}) {
    EXPECT_DOUBLE_EQ(empirical_contact_ccdf(model, kSquare, radii, 200, 11)[0], 1.0);
  }
}

TEST(ContactCcdf, MonotoneNonIncreasing) {
  std::vector<double> radii;
  for (double x = 0.0; x <= 10.0; x += 0.25) {
    radii.push_back(x);
  }
  const auto c = empirical_contact_ccdf(MaternCluster{}, kSquare, radii, 2000, 12);
  for (std::size_t i = 1; i < c.size(); ++i) {
    ASSERT_LE(c[i], c[i - 1]);
  }
}

TEST(ContactCcdf, ClusterRespectsExponentialBound) {
  const std::vector<double> radii{8.0, 10.0, 12.0};
  const std::size_t reps = 4000;
  const auto c = empirical_contact_ccdf(MaternCluster{0.01, 10, 5}, kSquare, radii, reps, 13);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double y = radii[i];
    const double bound = std::exp(-(1.0 - std::exp(-10.0)) * 0.01 * std::numbers::pi * (y - 5) * (y - 5));
    const auto hits = static_cast<std::size_t>(std::llround(c[i] * reps));
    EXPECT_LE(wilson_interval(hits, reps).lo, bound) << y;
  }
  EXPECT_NEAR(std::exp(-(1.0 - std::exp(-10.0)) * 0.01 * std::numbers::pi * 25.0), 0.456, 5e-4);
}

// The hard-core contact CCDF sits between the base PPP's and the PPP of the
// same intensity: an empty base ball empties the thinned ball, and the
// thinned pattern is more regular than Poisson.
TEST(ContactCcdf, HardCoreBracketedByPoissonLaws) {
  const std::vector<double> radii{1.5, 2.0, 2.5, 3.0};
  const std::size_t reps = 5000;
  const MaternHardCore m{};
  const auto c = empirical_contact_ccdf(m, kSquare, radii, reps, 14);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double area = std::numbers::pi * radii[i] * radii[i];
    const auto hits = static_cast<std::size_t>(std::llround(c[i] * reps));
    const Interval ci = wilson_interval(hits, reps);
    EXPECT_GE(ci.hi, std::exp(-m.base_intensity * area)) << radii[i];
    EXPECT_LE(ci.lo, std::exp(-intensity_of(m) * area)) << radii[i];
  }
}

TEST(ContactCcdf, PppPassesKolmogorovSmirnov) {
  std::vector<double> xi = sample_contact_distances(Ppp{0.1}, kSquare, 5000, 15);
  const double d = ks_statistic(xi, [](double x) { return -std::expm1(-0.1 * std::numbers::pi * x * x); });
  EXPECT_GT(ks_pvalue(d, xi.size()), 0.01);
}

TEST(ContactCcdf, FromSamplesCountsStrictlyEmptyBalls) {
  const std::vector<double> sorted{1.0, 2.0, 2.0, 3.0};
  const std::vector<double> radii{0.0, 1.0, 2.0, 2.5, 3.0, 4.0};
  const auto c = contact_ccdf_from_samples(sorted, radii);
  const std::vector<double> expected{1.0, 1.0, 0.75, 0.25, 0.25, 0.0};
  EXPECT_EQ(c, expected);
}

TEST(PatternCsv, HeaderAndRows) {
  PointPattern p{{{1.5, 2.0}, {0.25, 99.0}}, kSquare, Ppp{0.1}, 1};
  std::ostringstream os;
  write_pattern_csv(os, p);
  EXPECT_EQ(os.str(), "x,y\n1.5,2\n0.25,99\n");
}

}  // namespace
}  // namespace adglab
