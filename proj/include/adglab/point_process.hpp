// Copyright 2026 The adglab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "adglab/geometry.hpp"
#include "adglab/random.hpp"

namespace adglab {

/// Homogeneous Poisson point process, `intensity` points per unit area.
struct Ppp {
  double intensity = 0.1;
};

/// Matern cluster process: Poisson parents, Poisson(mean_daughters) daughters
/// uniform on the disk of `radius` around each parent. Only daughters are kept.
struct MaternCluster {
  double parent_intensity = 0.01;
  double mean_daughters = 10.0;
  double radius = 5.0;
};

/// Matern hard-core process of type II: a Poisson base thinned so that no
/// retained point has a neighbour within `radius` carrying a smaller mark.
struct MaternHardCore {
  double base_intensity = 0.263;
  double radius = 1.7;
};

/// Triangular lattice of the given density under a uniform random translation.
struct TriangularLattice {
  double intensity = 0.1;
};

using ProcessModel = std::variant<Ppp, MaternCluster, MaternHardCore, TriangularLattice>;

/// Throws InvalidModel for non-positive or non-finite parameters.
void validate(const ProcessModel& model);

/// Short lowercase tag: ppp, mcp, mhp, lattice.
std::string process_name(const ProcessModel& model);

/// Closed-form intensity of the model.
double intensity_of(const ProcessModel& model);

/// Nearest-neighbour spacing of the triangular lattice with density `intensity`.
double lattice_spacing(double intensity);

struct PointPattern {
  std::vector<Point> points;
  Window window;
  ProcessModel model;
  std::uint64_t seed = 0;
};

/// Draws one realization into `out` (cleared first). Torus windows wrap cluster
/// daughters and hard-core neighbourhoods; plane windows simulate a dilated
/// window and clip. Throws WindowTooSmall if a side is shorter than twice the
/// cluster or hard-core radius.
void sample_points(const ProcessModel& model, const Window& window, Rng& rng,
                   std::vector<Point>& out);

PointPattern sample(const ProcessModel& model, const Window& window, Rng& rng);

/// Reproducible realization: identical (model, window, seed) give identical points.
PointPattern sample(const ProcessModel& model, const Window& window, std::uint64_t seed);

NearestResult nearest_point(const PointPattern& pattern, const Point& z, Rng& rng);

/// Contact distance at the window centre for `reps` independent realizations.
/// Replicate i draws from stream (seed, i). The centre stands in for a uniform
/// probe: torus-wrapped samplers are translation invariant and the lattice is
/// randomly translated.
std::vector<double> sample_contact_distances(const ProcessModel& model, const Window& window,
                                             std::size_t reps, std::uint64_t seed);

/// Fraction of realizations with no point strictly within distance x of the
/// probe, for each x in `radii` (ascending).
std::vector<double> empirical_contact_ccdf(const ProcessModel& model, const Window& window,
                                           std::span<const double> radii, std::size_t reps,
                                           std::uint64_t seed);

/// CCDF of sorted contact distances evaluated at `radii`.
std::vector<double> contact_ccdf_from_samples(std::span<const double> sorted_distances,
                                              std::span<const double> radii);

/// CSV with header `x,y`, one point per row.
void write_pattern_csv(std::ostream& os, const PointPattern& pattern);

}  // namespace adglab
