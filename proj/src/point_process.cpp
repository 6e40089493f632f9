// Copyright 2026 The adglab Authors
// SPDX-License-Identifier: Apache-2.0

#include "adglab/point_process.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <span>
#include <utility>

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

void require_positive(double v, const char* what) {
  if (!(std::isfinite(v) && v > 0.0)) {
    throw Error(ErrorKind::InvalidModel, std::string(what) + " must be finite and positive");
  }
}

double interaction_radius(const ProcessModel& model) {
  return std::visit(overloaded{
                        [](const MaternCluster& m) { return m.radius; },
                        [](const MaternHardCore& m) { return m.radius; },
                        [](const auto&) { return 0.0; },
                    },
                    model);
}

Point uniform_point(double x0, double y0, double w, double h, Rng& rng) {
  const double x = x0 + w * uniform01(rng);
  return {x, y0 + h * uniform01(rng)};
}

void poisson_points(double intensity, double x0, double y0, double w, double h, Rng& rng,
                    std::vector<Point>& out) {
  std::poisson_distribution<long> count(intensity * w * h);
  const long n = count(rng);
  out.reserve(out.size() + static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    out.push_back(uniform_point(x0, y0, w, h, rng));
  }
}

void sample_cluster(const MaternCluster& m, const Window& window, Rng& rng,
                    std::vector<Point>& out) {
  const bool torus = window.topology == Topology::Torus;
  const double guard = torus ? 0.0 : m.radius;
  std::vector<Point> parents;
  poisson_points(m.parent_intensity, -guard, -guard, window.width + 2 * guard,
                 window.height + 2 * guard, rng, parents);
  std::poisson_distribution<long> daughters(m.mean_daughters);
  for (const Point& parent : parents) {
    const long n = daughters(rng);
    for (long k = 0; k < n; ++k) {
      const double r = m.radius * std::sqrt(uniform01(rng));
      const double phi = 2.0 * std::numbers::pi * uniform01(rng);
      const Point d{parent.x + r * std::cos(phi), parent.y + r * std::sin(phi)};
      if (torus) {
        out.push_back(wrap(d, window));
      } else if (window.contains(d)) {
        out.push_back(d);
      }
    }
  }
}

struct MarkedPoint {
  double x;
  double y;
  double mark;
  std::size_t index;
};

bool beats(const MarkedPoint& a, const MarkedPoint& b) {
  // Equal marks have probability zero; the lower index wins if they occur.
  return (a.mark < b.mark) | ((a.mark == b.mark) & (a.index < b.index));
}

// Type II thinning: a base point survives when no other base point within the
// hard-core radius carries a smaller mark. Points are bucketed into cells no
// smaller than the radius so only the 3x3 block around a cell is searched.
std::vector<char> hard_core_survivors(std::span<const Point> base, std::span<const double> marks,
                                      const Window& w, double radius) {
  const bool torus = w.topology == Topology::Torus;
  const long nx = std::max(1L, static_cast<long>(w.width / radius));
  const long ny = std::max(1L, static_cast<long>(w.height / radius));
  const double sx = static_cast<double>(nx) / w.width;
  const double sy = static_cast<double>(ny) / w.height;
  auto cell_x = [&](double x) { return std::clamp(static_cast<long>(x * sx), 0L, nx - 1); };
  auto cell_y = [&](double y) { return std::clamp(static_cast<long>(y * sy), 0L, ny - 1); };

  std::vector<std::size_t> start(static_cast<std::size_t>(nx * ny) + 1, 0);
  std::vector<std::size_t> cell(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    cell[i] = static_cast<std::size_t>(cell_y(base[i].y) * nx + cell_x(base[i].x));
    ++start[cell[i] + 1];
  }
  for (std::size_t c = 1; c < start.size(); ++c) {
    start[c] += start[c - 1];
  }
  std::vector<MarkedPoint> sorted(base.size());
  {
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (std::size_t i = 0; i < base.size(); ++i) {
      sorted[fill[cell[i]]++] = {base[i].x, base[i].y, marks[i], i};
    }
  }

  const double r2 = radius * radius;
  // With fewer than three cells along an axis the 3x3 block would revisit cells.
  const long reach_x = nx < 3 ? 0 : 1;
  const long reach_y = ny < 3 ? 0 : 1;
  std::vector<char> keep(base.size(), 0);
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  for (long cy = 0; cy < ny; ++cy) {
    for (long cx = 0; cx < nx; ++cx) {
      const std::size_t c = static_cast<std::size_t>(cy * nx + cx);
      if (start[c] == start[c + 1]) {
        continue;
      }
      ranges.clear();
      if (reach_x == 0 || reach_y == 0) {
        ranges.emplace_back(0, sorted.size());
      } else {
        for (long dy = -1; dy <= 1; ++dy) {
          long y = cy + dy;
          if (torus) {
            y += y < 0 ? ny : (y >= ny ? -ny : 0);
          } else if (y < 0 || y >= ny) {
            continue;
          }
          for (long dx = -1; dx <= 1; ++dx) {
            long x = cx + dx;
            if (torus) {
              x += x < 0 ? nx : (x >= nx ? -nx : 0);
            } else if (x < 0 || x >= nx) {
              continue;
            }
            const std::size_t n = static_cast<std::size_t>(y * nx + x);
            ranges.emplace_back(start[n], start[n + 1]);
          }
        }
      }
      for (std::size_t k = start[c]; k < start[c + 1]; ++k) {
        const MarkedPoint& p = sorted[k];
        // Branch-free inner loop: both tests are coin flips for the predictor.
        bool beaten = false;
        for (const auto& [lo, hi] : ranges) {
          for (std::size_t j = lo; j < hi; ++j) {
            const MarkedPoint& q = sorted[j];
            double dx = std::fabs(p.x - q.x);
            double dy = std::fabs(p.y - q.y);
            if (torus) {
              dx = std::min(dx, w.width - dx);
              dy = std::min(dy, w.height - dy);
            }
            beaten |= (j != k) & beats(q, p) & (dx * dx + dy * dy < r2);
          }
        }
        keep[p.index] = beaten ? 0 : 1;
      }
    }
  }
  return keep;
}

void sample_hard_core(const MaternHardCore& m, const Window& window, Rng& rng,
                      std::vector<Point>& out) {
  const bool torus = window.topology == Topology::Torus;
  const double guard = torus ? 0.0 : m.radius;
  Window base_window = window;
  base_window.width += 2 * guard;
  base_window.height += 2 * guard;

  std::vector<Point> base;
  poisson_points(m.base_intensity, 0.0, 0.0, base_window.width, base_window.height, rng, base);
  std::vector<double> marks(base.size());
  for (double& mark : marks) {
    mark = uniform01(rng);
  }

  const std::vector<char> keep = hard_core_survivors(base, marks, base_window, m.radius);
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (!keep[i]) {
      continue;
    }
    const Point p{base[i].x - guard, base[i].y - guard};
    if (window.contains(p)) {
      out.push_back(p);
    }
  }
}

void sample_lattice(const TriangularLattice& m, const Window& window, Rng& rng,
                    std::vector<Point>& out) {
  const double s = lattice_spacing(m.intensity);
  const double h = s * std::sqrt(3.0) / 2.0;
  const double a = uniform01(rng);
  const double b = uniform01(rng);
  // Anchor the lattice at the window centre so that any boundary seam on a
  // torus window sits as far as possible from the probe.
  const Point c = window.centre();
  const double x0 = c.x + a * s + b * 0.5 * s;
  const double y0 = c.y + b * h;
  const long j_lo = static_cast<long>(std::floor(-y0 / h));
  const long j_hi = static_cast<long>(std::ceil((window.height - y0) / h));
  for (long j = j_lo; j <= j_hi; ++j) {
    const double y = y0 + static_cast<double>(j) * h;
    if (y < 0.0 || y >= window.height) {
      continue;
    }
    const double row_x0 = x0 + static_cast<double>(j) * 0.5 * s;
    const long i_lo = static_cast<long>(std::floor(-row_x0 / s));
    const long i_hi = static_cast<long>(std::ceil((window.width - row_x0) / s));
    for (long i = i_lo; i <= i_hi; ++i) {
      const double x = row_x0 + static_cast<double>(i) * s;
      if (x >= 0.0 && x < window.width) {
        out.push_back({x, y});
      }
    }
  }
}

}  // namespace

void validate(const ProcessModel& model) {
  std::visit(overloaded{
                 [](const Ppp& m) { require_positive(m.intensity, "PPP intensity"); },
                 [](const MaternCluster& m) {
                   require_positive(m.parent_intensity, "parent intensity");
                   require_positive(m.mean_daughters, "mean cluster size");
                   require_positive(m.radius, "cluster radius");
                 },
                 [](const MaternHardCore& m) {
                   require_positive(m.base_intensity, "base intensity");
                   require_positive(m.radius, "hard-core radius");
                 },
                 [](const TriangularLattice& m) {
                   require_positive(m.intensity, "lattice density");
                 },
             },
             model);
}

std::string process_name(const ProcessModel& model) {
  return std::visit(overloaded{
                        [](const Ppp&) { return std::string("ppp"); },
                        [](const MaternCluster&) { return std::string("mcp"); },
                        [](const MaternHardCore&) { return std::string("mhp"); },
                        [](const TriangularLattice&) { return std::string("lattice"); },
                    },
                    model);
}

double intensity_of(const ProcessModel& model) {
  return std::visit(overloaded{
                        [](const Ppp& m) { return m.intensity; },
                        [](const MaternCluster& m) { return m.parent_intensity * m.mean_daughters; },
                        [](const MaternHardCore& m) {
                          const double area = std::numbers::pi * m.radius * m.radius;
                          return -std::expm1(-m.base_intensity * area) / area;
                        },
                        [](const TriangularLattice& m) { return m.intensity; },
                    },
                    model);
}

double lattice_spacing(double intensity) {
  return std::sqrt(2.0 / (std::sqrt(3.0) * intensity));
}

void sample_points(const ProcessModel& model, const Window& window, Rng& rng,
                   std::vector<Point>& out) {
  validate(window);
  validate(model);
  const double r = interaction_radius(model);
  if (window.width < 2.0 * r || window.height < 2.0 * r) {
    throw Error(ErrorKind::WindowTooSmall,
                "window sides must be at least twice the interaction radius " + std::to_string(r));
  }
  out.clear();
  std::visit(overloaded{
                 [&](const Ppp& m) {
                   poisson_points(m.intensity, 0.0, 0.0, window.width, window.height, rng, out);
                 },
                 [&](const MaternCluster& m) { sample_cluster(m, window, rng, out); },
                 [&](const MaternHardCore& m) { sample_hard_core(m, window, rng, out); },
                 [&](const TriangularLattice& m) { sample_lattice(m, window, rng, out); },
             },
             model);
}

PointPattern sample(const ProcessModel& model, const Window& window, Rng& rng) {
  PointPattern pattern{{}, window, model, 0};
  sample_points(model, window, rng, pattern.points);
  return pattern;
}

PointPattern sample(const ProcessModel& model, const Window& window, std::uint64_t seed) {
  Rng rng(seed);
  PointPattern pattern = sample(model, window, rng);
  pattern.seed = seed;
  return pattern;
}

NearestResult nearest_point(const PointPattern& pattern, const Point& z, Rng& rng) {
  return nearest_point(pattern.points, pattern.window, z, rng);
}

std::vector<double> sample_contact_distances(const ProcessModel& model, const Window& window,
                                             std::size_t reps, std::uint64_t seed) {
  std::vector<double> out(reps);
  std::vector<Point> points;
  const Point probe = window.centre();
  for (std::size_t i = 0; i < reps; ++i) {
    Rng rng = make_stream(seed, i);
    sample_points(model, window, rng, points);
    double best = std::numeric_limits<double>::infinity();
    for (const Point& p : points) {
      best = std::min(best, window_distance_squared(p, probe, window));
    }
    out[i] = std::sqrt(best);
  }
  return out;
}

std::vector<double> contact_ccdf_from_samples(std::span<const double> sorted_distances,
                                              std::span<const double> radii) {
  std::vector<double> ccdf;
  ccdf.reserve(radii.size());
  const double n = static_cast<double>(sorted_distances.size());
  for (double x : radii) {
    // "no point strictly within x" is the event xi >= x
    const auto first_ge = std::lower_bound(sorted_distances.begin(), sorted_distances.end(), x);
    ccdf.push_back(static_cast<double>(sorted_distances.end() - first_ge) / n);
  }
  return ccdf;
}

std::vector<double> empirical_contact_ccdf(const ProcessModel& model, const Window& window,
                                           std::span<const double> radii, std::size_t reps,
                                           std::uint64_t seed) {
  std::vector<double> d = sample_contact_distances(model, window, reps, seed);
  std::sort(d.begin(), d.end());
  return contact_ccdf_from_samples(d, radii);
}

void write_pattern_csv(std::ostream& os, const PointPattern& pattern) {
  os << "x,y\n";
  for (const Point& p : pattern.points) {
    os << format_double(p.x) << ',' << format_double(p.y) << '\n';
  }
}

}  // namespace adglab
