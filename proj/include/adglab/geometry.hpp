// Copyright 2026 The adglab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "adglab/random.hpp"

namespace adglab {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

enum class Topology { Torus, PlaneWithGuard };

/// Axis-aligned window [0, width) x [0, height).
struct Window {
  double width = 100.0;
  double height = 100.0;
  Topology topology = Topology::Torus;

  double area() const noexcept { return width * height; }
  Point centre() const noexcept { return {0.5 * width, 0.5 * height}; }
  bool contains(const Point& p) const noexcept {
    return p.x >= 0.0 && p.x < width && p.y >= 0.0 && p.y < height;
  }
};

/// Throws InvalidModel unless width, height are finite and positive.
void validate(const Window& w);

/// Maps any finite point into [0, width) x [0, height).
Point wrap(const Point& p, const Window& w) noexcept;

/// Shortest displacement component on a circle of circumference `period`.
inline double wrapped_delta(double d, double period) noexcept {
  d = std::fabs(d);
  return d > 0.5 * period ? period - d : d;
}

inline double torus_distance_squared(const Point& p, const Point& q, const Window& w) noexcept {
  const double dx = wrapped_delta(p.x - q.x, w.width);
  const double dy = wrapped_delta(p.y - q.y, w.height);
  return dx * dx + dy * dy;
}

/// Minimum Euclidean distance between p and the translated copies of q.
inline double torus_distance(const Point& p, const Point& q, const Window& w) noexcept {
  return std::sqrt(torus_distance_squared(p, q, w));
}

/// Distance under the window's own topology.
inline double window_distance_squared(const Point& p, const Point& q, const Window& w) noexcept {
  if (w.topology == Topology::Torus) {
    return torus_distance_squared(p, q, w);
  }
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  return dx * dx + dy * dy;
}

inline double window_distance(const Point& p, const Point& q, const Window& w) noexcept {
  return std::sqrt(window_distance_squared(p, q, w));
}

struct NearestResult {
  std::size_t index = 0;
  double distance = 0.0;
};

/// Exhaustive nearest-point scan. Exact ties are resolved uniformly at random
/// with `rng`; no draw is made when the minimum is unique.
NearestResult nearest_point_brute_force(std::span<const Point> points, const Window& w,
                                        const Point& z, Rng& rng);

/// Uniform bucket grid over a window. The index only accelerates queries;
/// results are identical to the brute-force scan.
class GridIndex {
 public:
  GridIndex(std::span<const Point> points, const Window& w, double cell_size);

  NearestResult nearest(const Point& z, Rng& rng) const;

  /// Calls fn(index, distance_squared) for every point strictly closer than r.
  template <typename Fn>
  void for_each_within(const Point& z, double r, Fn&& fn) const;

  /// True when pred(index, distance_squared) holds for some point strictly
  /// closer than r. Stops at the first hit.
  template <typename Pred>
  bool any_within(const Point& z, double r, Pred&& pred) const;

  std::size_t size() const noexcept { return points_.size(); }

 private:
  std::size_t cell_of(double coord, double cell, std::size_t count) const noexcept;
  template <typename Fn>
  bool visit_cell(long cx, long cy, Fn&& fn) const;
  template <typename Fn>
  bool scan_within(const Point& z, double r, Fn&& fn) const;

  std::span<const Point> points_;
  Window window_;
  std::size_t nx_ = 1;
  std::size_t ny_ = 1;
  double cell_w_ = 1.0;
  double cell_h_ = 1.0;
  std::vector<std::size_t> cell_start_;  // nx * ny + 1 offsets into order_
  std::vector<std::size_t> order_;
};

/// Nearest point to z; throws EmptyPattern on an empty input.
NearestResult nearest_point(std::span<const Point> points, const Window& w, const Point& z,
                            Rng& rng);

// fn returns true to stop the scan.
template <typename Fn>
bool GridIndex::visit_cell(long cx, long cy, Fn&& fn) const {
  const long nx = static_cast<long>(nx_);
  const long ny = static_cast<long>(ny_);
  if (window_.topology == Topology::Torus) {
    // callers stay within one period of the grid
    cx += cx < 0 ? nx : (cx >= nx ? -nx : 0);
    cy += cy < 0 ? ny : (cy >= ny ? -ny : 0);
  } else if (cx < 0 || cy < 0 || cx >= nx || cy >= ny) {
    return false;
  }
  const std::size_t cell = static_cast<std::size_t>(cy) * nx_ + static_cast<std::size_t>(cx);
  for (std::size_t k = cell_start_[cell]; k < cell_start_[cell + 1]; ++k) {
    if (fn(order_[k])) {
      return true;
    }
  }
  return false;
}

template <typename Fn>
bool GridIndex::scan_within(const Point& z, double r, Fn&& fn) const {
  const double r2 = r * r;
  const long reach_x = static_cast<long>(std::ceil(r / cell_w_));
  const long reach_y = static_cast<long>(std::ceil(r / cell_h_));
  const long cx = static_cast<long>(cell_of(z.x, cell_w_, nx_));
  const long cy = static_cast<long>(cell_of(z.y, cell_h_, ny_));
  const bool torus = window_.topology == Topology::Torus;
  // Clamp the neighbourhood so wrapped cells are never visited twice.
  const long lo_x = torus && 2 * reach_x + 1 > static_cast<long>(nx_) ? 0 : cx - reach_x;
  const long hi_x = torus && 2 * reach_x + 1 > static_cast<long>(nx_) ? static_cast<long>(nx_) - 1
                                                                      : cx + reach_x;
  const long lo_y = torus && 2 * reach_y + 1 > static_cast<long>(ny_) ? 0 : cy - reach_y;
  const long hi_y = torus && 2 * reach_y + 1 > static_cast<long>(ny_) ? static_cast<long>(ny_) - 1
                                                                      : cy + reach_y;
  for (long iy = lo_y; iy <= hi_y; ++iy) {
    for (long ix = lo_x; ix <= hi_x; ++ix) {
      const bool stop = visit_cell(ix, iy, [&](std::size_t idx) {
        const double d2 = window_distance_squared(points_[idx], z, window_);
        return d2 < r2 && fn(idx, d2);
      });
      if (stop) {
        return true;
      }
    }
  }
  return false;
}

template <typename Fn>
void GridIndex::for_each_within(const Point& z, double r, Fn&& fn) const {
  scan_within(z, r, [&](std::size_t idx, double d2) {
    fn(idx, d2);
    return false;
  });
}

template <typename Pred>
bool GridIndex::any_within(const Point& z, double r, Pred&& pred) const {
  return scan_within(z, r, [&](std::size_t idx, double d2) { return pred(idx, d2); });
}

}  // namespace adglab
