// Copyright 2026 The adglab Authors
// SPDX-License-Identifier: Apache-2.0

#include "adglab/geometry.hpp"

#include <algorithm>
#include <limits>

#include "adglab/error.hpp"

namespace adglab {

void validate(const Window& w) {
  if (!(std::isfinite(w.width) && std::isfinite(w.height) && w.width > 0.0 && w.height > 0.0)) {
    throw Error(ErrorKind::InvalidModel, "window sides must be finite and positive");
  }
}

Point wrap(const Point& p, const Window& w) noexcept {
  auto fold = [](double v, double period) {
    v = std::fmod(v, period);
    if (v < 0.0) {
      v += period;
    }
    // fmod of a tiny negative value can round up to exactly `period`
    return v >= period ? 0.0 : v;
  };
  return {fold(p.x, w.width), fold(p.y, w.height)};
}

namespace {

// Picks uniformly among tied indices; `ties` is sorted so the choice does not
// depend on the order in which candidates were visited.
NearestResult resolve_ties(std::vector<std::size_t>& ties, double best_d2, Rng& rng) {
  std::size_t chosen = ties.front();
  if (ties.size() > 1) {
    std::sort(ties.begin(), ties.end());
    std::uniform_int_distribution<std::size_t> pick(0, ties.size() - 1);
    chosen = ties[pick(rng)];
  }
  return {chosen, std::sqrt(best_d2)};
}

}  // namespace

NearestResult nearest_point_brute_force(std::span<const Point> points, const Window& w,
                                        const Point& z, Rng& rng) {
  if (points.empty()) {
    throw Error(ErrorKind::EmptyPattern, "nearest point of an empty pattern");
  }
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> ties;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d2 = window_distance_squared(points[i], z, w);
    if (d2 < best) {
      best = d2;
      ties.assign(1, i);
    } else if (d2 == best) {
      ties.push_back(i);
    }
  }
  return resolve_ties(ties, best, rng);
}

GridIndex::GridIndex(std::span<const Point> points, const Window& w, double cell_size)
    : points_(points), window_(w) {
  validate(w);
  if (!(cell_size > 0.0)) {
    cell_size = std::max(w.width, w.height);
  }
  nx_ = std::max<std::size_t>(1, static_cast<std::size_t>(w.width / cell_size));
  ny_ = std::max<std::size_t>(1, static_cast<std::size_t>(w.height / cell_size));
  cell_w_ = w.width / static_cast<double>(nx_);
  cell_h_ = w.height / static_cast<double>(ny_);

  std::vector<std::size_t> cell_ids(points.size());
  cell_start_.assign(nx_ * ny_ + 1, 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::size_t c = cell_of(points[i].y, cell_h_, ny_) * nx_ + cell_of(points[i].x, cell_w_, nx_);
    cell_ids[i] = c;
    ++cell_start_[c + 1];
  }
  for (std::size_t c = 0; c < nx_ * ny_; ++c) {
    cell_start_[c + 1] += cell_start_[c];
  }
  order_.resize(points.size());
  std::vector<std::size_t> fill(cell_start_.begin(), cell_start_.end() - 1);
  for (std::size_t i = 0; i < points.size(); ++i) {
    order_[fill[cell_ids[i]]++] = i;
  }
}

std::size_t GridIndex::cell_of(double coord, double cell, std::size_t count) const noexcept {
  if (coord <= 0.0) {
    return 0;
  }
  return std::min(count - 1, static_cast<std::size_t>(coord / cell));
}

NearestResult GridIndex::nearest(const Point& z, Rng& rng) const {
  if (points_.empty()) {
    throw Error(ErrorKind::EmptyPattern, "nearest point of an empty pattern");
  }
  const long cx = static_cast<long>(cell_of(z.x, cell_w_, nx_));
  const long cy = static_cast<long>(cell_of(z.y, cell_h_, ny_));
  const long span = static_cast<long>(std::max(nx_, ny_));
  const double cell_min = std::min(cell_w_, cell_h_);

  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> ties;
  auto consider = [&](std::size_t idx) {
    const double d2 = window_distance_squared(points_[idx], z, window_);
    if (d2 < best) {
      best = d2;
      ties.assign(1, idx);
    } else if (d2 == best) {
      ties.push_back(idx);
    }
    return false;
  };

  for (long k = 0;; ++k) {
    if (window_.topology == Topology::Torus && 2 * k + 1 > std::min<long>(nx_, ny_)) {
      // The ring would wrap onto cells already seen; finish exhaustively.
      return nearest_point_brute_force(points_, window_, z, rng);
    }
    if (k == 0) {
      visit_cell(cx, cy, consider);
    } else {
      for (long d = -k; d <= k; ++d) {
        visit_cell(cx + d, cy - k, consider);
        visit_cell(cx + d, cy + k, consider);
      }
      for (long d = -k + 1; d <= k - 1; ++d) {
        visit_cell(cx - k, cy + d, consider);
        visit_cell(cx + k, cy + d, consider);
      }
    }
    // Every unvisited point lies at least k cells away. The bound is strict so
    // that an exact tie sitting in the next ring is still collected.
    const double reach = static_cast<double>(k) * cell_min;
    if (!ties.empty() && best < reach * reach) {
      break;
    }
    if (k > span) {
      break;
    }
  }
  return resolve_ties(ties, best, rng);
}

NearestResult nearest_point(std::span<const Point> points, const Window& w, const Point& z,
                            Rng& rng) {
  if (points.size() < 64) {
    return nearest_point_brute_force(points, w, z, rng);
  }
  const double density = static_cast<double>(points.size()) / w.area();
  GridIndex index(points, w, 1.0 / std::sqrt(density));
  return index.nearest(z, rng);
}

}  // namespace adglab
