// Copyright 2026 The adglab Authors
// SPDX-License-Identifier: Apache-2.0

#include "adglab/csv.hpp"

#include <charconv>
#include <cmath>

namespace adglab {

std::string format_double(double v) {
  if (std::isnan(v)) {
    return "nan";
  }
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

}  // namespace adglab
