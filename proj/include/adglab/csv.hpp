// Copyright 2026 The adglab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

namespace adglab {

/// Shortest round-trip decimal form ("%.17g"); `nan`/`inf` spelled out.
std::string format_double(double v);

}  // namespace adglab
