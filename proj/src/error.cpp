// Copyright 2026 The adglab Authors
// SPDX-License-Identifier: Apache-2.0

#include "adglab/error.hpp"

namespace adglab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidModel: return "InvalidModel";
    case ErrorKind::EmptyPattern: return "EmptyPattern";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::SingularAtZero: return "SingularAtZero";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::NoPolynomialDecay: return "NoPolynomialDecay";
    case ErrorKind::BinStarved: return "BinStarved";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::InsufficientPoints: return "InsufficientPoints";
    case ErrorKind::SingularMeanDiverges: return "SingularMeanDiverges";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
      kind_(kind) {}

}  // namespace adglab
