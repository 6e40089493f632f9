// Copyright 2026 The adglab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace adglab {

enum class ErrorKind {
  InvalidModel,
  EmptyPattern,
  WindowTooSmall,
  SingularAtZero,
  QuadratureFailure,
  NoPolynomialDecay,
  BinStarved,
  OutOfRange,
  InsufficientPoints,
  SingularMeanDiverges,
};

std::string_view to_string(ErrorKind kind);

/// Every estimator failure is reported through this type; `kind()` is what
/// the CLI prints on stderr.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const { return to_string(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace adglab
