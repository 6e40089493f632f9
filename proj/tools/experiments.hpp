// Copyright 2026 The adglab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "adglab/gain.hpp"
#include "adglab/sinr.hpp"

namespace adglab::cli {

/// Bad user input. The message already names the field (and line, for files).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentInfo {
  const char* name;
  const char* summary;
};

const std::vector<ExperimentInfo>& experiments();

/// Accepted keys, shared by flags (`--key`) and config files (`key=value`).
struct KeyInfo {
  const char* key;
  const char* help;
};

const std::vector<KeyInfo>& config_keys();

struct Setting {
  std::string value;
  std::string origin;  // "flag --alpha" or "run.cfg line 3", for diagnostics
};

/// Raw settings in effect: file values overridden by flags.
using Settings = std::map<std::string, Setting>;

/// Parses a key=value file; `#` starts a comment. Throws ConfigError with the
/// line number on malformed lines or unknown keys.
Settings read_config_file(const std::filesystem::path& path);

struct ExperimentConfig {
  std::string experiment;
  Scenario scenario;
  std::size_t n = 100000;
  std::optional<double> theta_lo_db;
  std::optional<double> theta_hi_db;
  std::optional<double> theta_step_db;
  std::filesystem::path out;
  unsigned threads = 0;

  bool analytic = false;            // success-curve
  std::string method = "kappa";     // adg: kappa, shift or both
  std::optional<double> ref_lambda; // adg, rate, mean-sinr; defaults to the process intensity
  ProbabilityWindow p_window{};     // adg shift
  double slope_lo_db = -30.0;
  double slope_hi_db = -15.0;
  double radius_max = 15.0;         // contact-ccdf
  double radius_step = 0.5;

  Settings settings;
};

/// Converts and validates settings. Throws ConfigError naming the field.
ExperimentConfig build_config(const std::string& experiment, const Settings& settings);

/// Runs the experiment and writes `out` plus `<out>.meta.json`. Estimator
/// failures propagate as adglab::Error.
void run(const ExperimentConfig& config);

}  // namespace adglab::cli
