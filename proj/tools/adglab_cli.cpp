// Copyright 2026 The adglab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "adglab/error.hpp"
#include "experiments.hpp"

namespace {

std::string experiment_table() {
  std::string text = "Experiments:\n";
  for (const auto& e : adglab::cli::experiments()) {
    std::string name = e.name;
    name.resize(15, ' ');
    text += "  " + name + e.summary + "\n";
  }
  text +=
      "\nEvery option can also be given as key=value in a --config file;\n"
      "flags override the file. Each run writes <out> and <out>.meta.json.\n"
      "Exit codes: 0 ok, 2 bad configuration, 3 estimator error.";
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = adglab::cli;

  CLI::App app{"Monte Carlo and analytic coverage experiments for point-process networks"};
  app.name("adglab");
  app.require_subcommand(1);
  app.footer(experiment_table());

  std::string config_path;
  // One slot per key, shared by every subcommand; only one of them parses.
  std::map<std::string, std::string> values;
  bool analytic = false;
  std::map<std::string, CLI::App*> subcommands;
  for (const auto& e : cli::experiments()) {
    CLI::App* sub = app.add_subcommand(e.name, e.summary);
    sub->add_option("--config", config_path, "key=value file; flags override it");
    for (const auto& k : cli::config_keys()) {
      const std::string key = k.key;
      if (key == "analytic") {
        sub->add_flag("--analytic", analytic, k.help);
      } else {
        sub->add_option("--" + key, values[key], k.help);
      }
    }
    subcommands[e.name] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string experiment;
  CLI::App* sub = nullptr;
  for (const auto& [name, s] : subcommands) {
    if (s->parsed()) {
      experiment = name;
      sub = s;
    }
  }

  try {
    cli::Settings settings;
    if (!config_path.empty()) {
      settings = cli::read_config_file(config_path);
    }
    const char* env_threads = std::getenv("ADGLAB_THREADS");
    if (env_threads != nullptr && *env_threads != '\0') {
      settings["threads"] = {env_threads, "environment ADGLAB_THREADS"};
    }
    for (const auto& k : cli::config_keys()) {
      const std::string key = k.key;
      if (sub->get_option("--" + key)->count() == 0) {
        continue;
      }
      settings[key] = {key == "analytic" ? (analytic ? "true" : "false") : values[key],
                       "flag --" + key};
    }
    cli::run(cli::build_config(experiment, settings));
  } catch (const cli::ConfigError& e) {
    std::cerr << "adglab: config error: " << e.what() << '\n';
    return 2;
  } catch (const adglab::Error& e) {
    std::cerr << "adglab: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "adglab: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
