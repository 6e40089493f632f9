// Copyright 2026 The adglab Authors
// SPDX-License-Identifier: Apache-2.0

#include "experiments.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "adglab/analytic_ppp.hpp"
#include "adglab/csv.hpp"
#include "adglab/error.hpp"
#include "adglab/point_process.hpp"
#include "adglab/random.hpp"

#ifndef ADGLAB_VERSION
#define ADGLAB_VERSION "unknown"
#endif

namespace adglab::cli {

const std::vector<ExperimentInfo>& experiments() {
  static const std::vector<ExperimentInfo> list = {
      {"sample-pp", "one realisation of the point process, as x,y rows"},
      {"success-curve", "P(SINR > theta) over a dB grid with Wilson intervals, or the closed form"},
      {"adg", "asymptotic deployment gain against a PPP of the same intensity"},
      {"slope", "outage slope in dB per decade at small thresholds"},
      {"rate", "ergodic rate E[ln(1 + SINR)]; gain-shift approximation for singular, noiseless Rayleigh"},
      {"mean-sinr", "mean SINR under non-singular path loss"},
      {"contact-ccdf", "contact distance CCDF next to the Poisson reference"},
      {"kappa", "small-threshold outage coefficient kappa"},
  };
  return list;
}

const std::vector<KeyInfo>& config_keys() {
  static const std::vector<KeyInfo> keys = {
      {"process", "ppp | mcp | mhp | lattice (default ppp)"},
      {"lambda", "intensity of ppp and lattice (0.1)"},
      {"parent-intensity", "mcp parent intensity (0.01)"},
      {"mean-daughters", "mcp mean daughters per parent (10)"},
      {"cluster-radius", "mcp cluster radius (5)"},
      {"base-intensity", "mhp base intensity (0.263)"},
      {"hard-core-radius", "mhp hard-core radius (1.7)"},
      {"path-loss", "nonsingular | singular (nonsingular)"},
      {"alpha", "path-loss exponent, > 2 (4)"},
      {"fading", "rayleigh | nakagami | lognormal | composite (rayleigh)"},
      {"nakagami-m", "Nakagami parameter m for nakagami and composite (1)"},
      {"sigma-db", "shadowing spread in dB for lognormal and composite (2)"},
      {"noise", "noise power W (0)"},
      {"snr-db", "mean SNR in dB; sets W and excludes --noise"},
      {"window-width", "window width (100)"},
      {"window-height", "window height (100)"},
      {"topology", "torus | plane (torus)"},
      {"seed", "base seed (1)"},
      {"n", "replicates (100000)"},
      {"theta-lo", "lowest threshold in dB"},
      {"theta-hi", "highest threshold in dB"},
      {"theta-step", "threshold step in dB"},
      {"out", "output CSV; the sidecar goes to <out>.meta.json"},
      {"threads", "worker threads, 0 = all cores; ADGLAB_THREADS overrides the file"},
      {"analytic", "success-curve: closed-form PPP curve, no sampling (false)"},
      {"method", "adg: kappa | shift | both (kappa)"},
      {"ref-lambda", "intensity of the PPP reference (process intensity)"},
      {"p-lo", "adg shift: lower end of the probability window (0.99)"},
      {"p-hi", "adg shift: upper end of the probability window (0.9999)"},
      {"slope-lo", "slope: lower end of the fit range in dB (-30)"},
      {"slope-hi", "slope: upper end of the fit range in dB (-15)"},
      {"radius-max", "contact-ccdf: largest radius (15)"},
      {"radius-step", "contact-ccdf: radius step (0.5)"},
  };
  return keys;
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool known_key(const std::string& key) {
  const auto& keys = config_keys();
  return std::any_of(keys.begin(), keys.end(), [&](const KeyInfo& k) { return key == k.key; });
}

[[noreturn]] void bad_value(const std::string& key, const Setting& s, const std::string& what) {
  throw ConfigError(s.origin + ": field '" + key + "': " + what + ", got '" + s.value + "'");
}

double to_double(const std::string& key, const Setting& s) {
  double v = 0.0;
  const char* first = s.value.data();
  const char* last = first + s.value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    bad_value(key, s, "expected a finite number");
  }
  return v;
}

std::uint64_t to_unsigned(const std::string& key, const Setting& s) {
  std::uint64_t v = 0;
  const char* first = s.value.data();
  const char* last = first + s.value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    bad_value(key, s, "expected a non-negative integer");
  }
  return v;
}

bool to_bool(const std::string& key, const Setting& s) {
  if (s.value == "true" || s.value == "1" || s.value == "yes") {
    return true;
  }
  if (s.value == "false" || s.value == "0" || s.value == "no") {
    return false;
  }
  bad_value(key, s, "expected true or false");
}

std::string to_choice(const std::string& key, const Setting& s,
                      std::initializer_list<const char*> choices) {
  std::string list;
  for (const char* c : choices) {
    if (s.value == c) {
      return s.value;
    }
    list += list.empty() ? c : std::string(" | ") + c;
  }
  bad_value(key, s, "expected one of " + list);
}

class Reader {
 public:
  explicit Reader(const Settings& settings) : settings_(settings) {}

  const Setting* find(const std::string& key) const {
    const auto it = settings_.find(key);
    return it == settings_.end() ? nullptr : &it->second;
  }
  bool has(const std::string& key) const { return find(key) != nullptr; }

  double number(const std::string& key, double fallback) const {
    const Setting* s = find(key);
    return s ? to_double(key, *s) : fallback;
  }
  std::optional<double> maybe_number(const std::string& key) const {
    const Setting* s = find(key);
    return s ? std::optional<double>(to_double(key, *s)) : std::nullopt;
  }
  std::uint64_t integer(const std::string& key, std::uint64_t fallback) const {
    const Setting* s = find(key);
    return s ? to_unsigned(key, *s) : fallback;
  }
  bool flag(const std::string& key) const {
    const Setting* s = find(key);
    return s && to_bool(key, *s);
  }
  std::string choice(const std::string& key, const char* fallback,
                     std::initializer_list<const char*> choices) const {
    const Setting* s = find(key);
    return s ? to_choice(key, *s, choices) : fallback;
  }
  std::string text(const std::string& key) const {
    const Setting* s = find(key);
    return s ? s->value : std::string();
  }

 private:
  const Settings& settings_;
};

ProcessModel read_process(const Reader& r) {
  const std::string name = r.choice("process", "ppp", {"ppp", "mcp", "mhp", "lattice"});
  if (name == "mcp") {
    MaternCluster m;
    m.parent_intensity = r.number("parent-intensity", m.parent_intensity);
    m.mean_daughters = r.number("mean-daughters", m.mean_daughters);
    m.radius = r.number("cluster-radius", m.radius);
    return m;
  }
  if (name == "mhp") {
    MaternHardCore m;
    m.base_intensity = r.number("base-intensity", m.base_intensity);
    m.radius = r.number("hard-core-radius", m.radius);
    return m;
  }
  if (name == "lattice") {
    return TriangularLattice{r.number("lambda", 0.1)};
  }
  return Ppp{r.number("lambda", 0.1)};
}

FadingModel read_fading(const Reader& r) {
  const std::string name =
      r.choice("fading", "rayleigh", {"rayleigh", "nakagami", "lognormal", "composite"});
  const double m = r.number("nakagami-m", 1.0);
  const double sigma = r.number("sigma-db", 2.0);
  if (name == "nakagami") {
    return Nakagami{m};
  }
  if (name == "lognormal") {
    return LogNormal{sigma};
  }
  if (name == "composite") {
    return Composite{m, sigma};
  }
  return Rayleigh{};
}

// Runs a library validator and reports its complaint as a config error.
template <typename Fn>
void check(const std::string& what, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

std::vector<double> theta_grid(const ExperimentConfig& c) {
  double lo = -40.0;
  double hi = 20.0;
  double step = 1.0;
  if (c.experiment == "adg") {
    // the horizontal shift reads quantiles deep in the outage tail
    lo = -60.0;
    step = 0.25;
  } else if (c.experiment == "slope") {
    lo = c.slope_lo_db;
    hi = c.slope_hi_db;
  }
  return theta_grid_db(c.theta_lo_db.value_or(lo), c.theta_hi_db.value_or(hi),
                       c.theta_step_db.value_or(step));
}

double reference_intensity(const ExperimentConfig& c) {
  return c.ref_lambda.value_or(intensity_of(c.scenario.process));
}

Scenario reference_scenario(const ExperimentConfig& c) {
  Scenario ref = c.scenario;
  ref.process = Ppp{reference_intensity(c)};
  ref.seed = stream_seed(c.scenario.seed, 0x7070707265660000ULL);
  return ref;
}

std::string label(const Scenario& s) { return process_name(s.process); }

void run_sample_pp(const ExperimentConfig& c, std::ostream& os) {
  write_pattern_csv(os, sample(c.scenario.process, c.scenario.window, c.scenario.seed));
}

void run_success_curve(const ExperimentConfig& c, std::ostream& os) {
  const std::vector<double> grid = theta_grid(c);
  if (c.analytic) {
    const double alpha = c.scenario.path_loss.alpha;
    write_curve_csv(os, analytic_curve(AnalyticPppCurve{alpha}, grid));
    return;
  }
  write_curve_csv(os, estimate_success_curve(c.scenario, grid, c.n, c.threads));
}

void run_adg(const ExperimentConfig& c, std::ostream& os) {
  const Scenario& s = c.scenario;
  const SmallTCoefficient coeff = small_t_coefficient(s.fading);
  const std::vector<SinrSample> samples = simulate(s, c.n, c.threads);
  std::vector<AdgRow> rows;
  auto push = [&](const AdgEstimate& e) {
    rows.push_back({label(s), fading_name(s.fading), s.path_loss.alpha, e});
  };

  if (c.method == "kappa" || c.method == "both") {
    const KappaEstimate kappa = kappa_from(samples, coeff, s.path_loss, s.noise);
    push(adg_from_kappas(kappa, reference_kappa(s, reference_intensity(c), c.n, c.threads),
                         coeff.m));
  }
  if (c.method == "shift" || c.method == "both") {
    const std::vector<double> grid = theta_grid(c);
    const SuccessCurve curve = success_curve_from(samples, grid);
    if (closed_form_reference_applies(s)) {
      push(adg_horizontal_shift(curve, AnalyticPppCurve{s.path_loss.alpha}, c.p_window, coeff.m));
    } else {
      const SuccessCurve ref = estimate_success_curve(reference_scenario(c), grid, c.n, c.threads);
      push(adg_horizontal_shift(curve, ref, c.p_window, coeff.m));
    }
  }
  write_adg_csv(os, rows);
}

void run_slope(const ExperimentConfig& c, std::ostream& os) {
  const Scenario& s = c.scenario;
  const SuccessCurve curve = estimate_success_curve(s, theta_grid(c), c.n, c.threads);
  const SlopeFit fit = outage_slope(curve, c.slope_lo_db, c.slope_hi_db);
  os << "process,fading,alpha,m,lo_db,hi_db,db_per_decade,r_squared,points\n";
  os << label(s) << ',' << fading_name(s.fading) << ',' << format_double(s.path_loss.alpha) << ','
     << format_double(small_t_coefficient(s.fading).m) << ',' << format_double(c.slope_lo_db)
     << ',' << format_double(c.slope_hi_db) << ',' << format_double(fit.db_per_decade) << ','
     << format_double(fit.r_squared) << ',' << fit.points << '\n';
}

void run_rate(const ExperimentConfig& c, std::ostream& os) {
  const Scenario& s = c.scenario;
  const SmallTCoefficient coeff = small_t_coefficient(s.fading);
  const std::vector<SinrSample> samples = simulate(s, c.n, c.threads);
  const MeanEstimate rate = ergodic_rate_from(samples);
  const AdgEstimate g =
      adg_from_kappas(kappa_from(samples, coeff, s.path_loss, s.noise),
                      reference_kappa(s, reference_intensity(c), c.n, c.threads), coeff.m);
  // the shifted curve is the closed form, so the approximation needs its channel
  const double approx = closed_form_reference_applies(s)
                            ? ergodic_rate_from_adg(g.g_hat, s.path_loss.alpha)
                            : std::numeric_limits<double>::quiet_NaN();
  os << "process,fading,alpha,rate_mc,stderr,n,g_hat,rate_from_adg\n";
  os << label(s) << ',' << fading_name(s.fading) << ',' << format_double(s.path_loss.alpha) << ','
     << format_double(rate.mean) << ',' << format_double(rate.stderr) << ',' << rate.n << ','
     << format_double(g.g_hat) << ',' << format_double(approx) << '\n';
}

void run_mean_sinr(const ExperimentConfig& c, std::ostream& os) {
  const Scenario& s = c.scenario;
  const MeanEstimate m = mean_sinr_mc(s, c.n, c.threads);
  os << "process,fading,alpha,noise,mean_sinr,stderr,n\n";
  os << label(s) << ',' << fading_name(s.fading) << ',' << format_double(s.path_loss.alpha) << ','
     << format_double(s.noise) << ',' << format_double(m.mean) << ',' << format_double(m.stderr)
     << ',' << m.n << '\n';
}

void run_contact_ccdf(const ExperimentConfig& c, std::ostream& os) {
  const Scenario& s = c.scenario;
  std::vector<double> radii;
  for (std::size_t i = 0;; ++i) {
    const double r = static_cast<double>(i) * c.radius_step;
    if (r > c.radius_max + 1e-9 * c.radius_step) {
      break;
    }
    radii.push_back(r);
  }
  const std::vector<double> ccdf =
      empirical_contact_ccdf(s.process, s.window, radii, c.n, s.seed);
  const double lambda = intensity_of(s.process);
  os << "r,ccdf,poisson_ccdf\n";
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double poisson = std::exp(-lambda * std::numbers::pi * radii[i] * radii[i]);
    os << format_double(radii[i]) << ',' << format_double(ccdf[i]) << ','
       << format_double(poisson) << '\n';
  }
}

void run_kappa(const ExperimentConfig& c, std::ostream& os) {
  const Scenario& s = c.scenario;
  const SmallTCoefficient coeff = small_t_coefficient(s.fading);
  const KappaEstimate k = estimate_kappa(s, c.n, c.threads);
  os << "process,fading,alpha,path_loss,a,m,kappa,stderr,n\n";
  os << label(s) << ',' << fading_name(s.fading) << ',' << format_double(s.path_loss.alpha) << ','
     << path_loss_name(s.path_loss) << ',' << format_double(coeff.a) << ','
     << format_double(coeff.m) << ',' << format_double(k.kappa) << ','
     << format_double(k.stderr) << ',' << k.n << '\n';
}

nlohmann::ordered_json effective_config(const ExperimentConfig& c) {
  const Scenario& s = c.scenario;
  nlohmann::ordered_json j;
  j["experiment"] = c.experiment;
  j["process"] = process_name(s.process);
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, MaternCluster>) {
          j["parent-intensity"] = m.parent_intensity;
          j["mean-daughters"] = m.mean_daughters;
          j["cluster-radius"] = m.radius;
        } else if constexpr (std::is_same_v<T, MaternHardCore>) {
          j["base-intensity"] = m.base_intensity;
          j["hard-core-radius"] = m.radius;
        } else {
          j["lambda"] = m.intensity;
        }
      },
      s.process);
  j["path-loss"] = path_loss_name(s.path_loss);
  j["alpha"] = s.path_loss.alpha;
  j["fading"] = fading_name(s.fading);
  j["noise"] = s.noise;
  j["window-width"] = s.window.width;
  j["window-height"] = s.window.height;
  j["topology"] = s.window.topology == Topology::Torus ? "torus" : "plane";
  j["seed"] = s.seed;
  j["n"] = c.n;
  const std::vector<double> grid = theta_grid(c);
  j["theta-lo"] = grid.front();
  j["theta-hi"] = grid.back();
  j["theta-step"] = grid.size() > 1 ? grid[1] - grid[0] : 0.0;
  j["analytic"] = c.analytic;
  j["method"] = c.method;
  j["ref-lambda"] = reference_intensity(c);
  j["p-lo"] = c.p_window.lo;
  j["p-hi"] = c.p_window.hi;
  j["slope-lo"] = c.slope_lo_db;
  j["slope-hi"] = c.slope_hi_db;
  j["radius-max"] = c.radius_max;
  j["radius-step"] = c.radius_step;
  return j;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << text;
  f.close();
  if (!f) {
    throw std::runtime_error("cannot write " + path.string());
  }
}

}  // namespace

Settings read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config: cannot open '" + path.string() + "'");
  }
  Settings settings;
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    const std::string where = path.filename().string() + " line " + std::to_string(number);
    const auto hash = line.find('#');
    const std::string body = trim(line.substr(0, hash));
    if (body.empty()) {
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(where + ": expected key=value, got '" + body + "'");
    }
    const std::string key = trim(body.substr(0, eq));
    if (!known_key(key) || key == "config") {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
    settings[key] = {trim(body.substr(eq + 1)), where};
  }
  return settings;
}

ExperimentConfig build_config(const std::string& experiment, const Settings& settings) {
  const Reader r(settings);
  ExperimentConfig c;
  c.experiment = experiment;
  c.settings = settings;

  Scenario& s = c.scenario;
  s.process = read_process(r);
  s.path_loss.kind = r.choice("path-loss", "nonsingular", {"nonsingular", "singular"}) == "singular"
                         ? PathLossKind::Singular
                         : PathLossKind::NonSingular;
  s.path_loss.alpha = r.number("alpha", 4.0);
  s.fading = read_fading(r);
  if (r.has("noise") && r.has("snr-db")) {
    throw ConfigError(r.find("snr-db")->origin + ": field 'snr-db' conflicts with 'noise'");
  }
  s.window.width = r.number("window-width", 100.0);
  s.window.height = r.number("window-height", 100.0);
  s.window.topology =
      r.choice("topology", "torus", {"torus", "plane"}) == "plane" ? Topology::PlaneWithGuard
                                                                   : Topology::Torus;
  s.seed = r.integer("seed", 1);

  check("process", [&] { validate(s.process); });
  check("path-loss", [&] { validate(s.path_loss); });
  check("fading", [&] { validate(s.fading); });
  s.noise = r.has("snr-db") ? noise_for_snr_db(s.path_loss, r.number("snr-db", 0.0))
                            : r.number("noise", 0.0);
  check("scenario", [&] { validate(s); });

  c.n = r.integer("n", c.n);
  if (c.n == 0) {
    throw ConfigError(r.find("n")->origin + ": field 'n': must be positive");
  }
  c.theta_lo_db = r.maybe_number("theta-lo");
  c.theta_hi_db = r.maybe_number("theta-hi");
  c.theta_step_db = r.maybe_number("theta-step");
  c.threads = static_cast<unsigned>(r.integer("threads", 0));
  c.analytic = r.flag("analytic");
  c.method = r.choice("method", "kappa", {"kappa", "shift", "both"});
  c.ref_lambda = r.maybe_number("ref-lambda");
  c.p_window = {r.number("p-lo", c.p_window.lo), r.number("p-hi", c.p_window.hi)};
  c.slope_lo_db = r.number("slope-lo", c.slope_lo_db);
  c.slope_hi_db = r.number("slope-hi", c.slope_hi_db);
  c.radius_max = r.number("radius-max", c.radius_max);
  c.radius_step = r.number("radius-step", c.radius_step);

  const std::string out = r.text("out");
  c.out = out.empty() ? std::filesystem::path(experiment + ".csv") : std::filesystem::path(out);

  check("theta grid", [&] { theta_grid(c); });
  if (c.ref_lambda && !(*c.ref_lambda > 0.0)) {
    throw ConfigError(r.find("ref-lambda")->origin + ": field 'ref-lambda': must be positive");
  }
  if (!(0.0 < c.p_window.lo && c.p_window.lo < c.p_window.hi && c.p_window.hi < 1.0)) {
    throw ConfigError("fields 'p-lo', 'p-hi': need 0 < p-lo < p-hi < 1");
  }
  if (!(c.slope_lo_db < c.slope_hi_db)) {
    throw ConfigError("fields 'slope-lo', 'slope-hi': need slope-lo < slope-hi");
  }
  if (!(c.radius_step > 0.0 && c.radius_max >= 0.0)) {
    throw ConfigError("fields 'radius-max', 'radius-step': need a positive step");
  }
  if (c.analytic && experiment != "success-curve") {
    throw ConfigError("field 'analytic': only success-curve has a closed form");
  }
  if (c.analytic && !std::holds_alternative<Ppp>(s.process)) {
    throw ConfigError("field 'analytic': the closed form exists only for process=ppp");
  }
  return c;
}

void run(const ExperimentConfig& c) {
  const auto start = std::chrono::steady_clock::now();
  std::ostringstream csv;
  const std::string& e = c.experiment;
  if (e == "sample-pp") {
    run_sample_pp(c, csv);
  } else if (e == "success-curve") {
    run_success_curve(c, csv);
  } else if (e == "adg") {
    run_adg(c, csv);
  } else if (e == "slope") {
    run_slope(c, csv);
  } else if (e == "rate") {
    run_rate(c, csv);
  } else if (e == "mean-sinr") {
    run_mean_sinr(c, csv);
  } else if (e == "contact-ccdf") {
    run_contact_ccdf(c, csv);
  } else if (e == "kappa") {
    run_kappa(c, csv);
  } else {
    throw ConfigError("unknown experiment '" + e + "'");
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_file(c.out, csv.str());

  nlohmann::ordered_json meta;
  meta["experiment"] = c.experiment;
  meta["version"] = ADGLAB_VERSION;
  meta["seed"] = c.scenario.seed;
  meta["threads"] = c.threads;
  meta["wall_time_s"] = wall;
  meta["output"] = c.out.filename().string();
  meta["config"] = effective_config(c);
  nlohmann::ordered_json given = nlohmann::ordered_json::object();
  for (const auto& [key, setting] : c.settings) {
    given[key] = setting.value;
  }
  meta["given"] = given;
  write_file(c.out.string() + ".meta.json", meta.dump(2) + "\n");
}

}  // namespace adglab::cli
