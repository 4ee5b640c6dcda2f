// Copyright 2026 The cascade-qst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Named scenarios, parameter sweeps, file output and the command-line front
// end.

#ifndef CASCADE_RUNNER_HPP
#define CASCADE_RUNNER_HPP

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cascade/dynamics.hpp"
#include "cascade/errors.hpp"
#include "cascade/model.hpp"
#include "cascade/parallel.hpp"
#include "cascade/synthesis.hpp"
#include "cascade/trajectories.hpp"

namespace cascade {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Configuration

struct ScenarioConfig {
  std::string scenario = "transfer";
  SystemParams params;
  std::string tail = "constant:1";  // "constant:<level>" or "file:<csv path>"
  std::vector<double> kappa_prime_over_kappa{0.0, 0.01, 0.02, 0.03, 0.04, 0.05,
                                             0.06, 0.07, 0.08, 0.09, 0.10};
  std::vector<double> gamma_over_delta{0.0, 0.01, 0.05};
  std::filesystem::path out_dir = ".";
  std::uint64_t seed = 1;
  std::string format = "csv";
  Tolerances tolerances;
  double output_stride = 100.0;
  std::size_t n_traj = 1000;
  std::string initial_state = "matched";  // matched | excited
  std::string pulse_mode = "ideal";       // ideal | mismatched | zero
  std::size_t theta_points = 3;
  std::size_t phi_points = 4;
  double truncation_threshold = 1e-6;
  bool require_nonnegative = false;

  void validate() const {
    params.validate();
    tolerances.validate();
    if (!(output_stride > 0)) throw InvalidParameter("output_stride", "must be > 0");
    if (format != "csv" && format != "json") throw InvalidParameter("format", "must be csv or json");
    if (initial_state != "matched" && initial_state != "excited")
      throw InvalidParameter("initial_state", "must be matched or excited");
    if (pulse_mode != "ideal" && pulse_mode != "mismatched" && pulse_mode != "zero")
      throw InvalidParameter("pulse_mode", "must be ideal, mismatched or zero");
    if (kappa_prime_over_kappa.empty())
      throw InvalidParameter("kappa_prime_over_kappa", "sweep axis is empty");
    if (gamma_over_delta.empty()) throw InvalidParameter("gamma_over_delta", "sweep axis is empty");
    for (double v : kappa_prime_over_kappa)
      if (!(v >= 0)) throw InvalidParameter("kappa_prime_over_kappa", "values must be >= 0");
    for (double v : gamma_over_delta)
      if (!(v >= 0)) throw InvalidParameter("gamma_over_delta", "values must be >= 0");
    if (n_traj < 1) throw InvalidParameter("n_traj", "must be >= 1");
    if (theta_points < 1) throw InvalidParameter("theta_points", "must be >= 1");
    if (phi_points < 1) throw InvalidParameter("phi_points", "must be >= 1");
    if (!(truncation_threshold > 0))
      throw InvalidParameter("truncation_threshold", "must be > 0");
  }
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline double parse_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (trim(text.substr(used)).empty()) return v;
  } catch (const std::exception&) {
  }
  throw InvalidParameter(key, "expected a number, got '" + text + "'");
}

inline std::uint64_t parse_uint(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    if (!text.empty() && text.front() != '-') {
      const auto v = std::stoull(text, &used);
      if (trim(text.substr(used)).empty()) return v;
    }
  } catch (const std::exception&) {
  }
  throw InvalidParameter(key, "expected a nonnegative integer, got '" + text + "'");
}

inline bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw InvalidParameter(key, "expected true or false, got '" + text + "'");
}

inline std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_double(key, item));
  }
  return out;
}

}  // namespace detail

/// Applies `key = value` lines (with `#` comments) on top of `config`.
inline void apply_config_text(ScenarioConfig& config, const std::string& text) {
  std::stringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidParameter("config", "line " + std::to_string(lineno) + " is not 'key = value'");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    auto num = [&] { return detail::parse_double(key, value); };
    auto count = [&] { return static_cast<std::size_t>(detail::parse_uint(key, value)); };

    SystemParams& p = config.params;
    if (key == "scenario") config.scenario = value;
    else if (key == "kappa") p.kappa = num();
    else if (key == "kappa_prime") p.kappa_prime = num();
    else if (key == "g_vacuum") p.g_vacuum = num();
    else if (key == "delta_big") p.delta_big = num();
    else if (key == "gamma") p.gamma = num();
    else if (key == "delta_raman") p.delta_raman = num();
    else if (key == "t_max") p.t_max = num();
    else if (key == "grid_step") p.grid_step = num();
    else if (key == "adiabatic_factor") p.adiabatic_factor = num();
    else if (key == "tail") config.tail = value;
    else if (key == "kappa_prime_over_kappa") config.kappa_prime_over_kappa = detail::parse_list(key, value);
    else if (key == "gamma_over_delta") config.gamma_over_delta = detail::parse_list(key, value);
    else if (key == "out") config.out_dir = value;
    else if (key == "seed") config.seed = detail::parse_uint(key, value);
    else if (key == "format") config.format = value;
    else if (key == "tol") config.tolerances.relative = num();
    else if (key == "atol") config.tolerances.absolute = num();
    else if (key == "output_stride") config.output_stride = num();
    else if (key == "n_traj") config.n_traj = count();
    else if (key == "initial_state") config.initial_state = value;
    else if (key == "pulse_mode") config.pulse_mode = value;
    else if (key == "theta_points") config.theta_points = count();
    else if (key == "phi_points") config.phi_points = count();
    else if (key == "truncation_threshold") config.truncation_threshold = num();
    else if (key == "require_nonnegative") config.require_nonnegative = detail::parse_bool(key, value);
    else throw InvalidParameter(key, "unknown configuration key");
  }
}

inline ScenarioConfig load_config_file(const std::filesystem::path& path, ScenarioConfig base = {}) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("config", "cannot read '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  apply_config_text(base, ss.str());
  return base;
}

/// Reads a two-column CSV (t, g1) as a monotone cubic tail. A non-numeric
/// first line is taken as a header.
inline TailShape load_tail_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("tail", "cannot read '" + path.string() + "'");
  std::vector<double> t, g;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    line = detail::trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw InvalidParameter("tail", "tail CSV rows need two columns");
    try {
      const double a = std::stod(line.substr(0, comma));
      const double b = std::stod(line.substr(comma + 1));
      t.push_back(a);
      g.push_back(b);
    } catch (const std::exception&) {
      if (!first) throw InvalidParameter("tail", "malformed tail CSV row '" + line + "'");
    }
    first = false;
  }
  if (t.size() < 2) throw InvalidParameter("tail", "tail CSV needs at least two rows");
  return TailShape::sampled(HermiteSpline::monotone(std::move(t), std::move(g)));
}

inline TailShape make_tail(const ScenarioConfig& config) {
  const std::string& d = config.tail;
  if (d.rfind("constant:", 0) == 0)
    return TailShape::constant(detail::parse_double("tail", d.substr(9)) * config.params.kappa);
  if (d.rfind("file:", 0) == 0) return load_tail_csv(d.substr(5));
  throw InvalidParameter("tail", "expected 'constant:<level>' or 'file:<path>'");
}

// ---------------------------------------------------------------------------
// Output helpers

namespace detail {

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidParameter("out", "cannot write '" + path.string() + "'");
  out << content;
}

/// LF-terminated CSV with a header row.
class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string>& header) {
    for (std::size_t k = 0; k < header.size(); ++k) text_ += (k ? "," : "") + header[k];
    text_ += '\n';
  }
  void row(const std::vector<double>& values) {
    for (std::size_t k = 0; k < values.size(); ++k) text_ += (k ? "," : "") + fmt(values[k]);
    text_ += '\n';
  }
  const std::string& str() const { return text_; }

 private:
  std::string text_;
};

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace detail

inline json params_to_json(const SystemParams& p) {
  json j{{"kappa", p.kappa},           {"kappa_prime", p.kappa_prime}, {"g_vacuum", p.g_vacuum},
         {"delta_big", p.delta_big},   {"gamma", p.gamma},             {"delta_raman", p.raman_detuning()},
         {"t_max", p.t_max},           {"grid_step", p.grid_step}};
  return j;
}

// ---------------------------------------------------------------------------
// Summaries (JSON round-trippable)

struct TransferSummary {
  double fidelity = 0;
  double jump_probability = 0;
  double max_dark_residual = 0;
  double norm_min = 0;
  double norm_max = 0;
  double alpha1_sq_at_0 = 0;
  double alpha2_sq_at_0 = 0;
  double beta_a_sq_at_0 = 0;
  double pulse_truncation = 0;
  double spontaneous_emission_estimate = 0;
  std::vector<std::string> warnings;

  bool operator==(const TransferSummary&) const = default;
};

inline void to_json(json& j, const TransferSummary& s) {
  j = json{{"fidelity", s.fidelity},
           {"jump_probability", s.jump_probability},
           {"max_dark_residual", s.max_dark_residual},
           {"norm_min", s.norm_min},
           {"norm_max", s.norm_max},
           {"alpha1_sq_at_0", s.alpha1_sq_at_0},
           {"alpha2_sq_at_0", s.alpha2_sq_at_0},
           {"beta_a_sq_at_0", s.beta_a_sq_at_0},
           {"pulse_truncation", s.pulse_truncation},
           {"spontaneous_emission_estimate", s.spontaneous_emission_estimate},
           {"warnings", s.warnings}};
}

inline void from_json(const json& j, TransferSummary& s) {
  j.at("fidelity").get_to(s.fidelity);
  j.at("jump_probability").get_to(s.jump_probability);
  j.at("max_dark_residual").get_to(s.max_dark_residual);
  j.at("norm_min").get_to(s.norm_min);
  j.at("norm_max").get_to(s.norm_max);
  j.at("alpha1_sq_at_0").get_to(s.alpha1_sq_at_0);
  j.at("alpha2_sq_at_0").get_to(s.alpha2_sq_at_0);
  j.at("beta_a_sq_at_0").get_to(s.beta_a_sq_at_0);
  j.at("pulse_truncation").get_to(s.pulse_truncation);
  j.at("spontaneous_emission_estimate").get_to(s.spontaneous_emission_estimate);
  j.at("warnings").get_to(s.warnings);
}

struct SweepPoint {
  double kappa_prime_over_kappa = 0;
  double gamma_over_delta = 0;
  double fidelity = 0;
  double jump_probability = 0;

  bool operator==(const SweepPoint&) const = default;
};

/// Fidelity over the (kappa'/kappa, Gamma/Delta) grid. `points` is stored
/// row by row: one row per Gamma/Delta value.
struct SweepResult {
  std::vector<double> kappa_prime_over_kappa;
  std::vector<double> gamma_over_delta;
  std::vector<SweepPoint> points;
  std::vector<bool> row_nonincreasing;  // per Gamma/Delta row, in kappa'
  bool ordered_by_gamma = false;        // rows ordered pointwise by Gamma/Delta

  const SweepPoint& at(std::size_t gamma_index, std::size_t kp_index) const {
    return points[gamma_index * kappa_prime_over_kappa.size() + kp_index];
  }

  bool operator==(const SweepResult&) const = default;
};

inline void to_json(json& j, const SweepPoint& p) {
  j = json{{"kappa_prime_over_kappa", p.kappa_prime_over_kappa},
           {"gamma_over_delta", p.gamma_over_delta},
           {"fidelity", p.fidelity},
           {"jump_probability", p.jump_probability}};
}

inline void from_json(const json& j, SweepPoint& p) {
  j.at("kappa_prime_over_kappa").get_to(p.kappa_prime_over_kappa);
  j.at("gamma_over_delta").get_to(p.gamma_over_delta);
  j.at("fidelity").get_to(p.fidelity);
  j.at("jump_probability").get_to(p.jump_probability);
}

inline void to_json(json& j, const SweepResult& r) {
  j = json{{"kappa_prime_over_kappa", r.kappa_prime_over_kappa},
           {"gamma_over_delta", r.gamma_over_delta},
           {"points", r.points},
           {"row_nonincreasing", r.row_nonincreasing},
           {"ordered_by_gamma", r.ordered_by_gamma}};
}

inline void from_json(const json& j, SweepResult& r) {
  j.at("kappa_prime_over_kappa").get_to(r.kappa_prime_over_kappa);
  j.at("gamma_over_delta").get_to(r.gamma_over_delta);
  j.at("points").get_to(r.points);
  j.at("row_nonincreasing").get_to(r.row_nonincreasing);
  j.at("ordered_by_gamma").get_to(r.ordered_by_gamma);
}

struct TrajectorySummary {
  std::size_t n_traj = 0;
  std::uint64_t seed = 0;
  std::size_t total_jumps = 0;
  double jump_fraction = 0;
  double loss_fraction = 0;
  double final_fidelity_mean = 0;
  double final_fidelity_var = 0;
  double deterministic_jump_probability = 0;

  bool operator==(const TrajectorySummary&) const = default;
};

inline void to_json(json& j, const TrajectorySummary& s) {
  j = json{{"n_traj", s.n_traj},
           {"seed", s.seed},
           {"total_jumps", s.total_jumps},
           {"jump_fraction", s.jump_fraction},
           {"loss_fraction", s.loss_fraction},
           {"final_fidelity_mean", s.final_fidelity_mean},
           {"final_fidelity_var", s.final_fidelity_var},
           {"deterministic_jump_probability", s.deterministic_jump_probability}};
}

inline void from_json(const json& j, TrajectorySummary& s) {
  j.at("n_traj").get_to(s.n_traj);
  j.at("seed").get_to(s.seed);
  j.at("total_jumps").get_to(s.total_jumps);
  j.at("jump_fraction").get_to(s.jump_fraction);
  j.at("loss_fraction").get_to(s.loss_fraction);
  j.at("final_fidelity_mean").get_to(s.final_fidelity_mean);
  j.at("final_fidelity_var").get_to(s.final_fidelity_var);
  j.at("deterministic_jump_probability").get_to(s.deterministic_jump_probability);
}

// ---------------------------------------------------------------------------
// Scenario building blocks

inline PulsePair synthesize_pulses(const ScenarioConfig& config) {
  SynthesisSpec spec;
  spec.tail = make_tail(config);
  spec.params = config.params;
  spec.tolerances = config.tolerances;
  spec.truncation_threshold = config.truncation_threshold;
  spec.require_nonnegative = config.require_nonnegative;
  return synthesize(spec);
}

/// Evolution set-up for the configured pulse mode and initial state.
inline EvolutionConfig make_evolution(const ScenarioConfig& config, const PulsePair& pair) {
  EvolutionConfig ev;
  ev.params = config.params;
  ev.tolerances = config.tolerances;
  ev.output_stride = config.output_stride;
  if (config.pulse_mode == "ideal") {
    ev.pulse1 = pair.pulse1;
    ev.pulse2 = pair.pulse2;
  } else if (config.pulse_mode == "mismatched") {
    ev.pulse1 = pair.pulse1;
    ev.pulse2 = pair.pulse1;
  } else {
    ev.pulse1 = PulseShape::zero(config.params);
    ev.pulse2 = ev.pulse1;
  }
  if (config.initial_state == "matched") {
    ev.initial = pair.matched_initial_state();
  } else {
    ev.initial = AmplitudeState{};
    ev.initial.alpha1 = 1.0;
  }
  return ev;
}

inline TransferSummary summarize(const TransferRecord& rec, const PulsePair& pair,
                                 const SystemParams& params) {
  TransferSummary s;
  s.fidelity = rec.fidelity;
  s.jump_probability = rec.jump_probability;
  s.max_dark_residual = rec.max_dark_residual();
  s.norm_min = *std::min_element(rec.norm.begin(), rec.norm.end());
  s.norm_max = *std::max_element(rec.norm.begin(), rec.norm.end());
  const std::size_t mid = rec.times.size() / 2;
  s.alpha1_sq_at_0 = std::norm(rec.states[mid].alpha1);
  s.alpha2_sq_at_0 = std::norm(rec.states[mid].alpha2);
  s.beta_a_sq_at_0 = std::norm(rec.states[mid].beta_a());
  s.pulse_truncation = pair.truncation();
  s.spontaneous_emission_estimate = spontaneous_emission_estimate(params, rec.pulse1);
  s.warnings = pair.warnings;
  return s;
}

// ---------------------------------------------------------------------------
// Scenarios

struct TransferResult {
  TransferRecord record;
  TransferSummary summary;
};

/// Ideal transfer with the constant tail: time series plus summary.
inline TransferResult run_transfer(const ScenarioConfig& config) {
  config.validate();
  const PulsePair pair = synthesize_pulses(config);
  TransferResult res;
  res.record = evolve(make_evolution(config, pair));
  res.summary = summarize(res.record, pair, config.params);

  const TransferRecord& rec = res.record;
  const std::vector<std::string> cols{"t",         "g1",         "g2",   "alpha1_sq", "alpha2_sq",
                                      "beta_a_sq", "beta_s_abs", "norm"};
  auto row = [&](std::size_t k) {
    const double t = rec.times[k];
    const AmplitudeState& s = rec.states[k];
    return std::vector<double>{t,
                               std::real(rec.pulse1.coupling_at(t)),
                               std::real(rec.pulse2.coupling_at(t)),
                               std::norm(s.alpha1),
                               std::norm(s.alpha2),
                               std::norm(s.beta_a()),
                               rec.dark_residual[k],
                               rec.norm[k]};
  };
  if (config.format == "csv") {
    detail::CsvWriter csv(cols);
    for (std::size_t k = 0; k < rec.times.size(); ++k) csv.row(row(k));
    detail::write_file(config.out_dir / "transfer.csv", csv.str());
  } else {
    json series = json::object();
    for (const auto& c : cols) series[c] = json::array();
    for (std::size_t k = 0; k < rec.times.size(); ++k) {
      const auto r = row(k);
      for (std::size_t c = 0; c < cols.size(); ++c) series[cols[c]].push_back(r[c]);
    }
    detail::write_file(config.out_dir / "transfer.json", detail::dump(series));
  }
  json summary = res.summary;
  summary["params"] = params_to_json(config.params);
  detail::write_file(config.out_dir / "transfer_summary.json", detail::dump(summary));
  return res;
}

/// Fidelity over the (kappa'/kappa, Gamma/Delta) grid for the ideal pulses.
inline SweepResult compute_sweep(const ScenarioConfig& config) {
  config.validate();
  const PulsePair pair = synthesize_pulses(config);
  const EvolutionConfig base = make_evolution(config, pair);

  SweepResult res;
  res.kappa_prime_over_kappa = config.kappa_prime_over_kappa;
  res.gamma_over_delta = config.gamma_over_delta;
  const std::size_t nk = res.kappa_prime_over_kappa.size();
  const std::size_t ng = res.gamma_over_delta.size();
  res.points.resize(nk * ng);
  parallel_for(nk * ng, [&](std::size_t idx) {
    const std::size_t gi = idx / nk, ki = idx % nk;
    EvolutionConfig ev = base;
    ev.params.kappa_prime = res.kappa_prime_over_kappa[ki] * config.params.kappa;
    ev.params.gamma = res.gamma_over_delta[gi] * std::abs(config.params.delta_big);
    const TransferRecord rec = evolve(ev);
    res.points[idx] = {res.kappa_prime_over_kappa[ki], res.gamma_over_delta[gi], rec.fidelity,
                       rec.jump_probability};
  });

  // Monotonicity flags, with slack at integrator-tolerance level.
  const double slack = 10.0 * config.tolerances.relative;
  res.row_nonincreasing.assign(ng, true);
  for (std::size_t gi = 0; gi < ng; ++gi) {
    for (std::size_t ki = 0; ki + 1 < nk; ++ki) {
      const bool ascending = res.kappa_prime_over_kappa[ki + 1] >= res.kappa_prime_over_kappa[ki];
      const double a = res.at(gi, ki).fidelity, b = res.at(gi, ki + 1).fidelity;
      if (ascending ? b > a + slack : a > b + slack) res.row_nonincreasing[gi] = false;
    }
  }
  res.ordered_by_gamma = true;
  for (std::size_t gi = 0; gi < ng; ++gi)
    for (std::size_t gj = 0; gj < ng; ++gj) {
      if (!(res.gamma_over_delta[gj] > res.gamma_over_delta[gi])) continue;
      for (std::size_t ki = 0; ki < nk; ++ki)
        if (res.at(gj, ki).fidelity > res.at(gi, ki).fidelity + slack) res.ordered_by_gamma = false;
    }
  return res;
}

inline SweepResult run_sweep(const ScenarioConfig& config) {
  SweepResult res = compute_sweep(config);
  if (config.format == "csv") {
    detail::CsvWriter all({"kappa_prime_over_kappa", "gamma_over_delta", "fidelity", "jump_probability"});
    for (const auto& p : res.points)
      all.row({p.kappa_prime_over_kappa, p.gamma_over_delta, p.fidelity, p.jump_probability});
    detail::write_file(config.out_dir / "sweep.csv", all.str());
    for (std::size_t gi = 0; gi < res.gamma_over_delta.size(); ++gi) {
      detail::CsvWriter curve({"kappa_prime_over_kappa", "fidelity"});
      for (std::size_t ki = 0; ki < res.kappa_prime_over_kappa.size(); ++ki)
        curve.row({res.at(gi, ki).kappa_prime_over_kappa, res.at(gi, ki).fidelity});
      detail::write_file(config.out_dir / ("sweep_curve_gamma_over_delta_" +
                                           detail::fmt(res.gamma_over_delta[gi]) + ".csv"),
                         curve.str());
    }
  } else {
    detail::write_file(config.out_dir / "sweep.json", detail::dump(json(res)));
  }
  json summary{{"row_nonincreasing", res.row_nonincreasing},
               {"ordered_by_gamma", res.ordered_by_gamma},
               {"fidelity_at_origin", res.points.front().fidelity},
               {"params", params_to_json(config.params)}};
  detail::write_file(config.out_dir / "sweep_summary.json", detail::dump(summary));
  return res;
}

/// Pulse pair, compensating phases and reduced amplitudes on the synthesis grid.
inline PulsePair run_synthesize(const ScenarioConfig& config) {
  config.validate();
  PulsePair pair = synthesize_pulses(config);
  const auto red = pair.reduced_full();
  const auto t = pair.pulse1.times();
  const std::vector<std::string> cols{"t",      "g1",     "g2",     "omega1", "omega2", "phase1",
                                      "phase2", "stark1", "stark2", "alpha1", "alpha2", "beta_a"};
  auto row = [&](std::size_t k) {
    return std::vector<double>{t[k],
                               std::real(pair.pulse1.g_eff()[k]),
                               std::real(pair.pulse2.g_eff()[k]),
                               pair.pulse1.rabi()[k],
                               pair.pulse2.rabi()[k],
                               pair.pulse1.phase()[k],
                               pair.pulse2.phase()[k],
                               std::real(pair.pulse1.stark()[k]),
                               std::real(pair.pulse2.stark()[k]),
                               red.alpha1[k],
                               red.alpha2[k],
                               red.beta_a[k]};
  };
  if (config.format == "csv") {
    detail::CsvWriter csv(cols);
    for (std::size_t k = 0; k < t.size(); ++k) csv.row(row(k));
    detail::write_file(config.out_dir / "pulses.csv", csv.str());
  } else {
    json series = json::object();
    for (const auto& c : cols) series[c] = json::array();
    for (std::size_t k = 0; k < t.size(); ++k) {
      const auto r = row(k);
      for (std::size_t c = 0; c < cols.size(); ++c) series[cols[c]].push_back(r[c]);
    }
    detail::write_file(config.out_dir / "pulses.json", detail::dump(series));
  }
  const std::size_t mid = t.size() / 2;
  json summary{{"alpha1_at_0", pair.forward.alpha1.front()},
               {"beta_a_at_0", pair.forward.beta_a.front()},
               {"g1_at_0", pair.coupling1.values()[mid]},
               {"g1_at_0_minus", pair.coupling1(-pair.forward.times[1]) },
               {"g1_min", *std::min_element(pair.coupling1.values().begin(), pair.coupling1.values().end())},
               {"pulse_truncation", pair.truncation()},
               {"warnings", pair.warnings},
               {"params", params_to_json(config.params)}};
  detail::write_file(config.out_dir / "synthesis_summary.json", detail::dump(summary));
  return pair;
}

struct TrajectoryScenarioResult {
  TrajectoryBatch batch;
  TrajectorySummary summary;
};

inline TrajectoryScenarioResult run_trajectory_scenario(const ScenarioConfig& config) {
  config.validate();
  const PulsePair pair = synthesize_pulses(config);
  const EvolutionConfig ev = make_evolution(config, pair);
  TrajectoryScenarioResult res;
  res.batch = run_trajectories(ev, config.n_traj, config.seed);
  const TransferRecord det = evolve(ev);
  auto& s = res.summary;
  s.n_traj = res.batch.n_traj;
  s.seed = res.batch.seed;
  s.total_jumps = res.batch.total_jumps();
  s.jump_fraction = res.batch.jump_fraction;
  s.loss_fraction = res.batch.loss_fraction;
  s.final_fidelity_mean = res.batch.final_fidelity_mean;
  s.final_fidelity_var = res.batch.final_fidelity_var;
  s.deterministic_jump_probability = det.jump_probability;

  auto join = [](const std::vector<double>& v) {
    std::string out;
    for (std::size_t k = 0; k < v.size(); ++k) out += (k ? ";" : "") + detail::fmt(v[k]);
    return out;
  };
  if (config.format == "csv") {
    std::string text = "trajectory,n_jumps,n_losses,final_fidelity,jump_times,loss_times\n";
    for (std::size_t i = 0; i < res.batch.trajectories.size(); ++i) {
      const auto& tr = res.batch.trajectories[i];
      text += std::to_string(i) + "," + std::to_string(tr.jump_times.size()) + "," +
              std::to_string(tr.loss_times.size()) + "," + detail::fmt(tr.final_fidelity) + "," +
              join(tr.jump_times) + "," + join(tr.loss_times) + "\n";
    }
    detail::write_file(config.out_dir / "trajectories.csv", text);
  } else {
    json arr = json::array();
    for (const auto& tr : res.batch.trajectories)
      arr.push_back({{"jump_times", tr.jump_times},
                     {"loss_times", tr.loss_times},
                     {"final_fidelity", tr.final_fidelity}});
    detail::write_file(config.out_dir / "trajectories.json", detail::dump(arr));
  }
  json summary = s;
  summary["params"] = params_to_json(config.params);
  detail::write_file(config.out_dir / "trajectories_summary.json", detail::dump(summary));
  return res;
}

struct QubitPoint {
  double theta, phi, fidelity, predicted;
};

/// Theta grid (0, pi/2] and phi grid [0, 2 pi) for the superposition check.
inline std::vector<QubitPoint> run_qubit_sphere(const ScenarioConfig& config) {
  config.validate();
  const PulsePair pair = synthesize_pulses(config);
  const EvolutionConfig ev = make_evolution(config, pair);

  // Closed form from linearity: overlap = cos^2 theta + sin^2 theta * a2,
  // with a2 the final alpha2 of the pure excitation run.
  EvolutionConfig exc = ev;
  exc.initial.c_gg = 0.0;
  const complex a2 = evolve(exc).states.back().alpha2 /
                     std::sqrt(std::max(exc.initial.norm_sq(), 1e-300));

  std::vector<QubitPoint> pts;
  for (std::size_t i = 0; i < config.theta_points; ++i)
    for (std::size_t j = 0; j < config.phi_points; ++j) {
      const double theta = std::numbers::pi / 2 * static_cast<double>(i + 1) /
                           static_cast<double>(config.theta_points);
      const double phi = 2 * std::numbers::pi * static_cast<double>(j) /
                         static_cast<double>(config.phi_points);
      const double c = std::cos(theta), s = std::sin(theta);
      pts.push_back({theta, phi, 0.0, std::norm(c * c + s * s * a2)});
    }
  parallel_for(pts.size(), [&](std::size_t k) {
    pts[k].fidelity = qubit_transfer_check(pts[k].theta, pts[k].phi, ev);
  });

  if (config.format == "csv") {
    detail::CsvWriter csv({"theta", "phi", "fidelity", "predicted"});
    for (const auto& p : pts) csv.row({p.theta, p.phi, p.fidelity, p.predicted});
    detail::write_file(config.out_dir / "qubit_sphere.csv", csv.str());
  } else {
    json arr = json::array();
    for (const auto& p : pts)
      arr.push_back({{"theta", p.theta}, {"phi", p.phi}, {"fidelity", p.fidelity}, {"predicted", p.predicted}});
    detail::write_file(config.out_dir / "qubit_sphere.json", detail::dump(arr));
  }
  double worst = 1.0;
  for (const auto& p : pts) worst = std::min(worst, p.fidelity);
  json summary{{"min_fidelity", worst},
               {"theta_zero_fidelity", qubit_transfer_check(0.0, 0.0, ev)},
               {"params", params_to_json(config.params)}};
  detail::write_file(config.out_dir / "qubit_sphere_summary.json", detail::dump(summary));
  return pts;
}

// ---------------------------------------------------------------------------
// Command line

/// `cascade_sim <synthesize|transfer|sweep|trajectories|qubit-sphere> [flags]`.
/// Exit codes: 0 success, 1 invalid configuration, 2 numeric failure.
inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  CLI::App app{"Cascaded two-node quantum state transfer simulator", "cascade_sim"};
  std::string config_path, out_dir, format;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "random seed for trajectory scenarios");
  app.add_option("--format", format, "data file format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--tol", tol, "integrator relative tolerance (absolute = 1e-3 * tol)");
  app.require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> commands{
      {"synthesize", "build the ideal pulse pair"},
      {"transfer", "ideal transfer time series (populations, dark residual, norm)"},
      {"sweep", "fidelity versus kappa'/kappa for several Gamma/Delta"},
      {"trajectories", "photon-counting Monte Carlo trajectories"},
      {"qubit-sphere", "superposition transfer over a (theta, phi) grid"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 1;
  }

  try {
    ScenarioConfig config;
    if (!config_path.empty()) config = load_config_file(config_path, config);
    config.scenario = app.get_subcommands().front()->get_name();
    if (!out_dir.empty()) config.out_dir = out_dir;
    if (!format.empty()) config.format = format;
    if (seed) config.seed = *seed;
    if (tol) {
      if (!(*tol > 0) || !std::isfinite(*tol)) throw InvalidParameter("tol", "must be > 0");
      config.tolerances.relative = *tol;
      config.tolerances.absolute = 1e-3 * *tol;
    }
    config.validate();

    const std::string& s = config.scenario;
    if (s == "synthesize") {
      const PulsePair pair = run_synthesize(config);
      for (const auto& w : pair.warnings) err << "warning: " << w << "\n";
      out << "alpha1(0) = " << detail::fmt(pair.forward.alpha1.front())
          << ", beta_a(0) = " << detail::fmt(pair.forward.beta_a.front()) << "\n";
    } else if (s == "transfer") {
      const TransferResult r = run_transfer(config);
      for (const auto& w : r.summary.warnings) err << "warning: " << w << "\n";
      out << "fidelity = " << detail::fmt(r.summary.fidelity)
          << ", max |beta_s| = " << detail::fmt(r.summary.max_dark_residual) << "\n";
    } else if (s == "sweep") {
      const SweepResult r = run_sweep(config);
      out << "sweep: " << r.points.size() << " points, ordered_by_gamma = "
          << (r.ordered_by_gamma ? "true" : "false") << "\n";
    } else if (s == "trajectories") {
      const auto r = run_trajectory_scenario(config);
      out << "trajectories: " << r.summary.n_traj << ", jump_fraction = "
          << detail::fmt(r.summary.jump_fraction) << "\n";
    } else {
      const auto pts = run_qubit_sphere(config);
      double worst = 1.0;
      for (const auto& p : pts) worst = std::min(worst, p.fidelity);
      out << "qubit sphere: min fidelity = " << detail::fmt(worst) << "\n";
    }
    return 0;
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "numeric failure: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace cascade

#endif  // CASCADE_RUNNER_HPP
