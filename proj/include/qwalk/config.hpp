// Copyright 2026 The qwalk Authors
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

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qwalk/ensemble.hpp"
#include "qwalk/fit.hpp"
#include "qwalk/types.hpp"

namespace qwalk {

class ConfigError : public WalkError {
 public:
  using WalkError::WalkError;
};

enum class RunMode { Single, Ensemble };
enum class Preset { Fig1, Fig2, Fig3 };

/// Fully validated description of one experiment (or a preset bundle of them).
struct RunConfig {
  RunMode mode = RunMode::Single;
  InitialStateSpec initial;
  QubitParams qubit{};
  double alpha_step = 0.1;
  double beta_step = 0.1;
  CoinSpec coin;
  std::int64_t steps = 3000;
  std::int64_t record_every = 1;
  std::optional<FitWindow> fit;        // unset: last 2000 steps
  std::int64_t snapshot_every = 0;     // 0: final step only
  std::optional<Preset> preset;
  EnsembleMethod method = EnsembleMethod::PerQubit;
  // Execution knobs; they never change results.
  unsigned workers = 0;
  std::string output_dir = "qwalk_out";

  EvolutionPlan plan() const { return {coin, steps, record_every}; }

  RunOptions options() const {
    RunOptions o;
    o.workers = workers;
    o.method = method;
    o.fit = fit.value_or(default_fit_window(steps));
    if (snapshot_every > 0) {
      for (std::int64_t t = snapshot_every; t < steps; t += snapshot_every) {
        o.snapshot_times.push_back(t);
      }
    }
    o.snapshot_times.push_back(steps);
    return o;
  }

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// One concrete run of a (possibly preset) configuration. `name` is the
/// output subdirectory; empty for plain runs.
struct NamedRun {
  std::string name;
  RunConfig config;
};

inline constexpr Site kDefaultDefectSite = -101;

namespace detail {

inline std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline const char* preset_name(Preset p) {
  switch (p) {
    case Preset::Fig1: return "fig1";
    case Preset::Fig2: return "fig2";
    case Preset::Fig3: return "fig3";
  }
  return "?";
}

struct RawFlags {
  std::string preset, mode = "single", initial = "local", renormalize = "false";
  std::string coin = "hadamard", method = "per-qubit";
  double sigma0 = 0.0, alpha = 0.0, beta = 0.0, alpha_step = 0.1, beta_step = 0.1;
  std::int64_t truncation_radius = 100, defect_site = kDefaultDefectSite;
  std::int64_t steps = 3000, record_every = 1, fit_start = 0, fit_end = 0;
  std::int64_t snapshot_every = 0;
  unsigned workers = 0;
  std::string output_dir = "qwalk_out";
};

inline void define_flags(CLI::App& app, RawFlags& f) {
  app.set_config("--config", "", "Read flags from an INI/TOML file");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.add_option("--preset", f.preset, "Figure preset")
      ->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
  app.add_option("--mode", f.mode, "single | ensemble")
      ->check(CLI::IsMember({"single", "ensemble"}));
  app.add_option("--initial", f.initial, "local | gaussian")
      ->check(CLI::IsMember({"local", "gaussian"}));
  app.add_option("--sigma0", f.sigma0, "Initial Gaussian width (sites)");
  app.add_option("--truncation-radius", f.truncation_radius, "Gaussian cut-off radius")
      ->capture_default_str();
  app.add_option("--renormalize", f.renormalize, "Rescale the truncated Gaussian to unit norm")
      ->check(CLI::IsMember({"true", "false"}))
      ->capture_default_str();
  app.add_option("--alpha", f.alpha, "Bloch polar angle in [0, pi]");
  app.add_option("--beta", f.beta, "Bloch azimuth in [0, 2pi]");
  app.add_option("--alpha-step", f.alpha_step, "Ensemble grid step in alpha")
      ->capture_default_str();
  app.add_option("--beta-step", f.beta_step, "Ensemble grid step in beta")->capture_default_str();
  app.add_option("--coin", f.coin, "hadamard | defect")
      ->check(CLI::IsMember({"hadamard", "defect"}));
  app.add_option("--defect-site", f.defect_site, "Site of the NOT gate")->capture_default_str();
  app.add_option("--steps", f.steps, "Number of time steps")->capture_default_str();
  app.add_option("--record-every", f.record_every, "Time-series stride")->capture_default_str();
  app.add_option("--fit-start", f.fit_start, "First step of the slope fit");
  app.add_option("--fit-end", f.fit_end, "Last step of the slope fit");
  app.add_option("--snapshot-every", f.snapshot_every,
                 "Also write distributions every N steps (0: final only)")
      ->capture_default_str();
  app.add_option("--method", f.method, "Ensemble evaluation: per-qubit | superposition")
      ->check(CLI::IsMember({"per-qubit", "superposition"}))
      ->capture_default_str();
  app.add_option("--workers", f.workers, "Worker threads (0: all cores)");
  app.add_option("--output-dir", f.output_dir, "Directory for CSV output")->capture_default_str();
}

inline RunConfig preset_config(Preset p) {
  RunConfig c;
  c.preset = p;
  c.steps = 3000;
  switch (p) {
    case Preset::Fig1:
      c.mode = RunMode::Single;
      c.qubit = QubitParams{3.0 * std::numbers::pi / 4.0, 0.0};
      break;
    case Preset::Fig2:
      c.mode = RunMode::Ensemble;
      c.snapshot_every = 500;
      break;
    case Preset::Fig3:
      c.mode = RunMode::Ensemble;
      c.coin = CoinSpec::not_defect(kDefaultDefectSite);
      c.fit = FitWindow{1000, 3000};
      break;
  }
  return c;
}

}  // namespace detail

inline std::string usage_text() {
  CLI::App app{"Position-dependent discrete-time quantum walk simulator", "qwalk"};
  detail::RawFlags f;
  detail::define_flags(app, f);
  return app.help();
}

/// Parses command-line arguments (program name excluded).
inline RunConfig parse_config(std::vector<std::string> args) {
  CLI::App app{"Position-dependent discrete-time quantum walk simulator", "qwalk"};
  detail::RawFlags f;
  detail::define_flags(app, f);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }
  auto given = [&](const char* flag) { return app.count(flag) > 0; };
  auto reject = [&](std::initializer_list<const char*> flags, const std::string& why) {
    for (const char* flag : flags) {
      if (given(flag)) throw ConfigError(std::string(flag) + " " + why);
    }
  };

  RunConfig c;
  if (!f.preset.empty()) {
    reject({"--mode", "--initial", "--sigma0", "--truncation-radius", "--renormalize", "--alpha",
            "--beta", "--alpha-step", "--beta-step", "--coin", "--defect-site", "--steps",
            "--record-every", "--fit-start", "--fit-end", "--snapshot-every"},
           "cannot be combined with --preset");
    const Preset p = f.preset == "fig1" ? Preset::Fig1
                     : f.preset == "fig2" ? Preset::Fig2
                                          : Preset::Fig3;
    c = detail::preset_config(p);
    if (p == Preset::Fig1) reject({"--method"}, "has no effect on single-walk presets");
  } else {
    c.mode = f.mode == "single" ? RunMode::Single : RunMode::Ensemble;
    if (f.steps < 1) throw ConfigError("steps must be >= 1");
    if (f.record_every < 1) throw ConfigError("record-every must be >= 1");
    if (f.snapshot_every < 0) throw ConfigError("snapshot-every must be >= 0");
    c.steps = f.steps;
    c.record_every = f.record_every;
    c.snapshot_every = f.snapshot_every;

    if (f.initial == "local") {
      reject({"--sigma0", "--truncation-radius", "--renormalize"}, "applies only to gaussian");
      c.initial = InitialStateSpec::local();
    } else {
      if (!given("--sigma0")) throw ConfigError("--initial gaussian requires --sigma0");
      c.initial = InitialStateSpec::gaussian(f.sigma0, f.truncation_radius,
                                             f.renormalize == "true");
      try {
        c.initial.validate();
      } catch (const WalkError& e) {
        throw ConfigError(e.what());
      }
    }

    if (f.coin == "hadamard") {
      reject({"--defect-site"}, "requires --coin defect");
      c.coin = CoinSpec::hadamard();
    } else {
      c.coin = CoinSpec::not_defect(f.defect_site);
    }

    if (c.mode == RunMode::Single) {
      reject({"--alpha-step", "--beta-step", "--method"}, "applies only to ensemble mode");
      try {
        c.qubit = QubitParams{f.alpha, f.beta};
      } catch (const WalkError& e) {
        throw ConfigError(e.what());
      }
    } else {
      reject({"--alpha", "--beta"}, "applies only to single mode");
      if (!(f.alpha_step > 0.0) || !(f.beta_step > 0.0)) {
        throw ConfigError("grid steps must be positive");
      }
      c.alpha_step = f.alpha_step;
      c.beta_step = f.beta_step;
    }

    if (given("--fit-start") || given("--fit-end")) {
      FitWindow w = default_fit_window(c.steps);
      if (given("--fit-start")) w.start = f.fit_start;
      if (given("--fit-end")) w.end = f.fit_end;
      if (w.start < 0 || w.end > c.steps || w.start >= w.end) {
        throw ConfigError("fit window must satisfy 0 <= fit-start < fit-end <= steps");
      }
      c.fit = w;
    }
  }
  c.method = f.method == "superposition" ? EnsembleMethod::BasisSuperposition
                                         : EnsembleMethod::PerQubit;
  c.workers = f.workers;
  c.output_dir = f.output_dir;
  return c;
}

inline RunConfig parse_config(int argc, const char* const* argv) {
  return parse_config(std::vector<std::string>(argv + 1, argv + argc));
}

/// Flags that reproduce `c` through parse_config. Execution knobs (workers,
/// output directory) are omitted unless requested, so manifests written by
/// runs that differ only in those knobs stay byte-identical.
inline std::vector<std::string> to_flags(const RunConfig& c, bool with_execution = false) {
  std::vector<std::string> out;
  auto add = [&](std::string k, std::string v) {
    out.push_back(std::move(k));
    out.push_back(std::move(v));
  };
  const bool ensemble = c.mode == RunMode::Ensemble;
  if (c.preset) {
    add("--preset", detail::preset_name(*c.preset));
  } else {
    add("--mode", ensemble ? "ensemble" : "single");
    if (c.initial.shape == InitialShape::Gaussian) {
      add("--initial", "gaussian");
      add("--sigma0", detail::format_real(c.initial.sigma0));
      add("--truncation-radius", std::to_string(c.initial.truncation_radius));
      add("--renormalize", c.initial.renormalize ? "true" : "false");
    } else {
      add("--initial", "local");
    }
    if (ensemble) {
      add("--alpha-step", detail::format_real(c.alpha_step));
      add("--beta-step", detail::format_real(c.beta_step));
    } else {
      add("--alpha", detail::format_real(c.qubit.alpha));
      add("--beta", detail::format_real(c.qubit.beta));
    }
    if (c.coin.has_defect()) {
      add("--coin", "defect");
      add("--defect-site", std::to_string(c.coin.defect_site));
    } else {
      add("--coin", "hadamard");
    }
    add("--steps", std::to_string(c.steps));
    add("--record-every", std::to_string(c.record_every));
    if (c.fit) {
      add("--fit-start", std::to_string(c.fit->start));
      add("--fit-end", std::to_string(c.fit->end));
    }
    add("--snapshot-every", std::to_string(c.snapshot_every));
  }
  if (ensemble || (c.preset && *c.preset != Preset::Fig1)) {
    add("--method",
        c.method == EnsembleMethod::BasisSuperposition ? "superposition" : "per-qubit");
  }
  if (with_execution) {
    add("--workers", std::to_string(c.workers));
    add("--output-dir", c.output_dir);
  }
  return out;
}

/// The concrete runs a configuration stands for.
inline std::vector<NamedRun> expand_runs(const RunConfig& c) {
  if (!c.preset) return {{"", c}};
  std::vector<NamedRun> runs;
  auto derived = [&](std::string name, InitialStateSpec init, CoinSpec coin) {
    RunConfig r = c;
    r.initial = init;
    r.coin = coin;
    runs.push_back({std::move(name), r});
  };
  const CoinSpec had = CoinSpec::hadamard();
  const CoinSpec def = CoinSpec::not_defect(kDefaultDefectSite);
  switch (*c.preset) {
    case Preset::Fig1:
      derived("local", InitialStateSpec::local(), had);
      derived("gaussian_sigma1", InitialStateSpec::gaussian(1.0), had);
      derived("gaussian_sigma10", InitialStateSpec::gaussian(10.0), had);
      break;
    case Preset::Fig2:
      for (const auto& [cname, coin] : {std::pair{"hadamard", had}, std::pair{"defect", def}}) {
        derived(std::string("local_") + cname, InitialStateSpec::local(), coin);
        derived(std::string("gaussian_sigma1_") + cname, InitialStateSpec::gaussian(1.0), coin);
        derived(std::string("gaussian_sigma10_") + cname, InitialStateSpec::gaussian(10.0),
                coin);
      }
      break;
    case Preset::Fig3:
      derived("sigma0_0", InitialStateSpec::local(), def);
      for (int s = 1; s <= 10; ++s) {
        derived("sigma0_" + std::to_string(s), InitialStateSpec::gaussian(s), def);
      }
      break;
  }
  return runs;
}

}  // namespace qwalk
