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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "qwalk/driver.hpp"

using namespace qwalk;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("qwalk_cli_io_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(cell);
    rows.push_back(row);
  }
  return rows;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string w;
  while (ss >> w) out.push_back(w);
  return out;
}

}  // namespace

TEST(parse_config, fig1_preset) {
  const RunConfig c = parse_config({"--preset", "fig1"});
  ASSERT_TRUE(c.preset.has_value());
  const std::vector<NamedRun> runs = expand_runs(c);
  ASSERT_EQ(runs.size(), 3u);
  for (const NamedRun& r : runs) {
    EXPECT_EQ(r.config.mode, RunMode::Single);
    EXPECT_EQ(r.config.qubit, QubitParams(3.0 * kPi / 4.0, 0.0));
    EXPECT_EQ(r.config.coin, CoinSpec::hadamard());
    EXPECT_EQ(r.config.steps, 3000);
  }
  EXPECT_EQ(runs[0].config.initial, InitialStateSpec::local());
  EXPECT_EQ(runs[1].config.initial, InitialStateSpec::gaussian(1.0));
  EXPECT_EQ(runs[2].config.initial, InitialStateSpec::gaussian(10.0));
}

TEST(parse_config, fig2_preset) {
  const std::vector<NamedRun> runs = expand_runs(parse_config({"--preset", "fig2"}));
  ASSERT_EQ(runs.size(), 6u);
  int defects = 0;
  for (const NamedRun& r : runs) {
    EXPECT_EQ(r.config.mode, RunMode::Ensemble);
    EXPECT_EQ(r.config.alpha_step, 0.1);
    EXPECT_EQ(r.config.beta_step, 0.1);
    EXPECT_EQ(r.config.steps, 3000);
    if (r.config.coin.has_defect()) {
      EXPECT_EQ(r.config.coin.defect_site, -101);
      ++defects;
    }
  }
  EXPECT_EQ(defects, 3);
}

TEST(parse_config, fig3_preset_sweeps_sigma0) {
  const std::vector<NamedRun> runs = expand_runs(parse_config({"--preset", "fig3"}));
  ASSERT_EQ(runs.size(), 11u);
  EXPECT_EQ(runs[0].config.initial, InitialStateSpec::local());
  for (int s = 1; s <= 10; ++s) EXPECT_EQ(runs[s].config.initial, InitialStateSpec::gaussian(s));
  EXPECT_EQ(runs[5].config.fit, (FitWindow{1000, 3000}));
}

TEST(parse_config, validation_errors) {
  EXPECT_THROW(parse_config({"--steps", "0"}), ConfigError);
  EXPECT_THROW(parse_config({"--record-every", "0"}), ConfigError);
  EXPECT_THROW(parse_config({"--preset", "fig4"}), ConfigError);
  EXPECT_THROW(parse_config({"--preset", "fig2", "--steps", "10"}), ConfigError);
  EXPECT_THROW(parse_config({"--bogus", "1"}), ConfigError);
  EXPECT_THROW(parse_config({"--steps", "ten"}), ConfigError);
  EXPECT_THROW(parse_config({"--initial", "gaussian"}), ConfigError);
  EXPECT_THROW(parse_config({"--initial", "gaussian", "--sigma0", "-1"}), ConfigError);
  EXPECT_THROW(parse_config({"--sigma0", "2"}), ConfigError);
  EXPECT_THROW(parse_config({"--defect-site", "4"}), ConfigError);
  EXPECT_THROW(parse_config({"--alpha", "4"}), ConfigError);
  EXPECT_THROW(parse_config({"--mode", "ensemble", "--alpha", "1"}), ConfigError);
  EXPECT_THROW(parse_config({"--alpha-step", "0.2"}), ConfigError);
  EXPECT_THROW(parse_config({"--mode", "ensemble", "--beta-step", "0"}), ConfigError);
  EXPECT_THROW(parse_config({"--steps", "100", "--fit-start", "90", "--fit-end", "80"}),
               ConfigError);
  EXPECT_THROW(parse_config({"--steps", "100", "--fit-end", "101"}), ConfigError);
}

TEST(parse_config, defaults) {
  const RunConfig c = parse_config(std::vector<std::string>{});
  EXPECT_EQ(c.mode, RunMode::Single);
  EXPECT_EQ(c.initial, InitialStateSpec::local());
  EXPECT_EQ(c.coin, CoinSpec::hadamard());
  EXPECT_EQ(c.steps, 3000);
  EXPECT_EQ(c.options().fit, (FitWindow{1000, 3000}));
  const RunConfig g = parse_config({"--initial", "gaussian", "--sigma0", "10"});
  EXPECT_EQ(g.initial.truncation_radius, 100);
  EXPECT_FALSE(g.initial.renormalize);
  const RunConfig d = parse_config({"--coin", "defect"});
  EXPECT_EQ(d.coin.defect_site, -101);
}

TEST(parse_config, flags_round_trip) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    RunConfig c;
    if (i % 13 == 0) {
      c = parse_config({"--preset", i % 2 ? "fig2" : "fig3", "--method", "superposition"});
    } else {
      c.mode = u(rng) < 0.5 ? RunMode::Single : RunMode::Ensemble;
      c.initial = u(rng) < 0.5 ? InitialStateSpec::local()
                               : InitialStateSpec::gaussian(0.1 + 20 * u(rng),
                                                            1 + static_cast<Site>(200 * u(rng)),
                                                            u(rng) < 0.5);
      if (c.mode == RunMode::Single) {
        c.qubit = QubitParams(kPi * u(rng), 2.0 * kPi * u(rng));
      } else {
        c.alpha_step = 0.01 + u(rng);
        c.beta_step = 0.01 + u(rng);
        c.method = u(rng) < 0.5 ? EnsembleMethod::PerQubit : EnsembleMethod::BasisSuperposition;
      }
      c.coin = u(rng) < 0.5 ? CoinSpec::hadamard()
                            : CoinSpec::not_defect(static_cast<Site>(-300 * u(rng)));
      c.steps = 1 + static_cast<std::int64_t>(5000 * u(rng));
      c.record_every = 1 + static_cast<std::int64_t>(10 * u(rng));
      if (u(rng) < 0.5 && c.steps > 1) c.fit = FitWindow{0, c.steps};
      c.snapshot_every = static_cast<std::int64_t>(500 * u(rng));
    }
    c.workers = static_cast<unsigned>(8 * u(rng));
    c.output_dir = "out_" + std::to_string(i);
    EXPECT_EQ(parse_config(to_flags(c, true)), c) << i;
  }
}

TEST(parse_config, reads_config_file) {
  const fs::path dir = scratch_dir("config_file");
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "run.ini");
    f << "mode=ensemble\ninitial=gaussian\nsigma0=2.5\nsteps=40\n";
  }
  const RunConfig c = parse_config({"--config", (dir / "run.ini").string()});
  EXPECT_EQ(c.mode, RunMode::Ensemble);
  EXPECT_EQ(c.initial, InitialStateSpec::gaussian(2.5));
  EXPECT_EQ(c.steps, 40);
  {
    std::ofstream f(dir / "bad.ini");
    f << "steps=40\nwidth=3\n";
  }
  EXPECT_THROW(parse_config({"--config", (dir / "bad.ini").string()}), ConfigError);
}

TEST(emit_results, single_two_step_distribution) {
  const fs::path dir = scratch_dir("two_step");
  RunConfig c = parse_config({"--steps", "2", "--output-dir", dir.string()});
  std::ostringstream log;
  execute(c, log);
  const auto rows = read_csv(dir / "distribution_t2.csv");
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"j", "p_up", "p_down", "p_total"}));
  const double expected[5][4] = {{-2, 0, 0.25, 0.25},
                                 {-1, 0, 0, 0},
                                 {0, 0.25, 0.25, 0.5},
                                 {1, 0, 0, 0},
                                 {2, 0.25, 0, 0.25}};
  for (int r = 0; r < 5; ++r) {
    ASSERT_EQ(rows[r + 1].size(), 4u);
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(std::stod(rows[r + 1][k]), expected[r][k], 1e-15);
    EXPECT_NEAR(std::stod(rows[r + 1][3]),
                std::stod(rows[r + 1][1]) + std::stod(rows[r + 1][2]), 1e-15);
  }
  const auto ts = read_csv(dir / "timeseries.csv");
  EXPECT_EQ(ts[0], (std::vector<std::string>{"t", "sigma", "entropy", "norm"}));
  EXPECT_EQ(ts.size(), 4u);
  const auto summary = read_csv(dir / "summary.csv");
  EXPECT_EQ(summary[0],
            (std::vector<std::string>{"slope", "final_entropy", "qubit_count", "norm_deficit"}));
  EXPECT_EQ(summary[1][2], "1");
  // 17 significant digits
  EXPECT_EQ(rows[3][3].size(), std::string("0.49999999999999989").size());
}

TEST(emit_results, manifest_reproduces_the_config) {
  const fs::path dir = scratch_dir("manifest");
  RunConfig c = parse_config({"--mode", "ensemble", "--initial", "gaussian", "--sigma0", "1.5",
                              "--truncation-radius", "7", "--alpha-step", "1.1", "--beta-step",
                              "2.2", "--coin", "defect", "--defect-site", "-8", "--steps", "30",
                              "--output-dir", dir.string(), "--workers", "2"});
  std::ostringstream log;
  execute(c, log);
  RunConfig back = parse_config(split(slurp(dir / "manifest.txt")));
  back.output_dir = c.output_dir;
  back.workers = c.workers;
  EXPECT_EQ(back, c);
  const auto ts = read_csv(dir / "timeseries.csv");
  EXPECT_EQ(ts[0], (std::vector<std::string>{"t", "mean_sigma", "mean_entropy"}));
  EXPECT_EQ(ts.size(), 32u);
  const auto summary = read_csv(dir / "summary.csv");
  EXPECT_EQ(summary[1][2], std::to_string(make_qubit_grid(1.1, 2.2).size()));
}

TEST(emit_results, identical_across_worker_counts) {
  const std::vector<std::string> base = {"--mode",  "ensemble", "--initial",     "gaussian",
                                         "--sigma0", "3",       "--truncation-radius", "12",
                                         "--alpha-step", "0.6", "--beta-step",   "0.9",
                                         "--coin",  "defect",   "--defect-site", "-13",
                                         "--steps", "120",      "--snapshot-every", "40"};
  std::vector<fs::path> dirs;
  for (const char* w : {"1", "3"}) {
    std::vector<std::string> args = base;
    dirs.push_back(scratch_dir(std::string("workers_") + w));
    args.insert(args.end(), {"--workers", w, "--output-dir", dirs.back().string()});
    std::ostringstream log;
    execute(parse_config(args), log);
  }
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(dirs[0])) {
    EXPECT_EQ(slurp(entry.path()), slurp(dirs[1] / entry.path().filename()))
        << entry.path().filename();
    ++compared;
  }
  // 3 distributions, timeseries, summary, manifest
  EXPECT_EQ(compared, 6u);
}

TEST(emit_results, unwritable_directory_fails) {
  const fs::path dir = scratch_dir("blocked");
  fs::create_directories(dir.parent_path());
  { std::ofstream f(dir); f << "not a directory"; }
  RunConfig c = parse_config({"--steps", "2", "--output-dir", (dir / "sub").string()});
  std::ostringstream log;
  EXPECT_THROW(execute(c, log), OutputError);
  fs::remove(dir);
}

TEST(cli, exit_codes) {
  const fs::path dir = scratch_dir("cli");
  const std::string exe = QWALK_CLI_PATH;
  const std::string ok = exe + " --steps 5 --output-dir " + dir.string() + " 2>/dev/null";
  EXPECT_EQ(std::system(ok.c_str()), 0);
  EXPECT_TRUE(fs::exists(dir / "summary.csv"));
  const std::string bad = exe + " --steps 0 --output-dir " + dir.string() + " 2>/dev/null";
  EXPECT_NE(std::system(bad.c_str()), 0);
  const std::string help = exe + " --help >/dev/null";
  EXPECT_EQ(std::system(help.c_str()), 0);
}
