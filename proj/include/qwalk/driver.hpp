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

#include <filesystem>
#include <ostream>
#include <vector>

#include "qwalk/config.hpp"
#include "qwalk/csv_output.hpp"
#include "qwalk/ensemble.hpp"

namespace qwalk {

/// Runs every experiment `config` stands for and writes its CSV files.
inline void execute(const RunConfig& config, std::ostream& log) {
  const std::filesystem::path root = detail::ensure_dir(config.output_dir);
  write_manifest(root, config);
  std::vector<SweepRow> sweep;
  for (const NamedRun& run : expand_runs(config)) {
    const RunConfig& c = run.config;
    const std::filesystem::path dir = run.name.empty() ? root : root / run.name;
    const RunOptions opt = c.options();
    if (c.mode == RunMode::Single) {
      const SingleResult r = run_single(c.qubit, c.initial, c.plan(), opt);
      emit_results(r, dir);
      log << (run.name.empty() ? "single" : run.name) << ": S_E=" << r.final_entropy()
          << " slope=" << r.slope << '\n';
    } else {
      const QubitGrid grid = make_qubit_grid(c.alpha_step, c.beta_step);
      const EnsembleResult r = run_ensemble(grid, c.initial, c.plan(), opt);
      emit_results(r, dir);
      log << (run.name.empty() ? "ensemble" : run.name) << ": N=" << r.qubit_count
          << " <S_E>=" << r.final_entropy() << " slope=" << r.slope << '\n';
      const double s0 = c.initial.shape == InitialShape::Local ? 0.0 : c.initial.sigma0;
      sweep.push_back({s0, r.slope, r.final_entropy(), r.qubit_count, r.norm_deficit});
    }
  }
  if (config.preset == Preset::Fig3) write_sweep_summary(root / "fig3_summary.csv", sweep);
}

}  // namespace qwalk
