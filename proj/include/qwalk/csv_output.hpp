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
#include <fstream>
#include <string>
#include <vector>

#include "qwalk/config.hpp"
#include "qwalk/ensemble.hpp"
#include "qwalk/observables.hpp"

namespace qwalk {

class OutputError : public WalkError {
 public:
  using WalkError::WalkError;
};

namespace detail {

class CsvFile {
 public:
  explicit CsvFile(const std::filesystem::path& path) : path_(path), out_(path) {
    if (!out_) throw OutputError("cannot open " + path.string() + " for writing");
  }

  CsvFile& field(const std::string& s) {
    if (!first_) out_ << ',';
    out_ << s;
    first_ = false;
    return *this;
  }
  CsvFile& real(double x) { return field(format_real(x)); }
  CsvFile& integer(long long x) { return field(std::to_string(x)); }
  void end_row() {
    out_ << '\n';
    first_ = true;
  }
  void header(const std::string& line) { out_ << line << '\n'; }

  void close() {
    out_.close();
    if (!out_) throw OutputError("failed writing " + path_.string());
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  bool first_ = true;
};

inline std::filesystem::path ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw OutputError("cannot create output directory " + dir.string());
  }
  return dir;
}

}  // namespace detail

/// distribution_t<t>.csv: j,p_up,p_down,p_total over every site of the light cone.
inline void write_distribution(const std::filesystem::path& dir, const DistributionSnapshot& s) {
  detail::CsvFile f(dir / ("distribution_t" + std::to_string(s.t) + ".csv"));
  f.header("j,p_up,p_down,p_total");
  const PositionDistribution& d = s.dist;
  for (std::size_t k = 0; k < d.p_total.size(); ++k) {
    f.integer(d.window.j_min + static_cast<Site>(k)).real(d.p_up[k]).real(d.p_down[k]);
    f.real(d.p_total[k]).end_row();
  }
  f.close();
}

inline void write_summary(const std::filesystem::path& dir, double slope, double final_entropy,
                          std::size_t qubit_count, double norm_deficit) {
  detail::CsvFile f(dir / "summary.csv");
  f.header("slope,final_entropy,qubit_count,norm_deficit");
  f.real(slope).real(final_entropy).integer(static_cast<long long>(qubit_count));
  f.real(norm_deficit).end_row();
  f.close();
}

inline void write_manifest(const std::filesystem::path& dir, const RunConfig& c) {
  std::ofstream out(dir / "manifest.txt");
  bool first = true;
  for (const std::string& flag : to_flags(c)) {
    out << (first ? "" : " ") << flag;
    first = false;
  }
  out << '\n';
  if (!out) throw OutputError("failed writing manifest in " + dir.string());
}

inline void emit_results(const SingleResult& r, const std::filesystem::path& out_dir) {
  const auto dir = detail::ensure_dir(out_dir);
  for (const DistributionSnapshot& s : r.snapshots) write_distribution(dir, s);
  detail::CsvFile ts(dir / "timeseries.csv");
  ts.header("t,sigma,entropy,norm");
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    ts.integer(r.times[i]).real(r.dispersion[i]).real(r.entropy[i]).real(r.norm[i]).end_row();
  }
  ts.close();
  write_summary(dir, r.slope, r.final_entropy(), 1, r.norm_deficit);
}

inline void emit_results(const EnsembleResult& r, const std::filesystem::path& out_dir) {
  const auto dir = detail::ensure_dir(out_dir);
  for (const DistributionSnapshot& s : r.mean_distribution) write_distribution(dir, s);
  detail::CsvFile ts(dir / "timeseries.csv");
  ts.header("t,mean_sigma,mean_entropy");
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    ts.integer(r.times[i]).real(r.mean_dispersion[i]).real(r.mean_entropy[i]).end_row();
  }
  ts.close();
  write_summary(dir, r.slope, r.final_entropy(), r.qubit_count, r.norm_deficit);
}

/// Summary row of one run inside a sweep.
struct SweepRow {
  double sigma0 = 0.0;  // 0 for the local state
  double slope = 0.0;
  double final_entropy = 0.0;
  std::size_t qubit_count = 0;
  double norm_deficit = 0.0;
};

inline void write_sweep_summary(const std::filesystem::path& path,
                                const std::vector<SweepRow>& rows) {
  detail::CsvFile f(path);
  f.header("sigma0,slope,final_entropy,qubit_count,norm_deficit");
  for (const SweepRow& r : rows) {
    f.real(r.sigma0).real(r.slope).real(r.final_entropy);
    f.integer(static_cast<long long>(r.qubit_count)).real(r.norm_deficit).end_row();
  }
  f.close();
}

}  // namespace qwalk
