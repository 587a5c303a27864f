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

#include <cstdint>
#include <span>

#include "qwalk/types.hpp"

namespace qwalk {

struct FitWindow {
  std::int64_t start = 0;
  std::int64_t end = 0;

  friend bool operator==(const FitWindow&, const FitWindow&) = default;
};

/// Default fit window: the last 2000 steps (or the whole run if shorter).
inline FitWindow default_fit_window(std::int64_t steps) {
  return {steps > 2000 ? steps - 2000 : 0, steps};
}

/// Ordinary least-squares slope of values(t) over samples with start <= t <= end.
inline double fit_dispersion_slope(std::span<const std::int64_t> times,
                                   std::span<const double> values, FitWindow window) {
  if (times.size() != values.size()) throw WalkError("time/value length mismatch");
  if (times.empty()) throw WalkError("empty series");
  if (window.start >= window.end) throw WalkError("degenerate fit window");
  if (window.start < times.front() || window.end > times.back()) {
    throw WalkError("fit window lies outside the series");
  }
  // Centre t on the window midpoint to keep the normal equations well scaled.
  const double mid = 0.5 * static_cast<double>(window.start + window.end);
  std::size_t n = 0;
  double st = 0.0, sv = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] < window.start || times[k] > window.end) continue;
    st += static_cast<double>(times[k]) - mid;
    sv += values[k];
    ++n;
  }
  if (n < 2) throw WalkError("fit window holds fewer than two samples");
  const double mt = st / static_cast<double>(n);
  const double mv = sv / static_cast<double>(n);
  double stt = 0.0, stv = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] < window.start || times[k] > window.end) continue;
    const double dt = static_cast<double>(times[k]) - mid - mt;
    stt += dt * dt;
    stv += dt * (values[k] - mv);
  }
  if (!(stt > 0.0)) throw WalkError("degenerate fit window");
  return stv / stt;
}

}  // namespace qwalk
