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
#include <cmath>
#include <numbers>
#include <vector>

#include "qwalk/types.hpp"

namespace qwalk {

/// Unnormalized-by-truncation Gaussian envelope exp(-j^2/(4 s^2)) / (2 pi s^2)^(1/4).
inline double gaussian_envelope(double sigma0, Site j) {
  const double jj = static_cast<double>(j);
  return std::exp(-jj * jj / (4.0 * sigma0 * sigma0)) /
         std::pow(2.0 * std::numbers::pi * sigma0 * sigma0, 0.25);
}

/// Position weights f(j) over the initial support, before any renormalization.
inline std::vector<double> position_weights(const InitialStateSpec& init) {
  init.validate();
  if (init.shape == InitialShape::Local) return {1.0};
  const Site radius = init.truncation_radius;
  std::vector<double> f(static_cast<std::size_t>(2 * radius + 1));
  for (Site j = 0; j <= radius; ++j) {
    // Evaluate once per |j| so the envelope is exactly even.
    const double w = gaussian_envelope(init.sigma0, j);
    f[static_cast<std::size_t>(radius + j)] = w;
    f[static_cast<std::size_t>(radius - j)] = w;
  }
  return f;
}

/// 1 - sum_j f(j)^2 of the raw (truncated) envelope.
inline double truncation_deficit(const InitialStateSpec& init) {
  double s = 0.0;
  for (double w : position_weights(init)) s += w * w;
  return 1.0 - s;
}

/// Smallest window that holds every site reachable within `steps` steps.
///
/// A NOT defect lying outside the initial support reflects everything that
/// reaches it, so the window stops at the defect on that side.
inline LatticeWindow plan_window(const InitialStateSpec& init, const CoinSpec& coin,
                                 std::int64_t steps) {
  init.validate();
  if (steps < 0) throw WalkError("steps must be non-negative");
  const LatticeWindow s = init.support();
  Site lo = s.j_min - steps;
  Site hi = s.j_max + steps;
  if (coin.has_defect()) {
    const Site r = coin.defect_site;
    if (r < s.j_min) lo = std::max(lo, r);
    if (r > s.j_max) hi = std::min(hi, r);
  }
  return {lo, hi};
}

/// Product state qubit (x) f over `window`, which must contain the support.
inline WalkState build_initial_state(const QubitParams& qubit, const InitialStateSpec& init,
                                     LatticeWindow window) {
  std::vector<double> f = position_weights(init);
  if (init.renormalize) {
    double s = 0.0;
    for (double w : f) s += w * w;
    const double scale = 1.0 / std::sqrt(s);
    for (double& w : f) w *= scale;
  }
  WalkState state(window, init.support(), 0);
  const Amplitude cu = qubit.up_component();
  const Amplitude cd = qubit.down_component();
  const Site j0 = init.support().j_min;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const Site j = j0 + static_cast<Site>(k);
    state.a_ref(j) = f[k] * cu;
    state.b_ref(j) = f[k] * cd;
  }
  return state;
}

/// Same as above with the minimal window (the initial support itself).
inline WalkState build_initial_state(const QubitParams& qubit, const InitialStateSpec& init) {
  init.validate();
  return build_initial_state(qubit, init, init.support());
}

/// Copy `state` into a larger window; amplitudes keep their sites.
inline WalkState resize_window(const WalkState& state, LatticeWindow window) {
  if (!window.contains(state.support)) {
    throw WalkError("new window does not cover the state's support");
  }
  WalkState out(window, state.support, state.t);
  for (Site j = state.support.j_min; j <= state.support.j_max; ++j) {
    out.a_ref(j) = state.a(j);
    out.b_ref(j) = state.b(j);
  }
  return out;
}

}  // namespace qwalk
