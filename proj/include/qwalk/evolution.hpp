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
#include <string>
#include <utility>

#include "qwalk/coin.hpp"
#include "qwalk/types.hpp"

namespace qwalk {

struct EvolutionPlan {
  CoinSpec coin;
  std::int64_t steps = 1;
  std::int64_t record_every = 1;

  void validate() const {
    if (steps < 1) throw WalkError("steps must be >= 1");
    if (record_every < 1) throw WalkError("record_every must be >= 1");
  }

  bool records(std::int64_t t) const { return t % record_every == 0 || t == steps; }
};

namespace detail {

inline void check_overflow(const WalkState& in, const CoinSpec& coin, Site j, int row) {
  const CoinMatrix c = coin_matrix(coin, j);
  const Amplitude out = c(row, 0) * in.a(j) + c(row, 1) * in.b(j);
  if (out != Amplitude{}) {
    throw WindowOverflow("amplitude at site " + std::to_string(j) + " (t=" +
                         std::to_string(in.t) + ") would leave the lattice window [" +
                         std::to_string(in.window.j_min) + ", " +
                         std::to_string(in.window.j_max) + "]");
  }
}

}  // namespace detail

/// Advances `in` by one step into `out` (double buffered, never in place).
///
///   a(j,t+1) = C(j-1) row 0 applied to (a,b)(j-1,t)
///   b(j,t+1) = C(j+1) row 1 applied to (a,b)(j+1,t)
///
/// The Hadamard update runs over the whole support; the defect only changes
/// the two output sites fed by site r, which are patched afterwards.
inline void step_into(const WalkState& in, WalkState& out, const CoinSpec& coin) {
  const LatticeWindow& w = in.window;
  const Site lo = in.support.j_min;
  const Site hi = in.support.j_max;
  Site nlo = lo - 1;
  Site nhi = hi + 1;
  if (nlo < w.j_min) {
    detail::check_overflow(in, coin, lo, 1);
    nlo = lo;
  }
  if (nhi > w.j_max) {
    detail::check_overflow(in, coin, hi, 0);
    nhi = hi;
  }
  const LatticeWindow next_support(nlo, nhi);
  if (&in == &out) throw WalkError("step_into requires distinct buffers");
  if (!(out.window == w) || !next_support.contains(out.support)) {
    out = WalkState(w, next_support, in.t);
  }

  const Amplitude* a = in.up.data();
  const Amplitude* b = in.down.data();
  Amplitude* na = out.up.data();
  Amplitude* nb = out.down.data();
  const std::size_t ilo = w.index(nlo);
  const std::size_t ihi = w.index(nhi);
  const std::size_t last = w.size() - 1;

  // Up amplitude arriving at i comes from i-1; down amplitude from i+1.
  // Sites outside the input support read as exact zeros from the window.
  const std::size_t up_begin = std::max<std::size_t>(ilo, 1);
  if (ilo == 0) na[0] = Amplitude{};
  for (std::size_t i = up_begin; i <= ihi; ++i) {
    na[i] = kInvSqrt2 * (a[i - 1] + b[i - 1]);
  }
  const std::size_t down_end = std::min(ihi, last - 1);
  for (std::size_t i = ilo; i <= down_end; ++i) {
    nb[i] = kInvSqrt2 * (a[i + 1] - b[i + 1]);
  }
  if (ihi == last) nb[last] = Amplitude{};

  if (coin.has_defect()) {
    const Site r = coin.defect_site;
    if (next_support.contains(r + 1)) na[w.index(r + 1)] = in.b(r);
    if (next_support.contains(r - 1)) nb[w.index(r - 1)] = in.a(r);
  }

  out.support = next_support;
  out.t = in.t + 1;
}

/// Pure single step.
inline WalkState step(const WalkState& state, const CoinSpec& coin) {
  WalkState out;
  step_into(state, out, coin);
  return out;
}

/// Applies `plan.steps` steps, calling observer(state) at t=0, at every
/// multiple of record_every, and at the final step.
template <class Observer>
WalkState evolve(WalkState state, const EvolutionPlan& plan, Observer&& observer) {
  plan.validate();
  observer(static_cast<const WalkState&>(state));
  WalkState scratch;
  for (std::int64_t k = 1; k <= plan.steps; ++k) {
    step_into(state, scratch, plan.coin);
    std::swap(state, scratch);
    if (plan.records(k)) observer(static_cast<const WalkState&>(state));
  }
  return state;
}

inline WalkState evolve(WalkState state, const EvolutionPlan& plan) {
  return evolve(std::move(state), plan, [](const WalkState&) {});
}

}  // namespace qwalk
