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
#include <complex>
#include <vector>

#include "qwalk/types.hpp"

namespace qwalk {

/// Spin-resolved probabilities over the sites of a state's support.
struct PositionDistribution {
  LatticeWindow window;
  std::vector<double> p_up;
  std::vector<double> p_down;
  std::vector<double> p_total;

  double at(Site j) const { return window.contains(j) ? p_total[window.index(j)] : 0.0; }

  double total() const {
    double s = 0.0;
    for (double p : p_total) s += p;
    return s;
  }
};

/// Entries of the reduced coin density matrix [[A, B], [B*, norm - A]].
struct ReducedCoinMatrix {
  double A = 0.0;
  Amplitude B{};
  double norm = 1.0;
};

struct EntropyValue {
  double lambda_plus = 1.0;
  double lambda_minus = 0.0;
  double entropy = 0.0;  // bits
};

/// Everything the time series need, gathered in one sweep over the support.
struct StateMoments {
  double norm = 0.0;
  double first = 0.0;   // sum_j j p(j)
  double second = 0.0;  // sum_j j^2 p(j)
  ReducedCoinMatrix coin;
};

inline PositionDistribution distribution(const WalkState& state) {
  PositionDistribution d;
  d.window = state.support;
  const std::size_t n = state.support.size();
  d.p_up.resize(n);
  d.p_down.resize(n);
  d.p_total.resize(n);
  const std::size_t off = state.window.index(state.support.j_min);
  for (std::size_t k = 0; k < n; ++k) {
    d.p_up[k] = std::norm(state.up[off + k]);
    d.p_down[k] = std::norm(state.down[off + k]);
    d.p_total[k] = d.p_up[k] + d.p_down[k];
  }
  return d;
}

inline double mean_position(const PositionDistribution& dist) {
  double mass = 0.0;
  double first = 0.0;
  for (std::size_t k = 0; k < dist.p_total.size(); ++k) {
    const double j = static_cast<double>(dist.window.j_min + static_cast<Site>(k));
    mass += dist.p_total[k];
    first += j * dist.p_total[k];
  }
  if (!(mass > 0.0)) throw WalkError("mean_position of a zero distribution");
  return first / mass;
}

namespace detail {

inline double standard_deviation(double mass, double first, double second) {
  if (!(mass > 0.0)) throw WalkError("dispersion of a zero distribution");
  const double mean = first / mass;
  double var = second / mass - mean * mean;
  if (var < 0.0) {
    if (var < -1e-12) throw WalkError("negative variance in dispersion");
    var = 0.0;
  }
  return std::sqrt(var);
}

}  // namespace detail

/// Population standard deviation of the (normalized) position marginal.
inline double dispersion(const PositionDistribution& dist) {
  double mass = 0.0;
  double first = 0.0;
  double second = 0.0;
  for (std::size_t k = 0; k < dist.p_total.size(); ++k) {
    const double j = static_cast<double>(dist.window.j_min + static_cast<Site>(k));
    const double p = dist.p_total[k];
    mass += p;
    first += j * p;
    second += j * j * p;
  }
  return detail::standard_deviation(mass, first, second);
}

inline ReducedCoinMatrix reduced_coin(const WalkState& state) {
  ReducedCoinMatrix rc;
  rc.norm = 0.0;
  for (std::size_t i = state.window.index(state.support.j_min);
       i <= state.window.index(state.support.j_max); ++i) {
    const double pa = std::norm(state.up[i]);
    rc.A += pa;
    rc.norm += pa + std::norm(state.down[i]);
    rc.B += state.up[i] * std::conj(state.down[i]);
  }
  return rc;
}

inline StateMoments moments(const WalkState& state) {
  StateMoments m;
  m.coin.norm = 0.0;
  const Amplitude* a = state.up.data();
  const Amplitude* b = state.down.data();
  const std::size_t i0 = state.window.index(state.support.j_min);
  const std::size_t i1 = state.window.index(state.support.j_max);
  double A = 0.0, norm = 0.0, first = 0.0, second = 0.0, br = 0.0, bi = 0.0;
  for (std::size_t i = i0; i <= i1; ++i) {
    const double j = static_cast<double>(state.window.j_min + static_cast<Site>(i));
    const double ar = a[i].real(), ai = a[i].imag();
    const double dr = b[i].real(), di = b[i].imag();
    const double pa = ar * ar + ai * ai;
    const double p = pa + dr * dr + di * di;
    A += pa;
    norm += p;
    first += j * p;
    second += j * j * p;
    // a * conj(b)
    br += ar * dr + ai * di;
    bi += ai * dr - ar * di;
  }
  m.norm = norm;
  m.first = first;
  m.second = second;
  m.coin = ReducedCoinMatrix{A, Amplitude{br, bi}, norm};
  return m;
}

inline double dispersion(const StateMoments& m) {
  return detail::standard_deviation(m.norm, m.first, m.second);
}

/// Von Neumann entropy (bits) of the reduced coin state, normalized by its trace.
inline EntropyValue entanglement_entropy(const ReducedCoinMatrix& rc) {
  if (!(rc.norm > 0.0)) throw WalkError("entropy of a zero state");
  const double A = rc.A / rc.norm;
  const double b2 = std::norm(rc.B) / (rc.norm * rc.norm);
  if (!std::isfinite(A) || !std::isfinite(b2)) throw WalkError("non-finite reduced coin matrix");
  double radicand = 0.25 - A * (1.0 - A) + b2;
  if (radicand < 0.0) {
    if (radicand < -1e-9) throw WalkError("negative eigenvalue radicand");
    radicand = 0.0;
  }
  const double root = std::sqrt(radicand);
  if (0.5 - root < -1e-9) throw WalkError("reduced coin matrix is not positive semidefinite");
  EntropyValue e;
  e.lambda_plus = 0.5 + root;
  e.lambda_minus = std::max(0.5 - root, 0.0);
  auto h = [](double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; };
  e.entropy = std::clamp(h(e.lambda_plus) + h(e.lambda_minus), 0.0, 1.0);
  return e;
}

inline EntropyValue entanglement_entropy(const WalkState& state) {
  return entanglement_entropy(reduced_coin(state));
}

enum class Side { Left, Right };

namespace detail {

// Two-site sums smooth out the even/odd sublattice alternation of walks
// started from a single site.
inline std::vector<double> pair_sums(const PositionDistribution& d) {
  const std::size_t n = d.p_total.size();
  std::vector<double> q(n);
  for (std::size_t k = 0; k < n; ++k) {
    q[k] = d.p_total[k] + (k + 1 < n ? d.p_total[k + 1] : 0.0);
  }
  return q;
}

}  // namespace detail

/// Probability carried by the outermost lobe on one side of the distribution:
/// from the pair-smoothed maximum on that side outward, bounded inward by the
/// first local minimum.
inline double far_peak_mass(const PositionDistribution& d, Side side) {
  const std::vector<double> q = detail::pair_sums(d);
  if (q.empty()) return 0.0;
  const double centre = mean_position(d);
  const Site j0 = d.window.j_min;
  const std::size_t n = q.size();
  std::size_t peak = n;
  for (std::size_t k = 0; k < n; ++k) {
    const double jc = static_cast<double>(j0 + static_cast<Site>(k)) + 0.5;
    const bool on_side = side == Side::Right ? jc > centre : jc < centre;
    if (on_side && (peak == n || q[k] > q[peak])) peak = k;
  }
  if (peak == n) return 0.0;
  double mass = 0.0;
  if (side == Side::Right) {
    std::size_t k = peak;
    while (k > 0 && q[k - 1] <= q[k]) --k;
    for (std::size_t i = k; i < n; ++i) mass += d.p_total[i];
  } else {
    std::size_t k = peak;
    while (k + 1 < n && q[k + 1] <= q[k]) ++k;
    // q[k] covers sites k and k+1
    for (std::size_t i = 0; i <= std::min(k + 1, n - 1); ++i) mass += d.p_total[i];
  }
  return mass;
}

/// Location (half-integer site) of the pair-smoothed maximum on one side of the mean.
inline double outer_peak_position(const PositionDistribution& d, Side side) {
  const std::vector<double> q = detail::pair_sums(d);
  const double centre = mean_position(d);
  const Site j0 = d.window.j_min;
  double best = -1.0;
  double where = centre;
  for (std::size_t k = 0; k < q.size(); ++k) {
    const double jc = static_cast<double>(j0 + static_cast<Site>(k)) + 0.5;
    const bool on_side = side == Side::Right ? jc > centre : jc < centre;
    if (on_side && q[k] > best) {
      best = q[k];
      where = jc;
    }
  }
  return where;
}

}  // namespace qwalk
