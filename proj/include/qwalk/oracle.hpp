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

// Dense reference walk for small lattices. The operator is assembled as
// S * (sum_j C(j-r) (x) |j><j|) with the coin written as Hadamard plus the
// delta-weighted correction term, and is deliberately independent of the
// recurrence code in evolution.hpp.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "qwalk/types.hpp"

namespace qwalk::oracle {

enum class Boundary { Ring, Bounded };

inline constexpr std::size_t kMaxSites = 256;

/// Dense 2M x 2M operator on |spin> (x) |site>, basis index spin * M + k where
/// site j = sites.j_min + k.
struct DenseWalkOperator {
  LatticeWindow sites;
  Boundary boundary = Boundary::Ring;
  std::size_t dim = 0;
  std::vector<Amplitude> matrix;  // row-major

  Amplitude operator()(std::size_t row, std::size_t col) const { return matrix[row * dim + col]; }
  std::size_t site_count() const { return sites.size(); }
};

namespace detail {

using Dense = std::vector<Amplitude>;

inline Dense multiply(const Dense& x, const Dense& y, std::size_t n) {
  Dense z(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Amplitude xik = x[i * n + k];
      if (xik == Amplitude{}) continue;
      for (std::size_t j = 0; j < n; ++j) z[i * n + j] += xik * y[k * n + j];
    }
  }
  return z;
}

// Coin entry (row, col) at offset d = j - r: Hadamard plus delta(d) times the
// correction [[-1, sqrt2-1], [sqrt2-1, 1]] / sqrt2.
inline double literal_coin(int row, int col, bool at_defect) {
  const double s = std::numbers::sqrt2;
  const double hadamard[2][2] = {{1.0 / s, 1.0 / s}, {1.0 / s, -1.0 / s}};
  const double correction[2][2] = {{-1.0 / s, (s - 1.0) / s}, {(s - 1.0) / s, 1.0 / s}};
  return hadamard[row][col] + (at_defect ? correction[row][col] : 0.0);
}

}  // namespace detail

inline DenseWalkOperator build_dense_operator(LatticeWindow sites, const CoinSpec& coin,
                                              Boundary boundary = Boundary::Ring) {
  const std::size_t m = sites.size();
  if (m < 3) throw WalkError("dense oracle needs at least 3 sites");
  if (m > kMaxSites) throw WalkError("dense oracle is limited to 256 sites");
  if (coin.has_defect() && !sites.contains(coin.defect_site)) {
    throw WalkError("defect site lies outside the oracle lattice");
  }
  const std::size_t n = 2 * m;

  // Coin layer: block diagonal in site.
  detail::Dense c(n * n);
  for (std::size_t k = 0; k < m; ++k) {
    const Site j = sites.j_min + static_cast<Site>(k);
    const bool at_defect = coin.has_defect() && j == coin.defect_site;
    for (int row = 0; row < 2; ++row) {
      for (int col = 0; col < 2; ++col) {
        c[(row * m + k) * n + (col * m + k)] = detail::literal_coin(row, col, at_defect);
      }
    }
  }

  // Conditional shift: up moves to k+1, down to k-1.
  detail::Dense s(n * n);
  for (std::size_t k = 0; k < m; ++k) {
    const bool right_edge = k + 1 == m;
    const bool left_edge = k == 0;
    if (!right_edge || boundary == Boundary::Ring) {
      const std::size_t to = right_edge ? 0 : k + 1;
      s[(0 * m + to) * n + (0 * m + k)] = 1.0;
    }
    if (!left_edge || boundary == Boundary::Ring) {
      const std::size_t to = left_edge ? m - 1 : k - 1;
      s[(1 * m + to) * n + (1 * m + k)] = 1.0;
    }
  }

  return DenseWalkOperator{sites, boundary, n, detail::multiply(s, c, n)};
}

inline DenseWalkOperator build_dense_operator(std::size_t sites, const CoinSpec& coin,
                                              Boundary boundary = Boundary::Ring) {
  if (sites < 3) throw WalkError("dense oracle needs at least 3 sites");
  return build_dense_operator(LatticeWindow{0, static_cast<Site>(sites) - 1}, coin, boundary);
}

/// max |(U U^dagger - I)_ij|
inline double unitarity_error(const DenseWalkOperator& op) {
  double worst = 0.0;
  for (std::size_t i = 0; i < op.dim; ++i) {
    for (std::size_t j = 0; j < op.dim; ++j) {
      Amplitude acc{};
      for (std::size_t k = 0; k < op.dim; ++k) acc += op(i, k) * std::conj(op(j, k));
      if (i == j) acc -= 1.0;
      worst = std::max(worst, std::abs(acc));
    }
  }
  return worst;
}

inline std::vector<Amplitude> dense_evolve(const DenseWalkOperator& op,
                                           std::span<const Amplitude> psi, std::int64_t steps) {
  if (psi.size() != op.dim) throw WalkError("state dimension does not match the operator");
  if (steps < 0) throw WalkError("steps must be non-negative");
  std::vector<Amplitude> cur(psi.begin(), psi.end());
  std::vector<Amplitude> next(op.dim);
  for (std::int64_t t = 0; t < steps; ++t) {
    for (std::size_t i = 0; i < op.dim; ++i) {
      Amplitude acc{};
      for (std::size_t k = 0; k < op.dim; ++k) acc += op(i, k) * cur[k];
      next[i] = acc;
    }
    cur.swap(next);
  }
  return cur;
}

/// Packs a walk state into the oracle basis; the state must fit in `sites`.
inline std::vector<Amplitude> to_dense(const WalkState& state, LatticeWindow sites) {
  if (!sites.contains(state.support)) throw WalkError("state does not fit the oracle lattice");
  const std::size_t m = sites.size();
  std::vector<Amplitude> v(2 * m);
  for (Site j = state.support.j_min; j <= state.support.j_max; ++j) {
    v[sites.index(j)] = state.a(j);
    v[m + sites.index(j)] = state.b(j);
  }
  return v;
}

/// Largest sitewise |difference| between a walk state and a dense vector.
inline double max_difference(const WalkState& state, std::span<const Amplitude> v,
                             LatticeWindow sites) {
  const std::size_t m = sites.size();
  if (v.size() != 2 * m) throw WalkError("dense vector has the wrong dimension");
  double worst = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const Site j = sites.j_min + static_cast<Site>(k);
    worst = std::max(worst, std::abs(state.a(j) - v[k]));
    worst = std::max(worst, std::abs(state.b(j) - v[m + k]));
  }
  // Amplitude the engine holds outside the oracle lattice counts in full.
  for (Site j = state.support.j_min; j <= state.support.j_max; ++j) {
    if (!sites.contains(j)) worst = std::max({worst, std::abs(state.a(j)), std::abs(state.b(j))});
  }
  return worst;
}

}  // namespace qwalk::oracle
