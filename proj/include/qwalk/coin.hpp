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

#include <array>
#include <numbers>

#include "qwalk/types.hpp"

namespace qwalk {

inline constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

/// Row-major 2x2 complex matrix acting on (up, down).
struct CoinMatrix {
  std::array<Amplitude, 4> m{};

  Amplitude operator()(int row, int col) const { return m[2 * row + col]; }

  static CoinMatrix hadamard() {
    return {{Amplitude{kInvSqrt2}, Amplitude{kInvSqrt2}, Amplitude{kInvSqrt2},
             Amplitude{-kInvSqrt2}}};
  }
  static CoinMatrix pauli_x() {
    return {{Amplitude{0.0}, Amplitude{1.0}, Amplitude{1.0}, Amplitude{0.0}}};
  }

  friend bool operator==(const CoinMatrix&, const CoinMatrix&) = default;
};

/// Coin operator acting at site j. The defect term cancels the Hadamard
/// diagonal and lifts the off-diagonal to one, leaving sigma_x exactly.
inline CoinMatrix coin_matrix(const CoinSpec& spec, Site j) {
  if (spec.has_defect() && j == spec.defect_site) return CoinMatrix::pauli_x();
  return CoinMatrix::hadamard();
}

}  // namespace qwalk
