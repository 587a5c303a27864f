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

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qwalk {

using Site = std::int64_t;
using Amplitude = std::complex<double>;

/// Base class of every error raised by the library.
class WalkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a step would push nonzero amplitude past the edge of the
/// preallocated lattice window.
class WindowOverflow : public WalkError {
 public:
  using WalkError::WalkError;
};

/// Bloch angles of a pure coin state cos(alpha/2)|up> + e^{i beta} sin(alpha/2)|down>.
struct QubitParams {
  double alpha = 0.0;
  double beta = 0.0;

  QubitParams() = default;
  QubitParams(double alpha_, double beta_) : alpha(alpha_), beta(beta_) {
    if (!(alpha >= 0.0 && alpha <= std::numbers::pi)) {
      throw WalkError("alpha must lie in [0, pi], got " + std::to_string(alpha));
    }
    if (!(beta >= 0.0 && beta <= 2.0 * std::numbers::pi)) {
      throw WalkError("beta must lie in [0, 2pi], got " + std::to_string(beta));
    }
  }

  Amplitude up_component() const { return {std::cos(alpha / 2.0), 0.0}; }
  Amplitude down_component() const {
    return std::polar(std::sin(alpha / 2.0), beta);
  }

  friend bool operator==(const QubitParams&, const QubitParams&) = default;
};

/// Closed interval of lattice sites [j_min, j_max].
struct LatticeWindow {
  Site j_min = 0;
  Site j_max = 0;

  LatticeWindow() = default;
  LatticeWindow(Site lo, Site hi) : j_min(lo), j_max(hi) {
    if (lo > hi) {
      throw WalkError("lattice window requires j_min <= j_max");
    }
  }

  std::size_t size() const { return static_cast<std::size_t>(j_max - j_min + 1); }
  bool contains(Site j) const { return j >= j_min && j <= j_max; }
  bool contains(const LatticeWindow& other) const {
    return other.j_min >= j_min && other.j_max <= j_max;
  }
  std::size_t index(Site j) const { return static_cast<std::size_t>(j - j_min); }

  friend bool operator==(const LatticeWindow&, const LatticeWindow&) = default;
};

enum class CoinKind { UniformHadamard, HadamardWithNotDefect };

/// Coin field: Hadamard everywhere, optionally replaced by a NOT gate at one site.
struct CoinSpec {
  CoinKind kind = CoinKind::UniformHadamard;
  Site defect_site = 0;  // meaningful only for HadamardWithNotDefect

  static CoinSpec hadamard() { return {}; }
  static CoinSpec not_defect(Site r) { return {CoinKind::HadamardWithNotDefect, r}; }

  bool has_defect() const { return kind == CoinKind::HadamardWithNotDefect; }
  std::optional<Site> defect() const {
    if (has_defect()) return defect_site;
    return std::nullopt;
  }

  friend bool operator==(const CoinSpec& x, const CoinSpec& y) {
    return x.kind == y.kind && (!x.has_defect() || x.defect_site == y.defect_site);
  }
};

enum class InitialShape { Local, Gaussian };

struct InitialStateSpec {
  InitialShape shape = InitialShape::Local;
  double sigma0 = 0.0;        // Gaussian only, lattice units
  Site truncation_radius = 100;  // Gaussian only
  bool renormalize = false;

  static InitialStateSpec local() { return {}; }
  static InitialStateSpec gaussian(double sigma0, Site radius = 100,
                                   bool renormalize = false) {
    return {InitialShape::Gaussian, sigma0, radius, renormalize};
  }

  void validate() const {
    if (shape == InitialShape::Gaussian) {
      if (!(sigma0 > 0.0) || !std::isfinite(sigma0)) {
        throw WalkError("sigma0 must be a positive finite number");
      }
      if (truncation_radius < 1) {
        throw WalkError("truncation_radius must be >= 1");
      }
    }
  }

  /// Sites carrying nonzero weight at t = 0.
  LatticeWindow support() const {
    if (shape == InitialShape::Local) return {0, 0};
    return {-truncation_radius, truncation_radius};
  }

  friend bool operator==(const InitialStateSpec& x, const InitialStateSpec& y) {
    if (x.shape != y.shape || x.renormalize != y.renormalize) return false;
    if (x.shape == InitialShape::Local) return true;
    return x.sigma0 == y.sigma0 && x.truncation_radius == y.truncation_radius;
  }
};

/// Spinor amplitudes a(j,t) (up) and b(j,t) (down) over a fixed window.
///
/// `support` tracks the sites that may hold nonzero amplitude; everything in
/// the window outside of it is exactly zero.
struct WalkState {
  LatticeWindow window;
  LatticeWindow support;
  std::vector<Amplitude> up;
  std::vector<Amplitude> down;
  std::int64_t t = 0;

  WalkState() = default;
  explicit WalkState(LatticeWindow w, LatticeWindow occupied, std::int64_t time = 0)
      : window(w), support(occupied), up(w.size()), down(w.size()), t(time) {
    if (!w.contains(occupied)) {
      throw WalkError("support must lie inside the lattice window");
    }
  }

  Amplitude a(Site j) const { return window.contains(j) ? up[window.index(j)] : Amplitude{}; }
  Amplitude b(Site j) const { return window.contains(j) ? down[window.index(j)] : Amplitude{}; }
  Amplitude& a_ref(Site j) { return up[window.index(j)]; }
  Amplitude& b_ref(Site j) { return down[window.index(j)]; }

  double norm() const {
    double s = 0.0;
    for (std::size_t i = window.index(support.j_min); i <= window.index(support.j_max); ++i) {
      s += std::norm(up[i]) + std::norm(down[i]);
    }
    return s;
  }
};

}  // namespace qwalk
