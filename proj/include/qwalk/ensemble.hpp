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
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <numbers>
#include <sstream>
#include <thread>
#include <vector>

#include "qwalk/evolution.hpp"
#include "qwalk/fit.hpp"
#include "qwalk/initial_state.hpp"
#include "qwalk/observables.hpp"
#include "qwalk/types.hpp"

namespace qwalk {

struct QubitGrid {
  double alpha_step = 0.0;
  double beta_step = 0.0;
  std::vector<QubitParams> qubits;

  std::size_t size() const { return qubits.size(); }
};

/// Every (i * alpha_step, k * beta_step) with i * alpha_step <= pi and
/// k * beta_step <= 2 pi, alpha-major. Points are generated by multiplication
/// so no rounding accumulates along the axes.
inline QubitGrid make_qubit_grid(double alpha_step, double beta_step) {
  if (!(alpha_step > 0.0) || !(beta_step > 0.0) || !std::isfinite(alpha_step) ||
      !std::isfinite(beta_step)) {
    throw WalkError("grid steps must be positive and finite");
  }
  QubitGrid g{alpha_step, beta_step, {}};
  for (std::int64_t i = 0; static_cast<double>(i) * alpha_step <= std::numbers::pi; ++i) {
    for (std::int64_t k = 0; static_cast<double>(k) * beta_step <= 2.0 * std::numbers::pi; ++k) {
      g.qubits.emplace_back(static_cast<double>(i) * alpha_step,
                            static_cast<double>(k) * beta_step);
    }
  }
  return g;
}

/// Grid holding exactly the given qubits (steps left at zero).
inline QubitGrid make_qubit_list(std::vector<QubitParams> qubits) {
  return QubitGrid{0.0, 0.0, std::move(qubits)};
}

/// Distribution at one time step, averaged or not.
struct DistributionSnapshot {
  std::int64_t t = 0;
  PositionDistribution dist;
};

enum class EnsembleMethod {
  /// Builds and evolves one walk per qubit.
  PerQubit,
  /// Evolves the two spin basis states once and recovers every qubit's
  /// observables from their bilinear cross sums. Exact by linearity.
  BasisSuperposition,
};

struct RunOptions {
  unsigned workers = 0;  // 0 = hardware concurrency
  std::vector<std::int64_t> snapshot_times;  // empty = final step only
  FitWindow fit{};                           // end == 0 = default window
  EnsembleMethod method = EnsembleMethod::PerQubit;
};

struct EnsembleResult {
  std::vector<std::int64_t> times;
  std::vector<double> mean_entropy;
  std::vector<double> mean_dispersion;
  std::vector<double> mean_norm;
  std::vector<DistributionSnapshot> mean_distribution;
  FitWindow fit{};
  double slope = 0.0;
  std::size_t qubit_count = 0;
  double norm_deficit = 0.0;

  double final_entropy() const { return mean_entropy.back(); }
};

/// Single-walk outputs.
struct SingleResult {
  std::vector<std::int64_t> times;
  std::vector<double> dispersion;
  std::vector<double> entropy;
  std::vector<double> norm;
  std::vector<DistributionSnapshot> snapshots;
  FitWindow fit{};
  double slope = 0.0;
  double norm_deficit = 0.0;

  double final_entropy() const { return entropy.back(); }
};

namespace detail {

inline unsigned resolve_workers(unsigned w) {
  if (w != 0) return w;
  return std::max(1u, std::thread::hardware_concurrency());
}

inline std::vector<std::int64_t> resolve_snapshots(const RunOptions& opt,
                                                   const EvolutionPlan& plan) {
  std::vector<std::int64_t> s = opt.snapshot_times;
  if (s.empty()) s.push_back(plan.steps);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (std::int64_t t : s) {
    if (t < 0 || t > plan.steps) throw WalkError("snapshot time outside the run");
  }
  return s;
}

inline std::vector<std::int64_t> record_times(const EvolutionPlan& plan) {
  std::vector<std::int64_t> t;
  for (std::int64_t k = 0; k <= plan.steps; ++k) {
    if (k == 0 || plan.records(k)) t.push_back(k);
  }
  return t;
}

inline FitWindow resolve_fit(const RunOptions& opt, const EvolutionPlan& plan) {
  return opt.fit.end == 0 ? default_fit_window(plan.steps) : opt.fit;
}

// Runs `count` independent tasks on `workers` threads; task(i) must only
// touch slot i of its outputs.
template <class Task>
void parallel_for(std::size_t count, unsigned workers, Task&& task) {
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) task(i);
    });
  }
}

struct WalkTrace {
  std::vector<double> entropy;
  std::vector<double> dispersion;
  std::vector<double> norm;
  std::vector<DistributionSnapshot> snapshots;
};

inline WalkTrace trace_walk(const QubitParams& q, const InitialStateSpec& init,
                            const EvolutionPlan& plan,
                            const std::vector<std::int64_t>& snapshot_times) {
  WalkTrace tr;
  const LatticeWindow window = plan_window(init, plan.coin, plan.steps);
  WalkState s0 = build_initial_state(q, init, window);
  EvolutionPlan every{plan.coin, plan.steps, 1};
  auto snap = snapshot_times.begin();
  evolve(std::move(s0), every, [&](const WalkState& s) {
    if (s.t == 0 || plan.records(s.t)) {
      const StateMoments m = moments(s);
      tr.entropy.push_back(entanglement_entropy(m.coin).entropy);
      tr.dispersion.push_back(dispersion(m));
      tr.norm.push_back(m.norm);
    }
    if (snap != snapshot_times.end() && *snap == s.t) {
      tr.snapshots.push_back({s.t, distribution(s)});
      ++snap;
    }
  });
  return tr;
}

inline std::string describe(std::size_t index, const QubitParams& q) {
  std::ostringstream os;
  os.precision(17);
  os << "qubit #" << index << " (alpha=" << q.alpha << ", beta=" << q.beta << ")";
  return os.str();
}

inline void accumulate(PositionDistribution& acc, const PositionDistribution& d) {
  if (acc.p_total.empty()) {
    acc.window = d.window;
    acc.p_up.assign(d.p_up.size(), 0.0);
    acc.p_down.assign(d.p_down.size(), 0.0);
    acc.p_total.assign(d.p_total.size(), 0.0);
  }
  if (!(acc.window == d.window)) throw WalkError("snapshot windows differ across qubits");
  for (std::size_t k = 0; k < d.p_total.size(); ++k) {
    acc.p_up[k] += d.p_up[k];
    acc.p_down[k] += d.p_down[k];
    acc.p_total[k] += d.p_total[k];
  }
}

inline void scale(PositionDistribution& d, double f) {
  for (std::size_t k = 0; k < d.p_total.size(); ++k) {
    d.p_up[k] *= f;
    d.p_down[k] *= f;
    d.p_total[k] *= f;
  }
}

// Hermitian 2x2 cross sums M_kl = sum_j w(j) conj(x_k(j)) x_l(j) over the two
// basis walks; only (0,0), (1,1) and (0,1) are stored.
struct Cross {
  double d0 = 0.0, d1 = 0.0;
  Amplitude off{};

  double eval(Amplitude c0, Amplitude c1) const {
    return std::norm(c0) * d0 + std::norm(c1) * d1 + 2.0 * std::real(std::conj(c0) * c1 * off);
  }
};

struct BasisMoments {
  Cross a2, norm, first, second;
  std::array<Amplitude, 4> g{};  // g[2k+l] = sum_j a_k conj(b_l)

  Amplitude coherence(Amplitude c0, Amplitude c1) const {
    return c0 * std::conj(c0) * g[0] + c0 * std::conj(c1) * g[1] + c1 * std::conj(c0) * g[2] +
           c1 * std::conj(c1) * g[3];
  }
};

inline BasisMoments basis_moments(const WalkState& u, const WalkState& d) {
  BasisMoments m;
  const std::size_t i0 = u.window.index(u.support.j_min);
  const std::size_t i1 = u.window.index(u.support.j_max);
  for (std::size_t i = i0; i <= i1; ++i) {
    const double j = static_cast<double>(u.window.j_min + static_cast<Site>(i));
    const Amplitude a0 = u.up[i], b0 = u.down[i], a1 = d.up[i], b1 = d.down[i];
    const double pa0 = std::norm(a0), pa1 = std::norm(a1);
    const double p0 = pa0 + std::norm(b0), p1 = pa1 + std::norm(b1);
    const Amplitude xa = std::conj(a0) * a1;
    const Amplitude x = xa + std::conj(b0) * b1;
    m.a2.d0 += pa0;
    m.a2.d1 += pa1;
    m.a2.off += xa;
    m.norm.d0 += p0;
    m.norm.d1 += p1;
    m.norm.off += x;
    m.first.d0 += j * p0;
    m.first.d1 += j * p1;
    m.first.off += j * x;
    m.second.d0 += j * j * p0;
    m.second.d1 += j * j * p1;
    m.second.off += j * j * x;
    m.g[0] += a0 * std::conj(b0);
    m.g[1] += a0 * std::conj(b1);
    m.g[2] += a1 * std::conj(b0);
    m.g[3] += a1 * std::conj(b1);
  }
  return m;
}

inline WalkState basis_state(int spin, const InitialStateSpec& init, LatticeWindow window) {
  // cos(0)=1 and sin(pi/2)=1 exactly; the zero component is set explicitly.
  WalkState s = build_initial_state(QubitParams{0.0, 0.0}, init, window);
  if (spin == 1) std::swap(s.up, s.down);
  return s;
}

inline EnsembleResult run_superposition(const QubitGrid& grid, const InitialStateSpec& init,
                                        const EvolutionPlan& plan,
                                        const std::vector<std::int64_t>& snapshot_times) {
  EnsembleResult res;
  const std::size_t n = grid.size();
  std::vector<Amplitude> c0(n), c1(n);
  std::array<double, 2> w_diag{0.0, 0.0};
  Amplitude w_off{};
  for (std::size_t i = 0; i < n; ++i) {
    c0[i] = grid.qubits[i].up_component();
    c1[i] = grid.qubits[i].down_component();
  }
  // Mean of conj(c_k) c_l over the grid, summed in qubit order.
  for (std::size_t i = 0; i < n; ++i) {
    w_diag[0] += std::norm(c0[i]);
    w_diag[1] += std::norm(c1[i]);
    w_off += std::conj(c0[i]) * c1[i];
  }
  const double inv_n = 1.0 / static_cast<double>(n);

  const LatticeWindow window = plan_window(init, plan.coin, plan.steps);
  WalkState up = basis_state(0, init, window);
  WalkState down = basis_state(1, init, window);
  WalkState scratch;
  auto snap = snapshot_times.begin();

  auto observe = [&](std::int64_t t) {
    if (t == 0 || plan.records(t)) {
      const BasisMoments m = basis_moments(up, down);
      double se = 0.0, sd = 0.0, sn = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        ReducedCoinMatrix rc;
        rc.A = m.a2.eval(c0[i], c1[i]);
        rc.norm = m.norm.eval(c0[i], c1[i]);
        rc.B = m.coherence(c0[i], c1[i]);
        se += entanglement_entropy(rc).entropy;
        sd += detail::standard_deviation(rc.norm, m.first.eval(c0[i], c1[i]),
                                         m.second.eval(c0[i], c1[i]));
        sn += rc.norm;
      }
      res.times.push_back(t);
      res.mean_entropy.push_back(se * inv_n);
      res.mean_dispersion.push_back(sd * inv_n);
      res.mean_norm.push_back(sn * inv_n);
    }
    if (snap != snapshot_times.end() && *snap == t) {
      PositionDistribution d;
      d.window = up.support;
      const std::size_t len = up.support.size();
      d.p_up.resize(len);
      d.p_down.resize(len);
      d.p_total.resize(len);
      const std::size_t off = window.index(up.support.j_min);
      for (std::size_t k = 0; k < len; ++k) {
        const Amplitude a0 = up.up[off + k], a1 = down.up[off + k];
        const Amplitude b0 = up.down[off + k], b1 = down.down[off + k];
        const double pu = w_diag[0] * std::norm(a0) + w_diag[1] * std::norm(a1) +
                          2.0 * std::real(w_off * std::conj(a0) * a1);
        const double pd = w_diag[0] * std::norm(b0) + w_diag[1] * std::norm(b1) +
                          2.0 * std::real(w_off * std::conj(b0) * b1);
        d.p_up[k] = std::max(pu * inv_n, 0.0);
        d.p_down[k] = std::max(pd * inv_n, 0.0);
        d.p_total[k] = d.p_up[k] + d.p_down[k];
      }
      res.mean_distribution.push_back({t, std::move(d)});
      ++snap;
    }
  };

  observe(0);
  for (std::int64_t t = 1; t <= plan.steps; ++t) {
    step_into(up, scratch, plan.coin);
    std::swap(up, scratch);
    step_into(down, scratch, plan.coin);
    std::swap(down, scratch);
    observe(t);
  }
  return res;
}

inline EnsembleResult run_per_qubit(const QubitGrid& grid, const InitialStateSpec& init,
                                    const EvolutionPlan& plan, unsigned workers,
                                    const std::vector<std::int64_t>& snapshot_times) {
  // Fixed batch size keeps the reduction order independent of `workers`.
  constexpr std::size_t kBatch = 32;
  EnsembleResult res;
  res.times = record_times(plan);
  const std::size_t nt = res.times.size();
  std::vector<double> se(nt, 0.0), sd(nt, 0.0), sn(nt, 0.0);
  std::vector<PositionDistribution> acc(snapshot_times.size());

  const std::size_t n = grid.size();
  for (std::size_t base = 0; base < n; base += kBatch) {
    const std::size_t len = std::min(kBatch, n - base);
    std::vector<WalkTrace> traces(len);
    std::vector<std::exception_ptr> errors(len);
    parallel_for(len, workers, [&](std::size_t k) {
      try {
        traces[k] = trace_walk(grid.qubits[base + k], init, plan, snapshot_times);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    });
    for (std::size_t k = 0; k < len; ++k) {
      if (!errors[k]) continue;
      const std::string who = describe(base + k, grid.qubits[base + k]);
      try {
        std::rethrow_exception(errors[k]);
      } catch (const std::exception& e) {
        throw WalkError(who + ": " + e.what());
      }
    }
    for (std::size_t k = 0; k < len; ++k) {
      const WalkTrace& tr = traces[k];
      for (std::size_t i = 0; i < nt; ++i) {
        se[i] += tr.entropy[i];
        sd[i] += tr.dispersion[i];
        sn[i] += tr.norm[i];
      }
      for (std::size_t s = 0; s < acc.size(); ++s) accumulate(acc[s], tr.snapshots[s].dist);
    }
  }

  const double inv_n = 1.0 / static_cast<double>(n);
  res.mean_entropy.resize(nt);
  res.mean_dispersion.resize(nt);
  res.mean_norm.resize(nt);
  for (std::size_t i = 0; i < nt; ++i) {
    res.mean_entropy[i] = se[i] * inv_n;
    res.mean_dispersion[i] = sd[i] * inv_n;
    res.mean_norm[i] = sn[i] * inv_n;
  }
  for (std::size_t s = 0; s < acc.size(); ++s) {
    scale(acc[s], inv_n);
    res.mean_distribution.push_back({snapshot_times[s], std::move(acc[s])});
  }
  return res;
}

}  // namespace detail

/// Averages entropy, dispersion and the position distribution over every
/// qubit of `grid`. Results are bitwise independent of `options.workers`.
inline EnsembleResult run_ensemble(const QubitGrid& grid, const InitialStateSpec& init,
                                   const EvolutionPlan& plan, const RunOptions& options = {}) {
  init.validate();
  plan.validate();
  if (grid.qubits.empty()) throw WalkError("empty qubit grid");
  const std::vector<std::int64_t> snaps = detail::resolve_snapshots(options, plan);
  EnsembleResult res =
      options.method == EnsembleMethod::PerQubit
          ? detail::run_per_qubit(grid, init, plan, detail::resolve_workers(options.workers),
                                  snaps)
          : detail::run_superposition(grid, init, plan, snaps);
  res.qubit_count = grid.size();
  res.norm_deficit = 1.0 - res.mean_norm.front();
  res.fit = detail::resolve_fit(options, plan);
  res.slope = fit_dispersion_slope(res.times, res.mean_dispersion, res.fit);
  return res;
}

/// One walk with its full observable record.
inline SingleResult run_single(const QubitParams& qubit, const InitialStateSpec& init,
                               const EvolutionPlan& plan, const RunOptions& options = {}) {
  init.validate();
  plan.validate();
  const std::vector<std::int64_t> snaps = detail::resolve_snapshots(options, plan);
  detail::WalkTrace tr = detail::trace_walk(qubit, init, plan, snaps);
  SingleResult res;
  res.times = detail::record_times(plan);
  res.dispersion = std::move(tr.dispersion);
  res.entropy = std::move(tr.entropy);
  res.norm = std::move(tr.norm);
  res.snapshots = std::move(tr.snapshots);
  res.norm_deficit = 1.0 - res.norm.front();
  res.fit = detail::resolve_fit(options, plan);
  res.slope = fit_dispersion_slope(res.times, res.dispersion, res.fit);
  return res;
}

}  // namespace qwalk
