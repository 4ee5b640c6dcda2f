// Copyright 2026 The cascade-qst Authors
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

// Photon-counting unraveling: a detector watches the output of cavity 2,
// whose field is proportional to c = a1 + a2. Each trajectory follows the
// no-click evolution until its norm drops below a uniform random threshold,
// then either clicks (c is applied) or loses the excitation to an
// unmonitored channel (kappa' or spontaneous emission), chosen in
// proportion to the instantaneous rates.

#ifndef CASCADE_TRAJECTORIES_HPP
#define CASCADE_TRAJECTORIES_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "cascade/dynamics.hpp"
#include "cascade/errors.hpp"
#include "cascade/integrator.hpp"
#include "cascade/model.hpp"
#include "cascade/parallel.hpp"

namespace cascade {

/// Click rate 2 kappa |beta1 + beta2|^2. The factor 2 kappa makes it equal to
/// the norm-decay rate of the no-click evolution when kappa' = Gamma = 0.
inline double jump_rate(const AmplitudeState& s, double kappa) {
  if (!(kappa > 0)) throw InvalidParameter("kappa", "must be > 0");
  return 2.0 * kappa * std::norm(s.beta1 + s.beta2);
}

/// Normalized c|psi>: both photon states collapse onto the global ground
/// state, the atomic excitations are annihilated.
inline AmplitudeState apply_jump(const AmplitudeState& s) {
  const complex amp = s.beta1 + s.beta2;
  const double mag = std::abs(amp);
  if (!(mag > 0)) throw JumpError("quantum jump from a state with zero click rate");
  AmplitudeState out;
  out.c_gg = amp / mag;
  return out;
}

struct TrajectoryRecord {
  std::vector<double> jump_times;  // detector clicks
  std::vector<double> loss_times;  // unmonitored losses
  double final_norm = 1.0;
  double final_fidelity = 0.0;     // |alpha2(T)|^2 of the normalized final state
};

struct TrajectoryBatch {
  std::size_t n_traj = 0;
  std::uint64_t seed = 0;
  std::vector<TrajectoryRecord> trajectories;
  double jump_fraction = 0.0;  // trajectories with at least one click
  double loss_fraction = 0.0;  // trajectories with at least one unmonitored loss
  double final_fidelity_mean = 0.0;
  double final_fidelity_var = 0.0;

  std::size_t total_jumps() const {
    std::size_t n = 0;
    for (const auto& tr : trajectories) n += tr.jump_times.size();
    return n;
  }
};

/// Generator for trajectory `index`, independent of evaluation order.
inline std::mt19937_64 trajectory_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

namespace detail {

inline double uniform_open(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double r;
  do {
    r = u(rng);
  } while (r <= 0.0);
  return r;
}

inline double norm_sq(const Amplitudes& x) { return AmplitudeState::from_array(x).norm_sq(); }

}  // namespace detail

inline TrajectoryRecord run_single_trajectory(const EvolutionConfig& config,
                                              const EffectiveSystem& system,
                                              const std::vector<double>& grid,
                                              std::mt19937_64& rng) {
  TrajectoryRecord rec;
  AdaptiveIntegrator<Amplitudes> integrator(config.tolerances, 1e-3);
  Amplitudes x = config.initial.to_array();
  double t = grid.front();
  double threshold = detail::uniform_open(rng);

  auto frozen = [&x] {
    for (std::size_t j = 1; j < x.size(); ++j)
      if (x[j] != complex{}) return false;
    return true;
  };
  for (std::size_t k = 1; k < grid.size() && !frozen(); ++k) {
    const double target = grid[k];
    while (t < target) {
      const Amplitudes x0 = x;
      const double t0 = t;
      integrator.advance(system, x, t, target);
      if (detail::norm_sq(x) > threshold) continue;

      // Locate the crossing ||psi||^2 = threshold by bisection on [t0, target].
      double lo = t0, hi = target;
      Amplitudes x_lo = x0;
      AdaptiveIntegrator<Amplitudes> refine(config.tolerances, (hi - lo) / 4);
      for (int it = 0; it < 60 && hi - lo > 1e-12 * std::max(1.0, std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        Amplitudes xm = x_lo;
        double tm = lo;
        refine.advance(system, xm, tm, mid);
        if (detail::norm_sq(xm) > threshold) {
          lo = mid;
          x_lo = xm;
        } else {
          hi = mid;
        }
      }
      x = x_lo;
      t = lo;

      Amplitudes dx{};
      system(x, dx, t);
      const auto s = AmplitudeState::from_array(x);
      const double total = -norm_derivative(x, dx);
      const double click = jump_rate(s, system.kappa());
      const double u = detail::uniform_open(rng);
      if (total > 0 && u * total <= click && click > 0) {
        rec.jump_times.push_back(t);
        x = apply_jump(s).to_array();
      } else {
        rec.loss_times.push_back(t);
        AmplitudeState ground;
        ground.c_gg = 1.0;
        x = ground.to_array();
      }
      threshold = detail::uniform_open(rng);
    }
  }
  const auto final_state = AmplitudeState::from_array(x);
  rec.final_norm = final_state.norm_sq();
  rec.final_fidelity = rec.final_norm > 0 ? std::norm(final_state.alpha2) / rec.final_norm : 0.0;
  return rec;
}

inline TrajectoryBatch run_trajectories(const EvolutionConfig& config, std::size_t n,
                                        std::uint64_t seed) {
  if (n < 1) throw InvalidParameter("n_traj", "must be >= 1");
  config.validate();
  const EffectiveSystem system(config);
  const std::vector<double> grid = config.output_times();

  TrajectoryBatch batch;
  batch.n_traj = n;
  batch.seed = seed;
  batch.trajectories.resize(n);
  parallel_for(n, [&](std::size_t i) {
    auto rng = trajectory_rng(seed, i);
    batch.trajectories[i] = run_single_trajectory(config, system, grid, rng);
  });

  std::size_t jumped = 0, lost = 0;
  double sum = 0, sum_sq = 0;
  for (const auto& tr : batch.trajectories) {
    jumped += tr.jump_times.empty() ? 0 : 1;
    lost += tr.loss_times.empty() ? 0 : 1;
    sum += tr.final_fidelity;
    sum_sq += tr.final_fidelity * tr.final_fidelity;
  }
  const double dn = static_cast<double>(n);
  batch.jump_fraction = static_cast<double>(jumped) / dn;
  batch.loss_fraction = static_cast<double>(lost) / dn;
  batch.final_fidelity_mean = sum / dn;
  batch.final_fidelity_var = n > 1 ? std::max(0.0, (sum_sq - sum * sum / dn) / (dn - 1)) : 0.0;
  return batch;
}

}  // namespace cascade

#endif  // CASCADE_TRAJECTORIES_HPP
