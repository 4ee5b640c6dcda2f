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

// Conditional (no-click) evolution of the cascaded two-node system.
//
// Between detector clicks the state evolves under
//
//   H_eff = H_1 + H_2 - i kappa (a1^+ a1 + a2^+ a2 + 2 a2^+ a1)
//           - i kappa' (a1^+ a1 + a2^+ a2),
//
// where H_i is the Raman-driven atom-cavity Hamiltonian after elimination of
// the excited level. In the frame that follows the laser phases, with the
// Raman detuning cancelling the cavity-induced shift, and Gamma = kappa' = 0:
//
//   d alpha1 = -g1 beta1
//   d alpha2 = -g2 beta2
//   d beta1  =  g1 alpha1 - kappa beta1
//   d beta2  =  g2 alpha2 - kappa beta2 - 2 kappa beta1
//
// Excited-state decay enters through Delta -> Delta + i Gamma / 2: the
// couplings turn complex, and whatever part of the laser and cavity Stark
// shifts the phases and the Raman detuning do not cancel remains as a
// complex rotation (the imaginary part is decay).

#ifndef CASCADE_DYNAMICS_HPP
#define CASCADE_DYNAMICS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "cascade/errors.hpp"
#include "cascade/integrator.hpp"
#include "cascade/model.hpp"

namespace cascade {

struct EvolutionConfig {
  SystemParams params;
  PulseShape pulse1;
  PulseShape pulse2;
  AmplitudeState initial;
  Tolerances tolerances;
  double output_stride = 100.0;  // output samples per unit time

  void validate() const {
    params.validate();
    tolerances.validate();
    if (!(output_stride > 0) || !std::isfinite(output_stride))
      throw InvalidParameter("output_stride", "must be > 0");
    if (initial.norm_sq() > 1.0 + 1e-12)
      throw InvalidParameter("initial", "initial state norm exceeds 1");
    const double T = params.t_max;
    if (!pulse1.covers(-T, T) || !pulse2.covers(-T, T))
      throw InvalidParameter("pulses", "pulses must cover [-t_max, t_max]");
  }

  /// Symmetric output grid -T, ..., 0, ..., T.
  std::vector<double> output_times() const {
    const double T = params.t_max;
    const auto half = static_cast<long>(std::max(1.0, std::ceil(T * output_stride - 1e-9)));
    const long n = 2 * half;
    std::vector<double> t(static_cast<std::size_t>(n + 1));
    for (long k = 0; k <= n; ++k)
      t[static_cast<std::size_t>(k)] = T * static_cast<double>(2 * k - n) / static_cast<double>(n);
    return t;
  }
};

/// Right-hand side of the no-click Schroedinger equation, with the
/// parameter-only coefficients computed once.
class EffectiveSystem {
 public:
  explicit EffectiveSystem(const EvolutionConfig& config)
      : pulse1_(&config.pulse1),
        pulse2_(&config.pulse2),
        g_(config.params.g_vacuum),
        inv_detuning_(1.0 / config.params.complex_detuning()),
        kappa_(config.params.kappa),
        photon_decay_(config.params.kappa + config.params.kappa_prime) {
    const complex cavity_shift = g_ * g_ * inv_detuning_;
    cavity_residual_ = cavity_shift - config.params.raman_detuning();
  }

  void operator()(const Amplitudes& x, Amplitudes& dx, double t) const {
    const double w1 = pulse1_->rabi_at(t);
    const double w2 = pulse2_->rabi_at(t);
    const complex g1 = 0.5 * g_ * w1 * inv_detuning_;
    const complex g2 = 0.5 * g_ * w2 * inv_detuning_;
    const complex stark1 = w1 * w1 * (0.25 * inv_detuning_ - pulse1_->compensation_factor());
    const complex stark2 = w2 * w2 * (0.25 * inv_detuning_ - pulse2_->compensation_factor());
    constexpr complex I{0.0, 1.0};
    dx[0] = 0.0;
    dx[1] = -g1 * x[3] - I * stark1 * x[1];
    dx[2] = -g2 * x[4] - I * stark2 * x[2];
    dx[3] = g1 * x[1] - photon_decay_ * x[3] - I * cavity_residual_ * x[3];
    dx[4] = g2 * x[2] - photon_decay_ * x[4] - 2.0 * kappa_ * x[3] -
            I * cavity_residual_ * x[4];
  }

  double kappa() const noexcept { return kappa_; }

 private:
  const PulseShape* pulse1_;
  const PulseShape* pulse2_;
  double g_;
  complex inv_detuning_;
  double kappa_;
  double photon_decay_;
  complex cavity_residual_;
};

inline AmplitudeState effective_rhs(const AmplitudeState& state, double t,
                                    const EvolutionConfig& config) {
  Amplitudes dx{};
  const EffectiveSystem system(config);
  system(state.to_array(), dx, t);
  return AmplitudeState::from_array(dx);
}

/// d||psi||^2 / dt = 2 Re <psi | d psi/dt>; never positive.
inline double norm_derivative(const Amplitudes& x, const Amplitudes& dx) {
  double s = 0;
  for (std::size_t k = 0; k < x.size(); ++k) s += std::real(std::conj(x[k]) * dx[k]);
  return 2.0 * s;
}

inline TransferRecord evolve(const EvolutionConfig& config) {
  config.validate();
  TransferRecord rec;
  rec.times = config.output_times();
  rec.pulse1 = config.pulse1;
  rec.pulse2 = config.pulse2;
  const std::size_t n = rec.times.size();
  rec.states.reserve(n);
  rec.dark_residual.reserve(n);
  rec.norm.reserve(n);

  EffectiveSystem system(config);
  AdaptiveIntegrator<Amplitudes> integrator(config.tolerances, 1e-3);
  Amplitudes x = config.initial.to_array();
  double t = rec.times.front();
  for (double target : rec.times) {
    integrator.advance(system, x, t, target);
    const auto s = AmplitudeState::from_array(x);
    rec.states.push_back(s);
    rec.dark_residual.push_back(std::abs(s.beta_s()));
    rec.norm.push_back(s.norm_sq());
  }
  rec.fidelity = std::clamp(std::norm(rec.states.back().alpha2), 0.0, 1.0);
  rec.jump_probability = std::clamp(1.0 - rec.norm.back(), 0.0, 1.0);
  return rec;
}

/// Probability that the excitation ends up in atom 2: |alpha2(T)|^2.
inline double transfer_fidelity(const TransferRecord& record) { return record.fidelity; }

/// Runs the qubit cos(theta)|g>1 + e^{i phi} sin(theta)|e>1 through the
/// protocol and returns the squared overlap with the same qubit in atom 2.
///
/// The excited component starts in the excitation-sector state of
/// `config.initial` (normally the ideal pulse's dark state at -T, see
/// PulsePair::matched_initial_state); its ground component is replaced.
/// Amplitudes are compared in the laser-phase frame, so the known local
/// phase of atom 2 is not counted as an error.
inline double qubit_transfer_check(double theta, double phi, const EvolutionConfig& config) {
  AmplitudeState excitation = config.initial;
  excitation.c_gg = 0.0;
  const double w = excitation.norm_sq();
  if (w > 0) excitation = excitation * (1.0 / std::sqrt(w));
  const complex carrier = std::polar(std::sin(theta), phi);

  EvolutionConfig run = config;
  run.initial = excitation * carrier;
  run.initial.c_gg = std::cos(theta);
  const TransferRecord rec = evolve(run);
  const AmplitudeState& out = rec.states.back();
  const complex overlap = std::cos(theta) * out.c_gg + std::conj(carrier) * out.alpha2;
  return std::norm(overlap);
}

}  // namespace cascade

#endif  // CASCADE_DYNAMICS_HPP
