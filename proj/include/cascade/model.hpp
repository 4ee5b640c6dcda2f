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

// Physical parameters, pulse representation and the single-excitation basis
// of two Raman-driven atom-cavity nodes joined by a one-way optical channel.
//
// Units: every rate is measured in units of the cavity field decay rate
// kappa (default kappa = 1) and every time in units of 1 / kappa.

#ifndef CASCADE_MODEL_HPP
#define CASCADE_MODEL_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cascade/errors.hpp"
#include "cascade/interpolation.hpp"

namespace cascade {

using complex = std::complex<double>;

inline constexpr double kSqrt2 = std::numbers::sqrt2;

struct SystemParams {
  double kappa = 1.0;        // cavity field decay rate through the coupling mirror
  double kappa_prime = 0.0;  // extra mirror / propagation loss rate
  double g_vacuum = 100.0;   // atom-cavity vacuum Rabi coupling g
  double delta_big = 5000.0; // one-photon detuning of the Raman lasers
  double gamma = 0.0;        // decay rate of the eliminated excited level
  // Two-photon detuning laser - cavity. Unset means "cancel the real part of
  // the cavity-induced ground-state shift", i.e. Re[g^2 / (Delta + i Gamma/2)].
  std::optional<double> delta_raman;
  double t_max = 10.0;       // simulation window is [-t_max, t_max]
  double grid_step = 1e-3;   // pulse sampling step
  double adiabatic_factor = 10.0;

  /// Delta + i Gamma / 2: the detuning after folding in excited-state decay.
  complex complex_detuning() const { return {delta_big, 0.5 * gamma}; }

  double matched_raman_detuning() const {
    return std::real(g_vacuum * g_vacuum / complex_detuning());
  }

  double raman_detuning() const {
    return delta_raman.value_or(matched_raman_detuning());
  }

  void validate() const {
    auto finite = [](const char* name, double v) {
      if (!std::isfinite(v)) throw InvalidParameter(name, "must be finite");
    };
    finite("kappa", kappa);
    finite("kappa_prime", kappa_prime);
    finite("g_vacuum", g_vacuum);
    finite("delta_big", delta_big);
    finite("gamma", gamma);
    finite("t_max", t_max);
    finite("grid_step", grid_step);
    finite("adiabatic_factor", adiabatic_factor);
    if (delta_raman) finite("delta_raman", *delta_raman);
    if (!(kappa > 0)) throw InvalidParameter("kappa", "must be > 0");
    if (!(kappa_prime >= 0)) throw InvalidParameter("kappa_prime", "must be >= 0");
    if (!(gamma >= 0)) throw InvalidParameter("gamma", "must be >= 0");
    if (!(g_vacuum > 0)) throw InvalidParameter("g_vacuum", "must be > 0");
    if (delta_big == 0) throw InvalidParameter("delta_big", "must be nonzero");
    if (!(t_max > 0)) throw InvalidParameter("t_max", "must be > 0");
    if (!(grid_step > 0) || grid_step > t_max)
      throw InvalidParameter("grid_step", "must be in (0, t_max]");
    if (!(adiabatic_factor > 0))
      throw InvalidParameter("adiabatic_factor", "must be > 0");
  }
};

/// Effective Raman coupling g * Omega / (2 (Delta + i Gamma / 2)).
/// A negative Omega stands for a laser phase shifted by pi.
inline complex derive_effective_coupling(double omega_rabi, const SystemParams& p) {
  if (p.delta_big == 0) throw InvalidParameter("delta_big", "must be nonzero");
  return p.g_vacuum * omega_rabi / (2.0 * p.complex_detuning());
}

/// Laser-induced AC-Stark shift Omega^2 / (4 (Delta + i Gamma / 2)). The
/// imaginary part is the loss rate of the driven ground state.
inline complex stark_shift(double omega_rabi, const SystemParams& p) {
  if (p.delta_big == 0) throw InvalidParameter("delta_big", "must be nonzero");
  return omega_rabi * omega_rabi / (4.0 * p.complex_detuning());
}

/// Rabi frequency that produces a real effective coupling `g_eff` when
/// Gamma = 0.
inline double rabi_for_coupling(double g_eff, const SystemParams& p) {
  return 2.0 * p.delta_big * g_eff / p.g_vacuum;
}

/// A sampled laser pulse for one node.
///
/// The physical control is the Rabi frequency Omega(t), stored as a cubic
/// Hermite interpolant. The sample arrays `g_eff`, `stark` and `phase` are
/// derived from it with the parameters passed at construction; `phase`
/// integrates the real part of the Stark shift so that the laser frequency
/// tracks it.
class PulseShape {
 public:
  PulseShape() = default;

  /// Build from Rabi-frequency samples.
  PulseShape(HermiteSpline rabi, const SystemParams& p)
      : rabi_(std::move(rabi)),
        g_vacuum_(p.g_vacuum),
        detuning_(p.complex_detuning()) {
    if (p.delta_big == 0) throw InvalidParameter("delta_big", "must be nonzero");
    derive_samples();
  }

  /// Build from a real effective coupling g_i(t) (lossless convention),
  /// converting to Omega(t) = 2 Delta g_i(t) / g.
  static PulseShape from_coupling(const HermiteSpline& coupling, const SystemParams& p) {
    const double scale = rabi_for_coupling(1.0, p);
    auto scaled = [scale](std::span<const double> v) {
      std::vector<double> out(v.begin(), v.end());
      for (double& x : out) x *= scale;
      return out;
    };
    HermiteSpline rabi({coupling.nodes().begin(), coupling.nodes().end()},
                       scaled(coupling.values()), scaled(coupling.slopes_left()),
                       scaled(coupling.slopes_right()));
    return PulseShape(std::move(rabi), p);
  }

  static PulseShape zero(const SystemParams& p) {
    return from_coupling(HermiteSpline({-p.t_max, p.t_max}, {0.0, 0.0}, {0.0, 0.0}), p);
  }

  std::span<const double> times() const noexcept { return rabi_.nodes(); }
  std::span<const double> rabi() const noexcept { return rabi_.values(); }
  const std::vector<complex>& g_eff() const noexcept { return g_eff_; }
  const std::vector<complex>& stark() const noexcept { return stark_; }
  const std::vector<double>& phase() const noexcept { return phase_; }
  const HermiteSpline& rabi_spline() const noexcept { return rabi_; }
  complex reference_detuning() const noexcept { return detuning_; }
  double t_begin() const { return rabi_.front(); }
  double t_end() const { return rabi_.back(); }
  bool covers(double a, double b) const { return rabi_.contains(a) && rabi_.contains(b); }

  double rabi_at(double t) const { return rabi_(t); }

  /// Effective coupling at t under the reference parameters.
  complex coupling_at(double t) const {
    return g_vacuum_ * rabi_(t) / (2.0 * detuning_);
  }

  /// d(phase)/dt: the Stark shift the laser frequency is detuned to cancel.
  double compensation_rate(double t) const {
    const double w = rabi_(t);
    return w * w * compensation_factor();
  }

  /// compensation_rate(t) / Omega(t)^2.
  double compensation_factor() const { return std::real(0.25 / detuning_); }

  /// The pulse t -> this(-t), with the phase re-integrated from the new start.
  PulseShape time_reversed() const {
    PulseShape out;
    out.rabi_ = rabi_.reversed();
    out.g_vacuum_ = g_vacuum_;
    out.detuning_ = detuning_;
    out.derive_samples();
    return out;
  }

  double max_abs_rabi() const {
    double m = 0;
    for (double w : rabi()) m = std::max(m, std::abs(w));
    return m;
  }

  double max_abs_coupling() const {
    double m = 0;
    for (const complex& g : g_eff_) m = std::max(m, std::abs(g));
    return m;
  }

 private:
  void derive_samples() {
    const auto t = rabi_.nodes();
    const auto w = rabi_.values();
    const std::size_t n = t.size();
    g_eff_.resize(n);
    stark_.resize(n);
    std::vector<double> rate(n), rate_dl(n), rate_dr(n);
    const double re_inv = std::real(1.0 / detuning_);
    for (std::size_t k = 0; k < n; ++k) {
      g_eff_[k] = g_vacuum_ * w[k] / (2.0 * detuning_);
      stark_[k] = w[k] * w[k] / (4.0 * detuning_);
      rate[k] = w[k] * w[k] * compensation_factor();
      rate_dl[k] = 0.5 * w[k] * rabi_.slopes_left()[k] * re_inv;
      rate_dr[k] = 0.5 * w[k] * rabi_.slopes_right()[k] * re_inv;
    }
    phase_ = HermiteSpline({t.begin(), t.end()}, std::move(rate), std::move(rate_dl),
                           std::move(rate_dr))
                 .cumulative_integral();
  }

  HermiteSpline rabi_;
  double g_vacuum_ = 1.0;
  complex detuning_{1.0, 0.0};
  std::vector<complex> g_eff_;
  std::vector<complex> stark_;
  std::vector<double> phase_;
};

/// Raw amplitude vector in basis order (gg00, eg00, ge00, gg10, gg01).
using Amplitudes = std::array<complex, 5>;

/// The state restricted to the ground sector plus the single-excitation
/// sector; the atomic amplitudes are taken in the frame co-rotating with the
/// laser phases.
struct AmplitudeState {
  complex c_gg{};    // |g>1 |g>2 |00>, untouched by the dynamics
  complex alpha1{};  // |e>1 |g>2 |00>
  complex alpha2{};  // |g>1 |e>2 |00>
  complex beta1{};   // |g>1 |g>2 |10>
  complex beta2{};   // |g>1 |g>2 |01>

  static AmplitudeState from_array(const Amplitudes& a) {
    return {a[0], a[1], a[2], a[3], a[4]};
  }
  Amplitudes to_array() const { return {c_gg, alpha1, alpha2, beta1, beta2}; }

  /// Symmetric photon amplitude; zero in the dark subspace.
  complex beta_s() const { return (beta1 + beta2) / kSqrt2; }
  complex beta_a() const { return (beta2 - beta1) / kSqrt2; }

  double norm_sq() const {
    return std::norm(c_gg) + std::norm(alpha1) + std::norm(alpha2) +
           std::norm(beta1) + std::norm(beta2);
  }

  AmplitudeState operator*(complex s) const {
    return {c_gg * s, alpha1 * s, alpha2 * s, beta1 * s, beta2 * s};
  }
  AmplitudeState operator+(const AmplitudeState& o) const {
    return {c_gg + o.c_gg, alpha1 + o.alpha1, alpha2 + o.alpha2, beta1 + o.beta1,
            beta2 + o.beta2};
  }

  /// Photon amplitudes for a given antisymmetric amplitude with beta_s = 0.
  static AmplitudeState dark(complex c_gg, complex alpha1, complex alpha2, complex beta_a) {
    return {c_gg, alpha1, alpha2, -beta_a / kSqrt2, beta_a / kSqrt2};
  }
};

/// Time series of one transfer run.
struct TransferRecord {
  std::vector<double> times;
  PulseShape pulse1;
  PulseShape pulse2;
  std::vector<AmplitudeState> states;
  std::vector<double> dark_residual;  // |beta_s(t)|
  std::vector<double> norm;           // ||psi(t)||^2
  double fidelity = 0.0;              // |alpha2(T)|^2
  double jump_probability = 0.0;      // 1 - ||psi(T)||^2

  double max_dark_residual() const {
    return dark_residual.empty() ? 0.0
                                 : *std::max_element(dark_residual.begin(), dark_residual.end());
  }
};

/// Order-of-magnitude probability of a spontaneous emission during the pulse,
/// Gamma (Omega_max^2 + 4 g^2) / (8 Delta^2) * tau with
/// tau = max(1/kappa, 1/max|g_i|). Diagnostic only.
inline double spontaneous_emission_estimate(const SystemParams& p, const PulseShape& pulse) {
  if (p.gamma == 0) return 0.0;
  const double omega = pulse.max_abs_rabi();
  const double gi = std::abs(p.g_vacuum * omega / (2.0 * p.delta_big));
  double tau = 1.0 / p.kappa;
  if (gi > 0) tau = std::max(tau, 1.0 / gi);
  return p.gamma * (omega * omega + 4.0 * p.g_vacuum * p.g_vacuum) /
         (8.0 * p.delta_big * p.delta_big) * tau;
}

/// Warning text when |Delta| is not at least `adiabatic_factor` times
/// max(Omega, g); the elimination of the excited level is then questionable.
inline std::optional<std::string> adiabatic_warning(const SystemParams& p,
                                                    const PulseShape& pulse) {
  const double scale = std::max(pulse.max_abs_rabi(), p.g_vacuum);
  if (std::abs(p.delta_big) >= p.adiabatic_factor * scale) return std::nullopt;
  return "adiabatic elimination questionable: |delta_big| = " +
         std::to_string(std::abs(p.delta_big)) + " < " +
         std::to_string(p.adiabatic_factor) + " * max(Omega, g) = " +
         std::to_string(p.adiabatic_factor * scale);
}

}  // namespace cascade

#endif  // CASCADE_MODEL_HPP
