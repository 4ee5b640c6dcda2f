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

// Construction of a time-symmetric pulse pair that keeps the two-node system
// in the dark subspace (no photon ever leaves the second cavity).
//
// The caller fixes the sending pulse g1(t) for t >= 0 (the "tail"). With the
// receiving pulse tied to the sender by g2(t) = g1(-t), the dark condition
//
//   (g1 alpha1 + g2 alpha2) / sqrt2 + kappa beta_a = 0
//
// lets the unknown g2 be eliminated from the t >= 0 equations, leaving the
// closed system
//
//   d alpha1 / dt = g1 beta_a / sqrt2
//   d beta_a / dt = -kappa beta_a - sqrt2 g1 alpha1
//
// with alpha2 = sqrt(1 - alpha1^2 - beta_a^2). Solving it forward from t = 0
// gives g2(t) = -(sqrt2 kappa beta_a + g1 alpha1) / alpha2, i.e. the leading
// half g1(-t) of the sending pulse.

#ifndef CASCADE_SYNTHESIS_HPP
#define CASCADE_SYNTHESIS_HPP

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "cascade/errors.hpp"
#include "cascade/integrator.hpp"
#include "cascade/interpolation.hpp"
#include "cascade/model.hpp"

namespace cascade {

/// The prescribed second half g1(t >= 0) of the sending pulse.
class TailShape {
 public:
  static TailShape constant(double level) {
    if (!(level >= 0) || !std::isfinite(level))
      throw InvalidParameter("tail", "constant level must be finite and >= 0");
    TailShape s;
    s.level_ = level;
    return s;
  }

  static TailShape sampled(HermiteSpline samples) {
    if (samples.front() > 0)
      throw InvalidParameter("tail", "sampled tail must start at t <= 0");
    for (double v : samples.values())
      if (!(v >= 0) || !std::isfinite(v))
        throw InvalidParameter("tail", "sampled tail values must be finite and >= 0");
    TailShape s;
    s.samples_ = std::move(samples);
    return s;
  }

  bool is_constant() const noexcept { return !samples_.has_value(); }
  double level() const noexcept { return level_; }
  const std::optional<HermiteSpline>& samples() const noexcept { return samples_; }

  double value(double t) const { return samples_ ? (*samples_)(t) : level_; }
  double slope(double t) const { return samples_ ? samples_->derivative(t) : 0.0; }

  bool covers(double t_max) const { return !samples_ || samples_->contains(t_max); }

 private:
  double level_ = 0.0;
  std::optional<HermiteSpline> samples_;
};

struct SynthesisSpec {
  TailShape tail = TailShape::constant(1.0);
  SystemParams params;  // loss channels are ignored: the construction is lossless
  Tolerances tolerances;
  double denominator_guard = 1e-12;
  double truncation_threshold = 1e-6;  // relative to kappa
  bool require_nonnegative = false;
};

struct InitialAmplitudes {
  double alpha1;
  double beta_a;
};

/// Amplitudes at t = 0, where alpha1(0) = alpha2(0) by symmetry. Solves the
/// dark condition sqrt2 g1(0) alpha1 + kappa beta_a = 0 together with
/// 2 alpha1^2 + beta_a^2 = 1, taking alpha1 > 0.
inline InitialAmplitudes initial_amplitudes(double g1_at_0, double kappa) {
  if (!(kappa > 0)) throw InvalidParameter("kappa", "must be > 0");
  if (!(g1_at_0 >= 0)) throw InvalidParameter("tail", "g1(0) must be >= 0");
  const double alpha1 = kappa / std::sqrt(2.0 * (g1_at_0 * g1_at_0 + kappa * kappa));
  return {alpha1, -kSqrt2 * g1_at_0 * alpha1 / kappa};
}

/// Solution of the reduced system on the uniform grid 0, h, ..., T.
struct ForwardSolution {
  std::vector<double> times;
  std::vector<double> alpha1;
  std::vector<double> alpha2;
  std::vector<double> beta_a;
  std::vector<double> tail;        // g1(t)
  std::vector<double> tail_slope;  // dg1/dt
};

namespace detail {
inline std::vector<double> half_grid(double t_max, double step) {
  const auto n = static_cast<std::size_t>(std::ceil(t_max / step - 1e-9));
  std::vector<double> t(n + 1);
  for (std::size_t k = 0; k <= n; ++k) t[k] = t_max * static_cast<double>(k) / static_cast<double>(n);
  return t;
}
}  // namespace detail

inline ForwardSolution integrate_forward(const SynthesisSpec& spec) {
  const SystemParams& p = spec.params;
  p.validate();
  if (!spec.tail.covers(p.t_max))
    throw InvalidParameter("tail", "sampled tail must cover [0, t_max]");

  ForwardSolution out;
  out.times = detail::half_grid(p.t_max, p.grid_step);
  const std::size_t n = out.times.size();
  out.alpha1.resize(n);
  out.alpha2.resize(n);
  out.beta_a.resize(n);
  out.tail.resize(n);
  out.tail_slope.resize(n);

  const double kappa = p.kappa;
  const TailShape& tail = spec.tail;
  auto rhs = [&](const std::array<double, 2>& y, std::array<double, 2>& dy, double t) {
    const double g1 = tail.value(t);
    dy[0] = g1 * y[1] / kSqrt2;
    dy[1] = -kappa * y[1] - kSqrt2 * g1 * y[0];
  };

  const auto init = initial_amplitudes(tail.value(0.0), kappa);
  std::array<double, 2> y{init.alpha1, init.beta_a};
  AdaptiveIntegrator<std::array<double, 2>> integrator(spec.tolerances,
                                                       out.times.size() > 1 ? out.times[1] : 1e-3);
  double t = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    integrator.advance(rhs, y, t, out.times[k]);
    out.alpha1[k] = y[0];
    out.beta_a[k] = y[1];
    const double rest = 1.0 - y[0] * y[0] - y[1] * y[1];
    out.alpha2[k] = std::sqrt(std::max(0.0, rest));
    out.tail[k] = tail.value(out.times[k]);
    out.tail_slope[k] = tail.slope(out.times[k]);
  }
  return out;
}

/// Synthesized pulse pair with the reduced solution it was built from.
struct PulsePair {
  PulseShape pulse1;
  PulseShape pulse2;
  HermiteSpline coupling1;  // g1(t) on [-T, T]
  ForwardSolution forward;
  double kappa = 1.0;
  std::vector<std::string> warnings;

  /// |g1(-T)|: how much of the leading edge the finite window cuts off.
  double truncation() const { return std::abs(coupling1.values().front()); }

  /// The dark state the ideal trajectory occupies at t = -T. Tends to
  /// alpha1 = 1 as T grows; for finite T it differs from it by the cut-off
  /// leading edge of the pulse.
  AmplitudeState matched_initial_state() const {
    const std::size_t last = forward.times.size() - 1;
    return AmplitudeState::dark(0.0, forward.alpha2[last], forward.alpha1[last],
                                forward.beta_a[last]);
  }

  /// Reduced amplitudes (alpha1, alpha2, beta_a) over the full window, using
  /// alpha1(t) = alpha2(-t) and beta_a(t) = beta_a(-t) for t < 0.
  struct Reduced {
    std::vector<double> times, alpha1, alpha2, beta_a;
  };
  Reduced reduced_full() const {
    const std::size_t n = forward.times.size();
    Reduced r;
    for (std::size_t k = n - 1; k > 0; --k) {
      r.times.push_back(-forward.times[k]);
      r.alpha1.push_back(forward.alpha2[k]);
      r.alpha2.push_back(forward.alpha1[k]);
      r.beta_a.push_back(forward.beta_a[k]);
    }
    for (std::size_t k = 0; k < n; ++k) {
      r.times.push_back(forward.times[k]);
      r.alpha1.push_back(forward.alpha1[k]);
      r.alpha2.push_back(forward.alpha2[k]);
      r.beta_a.push_back(forward.beta_a[k]);
    }
    return r;
  }
};

/// Builds the pulse pair. The leading half may change sign (the tail g1 = kappa
/// gives an underdamped reduced system); a negative coupling is a laser phase
/// of pi. Set `require_nonnegative` to reject such pulses.
inline PulsePair synthesize(const SynthesisSpec& spec) {
  ForwardSolution fwd = integrate_forward(spec);
  const SystemParams& p = spec.params;
  const double kappa = p.kappa;
  const std::size_t n = fwd.times.size();

  // g2(t) = g1(-t) for t >= 0, with its exact time derivative.
  std::vector<double> g2(n), g2_slope(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double a1 = fwd.alpha1[k], a2 = fwd.alpha2[k], ba = fwd.beta_a[k];
    const double g1 = fwd.tail[k], dg1 = fwd.tail_slope[k];
    if (!(a2 > spec.denominator_guard))
      throw DegenerateSynthesis("receiving amplitude alpha2 below guard", fwd.times[k]);
    const double num = kSqrt2 * kappa * ba + g1 * a1;
    g2[k] = -num / a2;
    if (spec.require_nonnegative && g2[k] < -1e-9 * kappa)
      throw SynthesisInconsistency("synthesized coupling is negative", -fwd.times[k]);
    const double da1 = g1 * ba / kSqrt2;
    const double dba = -kappa * ba - kSqrt2 * g1 * a1;
    const double da2 = -g2[k] * ba / kSqrt2;
    const double dnum = kSqrt2 * kappa * dba + dg1 * a1 + g1 * da1;
    g2_slope[k] = -(dnum * a2 - num * da2) / (a2 * a2);
  }

  // g1 on the full symmetric grid -T .. T.
  const std::size_t m = 2 * n - 1;
  std::vector<double> t(m), v(m), dl(m), dr(m);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const std::size_t src = n - 1 - k;
    t[k] = -fwd.times[src];
    v[k] = g2[src];
    dl[k] = dr[k] = -g2_slope[src];
  }
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t dst = n - 1 + k;
    t[dst] = fwd.times[k];
    v[dst] = fwd.tail[k];
    dl[dst] = dr[dst] = fwd.tail_slope[k];
  }
  dl[n - 1] = -g2_slope[0];

  SystemParams lossless = p;
  lossless.gamma = 0.0;
  lossless.kappa_prime = 0.0;

  PulsePair pair;
  pair.kappa = kappa;
  pair.coupling1 = HermiteSpline(std::move(t), std::move(v), std::move(dl), std::move(dr));
  pair.pulse1 = PulseShape::from_coupling(pair.coupling1, lossless);
  pair.pulse2 = pair.pulse1.time_reversed();
  pair.forward = std::move(fwd);

  if (pair.truncation() >= spec.truncation_threshold * kappa)
    pair.warnings.push_back("pulse truncated: |g1(-T)| = " + std::to_string(pair.truncation()) +
                            " exceeds " + std::to_string(spec.truncation_threshold) +
                            " * kappa; enlarge t_max");
  if (auto w = adiabatic_warning(p, pair.pulse1)) pair.warnings.push_back(*w);
  return pair;
}

}  // namespace cascade

#endif  // CASCADE_SYNTHESIS_HPP
