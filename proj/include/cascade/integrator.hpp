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

#ifndef CASCADE_INTEGRATOR_HPP
#define CASCADE_INTEGRATOR_HPP

#include <algorithm>
#include <cmath>
#include <complex>

#include <boost/numeric/odeint.hpp>

#include "cascade/errors.hpp"

namespace cascade {

struct Tolerances {
  double relative = 1e-9;
  double absolute = 1e-12;

  void validate() const {
    if (!(relative > 0) || !std::isfinite(relative))
      throw InvalidParameter("tol", "relative tolerance must be > 0");
    if (!(absolute > 0) || !std::isfinite(absolute))
      throw InvalidParameter("atol", "absolute tolerance must be > 0");
  }
};

namespace detail {
inline bool all_finite(const auto& x) {
  for (const auto& v : x) {
    if constexpr (requires { v.real(); }) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    } else {
      if (!std::isfinite(v)) return false;
    }
  }
  return true;
}
}  // namespace detail

/// Error-controlled Cash-Karp 5(4) stepper that lands exactly on requested
/// times. The step size carries over between `advance` calls.
template <class State>
class AdaptiveIntegrator {
 public:
  explicit AdaptiveIntegrator(Tolerances tol = {}, double initial_step = 1e-3)
      : stepper_(boost::numeric::odeint::make_controlled(
            tol.absolute, tol.relative,
            boost::numeric::odeint::runge_kutta_cash_karp54<State>())),
        dt_(initial_step) {
    tol.validate();
  }

  /// Integrate `x` from `t` to `t_end` (t_end >= t). On return t == t_end.
  template <class System>
  void advance(System&& system, State& x, double& t, double t_end) {
    namespace odeint = boost::numeric::odeint;
    const double min_step = 1e-14 * std::max(1.0, std::abs(t_end));
    while (t < t_end) {
      const double remaining = t_end - t;
      const bool clamped = dt_ >= remaining;
      double dt = clamped ? remaining : dt_;
      const double t_start = t;
      auto sys = [&system](const State& s, State& ds, double tt) { system(s, ds, tt); };
      const auto res = stepper_.try_step(sys, x, t, dt);
      if (res == odeint::success) {
        if (!detail::all_finite(x))
          throw NumericFailure("integrator produced a non-finite state", t_start);
        if (clamped) {
          t = t_end;
        } else {
          dt_ = dt;
        }
      } else {
        dt_ = dt;
        if (dt_ < min_step) throw NumericFailure("step size underflow", t);
      }
    }
  }

 private:
  boost::numeric::odeint::controlled_runge_kutta<
      boost::numeric::odeint::runge_kutta_cash_karp54<State>>
      stepper_;
  double dt_;
};

}  // namespace cascade

#endif  // CASCADE_INTEGRATOR_HPP
