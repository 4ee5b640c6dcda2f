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


#include <gtest/gtest.h>

#include <cmath>

#include "cascade/cascade.hpp"
#include "oracles.hpp"

namespace cascade {
namespace {

// alpha1 from 2 a^2 + (sqrt2 g a / kappa)^2 = 1 by bisection.
double bisect_alpha1(double g, double kappa) {
  double lo = 0, hi = 1;
  for (int i = 0; i < 200; ++i) {
    const double a = 0.5 * (lo + hi);
    const double b = std::sqrt(2.0) * g * a / kappa;
    (2 * a * a + b * b > 1 ? hi : lo) = a;
  }
  return 0.5 * (lo + hi);
}

const PulsePair& default_pair() {
  static const PulsePair pair = synthesize(SynthesisSpec{});
  return pair;
}

TEST(InitialAmplitudes, MatchRootFind) {
  for (double g : {0.0, 0.3, 1.0, 2.5}) {
    for (double kappa : {0.5, 1.0, 3.0}) {
      const auto init = initial_amplitudes(g, kappa);
      const double a = bisect_alpha1(g, kappa);
      EXPECT_NEAR(init.alpha1, a, 1e-14);
      EXPECT_NEAR(init.beta_a, -std::sqrt(2.0) * g * a / kappa, 1e-14);
    }
  }
  const auto unit = initial_amplitudes(1.0, 1.0);
  EXPECT_NEAR(unit.alpha1, 0.5, 1e-15);
  EXPECT_NEAR(unit.beta_a, -0.70710678118654752, 1e-15);
}

TEST(InitialAmplitudes, RejectsBadInput) {
  EXPECT_THROW(initial_amplitudes(1.0, 0.0), InvalidParameter);
  EXPECT_THROW(initial_amplitudes(-1.0, 1.0), InvalidParameter);
}

TEST(Synthesis, DefaultWindowStartsAtZero) {
  const auto& fwd = default_pair().forward;
  EXPECT_NEAR(fwd.alpha1.front(), 0.5, 1e-12);
  EXPECT_NEAR(fwd.alpha2.front(), 0.5, 1e-12);
  EXPECT_NEAR(fwd.beta_a.front(), -std::sqrt(0.5), 1e-12);
}

TEST(Synthesis, ZeroTailIsStationary) {
  SynthesisSpec spec;
  spec.tail = TailShape::constant(0.0);
  const ForwardSolution fwd = integrate_forward(spec);
  for (std::size_t k = 0; k < fwd.times.size(); k += 500) {
    EXPECT_NEAR(fwd.alpha1[k], std::sqrt(0.5), 1e-14);
    EXPECT_EQ(fwd.beta_a[k], 0.0);
  }
  const PulsePair pair = synthesize(spec);
  for (double v : pair.coupling1.values()) EXPECT_EQ(v, 0.0);
}

TEST(Synthesis, LeadingEdgeMeetsTailAtZero) {
  // g1(0-) = -(sqrt2 kappa beta_a(0) + g1(0) alpha1(0)) / alpha2(0) = kappa.
  const auto& pair = default_pair();
  const auto nodes = pair.coupling1.nodes();
  const std::size_t mid = nodes.size() / 2;
  EXPECT_EQ(nodes[mid], 0.0);
  EXPECT_NEAR(pair.coupling1.values()[mid], 1.0, 1e-12);
  EXPECT_NEAR(pair.coupling1(-1e-9), 1.0, 1e-6);
  EXPECT_NEAR(pair.coupling1(1e-9), 1.0, 1e-12);
}

TEST(Synthesis, ReceivingPulseIsTimeReverse) {
  const auto& pair = default_pair();
  const auto t = pair.pulse1.times();
  const std::size_t n = t.size();
  ASSERT_EQ(pair.pulse2.times().size(), n);
  for (std::size_t k = 0; k < n; ++k) {
    EXPECT_NEAR(t[k], -t[n - 1 - k], 1e-12);
    EXPECT_EQ(pair.pulse2.rabi()[k], pair.pulse1.rabi()[n - 1 - k]);
  }
}

TEST(Synthesis, DarkConditionOnGrid) {
  const auto& pair = default_pair();
  const auto& f = pair.forward;
  double worst = 0;
  for (std::size_t k = 0; k < f.times.size(); ++k) {
    const double g1 = pair.coupling1(f.times[k]);
    const double g2 = pair.coupling1(-f.times[k]);
    worst = std::max(worst, std::abs(std::sqrt(2.0) * pair.kappa * f.beta_a[k] + g1 * f.alpha1[k] +
                                     g2 * f.alpha2[k]));
  }
  EXPECT_LE(worst, 1e-8);
}

TEST(Synthesis, BoundaryStates) {
  const auto& pair = default_pair();
  const AmplitudeState start = pair.matched_initial_state();
  EXPECT_GE(std::norm(start.alpha1), 1 - 1e-4);
  EXPECT_NEAR(start.norm_sq(), 1.0, 1e-9);
  EXPECT_EQ(std::abs(start.beta_s()), 0.0);
  const auto& f = pair.forward;
  EXPECT_GE(f.alpha2.back() * f.alpha2.back(), 1 - 1e-4);
}

TEST(Synthesis, FiniteWindowTruncationIsReported) {
  const auto& pair = default_pair();
  EXPECT_GT(pair.truncation(), 1e-6);
  bool found = false;
  for (const auto& w : pair.warnings) found |= w.find("truncated") != std::string::npos;
  EXPECT_TRUE(found);
}

TEST(Synthesis, SignChangeRejectedOnRequest) {
  SynthesisSpec spec;
  double lowest = 0;
  for (double v : default_pair().coupling1.values()) lowest = std::min(lowest, v);
  EXPECT_LT(lowest, 0.0);
  spec.require_nonnegative = true;
  EXPECT_THROW(synthesize(spec), SynthesisInconsistency);
}

TEST(Synthesis, DegenerateDenominator) {
  SynthesisSpec spec;
  spec.denominator_guard = 0.9;
  EXPECT_THROW(synthesize(spec), DegenerateSynthesis);
}

TEST(Synthesis, SampledTailMustCoverWindow) {
  SynthesisSpec spec;
  spec.tail = TailShape::sampled(HermiteSpline::monotone({0.0, 1.0, 2.0}, {1.0, 1.0, 1.0}));
  EXPECT_THROW(synthesize(spec), InvalidParameter);
}

TEST(Synthesis, SampledConstantTailMatchesConstant) {
  SynthesisSpec spec;
  spec.params.t_max = 4;
  const PulsePair a = synthesize(spec);
  spec.tail = TailShape::sampled(HermiteSpline::monotone({0.0, 2.0, 4.0}, {1.0, 1.0, 1.0}));
  const PulsePair b = synthesize(spec);
  for (double t : {-3.5, -1.0, -0.2, 0.0, 2.5})
    EXPECT_NEAR(a.coupling1(t), b.coupling1(t), 1e-9);
}

}  // namespace
}  // namespace cascade
