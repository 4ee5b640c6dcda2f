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


// Test-side reference computations, written independently of the library
// integrator.

#ifndef CASCADE_TESTS_ORACLES_HPP
#define CASCADE_TESTS_ORACLES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include "cascade/cascade.hpp"

namespace oracle {

struct Reduced {
  std::vector<double> t, alpha1, alpha2, beta_a;
};

/// Fixed-step RK4 for the lossless dark-subspace equations
///   a1' = g1 b / sqrt2,  a2' = -g2 b / sqrt2,  b' = (g2 a2 - g1 a1) / sqrt2,
/// started from (a1, a2, b) at -T and sampled every `stride` steps.
inline Reduced rk4_reduced(const cascade::PulseShape& p1, const cascade::PulseShape& p2,
                           std::array<double, 3> y, double t_max, double h, int stride) {
  const double r2 = std::sqrt(2.0);
  auto f = [&](double t, const std::array<double, 3>& v) {
    const double g1 = std::real(p1.coupling_at(t)), g2 = std::real(p2.coupling_at(t));
    return std::array<double, 3>{g1 * v[2] / r2, -g2 * v[2] / r2, (g2 * v[1] - g1 * v[0]) / r2};
  };
  const auto n = static_cast<long>(std::llround(2 * t_max / h));
  Reduced out;
  for (long k = 0; k <= n; ++k) {
    const double t = -t_max + 2 * t_max * static_cast<double>(k) / static_cast<double>(n);
    if (k % stride == 0) {
      out.t.push_back(t);
      out.alpha1.push_back(y[0]);
      out.alpha2.push_back(y[1]);
      out.beta_a.push_back(y[2]);
    }
    if (k == n) break;
    const auto k1 = f(t, y);
    std::array<double, 3> tmp;
    for (int i = 0; i < 3; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    const auto k2 = f(t + 0.5 * h, tmp);
    for (int i = 0; i < 3; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    const auto k3 = f(t + 0.5 * h, tmp);
    for (int i = 0; i < 3; ++i) tmp[i] = y[i] + h * k3[i];
    const auto k4 = f(t + h, tmp);
    for (int i = 0; i < 3; ++i) y[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  }
  return out;
}

/// Random smooth Rabi pulse on [-T, T]: a sum of three Gaussians.
inline cascade::PulseShape random_pulse(std::mt19937_64& rng, const cascade::SystemParams& p) {
  std::uniform_real_distribution<double> amp(-2.0, 2.0), centre(-0.6, 0.6), width(0.05, 0.4);
  std::array<double, 3> a, c, w;
  for (int i = 0; i < 3; ++i) {
    a[i] = amp(rng) * p.kappa;
    c[i] = centre(rng) * p.t_max;
    w[i] = width(rng) * p.t_max;
  }
  std::vector<double> t, g;
  const int n = 400;
  for (int k = 0; k <= n; ++k) {
    const double x = -p.t_max + 2 * p.t_max * k / n;
    double v = 0;
    for (int i = 0; i < 3; ++i) v += a[i] * std::exp(-0.5 * std::pow((x - c[i]) / w[i], 2));
    t.push_back(x);
    g.push_back(v);
  }
  return cascade::PulseShape::from_coupling(cascade::HermiteSpline::monotone(t, g), p);
}

inline cascade::AmplitudeState random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  cascade::AmplitudeState s{{n(rng), n(rng)}, {n(rng), n(rng)}, {n(rng), n(rng)},
                            {n(rng), n(rng)}, {n(rng), n(rng)}};
  return s * (1.0 / std::sqrt(s.norm_sq()));
}

/// Kolmogorov-Smirnov distance between samples and a continuous CDF.
template <class Cdf>
double ks_distance(std::vector<double> x, Cdf cdf) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

inline std::filesystem::path fresh_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("cascade_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace oracle

#endif  // CASCADE_TESTS_ORACLES_HPP
