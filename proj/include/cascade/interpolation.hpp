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

#ifndef CASCADE_INTERPOLATION_HPP
#define CASCADE_INTERPOLATION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cascade/errors.hpp"

namespace cascade {

/// Piecewise cubic Hermite interpolant on strictly increasing nodes.
///
/// Each node carries a one-sided slope from the left and from the right, so
/// a curve with a derivative jump at a node (for example a pulse glued from
/// two halves) is represented without smoothing the kink away. When no
/// slopes are available, `monotone()` builds the Fritsch-Carlson slopes,
/// which never overshoot the data.
class HermiteSpline {
 public:
  HermiteSpline() = default;

  HermiteSpline(std::vector<double> nodes, std::vector<double> values,
                std::vector<double> slope_left, std::vector<double> slope_right)
      : x_(std::move(nodes)),
        y_(std::move(values)),
        dl_(std::move(slope_left)),
        dr_(std::move(slope_right)) {
    validate();
    detect_uniform();
  }

  HermiteSpline(std::vector<double> nodes, std::vector<double> values,
                std::vector<double> slopes)
      : HermiteSpline(std::move(nodes), std::move(values), slopes, slopes) {}

  static HermiteSpline monotone(std::vector<double> nodes,
                                std::vector<double> values) {
    auto slopes = monotone_slopes(nodes, values);
    return HermiteSpline(std::move(nodes), std::move(values), std::move(slopes));
  }

  /// Fritsch-Carlson slopes (the PCHIP rule, including its one-sided
  /// three-point end conditions).
  static std::vector<double> monotone_slopes(std::span<const double> x,
                                             std::span<const double> y) {
    const std::size_t n = x.size();
    std::vector<double> d(n, 0.0);
    if (n < 2) return d;
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      h[k] = x[k + 1] - x[k];
      delta[k] = (y[k + 1] - y[k]) / h[k];
    }
    if (n == 2) {
      d[0] = d[1] = delta[0];
      return d;
    }
    for (std::size_t k = 1; k + 1 < n; ++k) {
      if (delta[k - 1] * delta[k] <= 0.0) continue;
      const double w1 = 2.0 * h[k] + h[k - 1];
      const double w2 = h[k] + 2.0 * h[k - 1];
      d[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
    }
    d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    return d;
  }

  std::size_t size() const noexcept { return x_.size(); }
  bool empty() const noexcept { return x_.empty(); }
  double front() const { return x_.front(); }
  double back() const { return x_.back(); }
  std::span<const double> nodes() const noexcept { return x_; }
  std::span<const double> values() const noexcept { return y_; }
  std::span<const double> slopes_left() const noexcept { return dl_; }
  std::span<const double> slopes_right() const noexcept { return dr_; }

  bool contains(double t, double tol = 1e-12) const noexcept {
    if (x_.empty()) return false;
    const double scale = std::max({1.0, std::abs(x_.front()), std::abs(x_.back())});
    return t >= x_.front() - tol * scale && t <= x_.back() + tol * scale;
  }

  double operator()(double t) const {
    const std::size_t k = interval(t);
    if (x_.size() == 1) return y_[0];
    const double h = x_[k + 1] - x_[k];
    const double s = (t - x_[k]) / h;
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    return h00 * y_[k] + h10 * h * dr_[k] + h01 * y_[k + 1] + h11 * h * dl_[k + 1];
  }

  double derivative(double t) const {
    const std::size_t k = interval(t);
    if (x_.size() == 1) return 0.0;
    const double h = x_[k + 1] - x_[k];
    const double s = (t - x_[k]) / h;
    const double s2 = s * s;
    const double d00 = (6 * s2 - 6 * s) / h;
    const double d10 = 3 * s2 - 4 * s + 1;
    const double d01 = (-6 * s2 + 6 * s) / h;
    const double d11 = 3 * s2 - 2 * s;
    return d00 * y_[k] + d10 * dr_[k] + d01 * y_[k + 1] + d11 * dl_[k + 1];
  }

  /// Running integral from the first node, evaluated exactly for the cubic
  /// pieces: int_k = h (y0 + y1) / 2 + h^2 (d0 - d1) / 12.
  std::vector<double> cumulative_integral() const {
    std::vector<double> out(x_.size(), 0.0);
    for (std::size_t k = 0; k + 1 < x_.size(); ++k) {
      const double h = x_[k + 1] - x_[k];
      out[k + 1] = out[k] + h * (y_[k] + y_[k + 1]) / 2.0 +
                   h * h * (dr_[k] - dl_[k + 1]) / 12.0;
    }
    return out;
  }

  /// The interpolant of t -> f(-t).
  HermiteSpline reversed() const {
    const std::size_t n = x_.size();
    std::vector<double> x(n), y(n), dl(n), dr(n);
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t j = n - 1 - k;
      x[k] = -x_[j];
      y[k] = y_[j];
      dl[k] = -dr_[j];
      dr[k] = -dl_[j];
    }
    return HermiteSpline(std::move(x), std::move(y), std::move(dl), std::move(dr));
  }

 private:
  static double end_slope(double h0, double h1, double m0, double m1) {
    double d = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
    if (d * m0 <= 0.0) {
      d = 0.0;
    } else if (m0 * m1 <= 0.0 && std::abs(d) > std::abs(3.0 * m0)) {
      d = 3.0 * m0;
    }
    return d;
  }

  void validate() const {
    const std::size_t n = x_.size();
    if (n == 0) throw InvalidParameter("nodes", "spline needs at least one node");
    if (y_.size() != n || dl_.size() != n || dr_.size() != n)
      throw InvalidParameter("nodes", "node, value and slope arrays differ in length");
    for (std::size_t k = 0; k + 1 < n; ++k)
      if (!(x_[k + 1] > x_[k]))
        throw InvalidParameter("nodes", "nodes must be strictly increasing");
  }

  std::size_t interval(double t) const {
    if (!contains(t))
      throw DomainError("time " + std::to_string(t) + " outside [" +
                        std::to_string(x_.front()) + ", " +
                        std::to_string(x_.back()) + "]");
    if (x_.size() == 1) return 0;
    if (uniform_step_ > 0) {
      const double pos = (t - x_.front()) / uniform_step_;
      auto k = static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(x_.size() - 2)));
      while (k > 0 && t < x_[k]) --k;
      while (k + 2 < x_.size() && t >= x_[k + 1]) ++k;
      return k;
    }
    auto it = std::upper_bound(x_.begin(), x_.end(), t);
    std::size_t k = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    return std::min(k, x_.size() - 2);
  }

  void detect_uniform() {
    uniform_step_ = 0;
    if (x_.size() < 3) return;
    const double h = (x_.back() - x_.front()) / static_cast<double>(x_.size() - 1);
    for (std::size_t k = 0; k + 1 < x_.size(); ++k)
      if (std::abs(x_[k + 1] - x_[k] - h) > 1e-6 * h) return;
    uniform_step_ = h;
  }

  std::vector<double> x_, y_, dl_, dr_;
  double uniform_step_ = 0;  // nonzero when the nodes are equally spaced
};

}  // namespace cascade

#endif  // CASCADE_INTERPOLATION_HPP
