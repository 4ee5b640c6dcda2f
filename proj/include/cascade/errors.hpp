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

#ifndef CASCADE_ERRORS_HPP
#define CASCADE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cascade {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter or configuration value is out of its admissible range.
/// `field()` names the offending entry so that front ends can report it.
class InvalidParameter : public Error {
 public:
  InvalidParameter(std::string field, const std::string& what)
      : Error("invalid value for '" + field + "': " + what),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// The ODE integrator could not make progress (step underflow, non-finite
/// state).
class NumericFailure : public Error {
 public:
  NumericFailure(const std::string& what, double time)
      : Error(what + " at t = " + std::to_string(time)), time_(time) {}

  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// The receiving-node amplitude fell below the denominator guard while
/// reconstructing the leading half of a pulse.
class DegenerateSynthesis : public NumericFailure {
 public:
  using NumericFailure::NumericFailure;
};

/// The reconstructed pulse violates a constraint the caller asked for
/// (e.g. a sign constraint).
class SynthesisInconsistency : public NumericFailure {
 public:
  using NumericFailure::NumericFailure;
};

/// A pulse was queried outside the time window on which it is sampled.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A quantum jump was requested from a state with vanishing jump rate.
class JumpError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cascade

#endif  // CASCADE_ERRORS_HPP
