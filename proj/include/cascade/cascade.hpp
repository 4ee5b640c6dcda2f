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

#ifndef CASCADE_CASCADE_HPP
#define CASCADE_CASCADE_HPP

#include "cascade/dynamics.hpp"
#include "cascade/errors.hpp"
#include "cascade/integrator.hpp"
#include "cascade/interpolation.hpp"
#include "cascade/model.hpp"
#include "cascade/parallel.hpp"
#include "cascade/synthesis.hpp"
#include "cascade/trajectories.hpp"

#endif  // CASCADE_CASCADE_HPP
