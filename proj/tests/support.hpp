// Copyright 2026 The flexsusp Authors
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

#pragma once

#include <random>
#include <string>
#include <vector>

#include "flexsusp/flexer/flexer.hpp"
#include "flexsusp/flow/flow_graph.hpp"
#include "flexsusp/synthesis/suspension.hpp"

namespace flexsusp::testing {

/// Synthesized once per process.
const SuspensionSpec& hexagon();

/// Crossed quadrilateral 5, 7, 5, 7 with poles at height 3.
const BricardResult& bricard();

/// Regular octahedron with unit edges written as a suspension.
SuspensionSpec regular_octahedron();

/// 201 samples on [51.5, 99.5].
const FlexTrace& hexagon_trace();
const FlexTrace& bricard_trace();

/// Fixed-seed engine so failures are reproducible.
std::mt19937_64& rng();

Rational random_rational(int max_num = 1000, int max_den = 60);

/// Reflection of 2 pi periodic v into (-pi, pi].
BigFloat reduce_angle(const BigFloat& v);

}  // namespace flexsusp::testing
