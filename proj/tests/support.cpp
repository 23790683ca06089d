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

#include "support.hpp"

#include <boost/multiprecision/mpfr.hpp>

namespace flexsusp::testing {

const SuspensionSpec& hexagon() {
  static const SuspensionSpec spec = synthesize(builtin_hexagon());
  return spec;
}

const BricardResult& bricard() {
  static const BricardResult r = [] {
    BricardParams p;
    p.edges = {Rational(5), Rational(7), Rational(5), Rational(7)};
    p.pole_height = Rational(3);
    return bricard_type1(p);
  }();
  return r;
}

SuspensionSpec regular_octahedron() {
  SuspensionSpec s;
  s.n = 4;
  // Gram condition for unit triangles: b = 4 (1 - 1/4) = 3.
  s.classes = {{Rational(0), Rational(3)}};
  for (int j = 0; j < 4; ++j) {
    s.apex.push_back({Rational(4), Rational(0), true});
    s.equator.push_back(Rational(1));
    s.epsilon.push_back(1);
  }
  return s;
}

const FlexTrace& hexagon_trace() {
  static const FlexTrace tr = trace(hexagon(), uniform_grid(BigFloat("51.5"), BigFloat("99.5"), 201));
  return tr;
}

const FlexTrace& bricard_trace() {
  static const FlexTrace tr = [] {
    const SuspensionSpec& s = bricard().spec;
    const BigFloat lo = to_bigfloat(s.x_min());
    const BigFloat hi = to_bigfloat(s.x_max());
    const BigFloat m = (hi - lo) / 100;
    return trace(s, uniform_grid(lo + m, hi - m, 101));
  }();
  return tr;
}

std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240611);
  return engine;
}

Rational random_rational(int max_num, int max_den) {
  std::uniform_int_distribution<int> num(-max_num, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  return Rational(BigInt(num(rng())), BigInt(den(rng())));
}

BigFloat reduce_angle(const BigFloat& v) {
  const BigFloat two_pi = 2 * pi_value();
  BigFloat r = v - two_pi * boost::multiprecision::floor(v / two_pi);
  if (r > pi_value()) r -= two_pi;
  return r;
}

}  // namespace flexsusp::testing
