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

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "flexsusp/numeric/bigfloat.hpp"
#include "flexsusp/numeric/poly.hpp"
#include "flexsusp/numeric/rational.hpp"

namespace flexsusp {

/// y^2 = x (x - b_prime) (x - b) with 0 < b_prime < b.
class Cubic {
 public:
  Cubic(Rational b_prime, Rational b);

  const Rational& b_prime() const { return b_prime_; }
  const Rational& b() const { return b_; }

  /// x (x - b') (x - b).
  Rational rhs(const Rational& x) const;
  /// Derivative of rhs: 3x^2 - 2(b'+b)x + b'b.
  Rational rhs_derivative(const Rational& x) const;
  Poly<Rational> polynomial() const;

  friend bool operator==(const Cubic&, const Cubic&) = default;

 private:
  Rational b_prime_;
  Rational b_;
};

/// The group zero (point at infinity) or an affine rational point.
class CurvePoint {
 public:
  /// Infinity.
  CurvePoint() = default;
  CurvePoint(Rational x, Rational y) : affine_(std::in_place, std::move(x), std::move(y)) {}

  static CurvePoint infinity() { return {}; }

  bool is_infinity() const { return !affine_.has_value(); }
  /// DomainError for infinity.
  const Rational& x() const;
  const Rational& y() const;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;

 private:
  std::optional<std::pair<Rational, Rational>> affine_;
};

std::ostream& operator<<(std::ostream& os, const CurvePoint& p);

bool contains(const Cubic& curve, const CurvePoint& p);

CurvePoint negate(const CurvePoint& p);

/// Chord and tangent rule. DomainError if either point is off the curve.
CurvePoint add(const Cubic& curve, const CurvePoint& p, const CurvePoint& q);

CurvePoint scalar_mul(const Cubic& curve, long long n, const CurvePoint& p);

enum class Component { Bounded, Unbounded };

/// Bounded: 0 <= x <= b'; Unbounded: x >= b. DomainError for infinity.
Component component(const Cubic& curve, const CurvePoint& p);

/// The quadratic y = q(x) through four curve points summing to zero.
///
/// Needs at least three distinct x-values. A repeated point must be a point
/// of tangency: q' has to match the curve slope there. DomainError when the
/// points do not sum to zero, include infinity, collide in x with different
/// y, or have fewer than three distinct x-values.
Poly<Rational> quadratic_through(const Cubic& curve, const std::array<CurvePoint, 4>& pts);

/// sqrt(-x (x - b') (x - b)) for b' <= x <= b.
BigFloat flex_y_magnitude(const Cubic& curve, const BigFloat& x);

/// {"x": "p/q", "y": "p/q"} or "infinity".
std::string to_json(const CurvePoint& p);
CurvePoint point_from_json(std::string_view text);

}  // namespace flexsusp
