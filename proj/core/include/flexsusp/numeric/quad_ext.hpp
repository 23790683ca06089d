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

#include <cstdint>
#include <iosfwd>
#include <string>

#include "flexsusp/numeric/rational.hpp"

namespace flexsusp {

/// Element a + b*sqrt(delta) of the real quadratic field Q(sqrt(delta)).
///
/// delta is a square-free integer > 1. A value constructed without a radicand
/// (delta == 0) is a plain rational with b == 0; it combines with elements of
/// any field. Mixing two different non-zero radicands throws FieldMismatch.
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(const Rational& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QuadExt(int a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QuadExt(const Rational& a, const Rational& b, std::int64_t delta);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  std::int64_t delta() const { return delta_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_rational() const { return b_.is_zero(); }
  /// Exact sign of a + b*sqrt(delta).
  int sign() const;

  QuadExt conjugate() const;
  /// (a + b√Δ)(a − b√Δ) = a² − Δb².
  Rational norm() const;
  QuadExt inverse() const;

  QuadExt& operator+=(const QuadExt& rhs);
  QuadExt& operator-=(const QuadExt& rhs);
  QuadExt& operator*=(const QuadExt& rhs);
  QuadExt& operator/=(const QuadExt& rhs);

  friend QuadExt operator+(QuadExt lhs, const QuadExt& rhs) { return lhs += rhs; }
  friend QuadExt operator-(QuadExt lhs, const QuadExt& rhs) { return lhs -= rhs; }
  friend QuadExt operator*(QuadExt lhs, const QuadExt& rhs) { return lhs *= rhs; }
  friend QuadExt operator/(QuadExt lhs, const QuadExt& rhs) { return lhs /= rhs; }
  QuadExt operator-() const;

  /// Componentwise; sqrt(delta) is irrational so the representation is unique.
  friend bool operator==(const QuadExt& lhs, const QuadExt& rhs);

  std::string to_string() const;

 private:
  std::int64_t common_delta(const QuadExt& rhs) const;

  Rational a_;
  Rational b_;
  std::int64_t delta_ = 0;
};

std::ostream& operator<<(std::ostream& os, const QuadExt& q);

inline bool is_zero(const QuadExt& q) { return q.is_zero(); }

/// c*sqrt(kernel) as an element of Q(sqrt(kernel)); kernel == 1 yields a rational.
QuadExt make_surd(const Rational& c, const BigInt& kernel);

}  // namespace flexsusp
