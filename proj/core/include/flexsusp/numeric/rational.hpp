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

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace flexsusp {

using BigInt = boost::multiprecision::mpz_int;

/// Exact rational number, always in lowest terms with a positive denominator.
///
/// Backed by GMP's mpq; the invariant is re-established after every operation
/// so numerator()/denominator() can be relied on for serialization.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& v);  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& numerator, const BigInt& denominator);

  /// Parses "p/q", "p", a leading '-' or '+' and also plain decimals such as
  /// "-12.5" (read exactly as 125/10).
  static Rational parse(std::string_view text);

  BigInt numerator() const;
  BigInt denominator() const;

  int sign() const;
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const;

  Rational abs() const;
  Rational inverse() const;
  /// Integer power, negative exponents allowed for non-zero values.
  Rational pow(int exponent) const;

  /// "p/q", or "p" when q = 1.
  std::string to_string() const;
  double to_double() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& lhs, const Rational& rhs);
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

  const boost::multiprecision::mpq_rational& raw() const { return value_; }

 private:
  explicit Rational(boost::multiprecision::mpq_rational v) : value_(std::move(v)) {}

  boost::multiprecision::mpq_rational value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

inline bool is_zero(const Rational& q) { return q.is_zero(); }

/// q = c^2 * delta with c >= 0 rational and delta a square-free positive integer.
struct SqrtKernel {
  Rational coefficient;
  BigInt kernel;
};

/// Square-free kernel extraction. Throws DomainError for q < 0.
///
/// Trial division removes every prime below `kTrialBound`; the remaining
/// cofactor m is a perfect square, a prime, or a product of two primes
/// whenever m < kTrialBound^3. Larger cofactors that are not perfect squares
/// are reported through `DomainError` because their square-freeness cannot be
/// certified.
SqrtKernel sqrt_kernel(const Rational& q);

inline constexpr std::uint64_t kTrialBound = 100000;

/// True when n > 0 has no repeated prime factor (same certification rules).
bool is_square_free(const BigInt& n);

}  // namespace flexsusp
