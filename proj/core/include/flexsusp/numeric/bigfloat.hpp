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

#include <string>

#include <boost/multiprecision/mpfr.hpp>

#include "flexsusp/numeric/quad_ext.hpp"
#include "flexsusp/numeric/rational.hpp"

namespace flexsusp {

/// Floating point with a run-time number of decimal digits (MPFR).
using BigFloat = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                               boost::multiprecision::et_off>;

inline constexpr unsigned kDefaultDigits = 50;
inline constexpr unsigned kMinDigits = 15;

/// FLEX_PRECISION from the environment when set and valid, else 50.
unsigned default_digits();

/// Sets the working precision of newly created BigFloats and restores the
/// previous one on destruction. The setting is process-wide: set it before
/// spawning worker threads, never from inside them.
class ScopedPrecision {
 public:
  explicit ScopedPrecision(unsigned digits);
  ~ScopedPrecision();
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  unsigned previous_;
};

unsigned current_digits();

/// Correctly rounded at the current precision.
BigFloat to_bigfloat(const Rational& q);
BigFloat to_bigfloat(const QuadExt& q);

/// Exact value of the binary floating-point number.
Rational to_rational(const BigFloat& v);

BigFloat pi_value();

/// Scientific notation when needed, '.' decimal separator regardless of locale.
std::string format(const BigFloat& v, int digits);

}  // namespace flexsusp
