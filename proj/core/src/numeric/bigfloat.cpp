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

#include "flexsusp/numeric/bigfloat.hpp"

#include <cstdlib>
#include <sstream>

#include "flexsusp/errors.hpp"

namespace flexsusp {

unsigned default_digits() {
  if (const char* env = std::getenv("FLEX_PRECISION")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= static_cast<long>(kMinDigits) && v <= 100000) {
      return static_cast<unsigned>(v);
    }
  }
  return kDefaultDigits;
}

namespace {
// Applied once at load so code that never opens a ScopedPrecision still
// computes at the documented default.
const bool kDefaultApplied = [] {
  BigFloat::default_precision(default_digits());
  return true;
}();
}  // namespace

ScopedPrecision::ScopedPrecision(unsigned digits) : previous_(BigFloat::default_precision()) {
  if (digits < kMinDigits) {
    throw DomainError("precision must be at least " + std::to_string(kMinDigits) + " digits");
  }
  BigFloat::default_precision(digits);
}

ScopedPrecision::~ScopedPrecision() { BigFloat::default_precision(previous_); }

unsigned current_digits() { return BigFloat::default_precision(); }

BigFloat to_bigfloat(const Rational& q) {
  BigFloat out;
  mpfr_set_q(out.backend().data(), q.raw().backend().data(), MPFR_RNDN);
  return out;
}

BigFloat to_bigfloat(const QuadExt& q) {
  BigFloat out = to_bigfloat(q.a());
  if (!q.b().is_zero()) {
    out += to_bigfloat(q.b()) * boost::multiprecision::sqrt(BigFloat(q.delta()));
  }
  return out;
}

Rational to_rational(const BigFloat& v) {
  if (!boost::multiprecision::isfinite(v)) throw DomainError("non-finite value has no rational form");
  boost::multiprecision::mpq_rational q;
  mpfr_get_q(q.backend().data(), v.backend().data());
  return Rational(boost::multiprecision::numerator(q), boost::multiprecision::denominator(q));
}

BigFloat pi_value() {
  BigFloat out;
  mpfr_const_pi(out.backend().data(), MPFR_RNDN);
  return out;
}

std::string format(const BigFloat& v, int digits) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(digits);
  os << v;
  return os.str();
}

}  // namespace flexsusp
