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

#include "flexsusp/numeric/quad_ext.hpp"

#include <ostream>

#include "flexsusp/errors.hpp"

namespace flexsusp {

QuadExt::QuadExt(const Rational& a, const Rational& b, std::int64_t delta)
    : a_(a), b_(b), delta_(delta) {
  if (delta < 2 || !is_square_free(BigInt(delta))) {
    throw DomainError("quadratic field radicand must be square-free and > 1, got " +
                      std::to_string(delta));
  }
}

std::int64_t QuadExt::common_delta(const QuadExt& rhs) const {
  if (delta_ == 0) return rhs.delta_;
  if (rhs.delta_ == 0 || rhs.delta_ == delta_) return delta_;
  throw FieldMismatch("arithmetic between Q(sqrt(" + std::to_string(delta_) + ")) and Q(sqrt(" +
                      std::to_string(rhs.delta_) + "))");
}

int QuadExt::sign() const {
  int sa = a_.sign();
  int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // opposite signs: compare a^2 with b^2 * delta
  Rational lhs = a_ * a_;
  Rational rhs = b_ * b_ * Rational(static_cast<long long>(delta_));
  if (lhs == rhs) return 0;  // unreachable for irrational sqrt(delta)
  return lhs > rhs ? sa : sb;
}

QuadExt QuadExt::conjugate() const {
  QuadExt out = *this;
  out.b_ = -b_;
  return out;
}

Rational QuadExt::norm() const {
  return a_ * a_ - b_ * b_ * Rational(static_cast<long long>(delta_));
}

QuadExt QuadExt::inverse() const {
  if (is_zero()) throw DivisionByZero();
  Rational n = norm();
  QuadExt out = conjugate();
  out.a_ /= n;
  out.b_ /= n;
  return out;
}

QuadExt& QuadExt::operator+=(const QuadExt& rhs) {
  delta_ = common_delta(rhs);
  a_ += rhs.a_;
  b_ += rhs.b_;
  return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& rhs) {
  delta_ = common_delta(rhs);
  a_ -= rhs.a_;
  b_ -= rhs.b_;
  return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& rhs) {
  std::int64_t d = common_delta(rhs);
  Rational a = a_ * rhs.a_;
  if (d != 0) a += b_ * rhs.b_ * Rational(static_cast<long long>(d));
  Rational b = a_ * rhs.b_ + b_ * rhs.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  delta_ = d;
  return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& rhs) {
  if (rhs.is_zero()) throw DivisionByZero();
  common_delta(rhs);
  return *this *= rhs.inverse();
}

QuadExt QuadExt::operator-() const {
  QuadExt out = *this;
  out.a_ = -a_;
  out.b_ = -b_;
  return out;
}

bool operator==(const QuadExt& lhs, const QuadExt& rhs) {
  if (lhs.b_.is_zero() && rhs.b_.is_zero()) return lhs.a_ == rhs.a_;
  return lhs.delta_ == rhs.delta_ && lhs.a_ == rhs.a_ && lhs.b_ == rhs.b_;
}

std::string QuadExt::to_string() const {
  if (b_.is_zero()) return a_.to_string();
  std::string out;
  if (!a_.is_zero()) out = a_.to_string() + (b_.sign() > 0 ? " + " : " - ");
  else if (b_.sign() < 0) out = "-";
  out += b_.abs().to_string() + "*sqrt(" + std::to_string(delta_) + ")";
  return out;
}

std::ostream& operator<<(std::ostream& os, const QuadExt& q) { return os << q.to_string(); }

QuadExt make_surd(const Rational& c, const BigInt& kernel) {
  if (kernel == 1) return QuadExt(c);
  return QuadExt(Rational(0), c, kernel.convert_to<std::int64_t>());
}

}  // namespace flexsusp
