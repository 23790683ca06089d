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

#include "flexsusp/numeric/rational.hpp"

#include <cctype>
#include <ostream>

#include "flexsusp/errors.hpp"

namespace flexsusp {

namespace mp = boost::multiprecision;

Rational::Rational(const BigInt& v) : value_(v) {}

Rational::Rational(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) throw DivisionByZero();
  value_ = mp::mpq_rational(numerator, denominator);
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational out;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw ParseError("malformed rational literal '" + std::string(text) + "'");
    }
    BigInt d{std::string(den)};
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    out = Rational(BigInt(std::string(num)), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw ParseError("malformed decimal literal '" + std::string(text) + "'");
    }
    BigInt scale = mp::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    std::string digits = std::string(whole) + std::string(frac);
    out = Rational(BigInt(digits.empty() ? "0" : digits), scale);
  } else {
    if (!all_digits(s)) throw ParseError("malformed rational literal '" + std::string(text) + "'");
    out = Rational(BigInt(std::string(s)));
  }
  return negative ? -out : out;
}

BigInt Rational::numerator() const { return mp::numerator(value_); }
BigInt Rational::denominator() const { return mp::denominator(value_); }

int Rational::sign() const { return value_.sign(); }

bool Rational::is_integer() const { return mp::denominator(value_) == 1; }

Rational Rational::abs() const { return Rational(mp::mpq_rational(mp::abs(value_))); }

Rational Rational::inverse() const {
  if (is_zero()) throw DivisionByZero();
  return Rational(denominator(), numerator());
}

Rational Rational::pow(int exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  Rational result(1);
  Rational base = *this;
  unsigned e = static_cast<unsigned>(exponent);
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return result;
}

std::string Rational::to_string() const {
  if (is_integer()) return numerator().str();
  return numerator().str() + "/" + denominator().str();
}

double Rational::to_double() const { return value_.convert_to<double>(); }

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw DivisionByZero();
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::operator-() const { return Rational(mp::mpq_rational(-value_)); }

bool operator==(const Rational& lhs, const Rational& rhs) { return lhs.value_ == rhs.value_; }

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
  int c = lhs.value_.compare(rhs.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

namespace {

struct Split {
  BigInt square_root;  // of the largest square factor
  BigInt kernel;
};

Split split_square(BigInt n) {
  BigInt root = 1;
  BigInt kernel = 1;
  auto strip = [&](std::uint64_t p) {
    unsigned count = 0;
    while (n % p == 0) {
      n /= p;
      ++count;
    }
    for (unsigned i = 0; i < count / 2; ++i) root *= p;
    if (count % 2) kernel *= p;
  };
  strip(2);
  for (std::uint64_t p = 3; p < kTrialBound; p += 2) {
    if (BigInt(p) * p > n) break;
    strip(p);
  }
  if (n > 1) {
    BigInt s = mp::sqrt(n);
    if (s * s == n) {
      root *= s;
    } else {
      BigInt bound = BigInt(kTrialBound) * kTrialBound * kTrialBound;
      if (n >= bound) {
        throw DomainError("square-free kernel of " + n.str() +
                          " cannot be certified by trial division");
      }
      kernel *= n;
    }
  }
  return {root, kernel};
}

}  // namespace

SqrtKernel sqrt_kernel(const Rational& q) {
  if (q.sign() < 0) throw DomainError("sqrt_kernel of a negative number " + q.to_string());
  if (q.is_zero()) return {Rational(0), BigInt(1)};
  // q = n/d = (n*d)/d^2
  Split s = split_square(q.numerator() * q.denominator());
  return {Rational(s.square_root, q.denominator()), s.kernel};
}

bool is_square_free(const BigInt& n) {
  if (n <= 0) return false;
  return split_square(n).square_root == 1;
}

}  // namespace flexsusp
