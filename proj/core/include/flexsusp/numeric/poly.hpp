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

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <utility>
#include <vector>

namespace flexsusp {

namespace poly_detail {
template <class T>
bool coefficient_is_zero(const T& v) {
  return is_zero(v);
}
}  // namespace poly_detail

/// Dense univariate polynomial, coefficients in ascending degree.
///
/// T must provide +, -, *, unary -, == and a free `is_zero(const T&)`.
/// The coefficient vector never ends in a zero, so the zero polynomial has
/// no coefficients and degree() == kZeroDegree.
template <class T>
class Poly {
 public:
  static constexpr std::ptrdiff_t kZeroDegree = std::numeric_limits<std::ptrdiff_t>::min();

  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<T> coeffs) : coeffs_(coeffs) { trim(); }

  static Poly constant(const T& c) { return Poly(std::vector<T>{c}); }
  /// The monomial x (coefficient 1 built from `one`).
  static Poly x(const T& one) { return Poly(std::vector<T>{one - one, one}); }

  bool is_zero() const { return coeffs_.empty(); }
  std::ptrdiff_t degree() const {
    return coeffs_.empty() ? kZeroDegree : static_cast<std::ptrdiff_t>(coeffs_.size()) - 1;
  }
  const std::vector<T>& coefficients() const { return coeffs_; }
  /// Coefficient of x^i; `fallback` (a zero of the ring) beyond the degree.
  T coefficient(std::size_t i, const T& fallback) const {
    return i < coeffs_.size() ? coeffs_[i] : fallback;
  }
  const T& leading() const { return coeffs_.back(); }

  template <class U>
  U evaluate(const U& at, const U& zero) const {
    U acc = zero;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + U(*it);
    return acc;
  }

  T operator()(const T& at) const {
    if (coeffs_.empty()) return at - at;
    T acc = coeffs_.back();
    for (auto it = std::next(coeffs_.rbegin()); it != coeffs_.rend(); ++it) acc = acc * at + *it;
    return acc;
  }

  Poly derivative() const {
    std::vector<T> out;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
      T c = coeffs_[i];
      T scaled = c - c;
      for (std::size_t k = 0; k < i; ++k) scaled = scaled + c;
      out.push_back(scaled);
    }
    return Poly(std::move(out));
  }

  Poly& operator+=(const Poly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) {
      for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = coeffs_[i] + rhs.coeffs_[i];
      coeffs_.insert(coeffs_.end(), rhs.coeffs_.begin() + static_cast<std::ptrdiff_t>(coeffs_.size()),
                     rhs.coeffs_.end());
    } else {
      for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] = coeffs_[i] + rhs.coeffs_[i];
    }
    trim();
    return *this;
  }

  Poly& operator-=(const Poly& rhs) { return *this += -rhs; }

  Poly& operator*=(const Poly& rhs) {
    *this = *this * rhs;
    return *this;
  }

  friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
  friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }

  friend Poly operator*(const Poly& lhs, const Poly& rhs) {
    if (lhs.is_zero() || rhs.is_zero()) return Poly();
    const T zero = lhs.coeffs_[0] - lhs.coeffs_[0];
    std::vector<T> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1, zero);
    for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
      if (poly_detail::coefficient_is_zero(lhs.coeffs_[i])) continue;
      for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
        out[i + j] = out[i + j] + lhs.coeffs_[i] * rhs.coeffs_[j];
      }
    }
    return Poly(std::move(out));
  }

  friend Poly operator*(const T& scalar, const Poly& p) {
    std::vector<T> out;
    out.reserve(p.coeffs_.size());
    for (const T& c : p.coeffs_) out.push_back(scalar * c);
    return Poly(std::move(out));
  }

  Poly operator-() const {
    std::vector<T> out;
    out.reserve(coeffs_.size());
    for (const T& c : coeffs_) out.push_back(-c);
    return Poly(std::move(out));
  }

  friend bool operator==(const Poly& lhs, const Poly& rhs) { return lhs.coeffs_ == rhs.coeffs_; }

  friend std::ostream& operator<<(std::ostream& os, const Poly& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (std::size_t i = p.coeffs_.size(); i-- > 0;) {
      if (poly_detail::coefficient_is_zero(p.coeffs_[i])) continue;
      if (!first) os << " + ";
      os << "(" << p.coeffs_[i] << ")";
      if (i > 0) os << "*x";
      if (i > 1) os << "^" << i;
      first = false;
    }
    return os;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && poly_detail::coefficient_is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<T> coeffs_;
};

/// Class of P(x) + S(x)*y in R[x][y] / (y^2 - f(x)).
template <class T>
struct CubicResidue {
  Poly<T> even;  // P(x)
  Poly<T> odd;   // S(x), coefficient of y

  bool is_zero() const { return even.is_zero() && odd.is_zero(); }
  friend bool operator==(const CubicResidue&, const CubicResidue&) = default;
};

/// Canonical representative of a polynomial in x and y modulo y^2 = f(x).
/// `by_y_power[k]` is the coefficient polynomial of y^k.
template <class T>
CubicResidue<T> poly_mod_cubic(const std::vector<Poly<T>>& by_y_power, const Poly<T>& f) {
  CubicResidue<T> out;
  Poly<T> f_power;  // f^(k/2), built incrementally
  bool have_power = false;
  for (std::size_t k = 0; k < by_y_power.size(); ++k) {
    if (k % 2 == 0) {
      if (k == 0) {
        f_power = Poly<T>();
        have_power = false;
      } else {
        f_power = have_power ? f_power * f : f;
        have_power = true;
      }
    }
    const Poly<T> term = have_power ? by_y_power[k] * f_power : by_y_power[k];
    if (k % 2 == 0) out.even += term;
    else out.odd += term;
  }
  return out;
}

template <class T>
CubicResidue<T> multiply_mod_cubic(const CubicResidue<T>& lhs, const CubicResidue<T>& rhs,
                                   const Poly<T>& f) {
  return poly_mod_cubic<T>({lhs.even * rhs.even, lhs.even * rhs.odd + lhs.odd * rhs.even,
                            lhs.odd * rhs.odd},
                           f);
}

}  // namespace flexsusp
