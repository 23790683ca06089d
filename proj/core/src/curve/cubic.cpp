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

#include "flexsusp/curve/cubic.hpp"

#include <ostream>
#include <vector>

#include "flexsusp/errors.hpp"
#include "json_util.hpp"

namespace flexsusp {

Cubic::Cubic(Rational b_prime, Rational b) : b_prime_(std::move(b_prime)), b_(std::move(b)) {
  if (!(Rational(0) < b_prime_ && b_prime_ < b_)) {
    throw DomainError("cubic needs 0 < b' < b, got b'=" + b_prime_.to_string() +
                      " b=" + b_.to_string());
  }
}

Rational Cubic::rhs(const Rational& x) const { return x * (x - b_prime_) * (x - b_); }

Rational Cubic::rhs_derivative(const Rational& x) const {
  return Rational(3) * x * x - Rational(2) * (b_prime_ + b_) * x + b_prime_ * b_;
}

Poly<Rational> Cubic::polynomial() const {
  return Poly<Rational>({Rational(0), b_prime_ * b_, -(b_prime_ + b_), Rational(1)});
}

const Rational& CurvePoint::x() const {
  if (!affine_) throw DomainError("the point at infinity has no coordinates");
  return affine_->first;
}

const Rational& CurvePoint::y() const {
  if (!affine_) throw DomainError("the point at infinity has no coordinates");
  return affine_->second;
}

std::ostream& operator<<(std::ostream& os, const CurvePoint& p) {
  if (p.is_infinity()) return os << "infinity";
  return os << "(" << p.x() << ", " << p.y() << ")";
}

bool contains(const Cubic& curve, const CurvePoint& p) {
  if (p.is_infinity()) return true;
  return p.y() * p.y() == curve.rhs(p.x());
}

CurvePoint negate(const CurvePoint& p) {
  if (p.is_infinity()) return p;
  return {p.x(), -p.y()};
}

CurvePoint add(const Cubic& curve, const CurvePoint& p, const CurvePoint& q) {
  if (!contains(curve, p)) throw DomainError("point " + to_json(p) + " is not on the curve");
  if (!contains(curve, q)) throw DomainError("point " + to_json(q) + " is not on the curve");
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  const Rational& u1 = p.x();
  const Rational& v1 = p.y();
  const Rational& u2 = q.x();
  const Rational& v2 = q.y();
  Rational slope;
  if (u1 == u2) {
    // vertical chord, or tangent at a 2-torsion point
    if (v1 == -v2) return CurvePoint::infinity();
    slope = curve.rhs_derivative(u1) / (Rational(2) * v1);
  } else {
    slope = (v1 - v2) / (u1 - u2);
  }
  Rational x3 = curve.b_prime() + curve.b() - u1 - u2 + slope * slope;
  Rational y3 = -(v1 + slope * (x3 - u1));
  return {std::move(x3), std::move(y3)};
}

CurvePoint scalar_mul(const Cubic& curve, long long n, const CurvePoint& p) {
  if (!contains(curve, p)) throw DomainError("point " + to_json(p) + " is not on the curve");
  CurvePoint base = n < 0 ? negate(p) : p;
  unsigned long long k = n < 0 ? 0ULL - static_cast<unsigned long long>(n)
                               : static_cast<unsigned long long>(n);
  CurvePoint acc;
  while (k) {
    if (k & 1ULL) acc = add(curve, acc, base);
    k >>= 1ULL;
    if (k) base = add(curve, base, base);
  }
  return acc;
}

Component component(const Cubic& curve, const CurvePoint& p) {
  if (p.is_infinity()) throw DomainError("the point at infinity has no component");
  if (!contains(curve, p)) throw DomainError("point " + to_json(p) + " is not on the curve");
  if (p.x() <= curve.b_prime()) return Component::Bounded;
  return Component::Unbounded;
}

namespace {

// Lagrange interpolation through three points with distinct x.
Poly<Rational> interpolate(const std::array<const CurvePoint*, 3>& pts) {
  Poly<Rational> out;
  for (std::size_t i = 0; i < 3; ++i) {
    Poly<Rational> basis = Poly<Rational>::constant(pts[i]->y());
    for (std::size_t k = 0; k < 3; ++k) {
      if (k == i) continue;
      Rational denom = pts[i]->x() - pts[k]->x();
      basis = basis * Poly<Rational>({-pts[k]->x() / denom, Rational(1) / denom});
    }
    out += basis;
  }
  return out;
}

}  // namespace

Poly<Rational> quadratic_through(const Cubic& curve, const std::array<CurvePoint, 4>& pts) {
  CurvePoint sum;
  for (const CurvePoint& p : pts) {
    if (p.is_infinity()) throw DomainError("quadratic_through: point at infinity");
    sum = add(curve, sum, p);
  }
  if (!sum.is_infinity()) throw DomainError("no symmetric quadratic: the points do not sum to zero");

  std::array<const CurvePoint*, 3> chosen{};
  std::size_t n_chosen = 0;
  std::vector<const CurvePoint*> rest;
  for (const CurvePoint& p : pts) {
    bool seen = false;
    for (std::size_t i = 0; i < n_chosen; ++i) {
      if (chosen[i]->x() == p.x()) seen = true;
    }
    if (!seen && n_chosen < 3) chosen[n_chosen++] = &p;
    else rest.push_back(&p);
  }
  if (n_chosen < 3) {
    throw DomainError("quadratic_through needs at least three distinct x-values");
  }
  Poly<Rational> q = interpolate(chosen);
  for (const CurvePoint* p : rest) {
    const CurvePoint* twin = nullptr;
    for (const CurvePoint* c : chosen) {
      if (c->x() == p->x()) twin = c;
    }
    if (twin == nullptr) {
      if (q(p->x()) != p->y()) throw InconsistentData("fourth point is off the interpolant");
      continue;
    }
    if (twin->y() != p->y()) {
      throw DomainError("x-collision with different y-values: no quadratic through the points");
    }
    // doubled point: the quadratic must be tangent to the curve there
    if (p->y().is_zero()) throw DomainError("doubled point with y = 0 has a vertical tangent");
    Rational slope = curve.rhs_derivative(p->x()) / (Rational(2) * p->y());
    if (q.derivative()(p->x()) != slope) {
      throw InconsistentData("interpolant is not tangent at the doubled point");
    }
  }
  return q;
}

BigFloat flex_y_magnitude(const Cubic& curve, const BigFloat& x) {
  BigFloat bp = to_bigfloat(curve.b_prime());
  BigFloat b = to_bigfloat(curve.b());
  if (x < bp || x > b) {
    throw DomainError("x = " + format(x, 20) + " is outside the flex interval");
  }
  BigFloat v = -x * (x - bp) * (x - b);
  if (v < 0) v = 0;
  return boost::multiprecision::sqrt(v);
}

std::string to_json(const CurvePoint& p) { return detail::point_json(p).dump(); }

CurvePoint point_from_json(std::string_view text) {
  return detail::point_from(detail::parse_json(text));
}

}  // namespace flexsusp
