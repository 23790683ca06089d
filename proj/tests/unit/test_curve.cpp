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

#include "doctest.h"
#include "flexsusp/curve/cubic.hpp"
#include "flexsusp/errors.hpp"
#include "support.hpp"

using namespace flexsusp;
using flexsusp::testing::rng;

namespace {

const Cubic kCurve(Rational(51), Rational(100));

CurvePoint pt(const char* x, const char* y) { return {Rational::parse(x), Rational::parse(y)}; }

const CurvePoint A = pt("2", "98");
const CurvePoint B = pt("4039540/762129", "100768585960/665338617");
const CurvePoint C = pt("102", "-102");
const CurvePoint D = pt("30", "-210");

CurvePoint fold(std::initializer_list<CurvePoint> pts) {
  CurvePoint acc = CurvePoint::infinity();
  for (const CurvePoint& p : pts) acc = add(kCurve, acc, p);
  return acc;
}

CurvePoint combo(long long a, long long b, long long c, long long d) {
  return fold({scalar_mul(kCurve, a, A), scalar_mul(kCurve, b, B), scalar_mul(kCurve, c, C), scalar_mul(kCurve, d, D)});
}

// Oracle: chord through two distinct points, written out directly.
CurvePoint chord_oracle(const CurvePoint& p, const CurvePoint& q) {
  const Rational lambda = (q.y() - p.y()) / (q.x() - p.x());
  const Rational x3 = lambda * lambda + Rational(151) - p.x() - q.x();
  return {x3, -(p.y() + lambda * (x3 - p.x()))};
}

}  // namespace

TEST_SUITE("cubic") {
  TEST_CASE("membership") {
    CHECK(contains(kCurve, A));
    CHECK_FALSE(contains(kCurve, pt("2", "97")));
    CHECK(contains(kCurve, CurvePoint::infinity()));
    for (const CurvePoint& p : {B, C, D}) CHECK(contains(kCurve, p));
    CHECK(kCurve.rhs(Rational(2)) == Rational(9604));
    CHECK(kCurve.rhs_derivative(Rational(0)) == Rational(5100));
  }

  TEST_CASE("bad curves") {
    CHECK_THROWS_AS(Cubic(Rational(100), Rational(51)), DomainError);
    CHECK_THROWS_AS(Cubic(Rational(0), Rational(51)), DomainError);
  }

  TEST_CASE("negation") {
    CHECK(negate(C) == pt("102", "102"));
    CHECK(negate(CurvePoint::infinity()).is_infinity());
    CHECK(negate(D) == pt("30", "210"));
  }

  TEST_CASE("sums from the construction") {
    CHECK(fold({negate(A), B, negate(C)}) == pt("30931440/292681", "28695544920/158340421"));
    CHECK(fold({A, B, negate(C), scalar_mul(kCurve, -2, D)}) == pt("240", "-2520"));
    CHECK(add(kCurve, A, negate(A)).is_infinity());
    CHECK(fold({A, negate(C), negate(D)}) == pt("49130/121", "8840510/1331"));
    CHECK(combo(-1, 2, -1, -1) ==
          pt("5661629280833549058327770/3946395061554216239809",
             "12760353764630956864568385268955559830/247913877777118200103588255865377"));
    // The y denominator is the cube of 62820339553, the square root of the x denominator.
    CHECK(combo(-1, 2, -1, -1).y().denominator() == BigInt(62820339553) * 62820339553 * 62820339553);
    CHECK(combo(0, 2, -1, -2) ==
          pt("98365674940749318/521862179555809", "-18053411514039795685625754/11921577754013306206127"));
  }

  TEST_CASE("scalar multiples") {
    CHECK(scalar_mul(kCurve, 1, B) == B);
    CHECK(scalar_mul(kCurve, -1, D) == pt("30", "210"));
    CHECK(scalar_mul(kCurve, 0, D).is_infinity());
    CHECK(scalar_mul(kCurve, 5, A) == fold({A, A, A, A, A}));
  }

  TEST_CASE("chord matches an independent formula") {
    CHECK(add(kCurve, A, B) == chord_oracle(A, B));
    CHECK(add(kCurve, C, D) == chord_oracle(C, D));
    CHECK(add(kCurve, B, D) == chord_oracle(B, D));
  }

  TEST_CASE("tangent doubling stays on the curve") {
    const CurvePoint a2 = add(kCurve, A, A);
    CHECK(contains(kCurve, a2));
    CHECK(add(kCurve, a2, negate(A)) == A);
  }

  TEST_CASE("group axioms on random combinations") {
    std::uniform_int_distribution<int> k(-2, 2);
    auto random_point = [&] { return combo(k(rng()), k(rng()), k(rng()), k(rng())); };
    for (int i = 0; i < 25; ++i) {
      const CurvePoint p = random_point(), q = random_point(), r = random_point();
      CHECK(contains(kCurve, p));
      CHECK(add(kCurve, p, q) == add(kCurve, q, p));
      CHECK(add(kCurve, add(kCurve, p, q), r) == add(kCurve, p, add(kCurve, q, r)));
      CHECK(add(kCurve, p, CurvePoint::infinity()) == p);
      CHECK(add(kCurve, p, negate(p)).is_infinity());
    }
  }

  TEST_CASE("off-curve operands are rejected") {
    CHECK_THROWS_AS(add(kCurve, pt("2", "97"), A), DomainError);
    CHECK_THROWS_AS(scalar_mul(kCurve, 2, pt("2", "97")), DomainError);
  }

  TEST_CASE("components") {
    CHECK(component(kCurve, B) == Component::Bounded);
    CHECK(component(kCurve, C) == Component::Unbounded);
    CHECK(component(kCurve, pt("51", "0")) == Component::Bounded);
    CHECK(component(kCurve, pt("0", "0")) == Component::Bounded);
    CHECK(component(kCurve, pt("100", "0")) == Component::Unbounded);
    CHECK_THROWS_AS(component(kCurve, CurvePoint::infinity()), DomainError);
  }

  TEST_CASE("quadratic through a table row") {
    const std::array<CurvePoint, 4> row{C, fold({negate(A), B, negate(C)}), A, negate(B)};
    const Poly<Rational> q = quadratic_through(kCurve, row);
    CHECK(q.degree() <= 2);
    for (const CurvePoint& p : row) CHECK(q(p.x()) == p.y());
    // The leading coefficient of y = 2Q/(eps l) is positive iff eps = -1 here.
    CHECK(q.degree() == 2);
  }

  TEST_CASE("quadratic needs a function graph") {
    // A + (-A) + B + (-B) = 0, yet (2, 98) and (2, -98) share x: no y = q(x).
    REQUIRE(fold({A, negate(A), B, negate(B)}).is_infinity());
    CHECK_THROWS_AS(quadratic_through(kCurve, {A, negate(A), B, negate(B)}), DomainError);
    CHECK_THROWS_AS(quadratic_through(kCurve, {A, B, C, CurvePoint::infinity()}), DomainError);
    CHECK_THROWS_AS(quadratic_through(kCurve, {A, B, C, D}), DomainError);
  }

  TEST_CASE("y on the flex interval") {
    ScopedPrecision p(40);
    CHECK(flex_y_magnitude(kCurve, BigFloat(51)) == 0);
    CHECK(flex_y_magnitude(kCurve, BigFloat(100)) == 0);
    const BigFloat y = flex_y_magnitude(kCurve, BigFloat(75));
    CHECK(boost::multiprecision::abs(y * y - 45000) < BigFloat("1e-30"));
    CHECK(y.convert_to<double>() == doctest::Approx(212.132).epsilon(1e-5));
    CHECK_THROWS_AS(flex_y_magnitude(kCurve, BigFloat(101)), DomainError);
  }

  TEST_CASE("json round trip") {
    for (const CurvePoint& p : {A, B, C, D, CurvePoint::infinity()}) CHECK(point_from_json(to_json(p)) == p);
    CHECK_THROWS_AS(point_from_json("{\"x\": \"1\"}"), ParseError);
    CHECK_THROWS_AS(point_from_json("not json"), ParseError);
  }
}
