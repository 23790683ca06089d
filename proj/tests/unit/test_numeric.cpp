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

#include <clocale>
#include <sstream>

#include "doctest.h"
#include "flexsusp/errors.hpp"
#include "flexsusp/numeric/bigfloat.hpp"
#include "flexsusp/numeric/poly.hpp"
#include "flexsusp/numeric/quad_ext.hpp"
#include "flexsusp/numeric/rational.hpp"
#include "flexsusp/numeric/vec3.hpp"
#include "support.hpp"

using namespace flexsusp;
using flexsusp::testing::random_rational;
using flexsusp::testing::rng;

namespace {

// Independent square-freeness test by trial division.
bool square_free_by_division(BigInt n) {
  for (BigInt p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}

QuadExt random_quad(std::int64_t delta) { return QuadExt(random_rational(), random_rational(), delta); }

}  // namespace

TEST_SUITE("rational") {
  TEST_CASE("basic arithmetic") {
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(4039540, 762129) * Rational(0) == Rational(0));
    CHECK(Rational(30931440, 292681).to_double() == doctest::Approx(105.68).epsilon(1e-4));
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(6, -4).denominator() == 2);
  }

  TEST_CASE("parse and print") {
    CHECK(Rational::parse("-12.5") == Rational(-25, 2));
    CHECK(Rational::parse("+7/21") == Rational(1, 3));
    CHECK(Rational::parse("42").to_string() == "42");
    CHECK(Rational(-3, 9).to_string() == "-1/3");
    CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
    CHECK_THROWS_AS(Rational::parse("abc"), ParseError);
    CHECK_THROWS_AS(Rational::parse(""), ParseError);
    CHECK_THROWS_AS(Rational(1) / Rational(0), DivisionByZero);
    CHECK_THROWS_AS(Rational(0).inverse(), DivisionByZero);
  }

  TEST_CASE("round trip through text") {
    for (int i = 0; i < 200; ++i) {
      const Rational q = random_rational(1000000, 100000);
      CHECK(Rational::parse(q.to_string()) == q);
    }
  }

  TEST_CASE("field axioms") {
    for (int i = 0; i < 200; ++i) {
      const Rational a = random_rational(), b = random_rational(), c = random_rational();
      CHECK((a + b) + c == a + (b + c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + b == b + a);
      CHECK(a - a == Rational(0));
      if (!a.is_zero()) CHECK(a * a.inverse() == Rational(1));
    }
  }

  TEST_CASE("ordering and powers") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
    CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
  }
}

TEST_SUITE("sqrt_kernel") {
  TEST_CASE("examples") {
    auto k = sqrt_kernel(Rational(5100));
    CHECK(k.coefficient == Rational(10));
    CHECK(k.kernel == 51);
    k = sqrt_kernel(Rational(1275));
    CHECK(k.coefficient == Rational(5));
    CHECK(k.kernel == 51);
    k = sqrt_kernel(Rational(102));
    CHECK(k.coefficient == Rational(1));
    CHECK(k.kernel == 102);
    k = sqrt_kernel(Rational(0));
    CHECK(k.coefficient == Rational(0));
  }

  TEST_CASE("fractions") {
    // 30931440/292681 = (1436/541)^2 * 15
    const auto k = sqrt_kernel(Rational(30931440, 292681));
    CHECK(k.coefficient == Rational(1436, 541));
    CHECK(k.kernel == 15);
    const auto half = sqrt_kernel(Rational(1, 2));
    CHECK(half.coefficient == Rational(1, 2));
    CHECK(half.kernel == 2);
  }

  TEST_CASE("reconstructs its input with a square-free kernel") {
    std::uniform_int_distribution<long long> d(1, 2000000);
    for (int i = 0; i < 300; ++i) {
      const Rational q(BigInt(d(rng())), BigInt(d(rng()) % 5000 + 1));
      const auto k = sqrt_kernel(q);
      CHECK(k.coefficient * k.coefficient * Rational(k.kernel) == q);
      CHECK(square_free_by_division(k.kernel));
      CHECK(is_square_free(k.kernel));
    }
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(sqrt_kernel(Rational(-4)), DomainError);
    // Three primes above the trial bound: the cofactor cannot be certified.
    const BigInt big = BigInt(100003) * 100019 * 100043;
    CHECK_THROWS_WITH_AS(sqrt_kernel(Rational(big)), doctest::Contains("cannot be certified"), DomainError);
    // A square cofactor is still recognised.
    const auto sq = sqrt_kernel(Rational(BigInt(100003) * 100003 * 7));
    CHECK(sq.coefficient == Rational(100003));
    CHECK(sq.kernel == 7);
  }
}

TEST_SUITE("quad_ext") {
  TEST_CASE("examples") {
    const QuadExt a(1, 1, 51);
    const QuadExt b(1, -1, 51);
    CHECK(a * b == QuadExt(-50));
    CHECK(QuadExt(0, 1, 51) * QuadExt(0, 1, 51) == QuadExt(51));
    CHECK(QuadExt(2, 0, 51) + QuadExt(0, 3, 51) == QuadExt(2, 3, 51));
  }

  TEST_CASE("exact sign") {
    CHECK(QuadExt(7, -1, 51).sign() == -1);  // 49 < 51
    CHECK(QuadExt(8, -1, 51).sign() == 1);   // 64 > 51
    CHECK(QuadExt(-8, 1, 51).sign() == -1);
    CHECK(QuadExt(0, 0, 51).sign() == 0);
    CHECK(QuadExt(Rational(1565240), Rational(-472293), 51).sign() == -1);
  }

  TEST_CASE("norm, conjugate and inverse") {
    const QuadExt a(3, 2, 7);
    CHECK(a.norm() == Rational(9 - 28));
    CHECK(a * a.conjugate() == QuadExt(a.norm()));
    CHECK(a * a.inverse() == QuadExt(1));
    CHECK_THROWS_AS(QuadExt(0, 0, 7).inverse(), DivisionByZero);
  }

  TEST_CASE("field mismatch and bad radicands") {
    CHECK_THROWS_AS(QuadExt(0, 1, 2) + QuadExt(0, 1, 3), FieldMismatch);
    CHECK_THROWS_AS(QuadExt(0, 1, 4), DomainError);
    CHECK_THROWS_AS(QuadExt(0, 1, 1), DomainError);
    // Plain rationals mix with any field.
    CHECK(QuadExt(Rational(1, 2)) + QuadExt(0, 1, 3) == QuadExt(Rational(1, 2), Rational(1), 3));
  }

  TEST_CASE("field axioms") {
    for (int i = 0; i < 200; ++i) {
      const QuadExt a = random_quad(51), b = random_quad(51), c = random_quad(51);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      if (!a.is_zero()) CHECK((b / a) * a == b);
      CHECK((a * b).norm() == a.norm() * b.norm());
    }
  }

  TEST_CASE("sign agrees with high precision evaluation") {
    ScopedPrecision p(40);
    for (int i = 0; i < 200; ++i) {
      const QuadExt a = random_quad(51);
      const BigFloat v = to_bigfloat(a);
      const int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
      CHECK(a.sign() == s);
    }
  }

  TEST_CASE("make_surd") {
    CHECK(make_surd(Rational(3), BigInt(1)) == QuadExt(3));
    CHECK(make_surd(Rational(3), BigInt(51)) == QuadExt(0, 3, 51));
  }
}

TEST_SUITE("poly") {
  using P = Poly<Rational>;

  TEST_CASE("arithmetic and evaluation") {
    const P p{Rational(1), Rational(2), Rational(3)};  // 1 + 2x + 3x^2
    const P q{Rational(-1), Rational(1)};               // x - 1
    CHECK((p * q) == P{Rational(-1), Rational(-1), Rational(-1), Rational(3)});
    CHECK(p(Rational(2)) == Rational(17));
    CHECK(p.derivative() == P{Rational(2), Rational(6)});
    CHECK((p - p).is_zero());
    CHECK((p - p).degree() == P::kZeroDegree);
    CHECK((Rational(2) * q) == P{Rational(-2), Rational(2)});
  }

  TEST_CASE("trims leading zeros") {
    const P p(std::vector<Rational>{Rational(1), Rational(0), Rational(0)});
    CHECK(p.degree() == 0);
  }

  TEST_CASE("reduction modulo the cubic") {
    const P x = P::x(Rational(1));
    const P f = x * (x - P::constant(Rational(51))) * (x - P::constant(Rational(100)));
    // y^2
    auto r = poly_mod_cubic<Rational>({P(), P(), P::constant(Rational(1))}, f);
    CHECK(r.even == f);
    CHECK(r.odd.is_zero());
    // y
    r = poly_mod_cubic<Rational>({P(), P::constant(Rational(1))}, f);
    CHECK(r.even.is_zero());
    CHECK(r.odd == P::constant(Rational(1)));
    // (c + d y)(c - d y) = c^2 - d^2 f
    const P c{Rational(3), Rational(-2), Rational(5)};
    const P d{Rational(7), Rational(1)};
    const auto prod = multiply_mod_cubic(CubicResidue<Rational>{c, d}, CubicResidue<Rational>{c, -d}, f);
    CHECK(prod.even == c * c - d * d * f);
    CHECK(prod.odd.is_zero());
  }

  TEST_CASE("reduction is a ring homomorphism at curve points") {
    const P x = P::x(Rational(1));
    const P f = x * (x - P::constant(Rational(51))) * (x - P::constant(Rational(100)));
    // Rational points of y^2 = x (x - 51)(x - 100).
    const std::vector<std::pair<Rational, Rational>> pts{
        {Rational(2), Rational(98)}, {Rational(102), Rational(-102)}, {Rational(30), Rational(-210)},
        {Rational(240), Rational(-2520)}};
    auto random_poly = [] {
      std::vector<Rational> c;
      for (int i = 0; i < 4; ++i) c.push_back(random_rational(50, 7));
      return P(c);
    };
    auto eval = [](const CubicResidue<Rational>& r, const Rational& px, const Rational& py) {
      return r.even(px) + r.odd(px) * py;
    };
    for (int i = 0; i < 50; ++i) {
      const CubicResidue<Rational> a{random_poly(), random_poly()};
      const CubicResidue<Rational> b{random_poly(), random_poly()};
      const auto ab = multiply_mod_cubic(a, b, f);
      for (const auto& [px, py] : pts) {
        REQUIRE(py * py == f(px));
        CHECK(eval(ab, px, py) == eval(a, px, py) * eval(b, px, py));
      }
      CHECK(ab.even.degree() <= 3 + 3 + 3);
    }
  }

  TEST_CASE("works over the quadratic field") {
    using PQ = Poly<QuadExt>;
    const PQ p{QuadExt(1, 1, 51), QuadExt(2)};
    const PQ q{QuadExt(1, -1, 51), QuadExt(-2)};
    CHECK((p * q).coefficient(0, QuadExt(0)) == QuadExt(-50));
  }
}

TEST_SUITE("bigfloat") {
  TEST_CASE("precision scope") {
    const unsigned before = current_digits();
    {
      ScopedPrecision p(80);
      CHECK(current_digits() == 80);
      const BigFloat third = to_bigfloat(Rational(1, 3));
      CHECK(boost::multiprecision::abs(third * 3 - 1) < BigFloat("1e-78"));
    }
    CHECK(current_digits() == before);
    CHECK_THROWS_AS(ScopedPrecision(5), DomainError);
  }

  TEST_CASE("formatting ignores the locale") {
    const char* old = std::setlocale(LC_NUMERIC, nullptr);
    const std::string saved = old ? old : "C";
    std::setlocale(LC_NUMERIC, "de_DE.UTF-8");
    CHECK(format(to_bigfloat(Rational(5, 2)), 5) == "2.5");
    std::setlocale(LC_NUMERIC, saved.c_str());
  }

  TEST_CASE("pi and exact conversion") {
    CHECK(format(pi_value(), 20) == "3.1415926535897932385");
    const BigFloat v = to_bigfloat(Rational(3, 8));
    CHECK(to_rational(v) == Rational(3, 8));
    CHECK(to_bigfloat(QuadExt(0, 1, 51)) * to_bigfloat(QuadExt(0, 1, 51)) - 51 < BigFloat("1e-45"));
  }
}

TEST_SUITE("vec3") {
  TEST_CASE("products") {
    const Vec3 a{1, 0, 0}, b{0, 1, 0}, c{0, 0, 1};
    const Vec3 ab = cross(a, b);
    CHECK((ab.x == 0 && ab.y == 0 && ab.z == 1));
    CHECK(dot(a, b) == 0);
    CHECK(triple(a, b, c) == 1);
    CHECK(norm(Vec3{3, 4, 0}) == 5);
    CHECK(distance(a, b) * distance(a, b) - 2 < BigFloat("1e-45"));
  }
}
