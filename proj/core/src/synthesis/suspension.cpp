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

#include "flexsusp/synthesis/suspension.hpp"

#include <algorithm>
#include <cmath>

#include "flexsusp/errors.hpp"
#include "json_util.hpp"

namespace flexsusp {

using detail::json;
namespace mp = boost::multiprecision;

Rational SuspensionSpec::x_min() const {
  Rational out = classes.at(0).b_prime;
  for (const ClassData& c : classes) out = std::max(out, c.b_prime);
  return out;
}

Rational SuspensionSpec::x_max() const {
  Rational out = classes.at(0).b;
  for (const ClassData& c : classes) out = std::min(out, c.b);
  return out;
}

QuadExt apex_difference(const ApexEdge& a) {
  if (a.r_prime.is_zero()) return QuadExt(Rational(0));
  SqrtKernel k = sqrt_kernel(a.r * a.r_prime);
  return make_surd(a.apex_long ? k.coefficient : -k.coefficient, k.kernel);
}

QuadExt north_length_sq(const ApexEdge& a) {
  return (QuadExt(a.r + a.r_prime) + QuadExt(2) * apex_difference(a)) / QuadExt(4);
}

QuadExt south_length_sq(const ApexEdge& a) {
  return (QuadExt(a.r + a.r_prime) - QuadExt(2) * apex_difference(a)) / QuadExt(4);
}

BigFloat north_length(const ApexEdge& a) {
  BigFloat sr = mp::sqrt(to_bigfloat(a.r));
  BigFloat srp = mp::sqrt(to_bigfloat(a.r_prime));
  return (a.apex_long ? sr + srp : sr - srp) / 2;
}

BigFloat south_length(const ApexEdge& a) {
  BigFloat sr = mp::sqrt(to_bigfloat(a.r));
  BigFloat srp = mp::sqrt(to_bigfloat(a.r_prime));
  return (a.apex_long ? sr - srp : sr + srp) / 2;
}

CheckResult validate_spec(const SuspensionSpec& spec) {
  CheckResult r("spec_structure");
  const auto n = static_cast<std::size_t>(spec.n);
  if (spec.n < 3) r.fail("n must be at least 3");
  if (spec.apex.size() != n || spec.equator.size() != n || spec.epsilon.size() != n) {
    r.fail("apex, equator and epsilon need n entries each");
    return r;
  }
  if (spec.classes.empty()) r.fail("at least one class is required");
  if (!spec.sector_class.empty() && spec.sector_class.size() != n) r.fail("sector_class needs n entries");
  if (r.failed()) return r;
  for (std::size_t j = 0; j < n; ++j) {
    int c = spec.class_of(static_cast<int>(j));
    if (c < 0 || c >= static_cast<int>(spec.classes.size())) {
      r.fail("sector " + std::to_string(j + 1) + " has an unknown class");
      return r;
    }
    if (spec.epsilon[j] != 1 && spec.epsilon[j] != -1) {
      r.fail("epsilon of sector " + std::to_string(j + 1) + " must be +1 or -1");
    }
    if (spec.equator[j].sign() <= 0) r.fail("equator edge " + std::to_string(j + 1) + " must be positive");
    if (spec.apex[j].r_prime.sign() < 0 || spec.apex[j].r < spec.apex[j].r_prime) {
      r.fail("vertex " + std::to_string(j + 1) + " needs 0 <= r' <= r");
    }
  }
  for (const ClassData& c : spec.classes) {
    if (c.b_prime.sign() < 0 || !(c.b_prime < c.b)) r.fail("class data need 0 <= b' < b");
  }
  if (r.failed()) return r;
  for (std::size_t c = 0; c < spec.classes.size(); ++c) {
    Rational sum;
    for (std::size_t j = 0; j < n; ++j) {
      if (spec.class_of(static_cast<int>(j)) == static_cast<int>(c)) {
        sum += Rational(spec.epsilon[j]) * spec.equator[j];
      }
    }
    r.residual("signed_equator_sum_class_" + std::to_string(c), sum.to_string());
    if (!sum.is_zero()) r.fail("signed equator sum of class " + std::to_string(c) + " is " + sum.to_string());
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t k = (j + 1) % n;
    BigFloat l = to_bigfloat(spec.equator[j]);
    for (bool north : {true, false}) {
      BigFloat a = north ? north_length(spec.apex[j]) : south_length(spec.apex[j]);
      BigFloat b = north ? north_length(spec.apex[k]) : south_length(spec.apex[k]);
      if (!(a + b > l && a + l > b && b + l > a)) {
        r.fail(std::string(north ? "north" : "south") + " face over equator edge " +
               std::to_string(j + 1) + " violates the triangle inequality");
      }
    }
  }
  return r;
}

SectorRoots derive_roots(const SectorTable& table, const PointAssignment& assignment) {
  auto pts = evaluate_table(table, assignment);
  const int n = static_cast<int>(pts.size());
  SectorRoots out;
  for (int j = 1; j <= n; ++j) {
    const CurvePoint& q = pts[j - 1][kQNext];
    const CurvePoint& qp = pts[j - 1][kQPrimeNext];
    if (q.is_infinity() || qp.is_infinity()) {
      throw DomainError("row " + std::to_string(j) + " has a root at infinity");
    }
    out.r.push_back(q.x());
    out.r_prime.push_back(qp.x());
    // vertex j touches sectors j-1 and j
    for (int sector : {table.sector_of_row(j), j}) {
      const Cubic& c = assignment.curve(table.class_of_sector(sector));
      if (!(Rational(0) <= qp.x() && qp.x() <= c.b_prime() && c.b() <= q.x())) {
        throw DomainError("vertex " + std::to_string(j) + " violates 0 <= r' <= b' <= b <= r (r'=" +
                          qp.x().to_string() + ", r=" + q.x().to_string() + ")");
      }
    }
  }
  return out;
}

std::vector<int> derive_signs(const SectorTable& table, const PointAssignment& assignment) {
  auto pts = evaluate_table(table, assignment);
  const int n = static_cast<int>(pts.size());
  std::vector<int> out;
  for (int j = 1; j <= n; ++j) {
    const auto& row = pts[static_cast<std::size_t>(j % n)];
    const CurvePoint* right = nullptr;
    for (const CurvePoint& p : row) {
      if (p.is_infinity()) throw DomainError("sector " + std::to_string(j) + " has a point at infinity");
      if (right == nullptr || right->x() < p.x()) right = &p;
    }
    int s = right->y().sign();
    if (s == 0) throw DomainError("rightmost point of sector " + std::to_string(j) + " has y = 0");
    out.push_back(-s);
  }
  return out;
}

ApexLengthPair apex_length_pair(const Rational& r, const Rational& r_prime) {
  if (r_prime.sign() < 0 || r < r_prime) throw DomainError("apex_length_pair needs 0 <= r' <= r");
  ApexLengthPair out;
  BigFloat sr = mp::sqrt(to_bigfloat(r));
  BigFloat srp = mp::sqrt(to_bigfloat(r_prime));
  out.e_minus = (sr - srp) / 2;
  out.e_plus = (sr + srp) / 2;
  try {
    ApexEdge a{r, r_prime, true};
    out.plus_sq = north_length_sq(a);
    out.minus_sq = south_length_sq(a);
  } catch (const DomainError&) {
    // kernel not certifiable: numeric values only
  }
  return out;
}

SectorFit fit_sector(const ApexEdge& first, const ApexEdge& second, const ClassData& cls) {
  QuadExt d1 = apex_difference(first);
  QuadExt d2 = apex_difference(second);
  QuadExt e1 = north_length_sq(first);
  QuadExt e2 = north_length_sq(second);
  SectorFit fit;
  QuadExt denom = QuadExt(cls.b_prime * cls.b) - d1 * d2;
  if (denom.is_zero()) return fit;
  fit.length_sq = (e1 * d2 * d2 + e2 * d1 * d1 - (e1 + e2) * d1 * d2) / denom;
  // Gram determinant of N-S, N-p_j, N-p_{j+1} as a function of x; it must
  // vanish at both flat positions.
  QuadExt c = (e1 + e2 - fit.length_sq) / QuadExt(2);
  auto gram = [&](const Rational& x) {
    QuadExt z = (QuadExt(x) + d1) / QuadExt(2);
    QuadExt w = (QuadExt(x) + d2) / QuadExt(2);
    return (c * c - e1 * e2) * QuadExt(x) + e1 * w * w + e2 * z * z - QuadExt(2) * c * z * w;
  };
  fit.flat_at_b = gram(cls.b).is_zero();
  fit.flat_at_b_prime = gram(cls.b_prime).is_zero();
  return fit;
}

namespace {

std::optional<Rational> rational_length(const QuadExt& length_sq) {
  if (!length_sq.is_rational() || length_sq.a().sign() <= 0) return std::nullopt;
  SqrtKernel k = sqrt_kernel(length_sq.a());
  if (k.kernel != 1) return std::nullopt;
  return k.coefficient;
}

}  // namespace

SuspensionSpec resolve_flat_assignment(const SectorRoots& roots, const std::vector<int>& signs,
                                       const ClassData& cls) {
  const std::size_t n = roots.r.size();
  if (n < 3 || roots.r_prime.size() != n || signs.size() != n) {
    throw DomainError("resolve_flat_assignment needs n >= 3 roots and signs");
  }
  auto edge = [&](std::size_t j, int s) { return ApexEdge{roots.r[j], roots.r_prime[j], s > 0}; };
  auto choices = [&](std::size_t j) {
    return roots.r_prime[j].is_zero() ? std::vector<int>{1} : std::vector<int>{1, -1};
  };
  std::string last_failure = "no sector-1 case fits";
  for (int s1 : choices(0)) {
    for (int s2 : choices(1)) {
      try {
        std::vector<int> s(n, 0);
        std::vector<QuadExt> len_sq(n);
        s[0] = s1;
        s[1] = s2;
        SectorFit first = fit_sector(edge(0, s1), edge(1, s2), cls);
        if (!first.accepted()) continue;
        len_sq[0] = first.length_sq;
        bool ok = true;
        for (std::size_t j = 1; j + 1 < n && ok; ++j) {
          std::vector<std::pair<int, SectorFit>> fits;
          for (int t : choices(j + 1)) {
            SectorFit f = fit_sector(edge(j, s[j]), edge(j + 1, t), cls);
            if (f.accepted()) fits.emplace_back(t, f);
          }
          if (fits.empty()) {
            last_failure = "sector " + std::to_string(j + 1) + " admits no flat pair";
            ok = false;
          } else if (fits.size() > 1 && !(fits[0].second.length_sq == fits[1].second.length_sq)) {
            throw InconsistentData("ambiguous assignment at sector " + std::to_string(j + 1));
          } else {
            s[j + 1] = fits[0].first;
            len_sq[j] = fits[0].second.length_sq;
          }
        }
        if (!ok) continue;
        SectorFit last = fit_sector(edge(n - 1, s[n - 1]), edge(0, s[0]), cls);
        if (!last.accepted()) {
          last_failure = "last sector does not close the cycle";
          continue;
        }
        len_sq[n - 1] = last.length_sq;
        SuspensionSpec spec;
        spec.n = static_cast<int>(n);
        spec.classes.push_back(cls);
        spec.epsilon = signs;
        for (std::size_t j = 0; j < n; ++j) {
          spec.apex.push_back(edge(j, s[j]));
          auto l = rational_length(len_sq[j]);
          if (!l) {
            throw InconsistentData("equator edge " + std::to_string(j + 1) +
                                   " has squared length " + len_sq[j].to_string() +
                                   ", not the square of a positive rational");
          }
          spec.equator.push_back(*l);
        }
        return spec;
      } catch (const FieldMismatch& e) {
        throw InconsistentData(std::string("apex data do not share one quadratic field: ") + e.what());
      }
    }
  }
  throw InconsistentData("inconsistent sector data: " + last_failure);
}

SuspensionSpec synthesize(const Dataset& data) {
  if (data.table.class_count() != 1 || data.assignment.curves.size() != 1) {
    throw DomainError("synthesis supports a single equivalence class");
  }
  for (const CheckResult& c : {check_condition_A(data.table, data.assignment),
                               check_condition_B(data.table, data.assignment),
                               check_condition_C(data.table, data.assignment)}) {
    if (!c.passed()) {
      throw InconsistentData(c.name + " fails: " + (c.details.empty() ? "" : c.details.front()));
    }
  }
  SectorRoots roots = derive_roots(data.table, data.assignment);
  std::vector<int> signs = derive_signs(data.table, data.assignment);
  const Cubic& curve = data.assignment.curve(0);
  return resolve_flat_assignment(roots, signs, ClassData{curve.b_prime(), curve.b()});
}

namespace {

// Best rational approximation with denominator <= max_den (continued fractions).
Rational rationalize(double value, long long max_den) {
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double v = value;
  for (int i = 0; i < 64; ++i) {
    double a = std::floor(v);
    long long ai = static_cast<long long>(a);
    long long p2 = ai * p1 + p0;
    long long q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double frac = v - a;
    if (frac < 1e-12) break;
    v = 1.0 / frac;
  }
  return Rational(BigInt(p1), BigInt(q1));
}

int sign_of(const BigFloat& v, const BigFloat& scale) {
  BigFloat tol = scale * BigFloat("1e-30");
  if (mp::abs(v) <= tol) return 0;
  return v > 0 ? 1 : -1;
}

}  // namespace

BricardResult bricard_type1(const BricardParams& params) {
  const auto& e = params.edges;
  for (const Rational& x : e) {
    if (x.sign() <= 0) throw DomainError("edge lengths must be positive");
  }
  if (e[0] != e[2] || e[1] != e[3]) throw DomainError("opposite edges of the quadrilateral must be equal");
  if (e[0] == e[1]) throw DomainError("all four edges equal: the quadrilateral cannot cross itself");
  if (params.pole_height.sign() <= 0) throw DomainError("pole height must be positive");

  const Rational big = std::max(e[0], e[1]);
  const Rational small = std::min(e[0], e[1]);
  const Rational K = big * big - small * small;
  const double root_k = std::sqrt(K.to_double());

  Rational k;
  if (params.crossing_angle) {
    double theta = *params.crossing_angle;
    if (!(theta > 0 && theta < M_PI)) throw DomainError("crossing angle must lie in (0, pi)");
    double s = big.to_double() * std::sin(theta / 2);
    if (s * s <= K.to_double()) {
      throw DomainError("crossing angle too small for these edge lengths");
    }
    k = rationalize(s - std::sqrt(s * s - K.to_double()), 1000);
  } else {
    double f = std::floor(root_k);
    k = (f >= 1 && f * f < K.to_double()) ? Rational(static_cast<long long>(f)) : rationalize(0.8 * root_k, 1000);
  }
  const Rational s = (K / k + k) / Rational(2);
  const Rational t = (K / k - k) / Rational(2);
  if (!(k.sign() > 0 && k * k < K && s < big)) {
    throw DomainError("crossing angle not attainable for these edge lengths");
  }
  const Rational u = (s + t) / Rational(2);
  const Rational w = (s - t) / Rational(2);
  const Rational v_sq = (big * big - s * s) / Rational(4);
  const Rational h = params.pole_height;
  // squared apex edges of p1, p3 and of p2, p4
  const Rational ratio = t / s;
  const Rational odd_sq = u * u + v_sq * (Rational(1) + ratio) * (Rational(1) + ratio) + h * h;
  const Rational even_sq = w * w + v_sq * (Rational(1) - ratio) * (Rational(1) - ratio) + h * h;

  BigFloat v = mp::sqrt(to_bigfloat(v_sq));
  BigFloat yc = v * to_bigfloat(ratio);
  BigFloat hf = to_bigfloat(h);
  std::array<Vec3, 4> p = {Vec3{-to_bigfloat(u), -v, BigFloat(0)}, Vec3{to_bigfloat(w), v, BigFloat(0)},
                           Vec3{to_bigfloat(u), -v, BigFloat(0)}, Vec3{-to_bigfloat(w), v, BigFloat(0)}};
  std::array<Rational, 4> apex_sq = {odd_sq, even_sq, odd_sq, even_sq};
  std::array<Rational, 4> equator = {big, small, big, small};
  if (e[0] < e[1]) {
    // start the cycle on a short edge, as given
    std::rotate(p.begin(), p.begin() + 1, p.end());
    std::rotate(apex_sq.begin(), apex_sq.begin() + 1, apex_sq.end());
    std::rotate(equator.begin(), equator.begin() + 1, equator.end());
  }

  BricardResult out;
  out.parameter = k;
  out.north = Vec3{BigFloat(0), yc, hf};
  out.south = Vec3{BigFloat(0), yc, -hf};
  out.equator = p;

  SuspensionSpec& spec = out.spec;
  spec.n = 4;
  for (int j = 0; j < 4; ++j) {
    spec.apex.push_back(ApexEdge{Rational(4) * apex_sq[j], Rational(0), true});
    spec.equator.push_back(equator[j]);
  }
  for (int j = 0; j < 4; ++j) {
    const Rational& a = apex_sq[j];
    const Rational& b = apex_sq[(j + 1) % 4];
    const Rational l_sq = equator[j] * equator[j];
    const Rational c = (a + b - l_sq) / Rational(2);
    const Rational top = Rational(4) * (a * b - c * c) / l_sq;
    int cls = -1;
    for (std::size_t i = 0; i < spec.classes.size(); ++i) {
      if (spec.classes[i].b == top) cls = static_cast<int>(i);
    }
    if (cls < 0) {
      spec.classes.push_back(ClassData{Rational(0), top});
      cls = static_cast<int>(spec.classes.size()) - 1;
    }
    spec.sector_class.push_back(cls);
  }
  // epsilon = sign of (e_j x e_{j+1}) . R; sectors lying flat in the initial
  // position get +1 then -1.
  Vec3 R = out.north - out.south;
  BigFloat scale = to_bigfloat(big * big) * hf;
  int flat_seen = 0;
  for (int j = 0; j < 4; ++j) {
    int sg = sign_of(dot(cross(out.north - p[j], out.north - p[(j + 1) % 4]), R), scale);
    if (sg == 0) sg = flat_seen++ == 0 ? 1 : -1;
    spec.epsilon.push_back(sg);
  }
  return out;
}

std::string to_json(const SuspensionSpec& spec) {
  json j;
  j["n"] = spec.n;
  json classes = json::array();
  for (const ClassData& c : spec.classes) {
    classes.push_back({{"b_prime", c.b_prime.to_string()}, {"b", c.b.to_string()}});
  }
  j["classes"] = classes;
  if (!spec.sector_class.empty()) j["sector_class"] = spec.sector_class;
  json apex = json::array();
  for (const ApexEdge& a : spec.apex) {
    apex.push_back({{"r", a.r.to_string()}, {"r_prime", a.r_prime.to_string()}, {"apex_long", a.apex_long}});
  }
  j["apex"] = apex;
  json eq = json::array();
  for (const Rational& l : spec.equator) eq.push_back(l.to_string());
  j["equator"] = eq;
  j["epsilon"] = spec.epsilon;
  return j.dump(2);
}

SuspensionSpec spec_from_json(std::string_view text) {
  json j = detail::parse_json(text);
  SuspensionSpec spec;
  try {
    spec.n = detail::require(j, "n").get<int>();
    for (const json& c : detail::require(j, "classes")) {
      spec.classes.push_back(
          {detail::rational_from(detail::require(c, "b_prime")), detail::rational_from(detail::require(c, "b"))});
    }
    if (j.contains("sector_class")) spec.sector_class = j.at("sector_class").get<std::vector<int>>();
    for (const json& a : detail::require(j, "apex")) {
      spec.apex.push_back({detail::rational_from(detail::require(a, "r")),
                           detail::rational_from(detail::require(a, "r_prime")),
                           detail::require(a, "apex_long").get<bool>()});
    }
    for (const json& l : detail::require(j, "equator")) spec.equator.push_back(detail::rational_from(l));
    spec.epsilon = detail::require(j, "epsilon").get<std::vector<int>>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed suspension spec: ") + e.what());
  }
  CheckResult shape = validate_spec(spec);
  for (const std::string& d : shape.details) {
    // only structural problems are fatal here; the sign sum is a verification matter
    if (d.find("signed equator sum") == std::string::npos) throw ParseError("invalid suspension spec: " + d);
  }
  return spec;
}

}  // namespace flexsusp
