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

#include "flexsusp/verify/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "flexsusp/errors.hpp"
#include "json.hpp"

namespace flexsusp {

namespace mp = boost::multiprecision;
using nlohmann::json;

namespace {

std::size_t at(int j) { return static_cast<std::size_t>(j); }

int wrap(int j, int n) { return ((j % n) + n) % n; }

std::string fmt(const BigFloat& v) { return format(v, 8); }

BigFloat reduce_signed(const BigFloat& v) {
  const BigFloat two_pi = 2 * pi_value();
  BigFloat r = v - two_pi * mp::floor(v / two_pi);
  if (r > pi_value()) r -= two_pi;
  return r;
}

/// x, y coefficients per sector at a real point.
BigFloat sector_q(const NumericSpec& s, int j, const BigFloat& x) {
  const int k = (j + 1) % s.n;
  const BigFloat dot = (s.north_sq[at(j)] + s.north_sq[at(k)] - s.equator[at(j)] * s.equator[at(j)]) / 2;
  const BigFloat z1 = (x + s.diff[at(j)]) / 2;
  const BigFloat z2 = (x + s.diff[at(k)]) / 2;
  return x * dot - z1 * z2;
}

std::vector<std::vector<int>> sectors_by_class(const SuspensionSpec& spec) {
  std::vector<std::vector<int>> out(spec.classes.size());
  for (int j = 0; j < spec.n; ++j) out.at(at(spec.class_of(j))).push_back(j);
  return out;
}

/// Whether a/(2 sqrt(A) la) and b/(2 sqrt(B) lb) are equal (same = true) or
/// opposite. A, B > 0 and la, lb > 0.
bool cosines_match(const QuadExt& a, const QuadExt& A, const Rational& la, const QuadExt& b, const QuadExt& B,
                   const Rational& lb, bool same) {
  const int sa = a.sign();
  const int sb = b.sign();
  if (same ? sa != sb : sa != -sb) return false;
  return a * a * B * QuadExt(lb * lb) == b * b * A * QuadExt(la * la);
}

void add_term(std::vector<RadicalTerm>& terms, const BigInt& kernel, const Rational& c) {
  if (c.is_zero()) return;
  for (RadicalTerm& t : terms) {
    if (t.kernel == kernel) {
      t.coefficient += c;
      return;
    }
  }
  terms.push_back({kernel, c});
}

std::map<BigInt, Rational> combine(const std::vector<std::pair<int, std::vector<RadicalTerm>>>& parts) {
  std::map<BigInt, Rational> out;
  for (const auto& [sign, terms] : parts) {
    for (const RadicalTerm& t : terms) out[t.kernel] += Rational(sign) * t.coefficient;
  }
  return out;
}

bool all_zero(const std::map<BigInt, Rational>& m) {
  return std::all_of(m.begin(), m.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

BigFloat edge_scale(const NumericSpec& s) {
  BigFloat m = 1;
  for (int j = 0; j < s.n; ++j) {
    m = std::max({m, s.north[at(j)], s.south[at(j)], s.equator[at(j)]});
  }
  return m;
}

/// Winding of the link quadrangle N, p_{j+1}, S, p_{j-1} seen from p_j in a
/// planar position.
int link_winding(const FlexState& st, int j) {
  const int n = static_cast<int>(st.equator.size());
  const Vec3& p = st.equator[at(j)];
  const Vec3 axis = st.north - st.south;
  Vec3 normal = cross(axis, p - st.south);
  if (norm(normal) == 0) return 0;
  const std::array<Vec3, 4> dirs{st.north - p, st.equator[at(wrap(j + 1, n))] - p, st.south - p,
                                 st.equator[at(wrap(j - 1, n))] - p};
  BigFloat total = 0;
  for (int i = 0; i < 4; ++i) {
    const Vec3& u = dirs[at(i)];
    const Vec3& v = dirs[at((i + 1) % 4)];
    total += mp::atan2(dot(normal, cross(u, v)), dot(u, v) * norm(normal));
  }
  return static_cast<int>(mp::round(total / (2 * pi_value())).convert_to<long>());
}

template <class Fn>
CheckResult guarded(const std::string& name, Fn fn) {
  try {
    return fn();
  } catch (const DomainError& e) {
    CheckResult c(name);
    c.fail(e.what());
    return c;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Flexing identity

IdentityReport verify_flexing_identity(const SuspensionSpec& spec) {
  const SectorAlgebra alg = build_sector_algebra(spec);
  if (!alg.exact) {
    IdentityReport r = verify_flexing_identity_numeric(spec);
    r.check.note("apex data span several quadratic fields; compared numerically");
    return r;
  }
  IdentityReport out;
  out.exact = true;
  out.delta = alg.delta;
  const auto groups = sectors_by_class(spec);
  for (std::size_t c = 0; c < groups.size(); ++c) {
    const ClassData& cls = spec.classes[c];
    const Poly<QuadExt> x = Poly<QuadExt>::x(QuadExt(1));
    const Poly<QuadExt> f = x * (x - Poly<QuadExt>::constant(QuadExt(cls.b_prime))) *
                            (x - Poly<QuadExt>::constant(QuadExt(cls.b)));
    CubicResidue<QuadExt> lhs{Poly<QuadExt>::constant(QuadExt(1)), {}};
    CubicResidue<QuadExt> rhs = lhs;
    for (int j : groups[c]) {
      const SectorPolys& s = alg.sectors[at(j)];
      const Poly<QuadExt> cy = Poly<QuadExt>::constant(s.y_coefficient);
      lhs = multiply_mod_cubic(lhs, CubicResidue<QuadExt>{s.q, cy}, f);
      rhs = multiply_mod_cubic(rhs, CubicResidue<QuadExt>{s.q, -cy}, f);
    }
    CubicResidue<QuadExt> diff{lhs.even - rhs.even, lhs.odd - rhs.odd};
    const std::string tag = "class_" + std::to_string(c);
    std::ostringstream even;
    std::ostringstream odd;
    even << diff.even;
    odd << diff.odd;
    out.check.residual(tag + "_even", even.str());
    out.check.residual(tag + "_odd", odd.str());
    if (!diff.is_zero()) out.check.fail("class " + std::to_string(c) + ": the two products differ");
    out.difference.push_back(std::move(diff));
  }
  out.check.note(alg.delta == 0 ? "exact over Q" : "exact over Q(sqrt(" + std::to_string(alg.delta) + "))");
  return out;
}

IdentityReport verify_flexing_identity_numeric(const SuspensionSpec& spec) {
  IdentityReport out;
  const NumericSpec s = numeric_spec(spec);
  const auto groups = sectors_by_class(spec);
  const BigFloat tol = mp::pow(BigFloat(10), -static_cast<int>(current_digits() / 2));
  BigFloat worst = 0;
  for (std::size_t c = 0; c < groups.size(); ++c) {
    const ClassData& cls = spec.classes[c];
    const BigFloat bp = to_bigfloat(cls.b_prime);
    const BigFloat b = to_bigfloat(cls.b);
    const int points = 4 * spec.n + 1;
    for (int i = 0; i < points; ++i) {
      // Past the larger root the curve has real points.
      const BigFloat x = to_bigfloat(cls.b + Rational(i + 1, 3));
      const BigFloat y = mp::sqrt(x * (x - bp) * (x - b));
      BigFloat lhs = 1;
      BigFloat rhs = 1;
      for (int j : groups[c]) {
        const BigFloat q = sector_q(s, j, x);
        const BigFloat cy = s.epsilon[at(j)] * s.equator[at(j)] / 2 * y;
        lhs *= q + cy;
        rhs *= q - cy;
      }
      const BigFloat scale = std::max({mp::abs(lhs), mp::abs(rhs), BigFloat(1)});
      worst = std::max(worst, mp::abs(lhs - rhs) / scale);
    }
  }
  out.numeric_residual = worst;
  out.check.residual("max_relative", fmt(worst));
  if (!(worst < tol)) out.check.fail("products differ by a relative " + fmt(worst));
  out.check.note("numeric at " + std::to_string(current_digits()) + " digits");
  return out;
}

// ---------------------------------------------------------------------------
// Exact sums

CheckResult verify_sign_sum(const SuspensionSpec& spec) {
  CheckResult out("sign_sum");
  const auto groups = sectors_by_class(spec);
  for (std::size_t c = 0; c < groups.size(); ++c) {
    Rational sum;
    for (int j : groups[c]) sum += Rational(spec.epsilon[at(j)]) * spec.equator[at(j)];
    out.residual("class_" + std::to_string(c), sum.to_string());
    if (!sum.is_zero()) out.fail("class " + std::to_string(c) + ": signed equator sum is " + sum.to_string());
  }
  return out;
}

CheckResult verify_y_sum(const SuspensionSpec& spec) {
  CheckResult out("y_sum");
  const auto groups = sectors_by_class(spec);
  for (std::size_t c = 0; c < groups.size(); ++c) {
    Rational sum;
    for (int j : groups[c]) sum += Rational(spec.epsilon[at(j)]) * spec.equator[at(j)] / Rational(2);
    out.residual("class_" + std::to_string(c), sum.to_string());
    if (!sum.is_zero()) out.fail("class " + std::to_string(c) + ": y coefficients sum to " + sum.to_string());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Apex relations

std::vector<RadicalTerm> decompose_length(const ApexEdge& apex, bool north) {
  std::vector<RadicalTerm> terms;
  const SqrtKernel kr = sqrt_kernel(apex.r);
  add_term(terms, kr.kernel, kr.coefficient / Rational(2));
  if (!apex.r_prime.is_zero()) {
    const SqrtKernel kp = sqrt_kernel(apex.r_prime);
    // |e| = (sqrt r + s sqrt r')/2 and |e'| = (sqrt r - s sqrt r')/2, s = +1
    // when the north edge is the longer one.
    const int s = apex.apex_long ? 1 : -1;
    add_term(terms, kp.kernel, Rational(north ? s : -s) * kp.coefficient / Rational(2));
  }
  std::sort(terms.begin(), terms.end(), [](const RadicalTerm& a, const RadicalTerm& b) { return a.kernel < b.kernel; });
  return terms;
}

std::string ApexRelation::to_string() const {
  auto sgn = [](int s) { return s > 0 ? " + " : " - "; };
  const std::string j1 = std::to_string(j);
  const std::string k1 = std::to_string(k);
  return "|e" + j1 + "|" + sgn(sign_south_j) + "|e'" + j1 + "|" + sgn(sign_north_k) + "|e" + k1 + "|" +
         sgn(sign_south_k) + "|e'" + k1 + "| = 0";
}

CheckResult apex_length_relations(const SuspensionSpec& spec, std::vector<ApexRelation>* found) {
  CheckResult out("apex_relations");
  const int n = spec.n;
  std::vector<std::vector<RadicalTerm>> north;
  std::vector<std::vector<RadicalTerm>> south;
  for (int j = 0; j < n; ++j) {
    north.push_back(decompose_length(spec.apex[at(j)], true));
    south.push_back(decompose_length(spec.apex[at(j)], false));
  }
  std::vector<bool> covered(at(n), false);
  std::vector<ApexRelation> hits;
  for (int j = 0; j < n; ++j) {
    for (int k = j + 2; k < n; ++k) {
      if (j == 0 && k == n - 1) continue;
      for (int mask = 0; mask < 8; ++mask) {
        ApexRelation rel;
        rel.j = j + 1;
        rel.k = k + 1;
        rel.sign_south_j = (mask & 1) ? -1 : 1;
        rel.sign_north_k = (mask & 2) ? -1 : 1;
        rel.sign_south_k = (mask & 4) ? -1 : 1;
        const auto sum = combine({{1, north[at(j)]},
                                  {rel.sign_south_j, south[at(j)]},
                                  {rel.sign_north_k, north[at(k)]},
                                  {rel.sign_south_k, south[at(k)]}});
        if (!all_zero(sum)) continue;
        covered[at(j)] = covered[at(k)] = true;
        out.residual("relation_" + std::to_string(hits.size() + 1), rel.to_string());
        hits.push_back(rel);
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    if (!covered[at(j)]) out.fail("vertex " + std::to_string(j + 1) + " is in no apex relation");
  }
  if (found) *found = std::move(hits);
  return out;
}

// ---------------------------------------------------------------------------
// Trace-based checks

AngleRelationReport angle_relations(const SuspensionSpec& spec, const FlexTrace& trace, double tol) {
  AngleRelationReport out;
  if (spec.classes.size() != 1) {
    out.check.status = Status::Skipped;
    out.check.note("relations are derived for a single class of sectors");
    return out;
  }
  if (trace.angles.empty()) {
    out.check.status = Status::Skipped;
    out.check.note("empty trace");
    return out;
  }
  const int n = spec.n;
  using Getter = BigFloat (*)(const DihedralSet&, int);
  struct Rel {
    std::string name;
    int first;
    Getter get_first;
    int second;
    Getter get_second;
    int sign;  // first + sign * second == 0 mod 2 pi
  };
  const Getter north = [](const DihedralSet& d, int j) { return d.north[at(j)]; };
  const Getter south = [](const DihedralSet& d, int j) { return d.south[at(j)]; };
  const Getter eq = [](const DihedralSet& d, int j) { return d.equator[at(j)]; };
  auto pair_name = [n](int j) { return std::to_string(j + 1) + std::to_string(wrap(j + 1, n) + 1); };

  std::vector<Rel> rels;
  for (int j = 0; j < n; ++j) {
    const std::string v = std::to_string(j + 1);
    rels.push_back({"phiPrime" + v + " = -phi" + v, j, south, j, north, 1});
  }
  for (int j = 0; j < n; ++j) {
    const int prev = wrap(j - 1, n);
    const bool turn = spec.epsilon[at(prev)] * spec.epsilon[at(j)] < 0;
    rels.push_back({"phi" + pair_name(j) + " = " + (turn ? "-" : "") + "phi" + pair_name(prev), j, eq, prev, eq,
                    turn ? 1 : -1});
  }
  for (const Rel& r : rels) {
    AngleRelation a;
    a.name = r.name;
    BigFloat lo = 0;
    BigFloat hi = 0;
    for (std::size_t s = 0; s < trace.angles.size(); ++s) {
      const DihedralSet& d = trace.angles[s];
      const BigFloat v = r.get_first(d, r.first) + r.sign * r.get_second(d, r.second);
      a.max_residual = std::max(a.max_residual, mp::abs(reduce_signed(v)));
      if (s == 0) lo = hi = v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    a.offset_spread = hi - lo;
    out.check.residual(a.name, fmt(a.max_residual));
    if (!(a.max_residual < tol) || !(a.offset_spread < tol)) {
      out.check.fail(a.name + " off by " + fmt(a.max_residual) + " (spread " + fmt(a.offset_spread) + ")");
    }
    out.relations.push_back(std::move(a));
  }
  return out;
}

CurvatureReport total_mean_curvature(const SuspensionSpec& spec, const FlexTrace& trace, double tol) {
  CurvatureReport out;
  out.series = trace.mean_curvature;
  if (out.series.empty()) {
    out.check.status = Status::Skipped;
    out.check.note("empty trace");
    return out;
  }
  const auto [lo, hi] = std::minmax_element(out.series.begin(), out.series.end());
  out.spread = *hi - *lo;
  const NumericSpec s = numeric_spec(spec);
  BigFloat total = 0;
  for (int j = 0; j < s.n; ++j) total += s.north[at(j)] + s.south[at(j)] + s.equator[at(j)];
  out.check.residual("value", format(out.series.front(), 20));
  out.check.residual("spread", fmt(out.spread));
  if (!(out.spread < tol * total)) out.check.fail("total mean curvature varies by " + fmt(out.spread));
  return out;
}

// ---------------------------------------------------------------------------
// Exact planar-angle checks

CheckResult flat_cos_identities(const SuspensionSpec& spec) {
  CheckResult out("flat_cos_identities");
  if (spec.classes.size() != 1 || spec.x_min().sign() <= 0) {
    out.status = Status::Skipped;
    out.note("needs a single class with two flat positions away from x = 0");
    return out;
  }
  const int n = spec.n;
  int checked = 0;
  try {
    for (int j = 0; j < n; ++j) {
      const int prev = wrap(j - 1, n);
      const int next = wrap(j + 1, n);
      if (spec.epsilon[at(prev)] * spec.epsilon[at(j)] < 0) continue;
      const ApexEdge& a = spec.apex[at(j)];
      const QuadExt E = north_length_sq(a);
      const QuadExt Es = south_length_sq(a);
      const Rational& l_next = spec.equator[at(j)];
      const Rational& l_prev = spec.equator[at(prev)];
      const QuadExt l_next_sq(l_next * l_next);
      const QuadExt l_prev_sq(l_prev * l_prev);
      // angle(N p_j p_{j+1}) + angle(S p_j p_{j-1}) = pi
      const QuadExt a1 = E + l_next_sq - north_length_sq(spec.apex[at(next)]);
      const QuadExt b1 = Es + l_prev_sq - south_length_sq(spec.apex[at(prev)]);
      // angle(S p_j p_{j+1}) + angle(N p_j p_{j-1}) = pi
      const QuadExt a2 = Es + l_next_sq - south_length_sq(spec.apex[at(next)]);
      const QuadExt b2 = E + l_prev_sq - north_length_sq(spec.apex[at(prev)]);
      const std::string v = std::to_string(j + 1);
      const bool ok1 = cosines_match(a1, E, l_next, b1, Es, l_prev, false);
      const bool ok2 = cosines_match(a2, Es, l_next, b2, E, l_prev, false);
      out.residual("vertex_" + v + "_north_next", ok1 ? "0" : "nonzero");
      out.residual("vertex_" + v + "_south_next", ok2 ? "0" : "nonzero");
      if (!ok1) out.fail("vertex " + v + ": angles N-next and S-prev are not supplementary");
      if (!ok2) out.fail("vertex " + v + ": angles S-next and N-prev are not supplementary");
      ++checked;
    }
  } catch (const FieldMismatch&) {
    out.status = Status::Skipped;
    out.note("apex data span several quadratic fields");
    return out;
  }
  if (checked == 0) {
    out.status = Status::Skipped;
    out.note("no vertex where neighbouring sectors turn the same way");
  }
  return out;
}

CheckResult link_quadrangle_pairing(const SuspensionSpec& spec) {
  CheckResult out("link_quadrangle_pairing");
  if (spec.classes.size() != 1 || spec.x_min().sign() <= 0) {
    out.status = Status::Skipped;
    out.note("needs a single class with two flat positions away from x = 0");
    return out;
  }
  const int n = spec.n;
  const NumericSpec ns = numeric_spec(spec);
  std::vector<FlexState> flats;
  for (const Rational& x : {spec.x_max(), spec.x_min()}) flats.push_back(reconstruct_closed(ns, to_bigfloat(x)));
  int checked = 0;
  try {
    for (int j = 0; j < n; ++j) {
      const std::string v = std::to_string(j + 1);
      bool wraps = false;
      for (const FlexState& st : flats) wraps = wraps || link_winding(st, j) != 0;
      if (wraps) {
        out.residual("vertex_" + v, "skipped");
        continue;
      }
      const int prev = wrap(j - 1, n);
      const int next = wrap(j + 1, n);
      const QuadExt E = north_length_sq(spec.apex[at(j)]);
      const QuadExt Es = south_length_sq(spec.apex[at(j)]);
      const Rational& l_next = spec.equator[at(j)];
      const Rational& l_prev = spec.equator[at(prev)];
      const QuadExt l_next_sq(l_next * l_next);
      const QuadExt l_prev_sq(l_prev * l_prev);
      // w1 = angle(N p_j p_{j+1}), w3 = angle(S p_j p_{j-1})
      const QuadExt c1 = E + l_next_sq - north_length_sq(spec.apex[at(next)]);
      const QuadExt c3 = Es + l_prev_sq - south_length_sq(spec.apex[at(prev)]);
      // w2 = angle(p_{j+1} p_j S), w4 = angle(p_{j-1} p_j N)
      const QuadExt c2 = Es + l_next_sq - south_length_sq(spec.apex[at(next)]);
      const QuadExt c4 = E + l_prev_sq - north_length_sq(spec.apex[at(prev)]);
      const bool ok13 = cosines_match(c1, E, l_next, c3, Es, l_prev, true);
      const bool ok24 = cosines_match(c2, Es, l_next, c4, E, l_prev, true);
      out.residual("vertex_" + v, ok13 && ok24 ? "0" : "nonzero");
      if (!ok13) out.fail("vertex " + v + ": opposite link sides through N-next and S-prev differ");
      if (!ok24) out.fail("vertex " + v + ": opposite link sides through S-next and N-prev differ");
      ++checked;
    }
  } catch (const FieldMismatch&) {
    out.status = Status::Skipped;
    out.note("apex data span several quadratic fields");
    return out;
  }
  if (checked == 0 && out.status == Status::Pass) {
    out.status = Status::Skipped;
    out.note("every link wraps a great circle");
  }
  return out;
}

CheckResult flat_state_angles(const SuspensionSpec& spec) {
  CheckResult out("flat_state_angles");
  if (spec.classes.size() != 1 || spec.x_min().sign() <= 0) {
    out.status = Status::Skipped;
    out.note("needs a single class with two flat positions away from x = 0");
    return out;
  }
  const auto [hi, lo] = flat_states(spec);
  const BigFloat tol = mp::pow(BigFloat(10), -static_cast<int>(current_digits() / 2));
  for (const FlatState* f : {&hi, &lo}) {
    const std::string where = format(f->state.x, 10);
    for (std::size_t j = 0; j < f->sector_flat.size(); ++j) {
      if (!f->sector_flat[j]) out.fail("sector " + std::to_string(j + 1) + " is not flat at x = " + where);
    }
    const DihedralSet d = dihedral_angles(f->state);
    BigFloat worst = 0;
    for (const auto* track : {&d.north, &d.south, &d.equator}) {
      for (const BigFloat& a : *track) {
        const BigFloat r = mp::abs(reduce_signed(a));
        worst = std::max(worst, std::min(r, mp::abs(pi_value() - r)));
      }
    }
    out.residual("x=" + where, fmt(worst));
    if (!(worst < tol)) out.fail("dihedral angle off {0, pi} by " + fmt(worst) + " at x = " + where);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dehn functionals

bool DehnReport::all_constant() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](Verdict v) { return v == Verdict::Constant; });
}

DehnReport dehn_functionals(const SuspensionSpec& spec, const FlexTrace& trace, double tol, double margin) {
  DehnReport out;
  const int n = spec.n;
  // Edge order: north edges, south edges, equator edges.
  std::vector<std::vector<RadicalTerm>> edges;
  for (int j = 0; j < n; ++j) edges.push_back(decompose_length(spec.apex[at(j)], true));
  for (int j = 0; j < n; ++j) edges.push_back(decompose_length(spec.apex[at(j)], false));
  for (int j = 0; j < n; ++j) edges.push_back({{BigInt(1), spec.equator[at(j)]}});
  std::vector<BigInt> kernels;
  for (const auto& e : edges) {
    for (const RadicalTerm& t : e) kernels.push_back(t.kernel);
  }
  std::sort(kernels.begin(), kernels.end());
  kernels.erase(std::unique(kernels.begin(), kernels.end()), kernels.end());
  out.kernels = kernels;
  out.weights.assign(kernels.size(), std::vector<Rational>(edges.size()));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    for (const RadicalTerm& t : edges[e]) {
      const auto i = static_cast<std::size_t>(std::lower_bound(kernels.begin(), kernels.end(), t.kernel) - kernels.begin());
      out.weights[i][e] += t.coefficient;
    }
  }

  out.window_lo = to_bigfloat(spec.x_min()) + margin;
  out.window_hi = to_bigfloat(spec.x_max()) - margin;
  bool any_inside = false;
  for (const FlexState& st : trace.states) {
    out.xs.push_back(st.x);
    any_inside = any_inside || (st.x >= out.window_lo && st.x <= out.window_hi);
  }
  for (std::size_t i = 0; i < kernels.size(); ++i) {
    std::vector<BigFloat> wf;
    BigFloat weight_sum = 0;
    for (const Rational& w : out.weights[i]) {
      wf.push_back(to_bigfloat(w));
      weight_sum += mp::abs(wf.back());
    }
    std::vector<BigFloat> series;
    BigFloat lo = 0;
    BigFloat hi = 0;
    bool first = true;
    for (std::size_t s = 0; s < trace.angles.size(); ++s) {
      const DihedralSet& d = trace.angles[s];
      BigFloat v = 0;
      for (int j = 0; j < n; ++j) {
        v += wf[at(j)] * d.north[at(j)] + wf[at(n + j)] * d.south[at(j)] + wf[at(2 * n + j)] * d.equator[at(j)];
      }
      series.push_back(v);
      const BigFloat& x = trace.states[s].x;
      if (any_inside && (x < out.window_lo || x > out.window_hi)) continue;
      if (first) lo = hi = v;
      first = false;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    out.series.push_back(std::move(series));
    out.spread.push_back(hi - lo);
    out.verdicts.push_back(hi - lo < tol * weight_sum ? Verdict::Constant : Verdict::NonConstant);
  }
  return out;
}

void write_dehn_csv(std::ostream& os, const DehnReport& report, int digits) {
  os << "x";
  for (std::size_t i = 0; i < report.kernels.size(); ++i) os << ",alpha" << (i + 1);
  os << "\n";
  for (std::size_t s = 0; s < report.xs.size(); ++s) {
    os << format(report.xs[s], digits);
    for (const auto& series : report.series) os << "," << format(series[s], digits);
    os << "\n";
  }
}

// ---------------------------------------------------------------------------
// Full report

bool VerificationReport::all_passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.failed(); });
}

const CheckResult* VerificationReport::find(const std::string& name) const {
  for (const CheckResult& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

VerificationReport full_report(const SuspensionSpec& spec, const ReportOptions& options) {
  VerificationReport out;
  CheckResult valid = validate_spec(spec);
  valid.name = "spec_valid";
  out.checks.push_back(valid);

  out.identity = verify_flexing_identity(spec);
  out.checks.push_back(out.identity.check);
  out.checks.push_back(verify_sign_sum(spec));
  out.checks.push_back(verify_y_sum(spec));
  out.checks.push_back(apex_length_relations(spec));

  const std::vector<std::string> traced{"closure", "turning", "volume", "total_mean_curvature",
                                        "angle_relations", "flat_state_angles", "dehn_invariants"};
  auto skip_traced = [&](const std::string& why) {
    for (const std::string& name : traced) {
      CheckResult c(name);
      c.status = Status::Skipped;
      c.note(why);
      out.checks.push_back(c);
    }
  };

  const Rational lo_q = spec.x_min();
  const Rational hi_q = spec.x_max();
  if (!out.identity.check.passed()) {
    skip_traced("no flex: the flexing identity fails");
  } else if (!(lo_q < hi_q)) {
    skip_traced("empty flex interval");
  } else {
    const BigFloat lo = to_bigfloat(lo_q);
    const BigFloat hi = to_bigfloat(hi_q);
    const BigFloat m = std::min(BigFloat(options.margin), (hi - lo) / 4);
    FlexTrace tr;
    try {
      tr = trace(spec, uniform_grid(lo + m, hi - m, options.grid), options.trace);
    } catch (const DomainError& e) {
      skip_traced(std::string("reconstruction failed: ") + e.what());
    }
    if (!tr.states.empty()) {
      const NumericSpec ns = numeric_spec(spec);
      const BigFloat scale = edge_scale(ns);
      CheckResult closure("closure");
      CheckResult turning("turning");
      CheckResult volume("volume");
      BigFloat worst_closure = 0;
      BigFloat worst_turning = 0;
      BigFloat worst_volume = 0;
      for (std::size_t s = 0; s < tr.states.size(); ++s) {
        worst_closure = std::max(worst_closure, closure_residual(ns, tr.states[s]));
        worst_turning = std::max(worst_turning, mp::abs(turning_residual(tr.states[s])));
        worst_volume = std::max(worst_volume, mp::abs(tr.volume[s]));
      }
      closure.residual("max", fmt(worst_closure));
      turning.residual("max", fmt(worst_turning));
      volume.residual("max", fmt(worst_volume));
      if (!(worst_closure < 1e-9 * scale)) closure.fail("edge lengths drift by " + fmt(worst_closure));
      if (!(worst_turning < 1e-9)) turning.fail("turning angles sum to " + fmt(worst_turning));
      if (!(worst_volume < 1e-9 * scale * scale * scale)) volume.fail("volume reaches " + fmt(worst_volume));
      out.checks.push_back(closure);
      out.checks.push_back(turning);
      out.checks.push_back(volume);
      const CurvatureReport tmc = total_mean_curvature(spec, tr, options.constancy_tol);
      out.checks.push_back(tmc.check);
      out.checks.push_back(angle_relations(spec, tr).check);
      out.checks.push_back(guarded("flat_state_angles", [&] { return flat_state_angles(spec); }));
      out.dehn = dehn_functionals(spec, tr, options.constancy_tol);
      CheckResult dehn("dehn_invariants");
      for (std::size_t i = 0; i < out.dehn.kernels.size(); ++i) {
        const std::string tag = "alpha" + std::to_string(i + 1) + "_sqrt" + out.dehn.kernels[i].str();
        dehn.residual(tag, fmt(out.dehn.spread[i]));
        dehn.note(tag + (out.dehn.verdicts[i] == Verdict::Constant ? " constant" : " non-constant"));
      }
      out.checks.push_back(dehn);
      out.flexible = closure.passed() && turning.passed();
      out.volume_zero = volume.passed();
      out.tmc_constant = tmc.check.passed();
      out.dehn_constant = out.dehn.all_constant();
    }
  }
  out.checks.push_back(guarded("flat_cos_identities", [&] { return flat_cos_identities(spec); }));
  out.checks.push_back(guarded("link_quadrangle_pairing", [&] { return link_quadrangle_pairing(spec); }));

  if (!out.flexible) {
    out.verdict = "not flexible";
  } else {
    out.verdict = std::string("flexible, ") + (out.volume_zero ? "volume-zero" : "volume-varying") + ", " +
                  (out.tmc_constant ? "TMC-constant" : "TMC-varying") + ", " +
                  (out.dehn_constant ? "Dehn-constant" : "Dehn-NONconstant (Extended Strong Bellows counterexample)");
  }
  return out;
}

std::string to_json(const VerificationReport& report) {
  json j;
  j["verdict"] = report.verdict;
  j["flexible"] = report.flexible;
  j["volume_zero"] = report.volume_zero;
  j["tmc_constant"] = report.tmc_constant;
  j["dehn_constant"] = report.dehn_constant;
  j["all_passed"] = report.all_passed();
  j["identity"] = {{"exact", report.identity.exact}, {"delta", report.identity.delta}};
  json checks = json::array();
  for (const CheckResult& c : report.checks) checks.push_back(json::parse(to_json(c)));
  j["checks"] = checks;
  json dehn = json::array();
  for (std::size_t i = 0; i < report.dehn.kernels.size(); ++i) {
    json w = json::array();
    for (const Rational& q : report.dehn.weights[i]) w.push_back(q.to_string());
    dehn.push_back({{"name", "alpha" + std::to_string(i + 1)},
                    {"kernel", report.dehn.kernels[i].str()},
                    {"weights", w},
                    {"spread", format(report.dehn.spread[i], 10)},
                    {"verdict", report.dehn.verdicts[i] == Verdict::Constant ? "constant" : "non-constant"}});
  }
  j["dehn"] = dehn;
  return j.dump(2);
}

}  // namespace flexsusp
