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

#include "flexsusp/flexer/flexer.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>

#include "flexsusp/errors.hpp"

namespace flexsusp {

namespace mp = boost::multiprecision;

SectorAlgebra build_sector_algebra(const SuspensionSpec& spec) {
  SectorAlgebra out;
  const int n = spec.n;
  const QuadExt half(Rational(1, 2));
  try {
    for (int j = 0; j < n; ++j) {
      const int k = (j + 1) % n;
      const ApexEdge& a = spec.apex[static_cast<std::size_t>(j)];
      const ApexEdge& b = spec.apex[static_cast<std::size_t>(k)];
      SectorPolys s;
      s.d_first = apex_difference(a);
      s.d_second = apex_difference(b);
      for (const QuadExt& d : {s.d_first, s.d_second}) {
        if (d.delta() != 0) out.delta = d.delta();
      }
      const QuadExt e1 = north_length_sq(a);
      const QuadExt e2 = north_length_sq(b);
      const Rational& len = spec.equator[static_cast<std::size_t>(j)];
      s.dot = (e1 + e2 - QuadExt(len * len)) * half;
      s.z_first = Poly<QuadExt>({s.d_first * half, half});
      s.z_second = Poly<QuadExt>({s.d_second * half, half});
      s.q = Poly<QuadExt>({QuadExt(0), s.dot}) - s.z_first * s.z_second;
      s.h_sq = Poly<QuadExt>({QuadExt(0), e1}) - s.z_first * s.z_first;
      const Poly<QuadExt> expected({QuadExt(-a.r * a.r_prime / Rational(4)), QuadExt((a.r + a.r_prime) / Rational(4)),
                                    QuadExt(Rational(-1, 4))});
      if (!(s.h_sq == expected)) {
        throw DomainError("H^2 of vertex " + std::to_string(j + 1) + " does not factor over its roots");
      }
      s.y_coefficient = QuadExt(Rational(spec.epsilon[static_cast<std::size_t>(j)]) * len / Rational(2));
      out.sectors.push_back(std::move(s));
    }
    out.exact = true;
  } catch (const FieldMismatch&) {
    out = SectorAlgebra{};
  } catch (const DomainError& e) {
    if (std::string(e.what()).find("cannot be certified") == std::string::npos) throw;
    out = SectorAlgebra{};
  }
  return out;
}

NumericSpec numeric_spec(const SuspensionSpec& spec) {
  NumericSpec out;
  out.n = spec.n;
  for (int j = 0; j < spec.n; ++j) {
    const ApexEdge& a = spec.apex[static_cast<std::size_t>(j)];
    BigFloat r = to_bigfloat(a.r);
    BigFloat rp = to_bigfloat(a.r_prime);
    BigFloat d = mp::sqrt(r * rp);
    if (!a.apex_long) d = -d;
    out.diff.push_back(d);
    out.north_sq.push_back((r + rp + 2 * d) / 4);
    out.south_sq.push_back((r + rp - 2 * d) / 4);
    out.north.push_back(north_length(a));
    out.south.push_back(south_length(a));
    out.equator.push_back(to_bigfloat(spec.equator[static_cast<std::size_t>(j)]));
    out.epsilon.push_back(spec.epsilon[static_cast<std::size_t>(j)]);
    const ClassData& c = spec.classes.at(static_cast<std::size_t>(spec.class_of(j)));
    out.b_prime.push_back(to_bigfloat(c.b_prime));
    out.b.push_back(to_bigfloat(c.b));
  }
  return out;
}

namespace {

BigFloat interval_lo(const NumericSpec& s) { return *std::max_element(s.b_prime.begin(), s.b_prime.end()); }
BigFloat interval_hi(const NumericSpec& s) { return *std::min_element(s.b.begin(), s.b.end()); }

BigFloat tiny(const BigFloat& scale) {
  return scale * mp::pow(BigFloat(10), -static_cast<int>(current_digits()) + 8);
}

FlexState build(const NumericSpec& s, const BigFloat& x) {
  const int n = s.n;
  FlexState st;
  st.x = x;
  const BigFloat sx = mp::sqrt(x);
  for (int j = 0; j < n; ++j) {
    const int k = (j + 1) % n;
    BigFloat y_sq = -x * (x - s.b_prime[j]) * (x - s.b[j]);
    if (y_sq < 0) {
      if (-y_sq > tiny(s.b[j] * s.b[j] * s.b[j])) throw DomainError("x is outside the flex interval of a sector");
      y_sq = 0;
    }
    const BigFloat y = mp::sqrt(y_sq);
    const BigFloat dot_jk = (s.north_sq[j] + s.north_sq[k] - s.equator[j] * s.equator[j]) / 2;
    const BigFloat z1 = (x + s.diff[j]) / 2;
    const BigFloat z2 = (x + s.diff[k]) / 2;
    const BigFloat q = x * dot_jk - z1 * z2;
    st.theta.push_back(mp::atan2(s.epsilon[j] * s.equator[j] * y / 2, q));
  }
  st.north = Vec3{BigFloat(0), BigFloat(0), sx};
  st.south = Vec3{BigFloat(0), BigFloat(0), BigFloat(0)};
  BigFloat azimuth = 0;
  for (int j = 0; j < n; ++j) {
    const BigFloat z = (x + s.diff[j]) / 2;
    const BigFloat h_sq = x * s.north_sq[j] - z * z;
    if (h_sq <= 0) throw DomainError("vertex " + std::to_string(j + 1) + " lies on the axis");
    const BigFloat rho = mp::sqrt(h_sq) / sx;
    st.equator.push_back(Vec3{rho * mp::cos(azimuth), rho * mp::sin(azimuth), (x - s.diff[j]) / (2 * sx)});
    azimuth += st.theta[static_cast<std::size_t>(j)];
  }
  return st;
}

}  // namespace

FlexState reconstruct(const NumericSpec& spec, const BigFloat& x) {
  if (!(x > interval_lo(spec) && x < interval_hi(spec))) {
    throw DomainError("x = " + format(x, 20) + " is outside the open flex interval (" +
                      format(interval_lo(spec), 20) + ", " + format(interval_hi(spec), 20) + ")");
  }
  return build(spec, x);
}

FlexState reconstruct(const SuspensionSpec& spec, const BigFloat& x) { return reconstruct(numeric_spec(spec), x); }

FlexState reconstruct_closed(const NumericSpec& spec, const BigFloat& x) {
  if (x < interval_lo(spec) || x > interval_hi(spec) || x <= 0) {
    throw DomainError("x = " + format(x, 20) + " is outside the flex interval");
  }
  return build(spec, x);
}

BigFloat closure_residual(const NumericSpec& spec, const FlexState& st) {
  BigFloat worst = mp::abs(dot(st.north - st.south, st.north - st.south) - st.x);
  const int n = spec.n;
  for (int j = 0; j < n; ++j) {
    const int k = (j + 1) % n;
    const Vec3& p = st.equator[static_cast<std::size_t>(j)];
    worst = std::max(worst, mp::abs(distance(st.north, p) - spec.north[j]));
    worst = std::max(worst, mp::abs(distance(st.south, p) - spec.south[j]));
    worst = std::max(worst, mp::abs(distance(p, st.equator[static_cast<std::size_t>(k)]) - spec.equator[j]));
  }
  return worst;
}

namespace {

BigFloat reduce_signed(const BigFloat& v) {
  const BigFloat two_pi = 2 * pi_value();
  BigFloat r = v - two_pi * mp::floor(v / two_pi);  // [0, 2pi)
  if (r > pi_value()) r -= two_pi;
  return r;
}

BigFloat reduce_positive(const BigFloat& v) {
  const BigFloat two_pi = 2 * pi_value();
  return v - two_pi * mp::floor(v / two_pi);
}

}  // namespace

BigFloat turning_residual(const FlexState& state) {
  BigFloat sum = 0;
  for (const BigFloat& t : state.theta) sum += t;
  return mp::abs(reduce_signed(sum));
}

std::pair<FlatState, FlatState> flat_states(const SuspensionSpec& spec) {
  NumericSpec ns = numeric_spec(spec);
  SectorAlgebra alg = build_sector_algebra(spec);
  auto make = [&](const Rational& x) {
    if (x.sign() <= 0) throw DomainError("no flat state at x = " + x.to_string() + ": the poles coincide");
    FlatState f;
    f.state = reconstruct_closed(ns, to_bigfloat(x));
    f.exact = alg.exact;
    const int n = spec.n;
    for (int j = 0; j < n; ++j) {
      const int k = (j + 1) % n;
      if (alg.exact) {
        const SectorPolys& s = alg.sectors[static_cast<std::size_t>(j)];
        const QuadExt qx = s.q(QuadExt(x));
        f.sector_flat.push_back(qx * qx == s.h_sq(QuadExt(x)) * alg.sectors[static_cast<std::size_t>(k)].h_sq(QuadExt(x)));
      } else {
        BigFloat t = reduce_signed(f.state.theta[static_cast<std::size_t>(j)]);
        BigFloat lim = tiny(BigFloat(1)) * 1000;
        f.sector_flat.push_back(mp::abs(t) < lim || mp::abs(mp::abs(t) - pi_value()) < lim);
      }
    }
    return f;
  };
  return {make(spec.x_max()), make(spec.x_min())};
}

BigFloat dihedral(const Vec3& a, const Vec3& b, const Vec3& c1, const Vec3& c2) {
  const Vec3 edge = b - a;
  const BigFloat len = norm(edge);
  if (len == 0) throw DomainError("dihedral angle at a zero-length edge");
  const Vec3 u = (1 / len) * edge;
  auto perp = [&](const Vec3& c) {
    Vec3 w = c - a;
    w = w - dot(w, u) * u;
    BigFloat m = norm(w);
    if (m <= tiny(norm(c - a) + len)) throw DomainError("zero-area face at a dihedral edge");
    return (1 / m) * w;
  };
  const Vec3 w1 = perp(c1);
  const Vec3 w2 = perp(c2);
  Vec3 n1 = cross(edge, c1 - a);
  n1 = (1 / norm(n1)) * n1;
  return reduce_positive(mp::atan2(-dot(w2, n1), dot(w2, w1)));
}

DihedralSet dihedral_angles(const FlexState& st, Orientation orientation) {
  DihedralSet out;
  const auto n = st.equator.size();
  for (std::size_t j = 0; j < n; ++j) {
    const Vec3& prev = st.equator[(j + n - 1) % n];
    const Vec3& here = st.equator[j];
    const Vec3& next = st.equator[(j + 1) % n];
    out.north.push_back(dihedral(st.north, here, next, prev));
    out.south.push_back(dihedral(st.south, here, prev, next));
    out.equator.push_back(dihedral(here, next, st.north, st.south));
  }
  if (orientation == Orientation::Reversed) {
    const BigFloat two_pi = 2 * pi_value();
    for (auto* track : {&out.north, &out.south, &out.equator}) {
      for (BigFloat& v : *track) v = reduce_positive(two_pi - v);
    }
  }
  return out;
}

BigFloat oriented_volume(const std::vector<std::array<Vec3, 3>>& triangles) {
  BigFloat sum = 0;
  for (const auto& t : triangles) sum += triple(t[0], t[1], t[2]);
  return sum / 6;
}

BigFloat oriented_volume(const FlexState& st) {
  std::vector<std::array<Vec3, 3>> faces;
  const auto n = st.equator.size();
  for (std::size_t j = 0; j < n; ++j) {
    const Vec3& p = st.equator[j];
    const Vec3& q = st.equator[(j + 1) % n];
    faces.push_back({st.north, p, q});
    faces.push_back({st.south, q, p});
  }
  return oriented_volume(faces);
}

BigFloat mean_curvature(const NumericSpec& spec, const DihedralSet& a) {
  BigFloat sum = 0;
  for (int j = 0; j < spec.n; ++j) {
    sum += a.north[j] * spec.north[j] + a.south[j] * spec.south[j] + a.equator[j] * spec.equator[j];
  }
  return sum;
}

namespace {

std::vector<BigFloat> flatten(const DihedralSet& a) {
  std::vector<BigFloat> out;
  for (const auto* track : {&a.north, &a.south, &a.equator}) out.insert(out.end(), track->begin(), track->end());
  return out;
}

DihedralSet unflatten(const std::vector<BigFloat>& v) {
  DihedralSet out;
  const std::size_t n = v.size() / 3;
  out.north.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n));
  out.south.assign(v.begin() + static_cast<std::ptrdiff_t>(n), v.begin() + static_cast<std::ptrdiff_t>(2 * n));
  out.equator.assign(v.begin() + static_cast<std::ptrdiff_t>(2 * n), v.end());
  return out;
}

struct Unwrapper {
  const NumericSpec& spec;
  BigFloat threshold;
  int max_depth;

  // Continues the unwrapped values `from` at x0 to x1, whose principal
  // values are `raw`, bisecting while some track jumps too far.
  std::vector<BigFloat> advance(const BigFloat& x0, const std::vector<BigFloat>& from, const BigFloat& x1,
                                const std::vector<BigFloat>& raw, int depth) const {
    std::vector<BigFloat> out(from.size());
    bool smooth = true;
    for (std::size_t i = 0; i < from.size(); ++i) {
      BigFloat step = reduce_signed(raw[i] - from[i]);
      if (mp::abs(step) > threshold) smooth = false;
      out[i] = from[i] + step;
    }
    if (smooth) return out;
    if (depth >= max_depth) {
      throw DomainError("angle tracks stay discontinuous near x = " + format(x1, 20) + " after refinement");
    }
    const BigFloat mid = (x0 + x1) / 2;
    const std::vector<BigFloat> raw_mid = flatten(dihedral_angles(build(spec, mid)));
    const std::vector<BigFloat> at_mid = advance(x0, from, mid, raw_mid, depth + 1);
    return advance(mid, at_mid, x1, raw, depth + 1);
  }
};

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += threads) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

FlexTrace trace(const SuspensionSpec& spec, const std::vector<BigFloat>& grid, const TraceOptions& options) {
  if (grid.empty()) throw DomainError("trace needs at least one grid point");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i - 1] < grid[i])) throw DomainError("trace grid must be strictly increasing");
  }
  const NumericSpec ns = numeric_spec(spec);
  FlexTrace out;
  out.states.resize(grid.size());
  std::vector<std::vector<BigFloat>> raw(grid.size());
  parallel_for(grid.size(), options.threads, [&](std::size_t i) {
    out.states[i] = reconstruct(ns, grid[i]);
    raw[i] = flatten(dihedral_angles(out.states[i]));
  });

  const Unwrapper unwrap{ns, BigFloat(options.jump_threshold), options.max_depth};
  std::vector<std::vector<BigFloat>> tracks(grid.size());
  tracks[0] = raw[0];
  for (std::size_t i = 1; i < grid.size(); ++i) {
    tracks[i] = unwrap.advance(grid[i - 1], tracks[i - 1], grid[i], raw[i], 0);
  }

  // anchor at the right end of the flex interval
  std::vector<BigFloat> offset(tracks[0].size(), BigFloat(0));
  const BigFloat two_pi = 2 * pi_value();
  try {
    const BigFloat hi = interval_hi(ns);
    const std::vector<BigFloat> end_raw = flatten(dihedral_angles(reconstruct_closed(ns, hi)));
    const std::vector<BigFloat> end = unwrap.advance(grid.back(), tracks.back(), hi, end_raw, 0);
    for (std::size_t t = 0; t < end.size(); ++t) {
      BigFloat target = reduce_positive(end_raw[t] + pi_value() / 2) - pi_value() / 2;
      offset[t] = two_pi * mp::round((target - end[t]) / two_pi);
    }
  } catch (const DomainError&) {
    for (std::size_t t = 0; t < offset.size(); ++t) {
      offset[t] = two_pi * mp::floor(-tracks.back()[t] / two_pi) + two_pi;
      if (tracks.back()[t] + offset[t] >= two_pi) offset[t] -= two_pi;
    }
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t t = 0; t < offset.size(); ++t) tracks[i][t] += offset[t];
    out.angles.push_back(unflatten(tracks[i]));
    out.volume.push_back(oriented_volume(out.states[i]));
    out.mean_curvature.push_back(mean_curvature(ns, out.angles.back()));
  }
  return out;
}

std::vector<BigFloat> uniform_grid(const BigFloat& lo, const BigFloat& hi, int n) {
  if (n < 1) throw DomainError("grid needs at least one point");
  std::vector<BigFloat> out;
  if (n == 1) return {lo};
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  out.back() = hi;
  return out;
}

void write_trace_csv(std::ostream& os, const FlexTrace& tr, int digits) {
  if (tr.states.empty()) return;
  const std::size_t n = tr.states.front().equator.size();
  os << "x,N_x,N_y,N_z,S_x,S_y,S_z";
  for (std::size_t j = 1; j <= n; ++j) os << ",p" << j << "_x,p" << j << "_y,p" << j << "_z";
  for (const char* name : {"theta_", "phi_", "phiPrime_", "phiEq_"}) {
    for (std::size_t j = 1; j <= n; ++j) os << "," << name << j;
  }
  os << ",volume,tmc\n";
  auto put = [&](const BigFloat& v) { os << "," << format(v, digits); };
  auto put3 = [&](const Vec3& v) {
    put(v.x);
    put(v.y);
    put(v.z);
  };
  for (std::size_t i = 0; i < tr.states.size(); ++i) {
    const FlexState& st = tr.states[i];
    os << format(st.x, digits);
    put3(st.north);
    put3(st.south);
    for (const Vec3& p : st.equator) put3(p);
    for (const BigFloat& t : st.theta) put(t);
    for (const auto* track : {&tr.angles[i].north, &tr.angles[i].south, &tr.angles[i].equator}) {
      for (const BigFloat& v : *track) put(v);
    }
    put(tr.volume[i]);
    put(tr.mean_curvature[i]);
    os << "\n";
  }
}

}  // namespace flexsusp
