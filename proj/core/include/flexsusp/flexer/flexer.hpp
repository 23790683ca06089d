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

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "flexsusp/numeric/bigfloat.hpp"
#include "flexsusp/numeric/poly.hpp"
#include "flexsusp/numeric/quad_ext.hpp"
#include "flexsusp/numeric/vec3.hpp"
#include "flexsusp/synthesis/suspension.hpp"

namespace flexsusp {

/// Exact per-sector polynomials in x over Q(sqrt(delta)).
struct SectorPolys {
  QuadExt d_first;   // |e_j|^2 - |e'_j|^2
  QuadExt d_second;  // same for vertex j+1
  QuadExt dot;       // e_j . e_{j+1}
  Poly<QuadExt> z_first;   // (x + d_j)/2
  Poly<QuadExt> z_second;  // (x + d_{j+1})/2
  Poly<QuadExt> q;         // x dot - z_j z_{j+1}
  Poly<QuadExt> h_sq;      // x |e_j|^2 - z_j^2
  QuadExt y_coefficient;   // epsilon |e_{j,j+1}| / 2
};

struct SectorAlgebra {
  /// False when the apex data do not live in one quadratic field; callers
  /// then fall back to floating point.
  bool exact = false;
  /// Radicand shared by all apex data (0 when everything is rational).
  std::int64_t delta = 0;
  std::vector<SectorPolys> sectors;
};

/// Also checks H_j^2 = -(x - r'_j)(x - r_j)/4 on construction (DomainError).
SectorAlgebra build_sector_algebra(const SuspensionSpec& spec);

/// Floating-point copy of the edge data at the current precision.
struct NumericSpec {
  int n = 0;
  std::vector<BigFloat> north_sq, south_sq, diff;  // |e_j|^2, |e'_j|^2, d_j
  std::vector<BigFloat> north, south, equator;     // |e_j|, |e'_j|, |e_{j,j+1}|
  std::vector<int> epsilon;
  std::vector<BigFloat> b_prime, b;                // per sector
};

NumericSpec numeric_spec(const SuspensionSpec& spec);

/// One position of the suspension: S at the origin, N = (0, 0, sqrt x),
/// p_1 in the half plane of positive first coordinate.
struct FlexState {
  BigFloat x;
  Vec3 north;
  Vec3 south;
  std::vector<Vec3> equator;
  /// Turning angle of sector (j, j+1) around the axis, in (-pi, pi].
  std::vector<BigFloat> theta;
};

/// DomainError outside the open flex interval or when a vertex falls on the axis.
FlexState reconstruct(const SuspensionSpec& spec, const BigFloat& x);
FlexState reconstruct(const NumericSpec& spec, const BigFloat& x);

/// Same construction but x may equal an end of the flex interval; sectors
/// whose class is flat there turn by 0 or pi.
FlexState reconstruct_closed(const NumericSpec& spec, const BigFloat& x);

/// Largest |distance - length| over all 3n edges, and |N - S|^2 - x.
BigFloat closure_residual(const NumericSpec& spec, const FlexState& state);

/// Sum of theta reduced to (-pi, pi].
BigFloat turning_residual(const FlexState& state);

struct FlatState {
  FlexState state;
  /// Exact test of Q_j(x)^2 = H_j^2(x) H_{j+1}^2(x) per sector at this x:
  /// the planar chain closes with the prescribed squared edge lengths.
  std::vector<bool> sector_flat;
  bool exact = false;
};

/// Configurations at x = max b' and x = min b (the two flat positions of a
/// single-class suspension).
std::pair<FlatState, FlatState> flat_states(const SuspensionSpec& spec);

enum class Orientation { Standard, Reversed };

/// Principal dihedral angles in [0, 2 pi). Faces are <N, p_j, p_{j+1}> and
/// <S, p_{j+1}, p_j>; Reversed flips every face.
struct DihedralSet {
  std::vector<BigFloat> north;    // edge <N, p_j>
  std::vector<BigFloat> south;    // edge <S, p_j>
  std::vector<BigFloat> equator;  // edge <p_j, p_{j+1}>
};

/// Angle at edge a-b between the face through c1 (oriented a, b, c1) and the
/// face through c2, measured inside. DomainError for a zero-area face.
BigFloat dihedral(const Vec3& a, const Vec3& b, const Vec3& c1, const Vec3& c2);

DihedralSet dihedral_angles(const FlexState& state, Orientation orientation = Orientation::Standard);

/// (1/6) sum of a . (b x c) over the given oriented triangles.
BigFloat oriented_volume(const std::vector<std::array<Vec3, 3>>& triangles);
BigFloat oriented_volume(const FlexState& state);

/// Sum over edges of angle times length.
BigFloat mean_curvature(const NumericSpec& spec, const DihedralSet& angles);

struct TraceOptions {
  /// Jumps above this between neighbouring samples trigger bisection.
  double jump_threshold = 1.5707963267948966;
  int max_depth = 20;
  /// 0 picks the hardware concurrency.
  unsigned threads = 0;
};

/// Branch-tracked samples. Angle tracks are continuous along the grid and
/// anchored so that their limit at the right end of the flex interval lies
/// in [-pi/2, 3pi/2).
struct FlexTrace {
  std::vector<FlexState> states;
  std::vector<DihedralSet> angles;
  std::vector<BigFloat> volume;
  std::vector<BigFloat> mean_curvature;
};

FlexTrace trace(const SuspensionSpec& spec, const std::vector<BigFloat>& grid,
                const TraceOptions& options = {});

/// n points spread evenly over [lo, hi] (both included).
std::vector<BigFloat> uniform_grid(const BigFloat& lo, const BigFloat& hi, int n);

/// Columns x, N_xyz, S_xyz, p1_xyz..pn_xyz, theta_1..n, phi_1..n,
/// phiPrime_1..n, phiEq_1..n, volume, tmc.
void write_trace_csv(std::ostream& os, const FlexTrace& trace, int digits = 20);

}  // namespace flexsusp
