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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flexsusp/check.hpp"
#include "flexsusp/flow/flow_graph.hpp"
#include "flexsusp/numeric/bigfloat.hpp"
#include "flexsusp/numeric/quad_ext.hpp"
#include "flexsusp/numeric/vec3.hpp"
#include "flexsusp/numeric/rational.hpp"

namespace flexsusp {

/// Squared pole distances of the two flat positions of a class of sectors.
/// b_prime may be 0 (degenerate class, e.g. the octahedra).
struct ClassData {
  Rational b_prime;
  Rational b;
  friend bool operator==(const ClassData&, const ClassData&) = default;
};

/// Roots r' <= r of H_j^2 for one equator vertex and which apex edge is longer.
struct ApexEdge {
  Rational r;
  Rational r_prime;
  /// True when the edge to the north pole is the longer one.
  bool apex_long = true;
  friend bool operator==(const ApexEdge&, const ApexEdge&) = default;
};

/// Exact edge data of a suspension with equator p_1..p_n. Vertex and sector
/// vectors are 0-based: entry j describes vertex j+1 and sector (j+1, j+2).
struct SuspensionSpec {
  int n = 0;
  std::vector<ClassData> classes;
  /// Class index per sector; empty means every sector is in class 0.
  std::vector<int> sector_class;
  std::vector<ApexEdge> apex;
  std::vector<Rational> equator;
  std::vector<int> epsilon;

  int class_of(int sector) const {
    return sector_class.empty() ? 0 : sector_class.at(static_cast<std::size_t>(sector));
  }
  /// Flex interval shared by all classes: [max b', min b].
  Rational x_min() const;
  Rational x_max() const;

  friend bool operator==(const SuspensionSpec&, const SuspensionSpec&) = default;
};

/// d = |e|^2 - |e'|^2 = +-sqrt(r r'), positive when apex_long.
QuadExt apex_difference(const ApexEdge& a);
/// |e|^2 = (r + r' + 2d)/4 and |e'|^2 = (r + r' - 2d)/4.
QuadExt north_length_sq(const ApexEdge& a);
QuadExt south_length_sq(const ApexEdge& a);
BigFloat north_length(const ApexEdge& a);
BigFloat south_length(const ApexEdge& a);

/// Sum over each class of epsilon * equator length must vanish; faces must
/// satisfy strict triangle inequalities; vectors must have length n.
CheckResult validate_spec(const SuspensionSpec& spec);

struct SectorRoots {
  std::vector<Rational> r_prime;
  std::vector<Rational> r;
};

/// Roots read off the table: r_j is the x of row j's Q_{j+}, r'_j that of
/// Q'_{j+}. DomainError unless 0 <= r' <= b' <= b <= r for every class the
/// vertex touches.
SectorRoots derive_roots(const SectorTable& table, const PointAssignment& assignment);

/// Sign of sector (j, j+1) is minus the sign of y at the rightmost of the
/// four points of row j+1. DomainError if that y is 0.
std::vector<int> derive_signs(const SectorTable& table, const PointAssignment& assignment);

struct ApexLengthPair {
  BigFloat e_minus;
  BigFloat e_plus;
  /// (r + r' -+ 2 sqrt(r r'))/4, when the radicand kernel could be certified.
  std::optional<QuadExt> minus_sq;
  std::optional<QuadExt> plus_sq;
};

ApexLengthPair apex_length_pair(const Rational& r, const Rational& r_prime);

/// Equator length squared forced on sector (j, j+1) by the two apex
/// differences, and whether the sector then has flat positions at exactly
/// x = b and x = b'. Exact over Q(sqrt(delta)).
struct SectorFit {
  QuadExt length_sq;
  bool flat_at_b = false;
  bool flat_at_b_prime = false;
  bool accepted() const { return flat_at_b && flat_at_b_prime; }
};

SectorFit fit_sector(const ApexEdge& first, const ApexEdge& second, const ClassData& cls);

/// Decides which apex edge is the longer one at every vertex and the
/// equator lengths. Sector 1 is tried with the north edge at vertex 1 longer,
/// both orders at vertex 2, and then with the poles interchanged; each later
/// sector fixes the next vertex. InconsistentData when nothing closes the
/// cycle, when a later sector admits two different lengths, or when a length
/// is zero or irrational.
SuspensionSpec resolve_flat_assignment(const SectorRoots& roots, const std::vector<int>& signs,
                                       const ClassData& cls);

/// Conditions (A), (B), (C), then roots, signs and lengths. Single class only.
SuspensionSpec synthesize(const Dataset& data);

struct BricardParams {
  /// Four equator edge lengths in cyclic order; opposite edges equal.
  std::array<Rational, 4> edges;
  Rational pole_height;
  /// Angle between the two crossing edges, radians; default picks a small
  /// rational parameter.
  std::optional<double> crossing_angle;
};

struct BricardResult {
  SuspensionSpec spec;
  /// Realization at x = 4 h^2: N, S, p_1..p_4.
  Vec3 north;
  Vec3 south;
  std::array<Vec3, 4> equator;
  /// Rational parameter k of the crossed quadrilateral actually used.
  Rational parameter;
};

/// First-type flexible octahedron: a self-crossing quadrilateral with
/// opposite sides equal and both poles on its symmetry plane. DomainError
/// when opposite edges differ, all four are equal, or the angle is not
/// attainable.
BricardResult bricard_type1(const BricardParams& params);

std::string to_json(const SuspensionSpec& spec);
SuspensionSpec spec_from_json(std::string_view text);

}  // namespace flexsusp
