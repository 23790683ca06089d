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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "flexsusp/check.hpp"
#include "flexsusp/curve/cubic.hpp"

namespace flexsusp {

/// Integer combination of named generators, e.g. -A + 2B - C - D.
class GroupWord {
 public:
  GroupWord() = default;
  /// Accepts "-A+2B-C-D", "A - 2 B", "0". Generator names are a letter
  /// followed by letters, digits or underscores.
  static GroupWord parse(std::string_view text);
  static GroupWord generator(const std::string& name, long long multiple = 1);

  long long coefficient(const std::string& name) const;
  const std::map<std::string, long long>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  GroupWord& operator+=(const GroupWord& rhs);
  GroupWord& operator-=(const GroupWord& rhs);
  friend GroupWord operator+(GroupWord lhs, const GroupWord& rhs) { return lhs += rhs; }
  friend GroupWord operator-(GroupWord lhs, const GroupWord& rhs) { return lhs -= rhs; }
  GroupWord operator-() const;
  friend GroupWord operator*(long long k, const GroupWord& w);
  friend bool operator==(const GroupWord&, const GroupWord&) = default;

  /// Canonical text, generators in name order: "-A+2B-C-D"; "0" for the identity.
  std::string to_string() const;

 private:
  void add_term(const std::string& name, long long c);
  std::map<std::string, long long> terms_;
};

/// Column order of a table row: Q_{j-1,-}, Q_{j+}, Q'_{j-1,-}, Q'_{j+}.
enum Column : int { kQPrev = 0, kQNext = 1, kQPrimePrev = 2, kQPrimeNext = 3 };

/// Per-vertex point table. Row j (1-based) holds the four points of the
/// sector (j-1, j); sector s is the pair of faces over the equator edge
/// (s, s+1), indices mod n.
struct SectorTable {
  int n = 0;
  std::vector<std::array<GroupWord, 4>> rows;
  /// Partition of sectors 1..n into equivalence classes. Empty means one class.
  std::vector<std::vector<int>> classes;

  /// Sector held by 1-based row j.
  int sector_of_row(int row) const { return row == 1 ? n : row - 1; }
  /// 0-based class index of 1-based sector s.
  int class_of_sector(int sector) const;
  int class_count() const { return classes.empty() ? 1 : static_cast<int>(classes.size()); }
  const std::array<GroupWord, 4>& row(int j) const { return rows.at(static_cast<std::size_t>(j - 1)); }
};

/// Curves per class and one point per generator.
struct PointAssignment {
  std::vector<Cubic> curves;
  std::map<std::string, CurvePoint> generators;

  const Cubic& curve(int class_index) const { return curves.at(static_cast<std::size_t>(class_index)); }
};

CurvePoint evaluate(const GroupWord& word, const PointAssignment& assignment, int class_index = 0);

/// All 4n points; result[j-1][c] is row j, column c.
std::vector<std::array<CurvePoint, 4>> evaluate_table(const SectorTable& table,
                                                      const PointAssignment& assignment);

/// Shared root x-values between consecutive rows (Q_{j+} vs Q_{j,-}, same for Q').
CheckResult check_condition_A(const SectorTable& table, const PointAssignment& assignment);
/// Every row sums to zero on its class curve.
CheckResult check_condition_B(const SectorTable& table, const PointAssignment& assignment);
/// Negation symmetry of the Q and Q' multisets; Q' bounded, Q unbounded.
CheckResult check_condition_C(const SectorTable& table, const PointAssignment& assignment);

enum class Factor { Primed, Plain };

struct FlowEdge {
  int from = 0;
  int to = 0;
  Factor factor = Factor::Plain;
  GroupWord flow;
};

struct FlowMultigraph {
  int n = 0;
  std::vector<FlowEdge> edges;
};

/// Pairs every table entry X with an entry -X of the same column type and
/// turns each pair into an edge (from the row of X to the row of -X, flow X).
/// Pairs are matched greedily in row-major order. InconsistentData if some
/// entry has no partner.
FlowMultigraph derive_flow_graph(const SectorTable& table);

/// Degree 4 everywhere, two edges of each factor per vertex, zero net flow.
CheckResult graph_structure_check(const FlowMultigraph& g);

/// Symbolic row sums.
bool rows_cancel_symbolically(const SectorTable& table);

struct Dataset {
  SectorTable table;
  PointAssignment assignment;
};

/// The hexagonal-equator table with b' = 51, b = 100 and generators A..D.
Dataset builtin_hexagon();
/// Four-row table of the first-type octahedra (no point assignment).
SectorTable builtin_octahedron_table();

std::string to_json(const GroupWord& w);
std::string to_json(const SectorTable& t);
std::string to_json(const PointAssignment& a);
SectorTable table_from_json(std::string_view text);
PointAssignment assignment_from_json(std::string_view text);

}  // namespace flexsusp
