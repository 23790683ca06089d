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
#include <vector>

#include "flexsusp/check.hpp"
#include "flexsusp/flexer/flexer.hpp"
#include "flexsusp/numeric/poly.hpp"
#include "flexsusp/synthesis/suspension.hpp"

namespace flexsusp {

/// Product identity prod (Q + c y) = prod (Q - c y) per class, reduced modulo
/// y^2 = x (x - b') (x - b).
struct IdentityReport {
  CheckResult check{"flexing_identity"};
  bool exact = false;
  std::int64_t delta = 0;
  /// lhs - rhs per class (exact path); both parts zero on success.
  std::vector<CubicResidue<QuadExt>> difference;
  /// Largest relative residual (numeric path).
  BigFloat numeric_residual = 0;
};

/// Exact over Q(sqrt(delta)) when the apex data allow it, else numeric.
IdentityReport verify_flexing_identity(const SuspensionSpec& spec);
/// Compares both sides at 4n + 1 rational points x > b where y is real.
IdentityReport verify_flexing_identity_numeric(const SuspensionSpec& spec);

/// Exact sum of epsilon * |e_{j,j+1}| per class.
CheckResult verify_sign_sum(const SuspensionSpec& spec);
/// Exact sum of the y-coefficients epsilon |e_{j,j+1}| / 2 per class.
CheckResult verify_y_sum(const SuspensionSpec& spec);

struct ApexRelation {
  int j = 0;  // 1-based vertices
  int k = 0;
  /// Signs of |e'_j|, |e_k|, |e'_k| in |e_j| +- |e'_j| +- |e_k| +- |e'_k| = 0.
  int sign_south_j = 1;
  int sign_north_k = 1;
  int sign_south_k = 1;
  std::string to_string() const;
};

/// Exact search over vertex pairs that are not neighbours. Passes when every
/// vertex takes part in at least one relation.
CheckResult apex_length_relations(const SuspensionSpec& spec, std::vector<ApexRelation>* found = nullptr);

/// Which angle tracks a relation ties together.
struct AngleRelation {
  std::string name;
  /// Residual is  sum(coefficient * track) mod 2 pi  (and its spread).
  BigFloat max_residual = 0;
  BigFloat offset_spread = 0;
};

struct AngleRelationReport {
  CheckResult check{"angle_relations"};
  std::vector<AngleRelation> relations;
};

/// For every vertex phi'_j = -phi_j; between neighbouring sectors the
/// equator angles agree up to sign, minus when the sector signs differ.
/// Checked modulo 2 pi at every sample. Skipped for several classes.
AngleRelationReport angle_relations(const SuspensionSpec& spec, const FlexTrace& trace, double tol = 1e-9);

struct CurvatureReport {
  CheckResult check{"total_mean_curvature"};
  std::vector<BigFloat> series;
  BigFloat spread = 0;
};

CurvatureReport total_mean_curvature(const SuspensionSpec& spec, const FlexTrace& trace, double tol = 1e-8);

/// Supplementary planar angles at vertices where neighbouring sectors turn
/// the same way: angle(N p_j p_{j+1}) + angle(S p_j p_{j-1}) = pi and
/// angle(S p_j p_{j+1}) + angle(N p_j p_{j-1}) = pi, exactly. Skipped unless
/// there is one class with flat positions at two positive x.
CheckResult flat_cos_identities(const SuspensionSpec& spec);

/// Opposite sides of the link quadrangle at p_j are equal. Vertices whose
/// link wraps a whole great circle in a flat position are skipped. Same
/// preconditions as flat_cos_identities.
CheckResult link_quadrangle_pairing(const SuspensionSpec& spec);

/// Tab-style check: every dihedral angle of both flat positions is 0 or pi.
CheckResult flat_state_angles(const SuspensionSpec& spec);

enum class Verdict { Constant, NonConstant };

/// Edge length as sum of rational multiples of square roots of square-free
/// kernels.
struct RadicalTerm {
  BigInt kernel;
  Rational coefficient;
};
std::vector<RadicalTerm> decompose_length(const ApexEdge& apex, bool north);

struct DehnReport {
  /// Square-free kernels in increasing order; functional i belongs to kernel i.
  std::vector<BigInt> kernels;
  /// weights[i][e]: coefficient of edge angle e in functional i. Edge order is
  /// phi_1..n, phi'_1..n, phi_{12}..phi_{n1}.
  std::vector<std::vector<Rational>> weights;
  std::vector<BigFloat> xs;
  std::vector<std::vector<BigFloat>> series;  // [functional][sample]
  std::vector<BigFloat> spread;               // over the inner window
  std::vector<Verdict> verdicts;
  BigFloat window_lo = 0;
  BigFloat window_hi = 0;
  bool all_constant() const;
};

/// Spreads use samples with x in [lo + margin, hi - margin] when there are
/// any. Constant means spread < tol * sum |weights|.
DehnReport dehn_functionals(const SuspensionSpec& spec, const FlexTrace& trace, double tol = 1e-8,
                            double margin = 1.0);

void write_dehn_csv(std::ostream& os, const DehnReport& report, int digits = 20);

struct ReportOptions {
  int grid = 201;
  double margin = 0.5;
  /// Relative tolerance for the curvature and Dehn constancy checks.
  double constancy_tol = 1e-8;
  TraceOptions trace;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  IdentityReport identity;
  DehnReport dehn;
  bool flexible = false;
  bool volume_zero = false;
  bool tmc_constant = false;
  bool dehn_constant = false;
  std::string verdict;

  bool all_passed() const;
  const CheckResult* find(const std::string& name) const;
};

/// Runs every check on a default trace over [lo + margin, hi - margin].
VerificationReport full_report(const SuspensionSpec& spec, const ReportOptions& options = {});

std::string to_json(const VerificationReport& report);

}  // namespace flexsusp
