// Copyright 2026 The psgate Authors
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
#include <optional>
#include <string>
#include <vector>

#include <limits>

#include "psgate/gatemap.hpp"
#include "psgate/solver.hpp"

namespace psgate {

struct OptimizationConfig {
  int restarts = 64;
  int max_iterations = 500;
  double objective_tolerance = 1e-10;
  std::uint64_t seed = 0;
  /// Start magnitudes are log-uniform in [1/start_radius, start_radius].
  double start_radius = 3.0;
  /// Decision tolerance for zero weights and sign branches.
  double tol = kDecisionTol;
  /// Worker threads for the restarts; results do not depend on it.
  int threads = 1;
  bool record_history = false;
};

/// Best result of one family component (sign branch, zero orientation/root
/// or the identity/swap shortcut).
struct BranchResult {
  std::string label;
  SolutionKind kind = SolutionKind::NonZero;
  std::optional<SignBranch> branch;
  int zero_index = 0;
  int root = -1;
  double best_p = 0.0;
  double best_s1 = std::numeric_limits<double>::infinity();
  int starts = 0;
  int converged = 0;
};

struct OptimizationReport {
  double best_p = 0.0;
  SolutionPoint best_point;
  std::vector<BranchResult> per_branch_best;
  int starts_total = 0;
  int starts_converged = 0;
  /// False when no local search met its convergence test.
  bool converged = false;
  /// Final s1 of every start, in schedule order (if requested).
  std::vector<double> objective_history;
  CanonicalWeights weights;
};

/// p = min(1, s1(u)^-4) for a solution of f(u) = W.
double success_probability(const ComplexMatrix &u);

/**
 * Multi-start quasi-Newton search for the largest success probability over
 * the solution family of canonical weights w. Deterministic in cfg.seed;
 * start k of each component does not depend on cfg.restarts.
 *
 * Throws NotAchievable if w admits no solution and NoConvergence if no
 * start produced a finite objective.
 */
OptimizationReport optimize(
    const CanonicalWeights &w, const OptimizationConfig &cfg = {});

struct GateOptimization {
  OptimizationReport report;
  CanonicalTarget target;
  /// Gate-frame solution with f(unscaled) = W.
  Matrix4 unscaled;
  /// unscaled / max(1, s1): the corner to dilate.
  Matrix4 submatrix;
  double f_residual = 0.0;
};

/// optimize() on the canonical form of a gate, transported back.
GateOptimization optimize_gate(
    const ComplexMatrix &w, const OptimizationConfig &cfg = {});

struct NetworkCheck {
  PostselectedBlock block;
  /// block ~= scale * target.
  Complex scale;
  double residual = 0.0;
  double p = 0.0;
};

/// Runs the simulator on an N-mode unitary and fits block = c * target.
NetworkCheck check_network(const ComplexMatrix &u, const ComplexMatrix &target);

/**
 * Success probability of a mode unitary implementing `target` after
 * post-selection. Throws NotProportional if the block differs from a
 * multiple of the target by more than tol.
 */
double probability_of_network(
    const ComplexMatrix &u, const ComplexMatrix &target, double tol = 1e-7);

}  // namespace psgate
