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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "psgate/achievability.hpp"
#include "psgate/cartan.hpp"

namespace psgate {

/// Signs b1..b4 labelling one component of the non-zero solution family.
struct SignBranch {
  int b1 = 1;
  int b2 = 1;
  int b3 = 1;
  int b4 = 1;

  bool operator==(const SignBranch &) const = default;
  /// e.g. "++-+".
  std::string label() const;
  static SignBranch parse(const std::string &text);
};

/// |b2 w2 - (b1 b4 w3 - b4 w4 + w1)|.
double branch_residual(const CanonicalWeights &w, const SignBranch &b);

/**
 * All sign branches whose constraint holds within tol, (b1, b2, b4) in
 * lexicographic order with + first, each followed by b3 = +1 then -1.
 * Throws ZeroWeight if some |w_i| <= tol.
 */
std::vector<SignBranch> valid_branches(
    const CanonicalWeights &w, double tol = kDecisionTol);

/// Free parameters of the zero-weight construction.
struct ZeroCaseParams {
  /// Rescalings of u30 and u32 (both fixed to 1 in the base construction).
  Complex u30{1.0, 0.0};
  Complex u32{1.0, 0.0};
  /// Quadratic root: -1 picks by the default rule, 0/1 index the ordered pair.
  int root = -1;
  /// 1-based weight to rotate into position 1; 0 picks the smallest.
  int zero_index = 0;
  /// Use the p = 1 identity/swap constructions when the weights allow.
  bool prefer_shortcut = true;
};

enum class SolutionKind { NonZero, ZeroCase, Shortcut };

/**
 * A submatrix u~ with f(u~) = W(w) for canonical weights w, together with
 * the parameters that produced it. a, lambda and mu are only meaningful for
 * SolutionKind::NonZero.
 */
struct SolutionPoint {
  SolutionKind kind = SolutionKind::NonZero;
  Complex u23{1.0, 0.0};
  Complex u30{1.0, 0.0};
  SignBranch branch;
  Complex a{0.0, 0.0};
  Complex lambda{0.0, 0.0};
  Complex mu{0.0, 0.0};
  ZeroCaseParams zero;
  Matrix4 submatrix = Matrix4::Identity();
};

/**
 * Back-substitution for the non-zero family without any checks. Entries may
 * be non-finite for degenerate inputs; used by the optimiser's inner loop.
 */
SolutionPoint nonzero_point(
    const CanonicalWeights &w, const SignBranch &branch, Complex u23,
    Complex u30);

/**
 * Solution of f(u~) = W(w) for weights with no zero entry.
 *
 * Throws DegenerateInput if some |w_i| <= tol, InvalidBranch if the sign
 * constraint fails by more than tol, InvalidArgument for u23 or u30 equal to
 * zero and NumericalFailure if the result misses W by more than 1e-9 or has
 * a vanishing entry.
 */
SolutionPoint solve_nonzero(
    const CanonicalWeights &w, const SignBranch &branch, Complex u23,
    Complex u30, double tol = kDecisionTol);

/// The homogeneous-system matrices: M1 u_row0 = 0 and M2 u_row1 = 0.
struct KernelMatrices {
  Matrix4 m1;
  Matrix4 m2;
};

KernelMatrices kernel_matrices(const SolutionPoint &s);

/// Smallest |u_ij| of a submatrix.
double min_entry_modulus(const Matrix4 &u);

/**
 * Block-diagonal local transform: maps u to X u Y with X = diag(v1, v2),
 * Y = diag(v3, v4).
 */
struct LocalTransform {
  Matrix2 v1 = Matrix2::Identity();
  Matrix2 v2 = Matrix2::Identity();
  Matrix2 v3 = Matrix2::Identity();
  Matrix2 v4 = Matrix2::Identity();

  Matrix4 apply(const Matrix4 &u) const;
  /// (v1 (x) v2) m (v3 (x) v4).
  Matrix4 apply_to_gate(const Matrix4 &m) const;
};

/**
 * Weights with a zero moved into position 1, plus the transform carrying
 * solutions for `reduced` back to solutions for the original weights:
 * W(original) = back.apply_to_gate(W(reduced)).
 */
struct WeightReduction {
  CanonicalWeights reduced;
  LocalTransform back;
  int zero_index = 1;
};

/**
 * Pauli relabelling that moves weight `zero_index` (1..4; 0 = the smallest
 * modulus) into position 1. Throws NotZeroCase if that weight exceeds tol.
 */
WeightReduction reduce_to_w1_zero(
    const CanonicalWeights &w, double tol = kDecisionTol, int zero_index = 0);

/**
 * Roots of w4 x^2 + (w2^2 - w3^2 - w4^2) x + w3^2 w4 = 0 for reduced
 * weights, ordered larger modulus first (ties: smaller argument first).
 */
std::array<Complex, 2> zero_case_roots(const CanonicalWeights &reduced);

/// Number of distinct base constructions (roots) for reduced weights.
int zero_case_root_count(const CanonicalWeights &reduced, double tol);

/// True if the weights admit the identity or swap construction.
bool has_shortcut(const CanonicalWeights &w, double tol = kDecisionTol);

/**
 * Solution for weights with some |w_i| <= tol. Such weights are treated as
 * exactly zero; the result is accepted if f(u~) misses W(w) by at most
 * max(1e-9, 4 tol). Throws NotZeroCase when no weight is small enough.
 */
SolutionPoint solve_zero(
    const CanonicalWeights &w, const ZeroCaseParams &params = {},
    double tol = kDecisionTol);

/**
 * Canonical-frame view of a gate: its KAK decomposition, the verdict, and
 * the triple snapped exactly onto the witness condition.
 */
struct CanonicalTarget {
  CartanDecomposition kak;
  AchievabilityVerdict verdict;
  CanonicalTriple snapped;
  CanonicalWeights weights;
  bool zero_case = false;
};

/// Throws NotAchievable (with the verdict in the message) if w fails.
CanonicalTarget canonical_target(
    const ComplexMatrix &w, double tol = kDecisionTol);

/**
 * Moves a canonical-frame solution to the gate frame so that
 * f(result) = W_gate (up to the snapping error).
 */
Matrix4 transport_to_gate(
    const Matrix4 &canonical_submatrix, const CartanDecomposition &kak);

struct SolveOptions {
  std::optional<SignBranch> branch;
  Complex u23{1.0, 0.0};
  Complex u30{1.0, 0.0};
  ZeroCaseParams zero;
  double tol = kDecisionTol;
};

struct GateSolution {
  /// Rescaled so that s1 <= 1; f(submatrix) = sqrt(p) W.
  Matrix4 submatrix;
  /// Before rescaling; f(unscaled) = W.
  Matrix4 unscaled;
  double p = 0.0;
  double s1 = 0.0;
  /// max |f(unscaled) - W|.
  double f_residual = 0.0;
  SolutionPoint point;
  CanonicalTarget target;
};

/**
 * Full pipeline: KAK, canonical solve (non-zero or zero path), transport
 * through the KAK locals and rescaling. Throws NotAchievable or NonUnitary.
 */
GateSolution solve_gate(const ComplexMatrix &w, const SolveOptions &opts = {});

}  // namespace psgate
