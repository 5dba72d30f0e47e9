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

#include "psgate/linalg.hpp"

namespace psgate {

/**
 * Angles (radians) of the non-local core exp(i(a XX + b YY + c ZZ)).
 *
 * Outputs of this module lie in the chamber pi/4 >= alpha >= beta >= |gamma|;
 * callers may construct raw triples anywhere.
 */
struct CanonicalTriple {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/**
 * The four distinct entries of the canonical matrix
 *
 *   [ w1  0   0   w4 ]
 *   [ 0   w2  w3  0  ]
 *   [ 0   w3  w2  0  ]
 *   [ w4  0   0   w1 ]
 */
struct CanonicalWeights {
  Complex w1{1.0, 0.0};
  Complex w2{1.0, 0.0};
  Complex w3{0.0, 0.0};
  Complex w4{0.0, 0.0};

  std::array<Complex, 4> as_array() const { return {w1, w2, w3, w4}; }
  /// Weight by 1-based index, matching the w1..w4 naming.
  Complex operator[](int index) const;
};

/**
 * W = global_phase * (v1 (x) v2) * canonical_matrix(triple) * (v3 (x) v4).
 */
struct CartanDecomposition {
  Matrix2 v1 = Matrix2::Identity();
  Matrix2 v2 = Matrix2::Identity();
  Matrix2 v3 = Matrix2::Identity();
  Matrix2 v4 = Matrix2::Identity();
  CanonicalTriple triple;
  Complex global_phase{1.0, 0.0};

  Matrix4 reconstruct() const;
};

Matrix4 canonical_matrix(const CanonicalTriple &t);
/// The canonical matrix laid out from its four weights.
Matrix4 canonical_matrix(const CanonicalWeights &w);

CanonicalWeights weights_from_triple(const CanonicalTriple &t);

/// True iff pi/4 >= alpha >= beta >= |gamma| >= 0, each within slack.
bool in_canonical_region(const CanonicalTriple &t, double slack = 1e-12);

/**
 * Locally equivalent triple inside the canonical chamber, reached by
 * pi/2 shifts of single angles, sign flips of angle pairs and permutations.
 */
CanonicalTriple canonicalize_triple(const CanonicalTriple &t);

/**
 * Decomposition of canonical_matrix(t) with its triple moved into the
 * chamber; the local unitaries record the symmetry moves applied.
 */
CartanDecomposition canonicalize(const CanonicalTriple &t);

/**
 * KAK decomposition of a two-qubit unitary with the triple in the canonical
 * chamber. Throws NonUnitary for inputs off by more than 1e-8 and
 * NumericalFailure if the reconstruction residual exceeds 1e-7.
 */
CartanDecomposition kak_decompose(const ComplexMatrix &w);

/// max |reconstruct() - w|.
double reconstruction_residual(
    const CartanDecomposition &d, const ComplexMatrix &w);

/**
 * Returns X u Y with X = diag(v1, v2), Y = diag(v3, v4), so that
 * f(X u Y) = (v1 (x) v2) f(u) (v3 (x) v4).
 */
Matrix4 conjugate_submatrix(
    const ComplexMatrix &u, const Matrix2 &v1, const Matrix2 &v2,
    const Matrix2 &v3, const Matrix2 &v4);

/// Columns are the magic (Bell) basis in which local gates are real.
Matrix4 magic_basis();

}  // namespace psgate
