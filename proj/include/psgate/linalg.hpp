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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace psgate {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;
using Vector4 = Eigen::Vector4cd;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

/// Default tolerance for algebraic identities (unitarity, PSD checks).
inline constexpr double kAlgebraicTol = 1e-10;
/// Default tolerance for physical and achievability decisions.
inline constexpr double kDecisionTol = 1e-6;
/// Tolerance used when validating user-supplied unitaries.
inline constexpr double kInputUnitaryTol = 1e-8;

namespace pauli {
Matrix2 identity();
Matrix2 x();
Matrix2 y();
Matrix2 z();
}  // namespace pauli

/**
 * The swap operator on two qubits, basis |00>,|01>,|10>,|11>.
 */
Matrix4 swap_operator();

/**
 * Kronecker product of two 2x2 matrices.
 *
 * Row (2*i1 + i2), column (2*j1 + j2) holds a(i1, j1) * b(i2, j2), so the
 * first factor acts on the leading qubit of |q1 q2>.
 */
Matrix4 kron(const Matrix2 &a, const Matrix2 &b);
/// As above, checking that both operands are 2x2.
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/**
 * Singular values in descending order, min(rows, cols) of them.
 *
 * Computed from the eigenvalues of the Gram matrix m^dagger m (or m m^dagger
 * when m is wide). Accurate to machine precision relative to s1 for the
 * small, well-conditioned matrices used here.
 */
std::vector<double> singular_values(const ComplexMatrix &m);

/// Largest singular value s1(m).
double largest_singular_value(const ComplexMatrix &m);

/**
 * Hermitian positive semidefinite square root.
 *
 * Throws NotPSD when m deviates from Hermitian by more than tol (max-norm) or
 * has an eigenvalue below -tol. Eigenvalues in [-tol, 0) are clamped to 0.
 */
ComplexMatrix psd_sqrt(const ComplexMatrix &m, double tol = kAlgebraicTol);

/// max |(m^dagger m - I)_ij|; m must be square.
double unitarity_residual(const ComplexMatrix &m);

/// True iff unitarity_residual(m) <= tol. Throws NonSquare otherwise.
bool is_unitary(const ComplexMatrix &m, double tol);

bool is_finite(const ComplexMatrix &m);

/// max |a_ij - b_ij|; throws DimensionMismatch on shape mismatch.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

void require_square(const ComplexMatrix &m, const char *what);
void require_shape(
    const ComplexMatrix &m, Eigen::Index rows, Eigen::Index cols,
    const char *what);
void require_finite(const ComplexMatrix &m, const char *what);
/// Throws NonUnitary unless m is square and unitary within tol.
void require_unitary(const ComplexMatrix &m, double tol, const char *what);

/// Haar-random n x n unitary (QR of a complex Ginibre matrix, phase-fixed).
ComplexMatrix haar_unitary(int n, std::mt19937_64 &rng);

/// Matrix with i.i.d. standard complex Gaussian entries.
ComplexMatrix random_complex_matrix(int rows, int cols, std::mt19937_64 &rng);

/// Random contraction: a random matrix rescaled so that s1 = scale.
ComplexMatrix random_contraction(int n, double scale, std::mt19937_64 &rng);

}  // namespace psgate
