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

#include "psgate/cartan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "psgate/error.hpp"

namespace psgate {

namespace {

/// Running form W = phase * (l1 (x) l2) * C(t) * (r1 (x) r2).
struct TrackedForm {
  Complex phase{1.0, 0.0};
  Matrix2 l1 = Matrix2::Identity();
  Matrix2 l2 = Matrix2::Identity();
  Matrix2 r1 = Matrix2::Identity();
  Matrix2 r2 = Matrix2::Identity();
  std::array<double, 3> angles{};
};

Matrix2 pauli_for(int axis) {
  switch (axis) {
    case 0:
      return pauli::x();
    case 1:
      return pauli::y();
    default:
      return pauli::z();
  }
}

// Subtracts steps * pi/2 from one angle: exp(i pi/2 PP) = i PP.
void shift_angle(TrackedForm &f, int axis, long steps) {
  if (steps == 0) return;
  f.angles[axis] -= static_cast<double>(steps) * kPi / 2;
  const int m = static_cast<int>(((steps % 4) + 4) % 4);
  static const Complex kPowers[4] = {1.0, kI, -1.0, -kI};
  f.phase *= kPowers[m];
  if (m % 2 == 1) {
    const Matrix2 p = pauli_for(axis);
    f.l1 = f.l1 * p;
    f.l2 = f.l2 * p;
  }
}

// Negates two angles by conjugating with the Pauli that anticommutes with
// both of their generators.
void flip_pair(TrackedForm &f, int a, int b) {
  const int keep = 3 - a - b;
  const Matrix2 q = pauli_for(keep);
  f.angles[a] = -f.angles[a];
  f.angles[b] = -f.angles[b];
  f.l1 = f.l1 * q;
  f.r1 = q * f.r1;
}

// Local v with (v (x) v) C(t) (v (x) v)^dagger = C(t with a, b swapped).
Matrix2 swapper(int a, int b) {
  const int keep = 3 - a - b;
  Matrix2 v;
  const double h = 1.0 / std::sqrt(2.0);
  switch (keep) {
    case 2:  // X <-> Y
      v << 1, 0, 0, kI;
      break;
    case 1:  // X <-> Z
      v << h, h, h, -h;
      break;
    default:  // Y <-> Z
      v << h, -kI * h, -kI * h, h;
      break;
  }
  return v;
}

void swap_angles(TrackedForm &f, int a, int b) {
  const Matrix2 v = swapper(a, b);
  std::swap(f.angles[a], f.angles[b]);
  f.l1 = f.l1 * v.adjoint();
  f.l2 = f.l2 * v.adjoint();
  f.r1 = v * f.r1;
  f.r2 = v * f.r2;
}

void canonicalize_tracked(TrackedForm &f) {
  for (int k = 0; k < 3; ++k) {
    shift_angle(f, k, std::lround(f.angles[k] / (kPi / 2)));
  }
  // Sort by magnitude, descending.
  for (int pass = 0; pass < 2; ++pass) {
    for (int k = 0; k + 1 < 3; ++k) {
      if (std::abs(f.angles[k]) < std::abs(f.angles[k + 1])) {
        swap_angles(f, k, k + 1);
      }
    }
  }
  if (f.angles[0] < 0 && f.angles[1] < 0) {
    flip_pair(f, 0, 1);
  } else if (f.angles[0] < 0) {
    flip_pair(f, 0, 2);
  } else if (f.angles[1] < 0) {
    flip_pair(f, 1, 2);
  }
  // On the alpha = pi/4 face the sign of gamma is a further gauge choice.
  if (std::abs(f.angles[0] - kPi / 4) < 1e-10 && f.angles[2] < 0) {
    shift_angle(f, 0, 1);
    flip_pair(f, 0, 2);
  }
}

CartanDecomposition to_decomposition(const TrackedForm &f) {
  CartanDecomposition d;
  d.v1 = f.l1;
  d.v2 = f.l2;
  d.v3 = f.r1;
  d.v4 = f.r2;
  d.triple = {f.angles[0], f.angles[1], f.angles[2]};
  d.global_phase = f.phase;
  return d;
}

/**
 * Splits a 4x4 matrix that is (numerically) a Kronecker product a (x) b into
 * its factors, with b normalised to unit determinant.
 */
std::pair<Matrix2, Matrix2> kronecker_factor(const Matrix4 &m) {
  int bp = 0, bq = 0;
  double best = -1.0;
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) {
      const double n = m.block<2, 2>(2 * p, 2 * q).norm();
      if (n > best) {
        best = n;
        bp = p;
        bq = q;
      }
    }
  Matrix2 b = m.block<2, 2>(2 * bp, 2 * bq);
  b /= std::sqrt(b.determinant());
  Matrix2 a;
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q)
      a(p, q) = (b.adjoint() * m.block<2, 2>(2 * p, 2 * q)).trace() / 2.0;
  return {a, b};
}

/**
 * Real orthogonal o (det +1) with o^T m o diagonal, for complex symmetric
 * unitary m. Re(m) and Im(m) commute, so a generic real combination of them
 * shares m's eigenvectors; a few fixed combinations are tried and the one
 * leaving the smallest off-diagonal part wins.
 */
Eigen::Matrix4d diagonalise_symmetric_unitary(const Matrix4 &m) {
  static const double kMix[] = {0.0, 0.41421356, -1.73205081, 2.71828183,
                                -0.57721566, 7.3890561};
  const Eigen::Matrix4d re = m.real();
  const Eigen::Matrix4d im = m.imag();
  Eigen::Matrix4d best_o = Eigen::Matrix4d::Identity();
  double best_off = std::numeric_limits<double>::infinity();
  for (double c : kMix) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(re + c * im);
    const Eigen::Matrix4d o = es.eigenvectors();
    Matrix4 dm = o.transpose().cast<Complex>() * m * o.cast<Complex>();
    dm.diagonal().setZero();
    const double off = dm.cwiseAbs().maxCoeff();
    if (off < best_off) {
      best_off = off;
      best_o = o;
    }
    if (best_off < 1e-13) break;
  }
  return best_o;
}

}  // namespace

Complex CanonicalWeights::operator[](int index) const {
  switch (index) {
    case 1:
      return w1;
    case 2:
      return w2;
    case 3:
      return w3;
    case 4:
      return w4;
    default:
      throw Error(ErrorCode::InvalidArgument, "weight index must be 1..4");
  }
}

Matrix4 CartanDecomposition::reconstruct() const {
  return global_phase * kron(v1, v2) * canonical_matrix(triple) * kron(v3, v4);
}

Matrix4 canonical_matrix(const CanonicalTriple &t) {
  return canonical_matrix(weights_from_triple(t));
}

Matrix4 canonical_matrix(const CanonicalWeights &w) {
  Matrix4 m;
  // clang-format off
  m << w.w1, 0,    0,    w.w4,
       0,    w.w2, w.w3, 0,
       0,    w.w3, w.w2, 0,
       w.w4, 0,    0,    w.w1;
  // clang-format on
  return m;
}

CanonicalWeights weights_from_triple(const CanonicalTriple &t) {
  const Complex ep = std::exp(kI * t.gamma);
  const Complex em = std::exp(-kI * t.gamma);
  const double diff = t.alpha - t.beta;
  const double sum = t.alpha + t.beta;
  return {ep * std::cos(diff), em * std::cos(sum), kI * em * std::sin(sum),
          kI * ep * std::sin(diff)};
}

bool in_canonical_region(const CanonicalTriple &t, double slack) {
  return t.alpha <= kPi / 4 + slack && t.alpha + slack >= t.beta &&
         t.beta + slack >= std::abs(t.gamma);
}

CanonicalTriple canonicalize_triple(const CanonicalTriple &t) {
  return canonicalize(t).triple;
}

CartanDecomposition canonicalize(const CanonicalTriple &t) {
  TrackedForm f;
  f.angles = {t.alpha, t.beta, t.gamma};
  canonicalize_tracked(f);
  return to_decomposition(f);
}

Matrix4 magic_basis() {
  const double h = 1.0 / std::sqrt(2.0);
  Matrix4 b;
  // clang-format off
  b << h,  0,      0,  kI * h,
       0,  kI * h, h,  0,
       0,  kI * h, -h, 0,
       h,  0,      0,  -kI * h;
  // clang-format on
  return b;
}

CartanDecomposition kak_decompose(const ComplexMatrix &w_in) {
  require_shape(w_in, 4, 4, "kak_decompose");
  require_unitary(w_in, kInputUnitaryTol, "kak_decompose");
  const Matrix4 w = w_in;

  const Complex det = w.determinant();
  const Complex phase0 = std::pow(det, 0.25);
  const Matrix4 special = w / phase0;

  const Matrix4 b = magic_basis();
  const Matrix4 up = b.adjoint() * special * b;
  const Matrix4 sym = up.transpose() * up;

  Eigen::Matrix4d o = diagonalise_symmetric_unitary(sym);
  Matrix4 diag = o.transpose().cast<Complex>() * sym * o.cast<Complex>();

  // Deterministic column order: by eigenvalue argument, then entries.
  std::array<int, 4> order{0, 1, 2, 3};
  std::array<double, 4> args;
  for (int k = 0; k < 4; ++k) args[k] = std::arg(diag(k, k));
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    if (std::abs(args[x] - args[y]) > 1e-12) return args[x] < args[y];
    for (int r = 0; r < 4; ++r) {
      if (std::abs(o(r, x) - o(r, y)) > 1e-12) return o(r, x) < o(r, y);
    }
    return false;
  });
  Eigen::Matrix4d sorted;
  for (int k = 0; k < 4; ++k) {
    Eigen::Vector4d col = o.col(order[k]);
    Eigen::Index imax = 0;
    col.cwiseAbs().maxCoeff(&imax);
    if (col(imax) < 0) col = -col;
    sorted.col(k) = col;
  }
  if (sorted.determinant() < 0) sorted.col(3) = -sorted.col(3);
  o = sorted;
  diag = o.transpose().cast<Complex>() * sym * o.cast<Complex>();

  std::array<double, 4> theta;
  for (int k = 0; k < 4; ++k) theta[k] = std::arg(diag(k, k)) / 2.0;
  const double total = theta[0] + theta[1] + theta[2] + theta[3];
  if (std::cos(total) < 0) theta[0] += kPi;

  Eigen::Vector4cd half_inv;
  for (int k = 0; k < 4; ++k) half_inv(k) = std::exp(-kI * theta[k]);
  const Matrix4 k1 = up * o.cast<Complex>() * half_inv.asDiagonal();
  const Matrix4 left = b * Matrix4(k1.real().cast<Complex>()) * b.adjoint();
  const Matrix4 right = b * o.transpose().cast<Complex>() * b.adjoint();

  const auto [l1, l2] = kronecker_factor(left);
  const auto [r1, r2] = kronecker_factor(right);

  // Magic-basis phases are (a-b+c, a+b-c, -a-b-c, -a+b+c).
  TrackedForm f;
  f.phase = phase0;
  f.l1 = l1;
  f.l2 = l2;
  f.r1 = r1;
  f.r2 = r2;
  f.angles = {(theta[0] + theta[1]) / 2.0, (theta[1] + theta[3]) / 2.0,
              (theta[0] + theta[3]) / 2.0};

  // The product l1 (x) l2 may differ from `left` by a sign; fold any such
  // discrepancy into the global phase before canonicalising.
  CartanDecomposition raw = to_decomposition(f);
  const Matrix4 rec = raw.reconstruct();
  const Complex overlap = (rec.adjoint() * w).trace() / 4.0;
  if (std::abs(overlap) > 0.5) f.phase *= overlap / std::abs(overlap);

  canonicalize_tracked(f);
  CartanDecomposition d = to_decomposition(f);
  const double res = reconstruction_residual(d, w);
  if (!(res <= 1e-7)) {
    throw Error(
        ErrorCode::NumericalFailure,
        "KAK reconstruction residual " + std::to_string(res));
  }
  return d;
}

double reconstruction_residual(
    const CartanDecomposition &d, const ComplexMatrix &w) {
  return max_abs_diff(d.reconstruct(), w);
}

Matrix4 conjugate_submatrix(
    const ComplexMatrix &u, const Matrix2 &v1, const Matrix2 &v2,
    const Matrix2 &v3, const Matrix2 &v4) {
  require_shape(u, 4, 4, "conjugate_submatrix");
  for (const Matrix2 *v : {&v1, &v2, &v3, &v4}) {
    require_unitary(*v, kAlgebraicTol, "conjugate_submatrix local");
  }
  Matrix4 x = Matrix4::Zero();
  Matrix4 y = Matrix4::Zero();
  x.topLeftCorner<2, 2>() = v1;
  x.bottomRightCorner<2, 2>() = v2;
  y.topLeftCorner<2, 2>() = v3;
  y.bottomRightCorner<2, 2>() = v4;
  return x * Matrix4(u) * y;
}

}  // namespace psgate
