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

#include "psgate/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "psgate/error.hpp"

namespace psgate {

const char *to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch:
      return "DimensionMismatch";
    case ErrorCode::NonFinite:
      return "NonFinite";
    case ErrorCode::NonSquare:
      return "NonSquare";
    case ErrorCode::NotPSD:
      return "NotPSD";
    case ErrorCode::NonUnitary:
      return "NonUnitary";
    case ErrorCode::InvalidPair:
      return "InvalidPair";
    case ErrorCode::NumericalFailure:
      return "NumericalFailure";
    case ErrorCode::ZeroWeight:
      return "ZeroWeight";
    case ErrorCode::InvalidBranch:
      return "InvalidBranch";
    case ErrorCode::DegenerateInput:
      return "DegenerateInput";
    case ErrorCode::NotZeroCase:
      return "NotZeroCase";
    case ErrorCode::NotAchievable:
      return "NotAchievable";
    case ErrorCode::NotContraction:
      return "NotContraction";
    case ErrorCode::NotProportional:
      return "NotProportional";
    case ErrorCode::NoConvergence:
      return "NoConvergence";
    case ErrorCode::MalformedNetwork:
      return "MalformedNetwork";
    case ErrorCode::InvalidArgument:
      return "InvalidArgument";
    case ErrorCode::ParseError:
      return "ParseError";
  }
  return "Unknown";
}

namespace pauli {
Matrix2 identity() { return Matrix2::Identity(); }
Matrix2 x() {
  Matrix2 m;
  m << 0, 1, 1, 0;
  return m;
}
Matrix2 y() {
  Matrix2 m;
  m << 0, -kI, kI, 0;
  return m;
}
Matrix2 z() {
  Matrix2 m;
  m << 1, 0, 0, -1;
  return m;
}
}  // namespace pauli

Matrix4 swap_operator() {
  Matrix4 s;
  // clang-format off
  s << 1, 0, 0, 0,
       0, 0, 1, 0,
       0, 1, 0, 0,
       0, 0, 0, 1;
  // clang-format on
  return s;
}

Matrix4 kron(const Matrix2 &a, const Matrix2 &b) {
  Matrix4 out;
  for (int i1 = 0; i1 < 2; ++i1)
    for (int j1 = 0; j1 < 2; ++j1)
      for (int i2 = 0; i2 < 2; ++i2)
        for (int j2 = 0; j2 < 2; ++j2)
          out(2 * i1 + i2, 2 * j1 + j2) = a(i1, j1) * b(i2, j2);
  return out;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
  require_shape(a, 2, 2, "kron lhs");
  require_shape(b, 2, 2, "kron rhs");
  return kron(Matrix2(a), Matrix2(b));
}

std::vector<double> singular_values(const ComplexMatrix &m) {
  if (m.size() == 0) return {};
  const ComplexMatrix gram = m.rows() >= m.cols()
                                 ? ComplexMatrix(m.adjoint() * m)
                                 : ComplexMatrix(m * m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gram, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd &ev = es.eigenvalues();
  std::vector<double> out(ev.size());
  for (Eigen::Index k = 0; k < ev.size(); ++k)
    out[k] = std::sqrt(std::max(0.0, ev(k)));
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double largest_singular_value(const ComplexMatrix &m) {
  const auto sv = singular_values(m);
  return sv.empty() ? 0.0 : sv.front();
}

ComplexMatrix psd_sqrt(const ComplexMatrix &m, double tol) {
  require_square(m, "psd_sqrt");
  require_finite(m, "psd_sqrt");
  const double herm_dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > tol) {
    throw Error(
        ErrorCode::NotPSD,
        "matrix deviates from Hermitian by " + std::to_string(herm_dev));
  }
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  Eigen::VectorXd ev = es.eigenvalues();
  if (ev.size() > 0 && ev.minCoeff() < -tol) {
    throw Error(
        ErrorCode::NotPSD,
        "negative eigenvalue " + std::to_string(ev.minCoeff()));
  }
  for (Eigen::Index k = 0; k < ev.size(); ++k)
    ev(k) = std::sqrt(std::max(0.0, ev(k)));
  const ComplexMatrix &v = es.eigenvectors();
  return v * ev.cast<Complex>().asDiagonal() * v.adjoint();
}

double unitarity_residual(const ComplexMatrix &m) {
  require_square(m, "unitarity check");
  const ComplexMatrix d =
      m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols());
  return d.cwiseAbs().maxCoeff();
}

bool is_unitary(const ComplexMatrix &m, double tol) {
  if (!is_finite(m)) return false;
  return unitarity_residual(m) <= tol;
}

bool is_finite(const ComplexMatrix &m) {
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    const Complex z = m.data()[k];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "max_abs_diff shapes differ");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

void require_square(const ComplexMatrix &m, const char *what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(
        ErrorCode::NonSquare, std::string(what) + ": expected a square matrix, got " +
                                  std::to_string(m.rows()) + "x" +
                                  std::to_string(m.cols()));
  }
}

void require_shape(
    const ComplexMatrix &m, Eigen::Index rows, Eigen::Index cols,
    const char *what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw Error(
        ErrorCode::DimensionMismatch,
        std::string(what) + ": expected " + std::to_string(rows) + "x" +
            std::to_string(cols) + ", got " + std::to_string(m.rows()) + "x" +
            std::to_string(m.cols()));
  }
}

void require_finite(const ComplexMatrix &m, const char *what) {
  if (!is_finite(m)) {
    throw Error(ErrorCode::NonFinite, std::string(what) + ": non-finite entry");
  }
}

void require_unitary(const ComplexMatrix &m, double tol, const char *what) {
  require_square(m, what);
  require_finite(m, what);
  const double res = unitarity_residual(m);
  if (res > tol) {
    throw Error(
        ErrorCode::NonUnitary,
        std::string(what) + ": unitarity residual " + std::to_string(res));
  }
}

ComplexMatrix random_complex_matrix(int rows, int cols, std::mt19937_64 &rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(normal(rng), normal(rng));
  return m;
}

ComplexMatrix haar_unitary(int n, std::mt19937_64 &rng) {
  const ComplexMatrix g = random_complex_matrix(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

ComplexMatrix random_contraction(int n, double scale, std::mt19937_64 &rng) {
  const ComplexMatrix g = random_complex_matrix(n, n, rng);
  return g * (scale / largest_singular_value(g));
}

}  // namespace psgate
