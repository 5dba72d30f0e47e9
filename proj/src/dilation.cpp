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

#include "psgate/dilation.hpp"

#include <cmath>
#include <string>

#include "psgate/error.hpp"
#include "psgate/gatemap.hpp"

namespace psgate {

namespace {

/// 1 - s^2 at or below this counts as a unit singular value.
constexpr double kDefectFloor = 1e-14;
/// Entries and phases treated as exact zeros by the mesh decomposition.
constexpr double kNegligible = 1e-15;

}  // namespace

OpticalElement OpticalElement::beam_splitter(
    int a, int b, double theta, double phi) {
  return {ElementKind::BeamSplitter, a, b, theta, phi};
}

OpticalElement OpticalElement::phase_shifter(int mode, double phi) {
  return {ElementKind::PhaseShifter, mode, -1, 0.0, phi};
}

int OpticalNetwork::beam_splitter_count() const {
  int n = 0;
  for (const auto &e : elements) n += e.kind == ElementKind::BeamSplitter;
  return n;
}

Matrix2 beam_splitter_matrix(double theta, double phi) {
  const double c = std::cos(theta), s = std::sin(theta);
  const Complex e = std::exp(kI * phi);
  Matrix2 t;
  t << c, s, e * s, -e * c;
  return t;
}

ComplexMatrix dilate(const ComplexMatrix &u_in, double tol) {
  require_shape(u_in, 4, 4, "dilate");
  require_finite(u_in, "dilate");
  Eigen::JacobiSVD<ComplexMatrix> svd(
      u_in, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::VectorXd sigma = svd.singularValues();
  const double s1 = sigma(0);
  if (s1 > 1.0 + tol) {
    throw Error(
        ErrorCode::NotContraction,
        "largest singular value " + std::to_string(s1) + " exceeds 1");
  }
  ComplexMatrix u = u_in;
  if (s1 > 1.0) {
    u /= s1;
    sigma /= s1;
  }
  Eigen::VectorXcd defect(4);
  for (int k = 0; k < 4; ++k) {
    // Roundoff-level defects on unit singular values are dropped so that
    // unitary corners dilate to block-diagonal matrices.
    const double d2 = 1.0 - sigma(k) * sigma(k);
    defect(k) = d2 <= kDefectFloor ? 0.0 : std::sqrt(d2);
  }
  const ComplexMatrix &left = svd.matrixU();
  const ComplexMatrix &right = svd.matrixV();
  ComplexMatrix out(kDilationModes, kDilationModes);
  out.topLeftCorner(4, 4) = u;
  out.topRightCorner(4, 4) = left * defect.asDiagonal() * left.adjoint();
  out.bottomLeftCorner(4, 4) = right * defect.asDiagonal() * right.adjoint();
  out.bottomRightCorner(4, 4) = -u.adjoint();
  return out;
}

OpticalNetwork reck_decompose(const ComplexMatrix &u) {
  require_unitary(u, kInputUnitaryTol, "reck_decompose");
  const int n = static_cast<int>(u.rows());
  if (n > kMaxSimulatedModes) {
    throw Error(
        ErrorCode::InvalidArgument,
        "at most " + std::to_string(kMaxSimulatedModes) + " modes supported");
  }
  ComplexMatrix m = u;
  // Null the strictly lower triangle column by column from the bottom with
  // T^dagger on rows (r-1, r). Then u = T_1 ... T_K D.
  std::vector<OpticalElement> nulled;
  for (int c = 0; c + 1 < n; ++c) {
    for (int r = n - 1; r > c; --r) {
      const Complex a = m(r - 1, c);
      const Complex b = m(r, c);
      if (std::abs(b) <= kNegligible) {
        m(r, c) = 0.0;
        continue;
      }
      const double theta = std::atan2(std::abs(b), std::abs(a));
      const double phi =
          std::abs(a) == 0.0 ? 0.0 : std::arg(b) - std::arg(a);
      const Matrix2 tdag = beam_splitter_matrix(theta, phi).adjoint();
      const Eigen::RowVectorXcd upper = m.row(r - 1);
      const Eigen::RowVectorXcd lower = m.row(r);
      m.row(r - 1) = tdag(0, 0) * upper + tdag(0, 1) * lower;
      m.row(r) = tdag(1, 0) * upper + tdag(1, 1) * lower;
      m(r, c) = 0.0;
      nulled.push_back(OpticalElement::beam_splitter(r - 1, r, theta, phi));
    }
  }
  OpticalNetwork net;
  net.n_modes = n;
  for (int k = 0; k < n; ++k) {
    const double phase = std::arg(m(k, k));
    if (std::abs(phase) > kNegligible) {
      net.elements.push_back(OpticalElement::phase_shifter(k, phase));
    }
  }
  for (auto it = nulled.rbegin(); it != nulled.rend(); ++it) {
    net.elements.push_back(*it);
  }
  return net;
}

void validate_network(const OpticalNetwork &net) {
  if (net.n_modes < 1 || net.n_modes > kMaxSimulatedModes) {
    throw Error(
        ErrorCode::MalformedNetwork,
        "mode count " + std::to_string(net.n_modes) + " out of range");
  }
  for (std::size_t k = 0; k < net.elements.size(); ++k) {
    const OpticalElement &e = net.elements[k];
    const std::string where = "element " + std::to_string(k) + ": ";
    if (!std::isfinite(e.theta) || !std::isfinite(e.phi)) {
      throw Error(ErrorCode::MalformedNetwork, where + "non-finite angle");
    }
    if (e.mode_a < 0 || e.mode_a >= net.n_modes) {
      throw Error(ErrorCode::MalformedNetwork, where + "mode out of range");
    }
    if (e.kind == ElementKind::BeamSplitter &&
        (e.mode_b < 0 || e.mode_b >= net.n_modes || e.mode_b == e.mode_a)) {
      throw Error(
          ErrorCode::MalformedNetwork, where + "bad second beam-splitter mode");
    }
  }
}

ComplexMatrix network_to_unitary(const OpticalNetwork &net) {
  validate_network(net);
  ComplexMatrix u = ComplexMatrix::Identity(net.n_modes, net.n_modes);
  for (const OpticalElement &e : net.elements) {
    if (e.kind == ElementKind::PhaseShifter) {
      u.row(e.mode_a) *= std::exp(kI * e.phi);
      continue;
    }
    const Matrix2 t = beam_splitter_matrix(e.theta, e.phi);
    const Eigen::RowVectorXcd ra = u.row(e.mode_a);
    const Eigen::RowVectorXcd rb = u.row(e.mode_b);
    u.row(e.mode_a) = t(0, 0) * ra + t(0, 1) * rb;
    u.row(e.mode_b) = t(1, 0) * ra + t(1, 1) * rb;
  }
  return u;
}

}  // namespace psgate
