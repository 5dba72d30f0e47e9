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

#include "psgate/gatemap.hpp"

#include <cmath>
#include <string>

#include "psgate/error.hpp"

namespace psgate {

TwoPhotonState::TwoPhotonState(int n_modes) : n_modes_(n_modes) {
  if (n_modes < 4 || n_modes > kMaxSimulatedModes) {
    throw Error(
        ErrorCode::InvalidArgument,
        "two-photon state needs 4.." + std::to_string(kMaxSimulatedModes) +
            " modes, got " + std::to_string(n_modes));
  }
}

ModePair TwoPhotonState::key(int k, int l) const {
  if (k < 0 || l < 0 || k >= n_modes_ || l >= n_modes_) {
    throw Error(ErrorCode::InvalidPair, "mode index out of range");
  }
  return k <= l ? ModePair{k, l} : ModePair{l, k};
}

Complex TwoPhotonState::amplitude(int k, int l) const {
  const auto it = amps_.find(key(k, l));
  return it == amps_.end() ? Complex{} : it->second;
}

void TwoPhotonState::set_amplitude(int k, int l, Complex value) {
  amps_[key(k, l)] = value;
}

double TwoPhotonState::norm_squared() const {
  double total = 0.0;
  for (const auto &[pair, amp] : amps_) total += std::norm(amp);
  return total;
}

Matrix4 f_entrywise(const ComplexMatrix &u_in) {
  require_shape(u_in, 4, 4, "f");
  const Matrix4 u = u_in;
  auto e = [&u](int r, int c) { return u(r, c); };
  Matrix4 f;
  // clang-format off
  f(0, 0) = e(0,0)*e(2,2) + e(2,0)*e(0,2);
  f(0, 1) = e(0,0)*e(2,3) + e(2,0)*e(0,3);
  f(0, 2) = e(0,1)*e(2,2) + e(2,1)*e(0,2);
  f(0, 3) = e(0,1)*e(2,3) + e(2,1)*e(0,3);
  f(1, 0) = e(0,0)*e(3,2) + e(3,0)*e(0,2);
  f(1, 1) = e(0,0)*e(3,3) + e(3,0)*e(0,3);
  f(1, 2) = e(0,1)*e(3,2) + e(3,1)*e(0,2);
  f(1, 3) = e(0,1)*e(3,3) + e(3,1)*e(0,3);
  f(2, 0) = e(1,0)*e(2,2) + e(2,0)*e(1,2);
  f(2, 1) = e(1,0)*e(2,3) + e(2,0)*e(1,3);
  f(2, 2) = e(1,1)*e(2,2) + e(2,1)*e(1,2);
  f(2, 3) = e(1,1)*e(2,3) + e(2,1)*e(1,3);
  f(3, 0) = e(1,0)*e(3,2) + e(3,0)*e(1,2);
  f(3, 1) = e(1,0)*e(3,3) + e(3,0)*e(1,3);
  f(3, 2) = e(1,1)*e(3,2) + e(3,1)*e(1,2);
  f(3, 3) = e(1,1)*e(3,3) + e(3,1)*e(1,3);
  // clang-format on
  return f;
}

Matrix4 f_block(const ComplexMatrix &u_in) {
  require_shape(u_in, 4, 4, "f");
  const Matrix4 u = u_in;
  const Matrix2 a = u.topLeftCorner<2, 2>();
  const Matrix2 b = u.topRightCorner<2, 2>();
  const Matrix2 c = u.bottomLeftCorner<2, 2>();
  const Matrix2 d = u.bottomRightCorner<2, 2>();
  return kron(a, d) + kron(b, c) * swap_operator();
}

TwoPhotonState evolve_two_photons(const ComplexMatrix &u, int i, int j) {
  require_unitary(u, kInputUnitaryTol, "evolve_two_photons");
  const int n = static_cast<int>(u.rows());
  if (n < 4 || n > kMaxSimulatedModes) {
    throw Error(
        ErrorCode::InvalidArgument,
        "simulator supports 4.." + std::to_string(kMaxSimulatedModes) +
            " modes, got " + std::to_string(n));
  }
  if (i == j || i < 0 || j < 0 || i >= n || j >= n) {
    throw Error(
        ErrorCode::InvalidPair, "input modes (" + std::to_string(i) + ", " +
                                    std::to_string(j) +
                                    ") must be distinct and in range");
  }
  TwoPhotonState out(n);
  const double sqrt2 = std::sqrt(2.0);
  for (int k = 0; k < n; ++k) {
    out.set_amplitude(k, k, sqrt2 * u(k, i) * u(k, j));
    for (int l = k + 1; l < n; ++l) {
      out.set_amplitude(k, l, u(k, i) * u(l, j) + u(l, i) * u(k, j));
    }
  }
  return out;
}

PostselectedOutput postselect_computational(const TwoPhotonState &state) {
  PostselectedOutput out;
  for (int c = 0; c < 4; ++c) {
    const auto [k, l] = kComputationalPairs[c];
    out.amplitudes(c) = state.amplitude(k, l);
  }
  out.success_probability = out.amplitudes.squaredNorm();
  return out;
}

PostselectedBlock transfer_matrix(const ComplexMatrix &u) {
  require_unitary(u, kInputUnitaryTol, "transfer_matrix");
  PostselectedBlock result;
  for (int c = 0; c < 4; ++c) {
    const auto [i, j] = kComputationalPairs[c];
    const PostselectedOutput col =
        postselect_computational(evolve_two_photons(u, i, j));
    result.block.col(c) = col.amplitudes;
    result.success_probabilities[c] = col.success_probability;
  }
  const Matrix4 formula = f_entrywise(u.topLeftCorner(4, 4));
  const double gap = max_abs_diff(result.block, formula);
  if (gap > 1e-10) {
    throw Error(
        ErrorCode::NumericalFailure,
        "simulator and corner formula disagree by " + std::to_string(gap));
  }
  return result;
}

}  // namespace psgate
