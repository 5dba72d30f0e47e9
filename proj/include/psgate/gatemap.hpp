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
#include <map>
#include <utility>

#include "psgate/linalg.hpp"

namespace psgate {

/// Unordered mode pair stored as (k, l) with k <= l.
using ModePair = std::pair<int, int>;

/// The largest mode count the two-photon simulator accepts.
inline constexpr int kMaxSimulatedModes = 16;

/**
 * Mode pairs spanning the computational subspace, in logical order
 * |00>, |01>, |10>, |11>. Qubit one lives in modes 0/1, qubit two in 2/3.
 */
inline constexpr std::array<ModePair, 4> kComputationalPairs{
    {{0, 2}, {0, 3}, {1, 2}, {1, 3}}};

/**
 * Pure state of two indistinguishable photons over n modes.
 *
 * Amplitudes are keyed by unordered mode pairs; {k, k} is the doubly
 * occupied mode and carries the bosonic normalisation, so the sum of
 * squared moduli is the state norm.
 */
class TwoPhotonState {
 public:
  explicit TwoPhotonState(int n_modes);

  int n_modes() const { return n_modes_; }
  Complex amplitude(int k, int l) const;
  void set_amplitude(int k, int l, Complex value);
  const std::map<ModePair, Complex> &amplitudes() const { return amps_; }
  double norm_squared() const;

 private:
  ModePair key(int k, int l) const;

  int n_modes_;
  std::map<ModePair, Complex> amps_;
};

struct PostselectedOutput {
  Vector4 amplitudes;
  double success_probability = 0.0;
};

/**
 * Action of a mode unitary on the computational subspace.
 *
 * Column c of `block` is the post-selected output for logical input c;
 * success_probabilities[c] is its squared norm.
 */
struct PostselectedBlock {
  Matrix4 block;
  std::array<double, 4> success_probabilities{};
};

/**
 * The induced computational-subspace operator of a 4x4 corner, written out
 * entry by entry: f(u)[(k,l),(i,j)] = u_ki u_lj + u_li u_kj.
 */
Matrix4 f_entrywise(const ComplexMatrix &u);

/// Same map via the block identity f(u) = A (x) D + (B (x) C) S.
Matrix4 f_block(const ComplexMatrix &u);

/**
 * Evolves a_i^dagger a_j^dagger |vacuum> under the mode unitary u.
 *
 * Requires 4 <= N <= kMaxSimulatedModes, u unitary within 1e-8 and
 * 0 <= i < j < N (the pair is reordered if given as j, i).
 */
TwoPhotonState evolve_two_photons(const ComplexMatrix &u, int i, int j);

/// Projects onto the computational subspace, returning the four amplitudes.
PostselectedOutput postselect_computational(const TwoPhotonState &state);

/**
 * Runs the simulator on all four computational inputs and assembles the
 * post-selected block. Cross-checks it against f of the 4x4 corner and
 * throws NumericalFailure if the two routes disagree by more than 1e-10.
 */
PostselectedBlock transfer_matrix(const ComplexMatrix &u);

}  // namespace psgate
