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

#include <vector>

#include "psgate/linalg.hpp"

namespace psgate {

enum class ElementKind { BeamSplitter, PhaseShifter };

/**
 * One optical element acting on modes (mode_a, mode_b) or mode_a alone.
 *
 * Beam splitter on modes a < b, angles (theta, phi):
 *
 *   [ cos(theta)              sin(theta)             ]
 *   [ e^{i phi} sin(theta)   -e^{i phi} cos(theta)   ]
 *
 * so theta = pi/4, phi = 0 is the symmetric 50:50 splitter
 * (1/sqrt2)[[1, 1], [1, -1]]. A phase shifter multiplies mode_a by
 * e^{i phi}; its theta is ignored and mode_b is -1.
 */
struct OpticalElement {
  ElementKind kind = ElementKind::BeamSplitter;
  int mode_a = 0;
  int mode_b = 1;
  double theta = 0.0;
  double phi = 0.0;

  static OpticalElement beam_splitter(int a, int b, double theta, double phi);
  static OpticalElement phase_shifter(int mode, double phi);
};

/// Elements listed in the order light passes through them.
struct OpticalNetwork {
  int n_modes = 0;
  std::vector<OpticalElement> elements;

  int beam_splitter_count() const;
};

/// Mode count of every dilation produced here.
inline constexpr int kDilationModes = 8;

Matrix2 beam_splitter_matrix(double theta, double phi);

/**
 * Embeds a 4x4 contraction as the top-left corner of an 8x8 unitary
 *
 *   [ u                 sqrt(I - u u^dag) ]
 *   [ sqrt(I - u^dag u)  -u^dag           ]
 *
 * Both defect roots come from one SVD of u so they intertwine exactly;
 * defects with 1 - s^2 <= 1e-14 are set to zero.
 * If 1 < s1(u) <= 1 + tol, u is first divided by s1. Throws NotContraction
 * for s1(u) > 1 + tol.
 */
ComplexMatrix dilate(const ComplexMatrix &u, double tol = kAlgebraicTol);

/**
 * Triangular (Reck) decomposition of an N x N unitary, N <= 16, into at most
 * N(N-1)/2 beam splitters on adjacent modes plus at most N phase shifters.
 * Elements within 1e-15 of the identity are omitted.
 */
OpticalNetwork reck_decompose(const ComplexMatrix &u);

/// Ordered product of the element embeddings. Throws MalformedNetwork.
ComplexMatrix network_to_unitary(const OpticalNetwork &net);

void validate_network(const OpticalNetwork &net);

}  // namespace psgate
