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

#include <string>
#include <utility>
#include <variant>

#include "psgate/cartan.hpp"

namespace psgate {

/// The six angle combinations, in tie-break order.
enum class AngleCondition {
  AlphaMinusBeta,
  AlphaPlusBeta,
  AlphaMinusGamma,
  AlphaPlusGamma,
  BetaMinusGamma,
  BetaPlusGamma,
};

const char *to_string(AngleCondition c);

/// value is the angle combination; lattice_point is 0 or pi/2 (mod pi).
struct AngleWitness {
  AngleCondition condition = AngleCondition::AlphaMinusBeta;
  double value = 0.0;
  double lattice_point = 0.0;
};

/// w1 + s2 w2 + s3 w3 + s4 w4 = 0, signs in {-1, +1}.
struct SignWitness {
  int s2 = 1;
  int s3 = 1;
  int s4 = 1;
};

/// |w_index| = 0, index in 1..4.
struct ZeroWeightWitness {
  int index = 1;
};

using Witness = std::variant<AngleWitness, SignWitness, ZeroWeightWitness>;

/**
 * Outcome of an achievability test. The witness is always the condition
 * closest to exact satisfaction; residual is its distance from it.
 */
struct AchievabilityVerdict {
  bool achievable = false;
  Witness witness;
  double residual = 0.0;
  double tolerance = 0.0;

  std::string describe() const;
};

std::string describe(const Witness &w);

/**
 * Angle criterion: achievable iff one of alpha +- beta, alpha +- gamma,
 * beta +- gamma lies within tol of 0 or pi/2 modulo pi.
 */
AchievabilityVerdict check_triple(
    const CanonicalTriple &t, double tol = kDecisionTol);

/**
 * Weight criterion: achievable iff some |w_i| <= tol or some signed sum
 * |w1 +- w2 +- w3 +- w4| <= tol. Zero weights are examined first, then the
 * sign triples (s2, s3, s4) in lexicographic order with + before -.
 */
AchievabilityVerdict check_weights(
    const CanonicalWeights &w, double tol = kDecisionTol);

/// KAK-decomposes w and applies check_triple to its canonical triple.
std::pair<AchievabilityVerdict, CartanDecomposition> check_gate(
    const ComplexMatrix &w, double tol = kDecisionTol);

}  // namespace psgate
