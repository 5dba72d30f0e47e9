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

#include "psgate/achievability.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace psgate {

namespace {

/// Nearest multiple of pi/2 and the distance to it.
std::pair<double, double> lattice_distance(double v) {
  const double step = kPi / 2;
  const double nearest = step * std::round(v / step);
  return {nearest, std::abs(v - nearest)};
}

}  // namespace

const char *to_string(AngleCondition c) {
  switch (c) {
    case AngleCondition::AlphaMinusBeta:
      return "alpha-beta";
    case AngleCondition::AlphaPlusBeta:
      return "alpha+beta";
    case AngleCondition::AlphaMinusGamma:
      return "alpha-gamma";
    case AngleCondition::AlphaPlusGamma:
      return "alpha+gamma";
    case AngleCondition::BetaMinusGamma:
      return "beta-gamma";
    case AngleCondition::BetaPlusGamma:
      return "beta+gamma";
  }
  return "?";
}

std::string describe(const Witness &w) {
  std::ostringstream os;
  if (const auto *a = std::get_if<AngleWitness>(&w)) {
    // Report the lattice point as 0 or pi/2 modulo pi.
    const double reduced = std::fmod(std::abs(a->lattice_point), kPi);
    os << to_string(a->condition) << " = "
       << (std::abs(reduced - kPi / 2) < 1e-9 ? "pi/2" : "0") << " mod pi";
  } else if (const auto *s = std::get_if<SignWitness>(&w)) {
    auto sign = [](int x) { return x > 0 ? " + " : " - "; };
    os << "w1" << sign(s->s2) << "w2" << sign(s->s3) << "w3" << sign(s->s4)
       << "w4 = 0";
  } else if (const auto *z = std::get_if<ZeroWeightWitness>(&w)) {
    os << "w" << z->index << " = 0";
  }
  return os.str();
}

std::string AchievabilityVerdict::describe() const {
  std::ostringstream os;
  os << (achievable ? "achievable" : "not achievable") << " (nearest: "
     << psgate::describe(witness) << ", residual " << residual << ")";
  return os.str();
}

AchievabilityVerdict check_triple(const CanonicalTriple &t, double tol) {
  const std::array<std::pair<AngleCondition, double>, 6> values{{
      {AngleCondition::AlphaMinusBeta, t.alpha - t.beta},
      {AngleCondition::AlphaPlusBeta, t.alpha + t.beta},
      {AngleCondition::AlphaMinusGamma, t.alpha - t.gamma},
      {AngleCondition::AlphaPlusGamma, t.alpha + t.gamma},
      {AngleCondition::BetaMinusGamma, t.beta - t.gamma},
      {AngleCondition::BetaPlusGamma, t.beta + t.gamma},
  }};
  AchievabilityVerdict v;
  v.tolerance = tol;
  v.residual = std::numeric_limits<double>::infinity();
  for (const auto &[cond, value] : values) {
    const auto [nearest, dist] = lattice_distance(value);
    if (dist < v.residual) {
      v.residual = dist;
      v.witness = AngleWitness{cond, value, nearest};
    }
  }
  v.achievable = v.residual <= tol;
  return v;
}

AchievabilityVerdict check_weights(const CanonicalWeights &w, double tol) {
  AchievabilityVerdict v;
  v.tolerance = tol;
  v.residual = std::numeric_limits<double>::infinity();
  const auto ws = w.as_array();
  for (int i = 0; i < 4; ++i) {
    const double m = std::abs(ws[i]);
    if (m < v.residual) {
      v.residual = m;
      v.witness = ZeroWeightWitness{i + 1};
    }
  }
  static constexpr int kSigns[2] = {1, -1};
  for (int s2 : kSigns)
    for (int s3 : kSigns)
      for (int s4 : kSigns) {
        const double m = std::abs(
            ws[0] + double(s2) * ws[1] + double(s3) * ws[2] +
            double(s4) * ws[3]);
        if (m < v.residual) {
          v.residual = m;
          v.witness = SignWitness{s2, s3, s4};
        }
      }
  v.achievable = v.residual <= tol;
  return v;
}

std::pair<AchievabilityVerdict, CartanDecomposition> check_gate(
    const ComplexMatrix &w, double tol) {
  CartanDecomposition d = kak_decompose(w);
  return {check_triple(d.triple, tol), d};
}

}  // namespace psgate
