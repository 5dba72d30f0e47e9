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

#include "psgate/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "psgate/error.hpp"
#include "psgate/gatemap.hpp"
#include "psgate/probability.hpp"

namespace psgate {

namespace {

bool any_weight_within(const CanonicalWeights &w, double tol) {
  for (const Complex &x : w.as_array())
    if (std::abs(x) <= tol) return true;
  return false;
}

CanonicalWeights snap_zeros(const CanonicalWeights &w, double tol) {
  auto snap = [tol](Complex x) { return std::abs(x) <= tol ? Complex{} : x; };
  return {snap(w.w1), snap(w.w2), snap(w.w3), snap(w.w4)};
}

CanonicalTriple snap_to_condition(
    const CanonicalTriple &t, const AngleWitness &witness) {
  const double h = (witness.value - witness.lattice_point) / 2.0;
  CanonicalTriple s = t;
  switch (witness.condition) {
    case AngleCondition::AlphaMinusBeta:
      s.alpha -= h;
      s.beta += h;
      break;
    case AngleCondition::AlphaPlusBeta:
      s.alpha -= h;
      s.beta -= h;
      break;
    case AngleCondition::AlphaMinusGamma:
      s.alpha -= h;
      s.gamma += h;
      break;
    case AngleCondition::AlphaPlusGamma:
      s.alpha -= h;
      s.gamma -= h;
      break;
    case AngleCondition::BetaMinusGamma:
      s.beta -= h;
      s.gamma += h;
      break;
    case AngleCondition::BetaPlusGamma:
      s.beta -= h;
      s.gamma -= h;
      break;
  }
  return s;
}

/// Base solution of the reduced four-equation system (u30 = u32 = 1).
struct ZeroBase {
  Complex u10, u12, u21, u23;
};

ZeroBase zero_base(const CanonicalWeights &r, int root, double tol) {
  const Complex w2 = r.w2, w3 = r.w3, w4 = r.w4;
  if (std::abs(w4) <= tol) {
    throw Error(
        ErrorCode::NumericalFailure, "reduced weights have w1 = w4 = 0");
  }
  if (std::abs(w2) <= tol) {
    const Complex u10 = w3 * w3 / w4;
    return {u10, w4 - u10, Complex{}, w4 / w3};
  }
  if (std::abs(w3) <= tol) {
    const Complex u12 = w2 * w2 / w4;
    return {w4 - u12, u12, w4 / w2, Complex{}};
  }
  const auto roots = zero_case_roots(r);
  const Complex u10 = roots[root < 0 ? 0 : root];
  const Complex u12 = w4 - u10;
  return {u10, u12, w2 / u12, w3 / u10};
}

}  // namespace

std::string SignBranch::label() const {
  std::string s;
  for (int b : {b1, b2, b3, b4}) s += b > 0 ? '+' : '-';
  return s;
}

SignBranch SignBranch::parse(const std::string &text) {
  std::vector<int> signs;
  std::string token;
  auto flush = [&]() {
    if (token.empty()) return;
    if (token == "+1" || token == "1" || token == "+") {
      signs.push_back(1);
    } else if (token == "-1" || token == "-") {
      signs.push_back(-1);
    } else {
      throw Error(ErrorCode::ParseError, "bad branch sign '" + token + "'");
    }
    token.clear();
  };
  const bool compact = text.find(',') == std::string::npos;
  for (char c : text) {
    if (c == ',' || c == ' ') {
      flush();
    } else if (compact && (c == '+' || c == '-')) {
      token = c;
      flush();
    } else {
      token += c;
    }
  }
  flush();
  if (signs.size() != 4) {
    throw Error(
        ErrorCode::ParseError,
        "branch needs four signs (b1,b2,b3,b4), got '" + text + "'");
  }
  return {signs[0], signs[1], signs[2], signs[3]};
}

double branch_residual(const CanonicalWeights &w, const SignBranch &b) {
  return std::abs(
      double(b.b2) * w.w2 -
      (double(b.b1 * b.b4) * w.w3 - double(b.b4) * w.w4 + w.w1));
}

std::vector<SignBranch> valid_branches(const CanonicalWeights &w, double tol) {
  if (any_weight_within(w, tol)) {
    throw Error(
        ErrorCode::ZeroWeight, "a weight vanishes; use the zero-case path");
  }
  std::vector<SignBranch> out;
  static constexpr int kSigns[2] = {1, -1};
  for (int b1 : kSigns)
    for (int b2 : kSigns)
      for (int b4 : kSigns) {
        SignBranch b{b1, b2, 1, b4};
        if (branch_residual(w, b) <= tol) {
          out.push_back(b);
          b.b3 = -1;
          out.push_back(b);
        }
      }
  return out;
}

SolutionPoint nonzero_point(
    const CanonicalWeights &w, const SignBranch &br, Complex u23,
    Complex u30) {
  const Complex w1 = w.w1, w2 = w.w2, w3 = w.w3, w4 = w.w4;
  SolutionPoint s;
  s.kind = SolutionKind::NonZero;
  s.branch = br;
  s.u23 = u23;
  s.u30 = u30;

  const Complex u31 = double(br.b3) * std::sqrt(w1) * std::sqrt(w3) /
                      (std::sqrt(w2) * std::sqrt(w4)) * u30;
  const Complex lambda = (w2 / u30) / (1.0 - double(br.b4) * w1 / w4);
  const Complex mu = double(br.b1) * lambda * u31 / u30;
  const Complex a = -lambda * w1 / (mu * w4);
  const Complex u33 = a * u23;
  const Complex u32 = double(br.b1) * u23;
  const Complex u22 = double(br.b2) * a * u23;
  const Complex u21 = (u31 - w1 / mu) / a;
  const Complex u20 = (u30 - w2 / lambda) / a;

  Matrix4 &u = s.submatrix;
  u(0, 0) = -lambda * u20 / u23;
  u(0, 1) = -lambda * u31 / u33;
  u(0, 2) = lambda * u20 * u32 / (u23 * u30);
  u(0, 3) = lambda;
  u(1, 0) = -mu * u30 / u33;
  u(1, 1) = -mu * u21 / u23;
  u(1, 2) = mu * u22 * u30 / (u20 * u33);
  u(1, 3) = mu;
  u.row(2) << u20, u21, u22, u23;
  u.row(3) << u30, u31, u32, u33;

  s.a = a;
  s.lambda = lambda;
  s.mu = mu;
  return s;
}

SolutionPoint solve_nonzero(
    const CanonicalWeights &w, const SignBranch &branch, Complex u23,
    Complex u30, double tol) {
  if (any_weight_within(w, tol)) {
    throw Error(
        ErrorCode::DegenerateInput,
        "a weight vanishes; the non-zero construction does not apply");
  }
  if (std::abs(u23) == 0.0 || std::abs(u30) == 0.0 ||
      !std::isfinite(std::abs(u23)) || !std::isfinite(std::abs(u30))) {
    throw Error(
        ErrorCode::InvalidArgument, "u23 and u30 must be finite and non-zero");
  }
  const double br = branch_residual(w, branch);
  if (br > tol) {
    throw Error(
        ErrorCode::InvalidBranch, "branch " + branch.label() +
                                      " violates the sign constraint by " +
                                      std::to_string(br));
  }
  SolutionPoint s = nonzero_point(w, branch, u23, u30);
  if (!is_finite(s.submatrix)) {
    throw Error(ErrorCode::NumericalFailure, "non-finite solution entry");
  }
  const double res = max_abs_diff(f_entrywise(s.submatrix), canonical_matrix(w));
  if (res > 1e-9) {
    throw Error(
        ErrorCode::NumericalFailure,
        "f(u) misses W by " + std::to_string(res));
  }
  if (min_entry_modulus(s.submatrix) == 0.0) {
    throw Error(ErrorCode::NumericalFailure, "solution has a zero entry");
  }
  return s;
}

KernelMatrices kernel_matrices(const SolutionPoint &s) {
  const Matrix4 &u = s.submatrix;
  KernelMatrices k;
  // clang-format off
  k.m1 << u(3,2), 0,      u(3,0), 0,
          u(2,3), 0,      0,      u(2,0),
          0,      u(2,2), u(2,1), 0,
          0,      u(3,3), 0,      u(3,1);
  k.m2 << u(2,2), 0,      u(2,0), 0,
          u(3,3), 0,      0,      u(3,0),
          0,      u(3,2), u(3,1), 0,
          0,      u(2,3), 0,      u(2,1);
  // clang-format on
  return k;
}

double min_entry_modulus(const Matrix4 &u) { return u.cwiseAbs().minCoeff(); }

Matrix4 LocalTransform::apply(const Matrix4 &u) const {
  return conjugate_submatrix(u, v1, v2, v3, v4);
}

Matrix4 LocalTransform::apply_to_gate(const Matrix4 &m) const {
  return kron(v1, v2) * m * kron(v3, v4);
}

WeightReduction reduce_to_w1_zero(
    const CanonicalWeights &w, double tol, int zero_index) {
  const auto ws = w.as_array();
  if (zero_index == 0) {
    zero_index = 1;
    for (int i = 2; i <= 4; ++i)
      if (std::abs(ws[i - 1]) < std::abs(ws[zero_index - 1])) zero_index = i;
  }
  if (zero_index < 1 || zero_index > 4) {
    throw Error(ErrorCode::InvalidArgument, "zero index must be 0..4");
  }
  if (std::abs(ws[zero_index - 1]) > tol) {
    throw Error(
        ErrorCode::NotZeroCase,
        "|w" + std::to_string(zero_index) + "| = " +
            std::to_string(std::abs(ws[zero_index - 1])) + " exceeds tol");
  }
  const Matrix2 x = pauli::x();
  const Matrix2 id = Matrix2::Identity();
  WeightReduction r;
  r.zero_index = zero_index;
  switch (zero_index) {
    case 1:
      r.reduced = w;
      break;
    case 2:  // (X (x) I) W (X (x) I)
      r.reduced = {w.w2, w.w1, w.w4, w.w3};
      r.back = {x, id, x, id};
      break;
    case 3:  // (X (x) I) W (I (x) X)
      r.reduced = {w.w3, w.w4, w.w1, w.w2};
      r.back = {x, id, id, x};
      break;
    case 4:  // W (X (x) X)
      r.reduced = {w.w4, w.w3, w.w2, w.w1};
      r.back = {id, id, x, x};
      break;
  }
  return r;
}

std::array<Complex, 2> zero_case_roots(const CanonicalWeights &r) {
  const Complex qa = r.w4;
  const Complex qb = r.w2 * r.w2 - r.w3 * r.w3 - r.w4 * r.w4;
  const Complex qc = r.w3 * r.w3 * r.w4;
  const Complex disc = std::sqrt(qb * qb - 4.0 * qa * qc);
  const Complex q = std::real(std::conj(qb) * disc) >= 0.0
                        ? -0.5 * (qb + disc)
                        : -0.5 * (qb - disc);
  std::array<Complex, 2> roots{q / qa, qc / q};
  const double scale = std::max(std::abs(roots[0]), std::abs(roots[1]));
  auto first = [scale](Complex x, Complex y) {
    if (std::abs(std::abs(x) - std::abs(y)) > 1e-12 * scale)
      return std::abs(x) > std::abs(y);
    return std::arg(x) <= std::arg(y);
  };
  if (!first(roots[0], roots[1])) std::swap(roots[0], roots[1]);
  return roots;
}

int zero_case_root_count(const CanonicalWeights &r, double tol) {
  if (std::abs(r.w2) <= tol || std::abs(r.w3) <= tol) return 1;
  const auto roots = zero_case_roots(r);
  return std::abs(roots[0] - roots[1]) <= 1e-12 * std::abs(roots[0]) ? 1 : 2;
}

bool has_shortcut(const CanonicalWeights &w, double tol) {
  const bool identity_like = std::abs(w.w3) <= tol && std::abs(w.w4) <= tol &&
                             std::abs(w.w1 - w.w2) <= tol;
  const bool swap_like = std::abs(w.w2) <= tol && std::abs(w.w4) <= tol &&
                         std::abs(w.w1 - w.w3) <= tol;
  return identity_like || swap_like;
}

SolutionPoint solve_zero(
    const CanonicalWeights &w_in, const ZeroCaseParams &params, double tol) {
  if (!any_weight_within(w_in, tol)) {
    throw Error(ErrorCode::NotZeroCase, "no weight is within tol of zero");
  }
  const CanonicalWeights w = snap_zeros(w_in, tol);
  SolutionPoint s;
  s.zero = params;

  if (params.prefer_shortcut && has_shortcut(w, tol)) {
    s.kind = SolutionKind::Shortcut;
    const Complex c = std::sqrt(w.w1);
    if (std::abs(w.w3) <= tol) {
      s.submatrix = c * Matrix4::Identity();
    } else {
      s.submatrix.setZero();
      s.submatrix.topRightCorner<2, 2>() = c * Matrix2::Identity();
      s.submatrix.bottomLeftCorner<2, 2>() = c * Matrix2::Identity();
    }
  } else {
    if (std::abs(params.u30) == 0.0 || std::abs(params.u32) == 0.0) {
      throw Error(ErrorCode::InvalidArgument, "u30 and u32 must be non-zero");
    }
    const WeightReduction red = reduce_to_w1_zero(w, tol, params.zero_index);
    const CanonicalWeights &r = red.reduced;
    const int n_roots = zero_case_root_count(r, tol);
    if (params.root >= n_roots) {
      throw Error(
          ErrorCode::InvalidArgument,
          "root index " + std::to_string(params.root) + " out of range");
    }
    const ZeroBase base = zero_base(r, params.root, tol);
    const Complex s30 = params.u30, t32 = params.u32;
    Matrix4 u = Matrix4::Zero();
    u(3, 0) = s30;
    u(3, 2) = t32;
    u(0, 1) = r.w3 / t32;
    u(0, 3) = r.w2 / s30;
    u(1, 0) = base.u10 / t32;
    u(1, 2) = base.u12 / s30;
    u(2, 3) = base.u23 * t32;
    u(2, 1) = base.u21 * s30;
    s.kind = SolutionKind::ZeroCase;
    s.zero.zero_index = red.zero_index;
    s.submatrix = red.back.apply(u);
  }
  s.u23 = s.submatrix(2, 3);
  s.u30 = s.submatrix(3, 0);

  const double res =
      max_abs_diff(f_entrywise(s.submatrix), canonical_matrix(w_in));
  if (!(res <= std::max(1e-9, 4.0 * tol))) {
    throw Error(
        ErrorCode::NumericalFailure,
        "zero-case solution misses W by " + std::to_string(res));
  }
  return s;
}

CanonicalTarget canonical_target(const ComplexMatrix &w, double tol) {
  CanonicalTarget t;
  auto [verdict, kak] = check_gate(w, tol);
  t.kak = kak;
  t.verdict = verdict;
  if (!verdict.achievable) {
    throw Error(ErrorCode::NotAchievable, verdict.describe());
  }
  t.snapped = snap_to_condition(
      kak.triple, std::get<AngleWitness>(verdict.witness));
  t.weights = weights_from_triple(t.snapped);
  t.zero_case = any_weight_within(t.weights, tol);
  return t;
}

Matrix4 transport_to_gate(
    const Matrix4 &canonical_submatrix, const CartanDecomposition &kak) {
  return std::sqrt(kak.global_phase) *
         conjugate_submatrix(
             canonical_submatrix, kak.v1, kak.v2, kak.v3, kak.v4);
}

GateSolution solve_gate(const ComplexMatrix &w, const SolveOptions &opts) {
  require_shape(w, 4, 4, "solve_gate");
  GateSolution g;
  g.target = canonical_target(w, opts.tol);
  const CanonicalWeights &cw = g.target.weights;
  if (g.target.zero_case) {
    g.point = solve_zero(cw, opts.zero, opts.tol);
  } else {
    SignBranch branch;
    if (opts.branch) {
      branch = *opts.branch;
    } else {
      const auto branches = valid_branches(cw, opts.tol);
      if (branches.empty()) {
        throw Error(
            ErrorCode::NumericalFailure,
            "snapped weights admit no sign branch");
      }
      branch = branches.front();
    }
    g.point = solve_nonzero(cw, branch, opts.u23, opts.u30, opts.tol);
  }
  g.unscaled = transport_to_gate(g.point.submatrix, g.target.kak);
  g.f_residual = max_abs_diff(f_entrywise(g.unscaled), w);
  const double accept = 1e-8 + 4.0 * g.target.verdict.residual;
  if (!(g.f_residual <= accept)) {
    throw Error(
        ErrorCode::NumericalFailure,
        "transported solution misses the gate by " +
            std::to_string(g.f_residual));
  }
  g.s1 = largest_singular_value(g.unscaled);
  g.p = success_probability(g.unscaled);
  g.submatrix = g.unscaled / std::max(1.0, g.s1);
  return g;
}

}  // namespace psgate
