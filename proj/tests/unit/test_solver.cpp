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

#include <algorithm>

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "psgate/error.hpp"
#include "psgate/gatemap.hpp"
#include "psgate/probability.hpp"
#include "psgate/solver.hpp"

namespace psgate {
namespace {

using Catch::Matchers::WithinAbs;

constexpr double kQuarter = kPi / 4;

const CanonicalWeights kCnotWeights{
    Complex(std::sqrt(0.5)), Complex(std::sqrt(0.5)), Complex(0, std::sqrt(0.5)),
    Complex(0, std::sqrt(0.5))};

Matrix4 cnot_matrix() {
  Matrix4 m = Matrix4::Zero();
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  return m;
}

Complex random_nonzero(std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> mag(-1.0, 1.0);
  std::uniform_real_distribution<double> ph(-kPi, kPi);
  return std::polar(std::pow(10.0, mag(rng)), ph(rng));
}

/// Achievable triple with every weight of modulus >= 1e-2.
CanonicalTriple random_nonzero_case(std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> d(0.0, kPi);
  std::uniform_int_distribution<int> cond(0, 5);
  std::bernoulli_distribution half;
  while (true) {
    CanonicalTriple t{d(rng), d(rng), d(rng)};
    const double q = half(rng) ? kPi / 2 : 0.0;
    switch (cond(rng)) {
      case 0: t.beta = t.alpha - q; break;
      case 1: t.beta = q - t.alpha; break;
      case 2: t.gamma = t.alpha - q; break;
      case 3: t.gamma = q - t.alpha; break;
      case 4: t.gamma = t.beta - q; break;
      default: t.gamma = q - t.beta; break;
    }
    const auto ws = weights_from_triple(t).as_array();
    if (std::all_of(ws.begin(), ws.end(), [](Complex w) { return std::abs(w) >= 1e-2; }))
      return t;
  }
}

Vector4 row_vector(const Matrix4 &u, int r) { return u.row(r).transpose(); }

void check_kernel_identities(const SolutionPoint &s, const CanonicalWeights &w, double tol) {
  const KernelMatrices k = kernel_matrices(s);
  const Vector4 r0 = row_vector(s.submatrix, 0);
  const Vector4 r1 = row_vector(s.submatrix, 1);
  const double scale = std::max(1.0, s.submatrix.cwiseAbs().maxCoeff());
  CHECK(std::abs(k.m1.determinant()) < tol * std::pow(scale, 4));
  CHECK(std::abs(k.m2.determinant()) < tol * std::pow(scale, 4));
  CHECK((k.m1 * r0).norm() < tol * scale * scale);
  CHECK((k.m2 * r1).norm() < tol * scale * scale);
  CHECK((k.m2 * r0 - Vector4(w.w1, w.w2, w.w3, w.w4)).norm() < tol * scale * scale);
  CHECK((k.m1 * r1 - Vector4(w.w4, w.w3, w.w2, w.w1)).norm() < tol * scale * scale);
}

TEST_CASE("sign branch labels", "[solver]") {
  const SignBranch b{1, -1, 1, -1};
  CHECK(b.label() == "+-+-");
  CHECK(SignBranch::parse("+-+-") == b);
  CHECK_THROWS_AS(SignBranch::parse("+-+"), Error);
  CHECK_THROWS_AS(SignBranch::parse("+-x-"), Error);
}

TEST_CASE("valid branches for CNOT weights", "[solver]") {
  const auto branches = valid_branches(kCnotWeights);
  // b2 w2 = w1 and b1 b4 w3 = b4 w4 hold for b1 = b2 = +1 and either b4.
  REQUIRE(branches.size() == 4);
  CHECK(branches[0] == SignBranch{1, 1, 1, 1});
  CHECK(branches[1] == SignBranch{1, 1, -1, 1});
  CHECK(branches[2] == SignBranch{1, 1, 1, -1});
  CHECK(branches[3] == SignBranch{1, 1, -1, -1});
  for (const SignBranch &b : branches) CHECK(branch_residual(kCnotWeights, b) < 1e-15);
}

TEST_CASE("valid branches of special weight families", "[solver]") {
  CHECK(valid_branches(weights_from_triple({0.3, 0.5, 0.7})).empty());
  CHECK_THROWS_AS(valid_branches(CanonicalWeights{1.0, 1.0, 0.0, 0.0}), Error);

  // w1 = w2 + w3 + w4: the constraint holds for b2 = b4 = +1 and b1 = -1.
  std::mt19937_64 rng(51);
  for (int t = 0; t < 20; ++t) {
    const Complex w2 = random_nonzero(rng), w3 = random_nonzero(rng), w4 = random_nonzero(rng);
    const CanonicalWeights w{w2 + w3 + w4, w2, w3, w4};
    const auto branches = valid_branches(w, 1e-9);
    REQUIRE(branches.size() == 2);
    CHECK(branches[0] == SignBranch{-1, 1, 1, 1});
    CHECK(branches[1] == SignBranch{-1, 1, -1, 1});
  }
}

TEST_CASE("non-zero solutions for CNOT weights", "[solver]") {
  const Matrix4 target = canonical_matrix(kCnotWeights);
  for (int b3 : {1, -1}) {
    const SolutionPoint s = solve_nonzero(kCnotWeights, {1, 1, b3, 1}, 1.0, 1.0);
    CHECK(max_abs_diff(f_entrywise(s.submatrix), target) < 1e-10);
    CHECK(min_entry_modulus(s.submatrix) > 0.0);
    check_kernel_identities(s, kCnotWeights, 1e-10);
  }
  const SolutionPoint a = solve_nonzero(kCnotWeights, {1, 1, 1, 1}, 1.0, 1.0);
  const SolutionPoint b =
      solve_nonzero(kCnotWeights, {1, 1, 1, 1}, Complex(2, 1), Complex(0, -0.3));
  CHECK(max_abs_diff(a.submatrix, b.submatrix) > 0.1);
  CHECK(max_abs_diff(f_entrywise(b.submatrix), target) < 1e-10);
  CHECK(b.submatrix(2, 3) == Complex(2, 1));
  CHECK(b.submatrix(3, 0) == Complex(0, -0.3));
}

TEST_CASE("frozen CNOT point at u23 = u30 = 1", "[solver]") {
  // Largest singular value sqrt(6), so p = 1/36 for this particular point.
  const SolutionPoint s = solve_nonzero(kCnotWeights, {1, 1, 1, 1}, 1.0, 1.0);
  CHECK_THAT(largest_singular_value(s.submatrix), WithinAbs(std::sqrt(6.0), 1e-12));
  CHECK_THAT(success_probability(s.submatrix), WithinAbs(1.0 / 36.0, 1e-14));
}

TEST_CASE("solve_nonzero preconditions", "[solver]") {
  auto code_of = [](auto fn) {
    try {
      fn();
    } catch (const Error &e) {
      return e.code();
    }
    return ErrorCode::ParseError;
  };
  CHECK(code_of([] { solve_nonzero({1.0, 1.0, 0.0, 0.0}, {}, 1.0, 1.0); }) ==
        ErrorCode::DegenerateInput);
  CHECK(code_of([] { solve_nonzero(kCnotWeights, {-1, 1, 1, 1}, 1.0, 1.0); }) ==
        ErrorCode::InvalidBranch);
  CHECK(code_of([] { solve_nonzero(kCnotWeights, {1, 1, 1, 1}, 0.0, 1.0); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("the non-zero family solves every valid branch", "[solver]") {
  std::mt19937_64 rng(52);
  int solved = 0;
  for (int t = 0; t < 100; ++t) {
    const CanonicalWeights w = weights_from_triple(random_nonzero_case(rng));
    const Matrix4 target = canonical_matrix(w);
    const auto branches = valid_branches(w, 1e-9);
    REQUIRE_FALSE(branches.empty());
    for (const SignBranch &b : branches) {
      for (int k = 0; k < 10; ++k) {
        const SolutionPoint s = solve_nonzero(w, b, random_nonzero(rng), random_nonzero(rng), 1e-9);
        const double scale = std::max(1.0, std::pow(s.submatrix.cwiseAbs().maxCoeff(), 2));
        CHECK(max_abs_diff(f_entrywise(s.submatrix), target) < 1e-9 * scale);
        CHECK(min_entry_modulus(s.submatrix) > 0.0);
        check_kernel_identities(s, w, 1e-9);
        ++solved;
      }
    }
  }
  CHECK(solved >= 2000);
}

TEST_CASE("zero case with w1 = 0 solves the quadratic", "[solver]") {
  const CanonicalWeights w = weights_from_triple({3 * kPi / 8, -kPi / 8, 0});
  CHECK(std::abs(w.w1) < 1e-15);
  // i x^2 + 2 x - i/2 = 0 has roots i (1 +- sqrt2/2).
  const auto roots = zero_case_roots(w);
  CHECK(std::abs(roots[0] - Complex(0, 1 + std::sqrt(0.5))) < 1e-14);
  CHECK(std::abs(roots[1] - Complex(0, 1 - std::sqrt(0.5))) < 1e-14);
  for (const Complex &x : roots) {
    CHECK(std::abs(kI * x * x + 2.0 * x - 0.5 * kI) < 1e-14);
  }
  CHECK(zero_case_root_count(w, 1e-9) == 2);
  for (int root : {0, 1}) {
    ZeroCaseParams p;
    p.root = root;
    const SolutionPoint s = solve_zero(w, p);
    CHECK(s.kind == SolutionKind::ZeroCase);
    CHECK(max_abs_diff(f_entrywise(s.submatrix), canonical_matrix(w)) < 1e-10);
  }
}

TEST_CASE("zero case with two vanishing weights", "[solver]") {
  // w1 = w2 = 0 at alpha = pi/2, beta = 0.
  const CanonicalWeights w = weights_from_triple({kPi / 2, 0, 0.3});
  CHECK(std::abs(w.w1) < 1e-15);
  CHECK(std::abs(w.w2) < 1e-15);
  const SolutionPoint s = solve_zero(w);
  CHECK(max_abs_diff(f_entrywise(s.submatrix), canonical_matrix(w)) < 1e-10);
  CHECK(std::abs(s.submatrix(2, 1)) < 1e-15);
  CHECK(std::abs(s.submatrix(1, 0) - w.w3 * w.w3 / w.w4) < 1e-14);
}

TEST_CASE("zero case for the identity", "[solver]") {
  const CanonicalWeights id{1.0, 1.0, 0.0, 0.0};
  const SolutionPoint shortcut = solve_zero(id);
  CHECK(shortcut.kind == SolutionKind::Shortcut);
  CHECK(max_abs_diff(shortcut.submatrix, Matrix4::Identity()) < 1e-15);

  ZeroCaseParams p;
  p.prefer_shortcut = false;
  const SolutionPoint reduced = solve_zero(id, p);
  CHECK(reduced.kind == SolutionKind::ZeroCase);
  CHECK(max_abs_diff(f_entrywise(reduced.submatrix), Matrix4::Identity()) < 1e-10);

  CHECK(has_shortcut(weights_from_triple({kQuarter, kQuarter, kQuarter})));
  CHECK_FALSE(has_shortcut(weights_from_triple({kQuarter, kQuarter, 0})));
  CHECK_THROWS_AS(solve_zero(kCnotWeights), Error);
}

TEST_CASE("moving a zero weight into position one", "[solver]") {
  const CanonicalWeights iswap{1.0, 0.0, kI, 0.0};
  const WeightReduction r = reduce_to_w1_zero(iswap);
  CHECK(r.zero_index == 2);
  CHECK(std::abs(r.reduced.w1) == 0.0);
  CHECK(max_abs_diff(r.back.apply_to_gate(canonical_matrix(r.reduced)), canonical_matrix(iswap)) < 1e-15);

  const CanonicalWeights w1zero = weights_from_triple({3 * kPi / 8, -kPi / 8, 0});
  const WeightReduction same = reduce_to_w1_zero(w1zero, 1e-9, 1);
  CHECK(max_abs_diff(canonical_matrix(same.reduced), canonical_matrix(w1zero)) == 0.0);
  for (const Matrix2 *v : {&same.back.v1, &same.back.v2, &same.back.v3, &same.back.v4}) {
    CHECK(max_abs_diff(*v, Matrix2::Identity()) == 0.0);
  }
  CHECK_THROWS_AS(reduce_to_w1_zero(kCnotWeights), Error);

  std::mt19937_64 rng(53);
  for (int idx = 1; idx <= 4; ++idx) {
    for (int t = 0; t < 50; ++t) {
      CanonicalWeights w{random_nonzero(rng), random_nonzero(rng), random_nonzero(rng), random_nonzero(rng)};
      switch (idx) {
        case 1: w.w1 = 0.0; break;
        case 2: w.w2 = 0.0; break;
        case 3: w.w3 = 0.0; break;
        default: w.w4 = 0.0; break;
      }
      const WeightReduction red = reduce_to_w1_zero(w, 1e-12, idx);
      CHECK(std::abs(red.reduced.w1) == 0.0);
      CHECK(max_abs_diff(red.back.apply_to_gate(canonical_matrix(red.reduced)), canonical_matrix(w)) < 1e-14);
    }
  }
}

TEST_CASE("zero-case solutions over every orientation", "[solver]") {
  // Triples with a weight exactly zero: alpha - beta = pi/2 (w1), alpha + beta
  // = pi/2 (w2), alpha + beta = 0 (w3), alpha - beta = 0 (w4).
  std::mt19937_64 rng(54);
  std::uniform_real_distribution<double> d(-kPi, kPi);
  std::uniform_real_distribution<double> re(-2.0, 2.0);
  for (int idx = 1; idx <= 4; ++idx) {
    for (int t = 0; t < 50; ++t) {
      CanonicalTriple tr{d(rng), 0.0, d(rng)};
      switch (idx) {
        case 1: tr.beta = tr.alpha - kPi / 2; break;
        case 2: tr.beta = kPi / 2 - tr.alpha; break;
        case 3: tr.beta = -tr.alpha; break;
        default: tr.beta = tr.alpha; break;
      }
      const CanonicalWeights w = weights_from_triple(tr);
      REQUIRE(std::abs(w[idx]) < 1e-14);
      const WeightReduction red = reduce_to_w1_zero(w, 1e-9, idx);
      for (int root = 0; root < zero_case_root_count(red.reduced, 1e-9); ++root) {
        ZeroCaseParams p;
        p.zero_index = idx;
        p.root = root;
        p.prefer_shortcut = false;
        p.u30 = Complex(re(rng), re(rng));
        p.u32 = Complex(re(rng), re(rng));
        const SolutionPoint s = solve_zero(w, p, 1e-9);
        const double scale = std::max(1.0, std::pow(s.submatrix.cwiseAbs().maxCoeff(), 2));
        CHECK(max_abs_diff(f_entrywise(s.submatrix), canonical_matrix(w)) < 1e-9 * scale);
      }
    }
  }
}

TEST_CASE("gate-level solutions", "[solver]") {
  const GateSolution id = solve_gate(Matrix4::Identity());
  CHECK_THAT(id.p, WithinAbs(1.0, 1e-12));
  CHECK(std::abs(std::abs(id.unscaled.determinant()) - 1.0) < 1e-12);
  CHECK(max_abs_diff(f_entrywise(id.unscaled), Matrix4::Identity()) < 1e-12);

  const GateSolution cnot = solve_gate(cnot_matrix());
  CHECK(cnot.f_residual < 1e-9);
  CHECK(largest_singular_value(cnot.submatrix) <= 1.0 + 1e-10);
  CHECK(max_abs_diff(f_entrywise(cnot.submatrix), std::sqrt(cnot.p) * cnot_matrix()) < 1e-9);

  try {
    solve_gate(canonical_matrix(CanonicalTriple{0.3, 0.5, 0.7}));
    FAIL("expected NotAchievable");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::NotAchievable);
  }
  CHECK_THROWS_AS(solve_gate(ComplexMatrix(2.0 * Matrix4::Identity())), Error);
}

TEST_CASE("gate-level solutions for dressed achievable gates", "[solver]") {
  std::mt19937_64 rng(55);
  for (int t = 0; t < 200; ++t) {
    const CanonicalTriple tr = random_nonzero_case(rng);
    const Matrix4 w = kron(oracle::random_local(rng), oracle::random_local(rng)) *
                      canonical_matrix(tr) *
                      kron(oracle::random_local(rng), oracle::random_local(rng));
    SolveOptions opts;
    opts.u23 = random_nonzero(rng);
    opts.u30 = random_nonzero(rng);
    const GateSolution g = solve_gate(w, opts);
    CHECK(max_abs_diff(f_entrywise(g.unscaled), w) < 1e-8);
    CHECK(largest_singular_value(g.submatrix) <= 1.0 + 1e-10);
  }
}

TEST_CASE("iSWAP and SWAP go through the zero case", "[solver]") {
  Matrix4 iswap = Matrix4::Identity();
  iswap(1, 1) = iswap(2, 2) = 0.0;
  iswap(1, 2) = iswap(2, 1) = kI;
  const GateSolution a = solve_gate(iswap);
  CHECK(a.point.kind == SolutionKind::ZeroCase);
  CHECK(a.f_residual < 1e-9);

  const GateSolution s = solve_gate(swap_operator());
  CHECK(s.point.kind == SolutionKind::Shortcut);
  CHECK(s.f_residual < 1e-9);
  CHECK_THAT(s.p, WithinAbs(1.0, 1e-12));
}

/// Minimises |f(u) - W|^2 over all 4x4 u by Gauss-Newton with damping.
double best_least_squares(const Matrix4 &target, std::mt19937_64 &rng, int starts) {
  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < starts; ++s) {
    Matrix4 u = random_complex_matrix(4, 4, rng);
    double lambda = 1e-3;
    auto cost = [&](const Matrix4 &x) { return (f_entrywise(x) - target).squaredNorm(); };
    double c = cost(u);
    for (int it = 0; it < 300 && c > 1e-14; ++it) {
      // Jacobian over the 32 real coordinates; central differences are
      // exact for a quadratic map up to roundoff.
      Eigen::Matrix<double, 32, 32> jac;
      Eigen::Matrix<double, 32, 1> r;
      const Matrix4 f0 = f_entrywise(u) - target;
      for (int k = 0; k < 16; ++k) {
        r(2 * k) = f0(k / 4, k % 4).real();
        r(2 * k + 1) = f0(k / 4, k % 4).imag();
      }
      for (int p = 0; p < 32; ++p) {
        const Complex step = (p % 2 == 0) ? Complex(1e-4, 0) : Complex(0, 1e-4);
        Matrix4 up = u, dn = u;
        up(p / 8, (p / 2) % 4) += step;
        dn(p / 8, (p / 2) % 4) -= step;
        const Matrix4 df = (f_entrywise(up) - f_entrywise(dn)) / 2e-4;
        for (int k = 0; k < 16; ++k) {
          jac(2 * k, p) = df(k / 4, k % 4).real();
          jac(2 * k + 1, p) = df(k / 4, k % 4).imag();
        }
      }
      const Eigen::Matrix<double, 32, 32> jtj = jac.transpose() * jac;
      const Eigen::Matrix<double, 32, 1> g = jac.transpose() * r;
      bool improved = false;
      for (int tries = 0; tries < 20 && !improved; ++tries) {
        Eigen::Matrix<double, 32, 32> a = jtj;
        a.diagonal().array() += lambda * (1.0 + jtj.diagonal().array());
        const Eigen::Matrix<double, 32, 1> dx = a.ldlt().solve(-g);
        Matrix4 trial = u;
        for (int p = 0; p < 32; ++p) {
          trial(p / 8, (p / 2) % 4) += (p % 2 == 0) ? Complex(dx(p), 0) : Complex(0, dx(p));
        }
        const double ct = cost(trial);
        if (ct < c) {
          u = trial;
          c = ct;
          lambda = std::max(lambda / 3, 1e-12);
          improved = true;
        } else {
          lambda *= 4;
        }
      }
      if (!improved) break;
    }
    best = std::min(best, c);
  }
  return best;
}

TEST_CASE("least squares cannot reach non-achievable targets", "[solver][slow]") {
  std::mt19937_64 rng(56);
  std::uniform_real_distribution<double> d(0.0, kPi);
  int checked = 0;
  while (checked < 200) {
    const CanonicalTriple tr{d(rng), d(rng), d(rng)};
    if (check_triple(tr, 1e-2).achievable) continue;
    const CanonicalWeights w = weights_from_triple(tr);
    CHECK(valid_branches(w, 1e-6).empty());
    CHECK(best_least_squares(canonical_matrix(w), rng, 50) >= 1e-6);
    ++checked;
  }
  // The same search does reach achievable targets.
  CHECK(best_least_squares(canonical_matrix(kCnotWeights), rng, 5) < 1e-10);
}

}  // namespace
}  // namespace psgate
