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

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "psgate/error.hpp"
#include "psgate/gatemap.hpp"

namespace psgate {
namespace {

using Catch::Matchers::WithinAbs;

ComplexMatrix embed_beam_splitter(int n) {
  ComplexMatrix u = ComplexMatrix::Identity(n, n);
  const double r = 1.0 / std::sqrt(2.0);
  u(0, 0) = r;
  u(0, 1) = r;
  u(1, 0) = r;
  u(1, 1) = -r;
  return u;
}

TEST_CASE("f on simple corners", "[gatemap]") {
  CHECK(max_abs_diff(f_entrywise(Matrix4::Identity()), Matrix4::Identity()) == 0.0);
  CHECK(max_abs_diff(f_entrywise(ComplexMatrix(2.0 * Matrix4::Identity())),
                     ComplexMatrix(4.0 * Matrix4::Identity())) == 0.0);

  // A = D = 0, B = C = I.
  Matrix4 u = Matrix4::Zero();
  u.topRightCorner<2, 2>().setIdentity();
  u.bottomLeftCorner<2, 2>().setIdentity();
  CHECK(max_abs_diff(f_entrywise(u), swap_operator()) == 0.0);
  CHECK(max_abs_diff(f_block(u), swap_operator()) == 0.0);
}

TEST_CASE("f_block agrees with the entrywise map", "[gatemap]") {
  CHECK(max_abs_diff(f_block(Matrix4::Identity()), Matrix4::Identity()) == 0.0);
  std::mt19937_64 rng(21);
  for (int t = 0; t < 200; ++t) {
    const Matrix4 u = random_complex_matrix(4, 4, rng);
    CHECK(max_abs_diff(f_block(u), f_entrywise(u)) < 1e-13);
  }
  // Block-diagonal corner: f = A (x) D.
  for (int t = 0; t < 20; ++t) {
    Matrix4 u = Matrix4::Zero();
    const Matrix2 a = random_complex_matrix(2, 2, rng);
    const Matrix2 d = random_complex_matrix(2, 2, rng);
    u.topLeftCorner<2, 2>() = a;
    u.bottomRightCorner<2, 2>() = d;
    CHECK(max_abs_diff(f_entrywise(u), kron(a, d)) < 1e-14);
  }
}

TEST_CASE("f is homogeneous of degree two", "[gatemap]") {
  std::mt19937_64 rng(22);
  std::normal_distribution<double> g;
  for (int t = 0; t < 100; ++t) {
    const Matrix4 u = random_complex_matrix(4, 4, rng);
    const Complex c(g(rng), g(rng));
    const Matrix4 cu = c * u;
    CHECK(max_abs_diff(f_entrywise(cu), c * c * f_entrywise(u)) < 1e-12 * (1 + std::norm(c)) * 10);
  }
}

TEST_CASE("swap relation (Q (x) P) S = S (P (x) Q)", "[gatemap]") {
  std::mt19937_64 rng(23);
  const Matrix4 s = swap_operator();
  for (int t = 0; t < 100; ++t) {
    const Matrix2 p = random_complex_matrix(2, 2, rng);
    const Matrix2 q = random_complex_matrix(2, 2, rng);
    CHECK(max_abs_diff(kron(q, p) * s, s * kron(p, q)) < 1e-14);
  }
}

TEST_CASE("two-photon evolution on permutations and identity", "[gatemap]") {
  const TwoPhotonState id = evolve_two_photons(ComplexMatrix::Identity(6, 6), 0, 2);
  CHECK_THAT(std::abs(id.amplitude(0, 2)), WithinAbs(1.0, 1e-15));
  CHECK_THAT(id.norm_squared(), WithinAbs(1.0, 1e-15));

  ComplexMatrix perm = ComplexMatrix::Identity(4, 4);
  perm(0, 0) = perm(1, 1) = 0.0;
  perm(0, 1) = perm(1, 0) = 1.0;
  const TwoPhotonState moved = evolve_two_photons(perm, 0, 2);
  CHECK_THAT(std::abs(moved.amplitude(1, 2) - 1.0), WithinAbs(0.0, 1e-15));
  CHECK_THAT(std::abs(moved.amplitude(0, 2)), WithinAbs(0.0, 1e-15));
}

TEST_CASE("Hong-Ou-Mandel bunching", "[gatemap]") {
  const TwoPhotonState st = evolve_two_photons(embed_beam_splitter(4), 0, 1);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK_THAT(std::abs(st.amplitude(0, 1)), WithinAbs(0.0, 1e-15));
  CHECK_THAT(std::abs(st.amplitude(0, 0)), WithinAbs(r, 1e-15));
  CHECK_THAT(std::abs(st.amplitude(1, 1)), WithinAbs(r, 1e-15));
  CHECK_THAT(st.norm_squared(), WithinAbs(1.0, 1e-14));

  const PostselectedOutput po = postselect_computational(st);
  CHECK(po.amplitudes.norm() < 1e-15);
  CHECK(po.success_probability < 1e-30);
}

TEST_CASE("post-selection onto the computational pairs", "[gatemap]") {
  TwoPhotonState st(4);
  st.set_amplitude(0, 2, 1.0);
  PostselectedOutput po = postselect_computational(st);
  CHECK(max_abs_diff(po.amplitudes, Vector4(1, 0, 0, 0)) == 0.0);
  CHECK(po.success_probability == 1.0);

  TwoPhotonState uniform(4);
  for (const auto &[k, l] : kComputationalPairs) uniform.set_amplitude(k, l, 0.5);
  CHECK_THAT(postselect_computational(uniform).success_probability, WithinAbs(1.0, 1e-15));
  // Stored under the sorted pair whichever order is given.
  uniform.set_amplitude(3, 1, 0.25);
  CHECK(uniform.amplitude(1, 3) == Complex(0.25, 0.0));
}

TEST_CASE("simulator matches the monomial expansion", "[gatemap]") {
  std::mt19937_64 rng(24);
  for (int n = 4; n <= 8; ++n) {
    for (int t = 0; t < 10; ++t) {
      const ComplexMatrix u = haar_unitary(n, rng);
      std::uniform_int_distribution<int> pick(0, n - 1);
      int i = pick(rng);
      int j = pick(rng);
      if (i == j) j = (i + 1) % n;
      const TwoPhotonState st = evolve_two_photons(u, i, j);
      const auto ref = oracle::two_photon_expansion(u, i, j);
      for (const auto &[key, amp] : ref) {
        CHECK(std::abs(st.amplitude(key.first, key.second) - amp) < 1e-13);
      }
      CHECK_THAT(st.norm_squared(), WithinAbs(1.0, 1e-10));
    }
  }
}

TEST_CASE("transfer matrix equals f of the corner", "[gatemap]") {
  const PostselectedBlock idb = transfer_matrix(ComplexMatrix::Identity(8, 8));
  CHECK(max_abs_diff(idb.block, Matrix4::Identity()) < 1e-15);
  for (double p : idb.success_probabilities) CHECK_THAT(p, WithinAbs(1.0, 1e-15));

  std::mt19937_64 rng(25);
  for (int n = 4; n <= 8; ++n) {
    for (int t = 0; t < 20; ++t) {
      const ComplexMatrix u = haar_unitary(n, rng);
      const PostselectedBlock b = transfer_matrix(u);
      const Matrix4 corner = u.topLeftCorner(4, 4);
      CHECK(max_abs_diff(b.block, f_entrywise(corner)) < 1e-10);
      CHECK(max_abs_diff(b.block, oracle::expansion_block(u)) < 1e-12);
      for (int c = 0; c < 4; ++c) {
        CHECK_THAT(b.success_probabilities[c], WithinAbs(b.block.col(c).squaredNorm(), 1e-14));
      }
    }
  }
}

TEST_CASE("simulator input validation", "[gatemap]") {
  CHECK_THROWS_AS(evolve_two_photons(ComplexMatrix::Identity(3, 3), 0, 1), Error);
  CHECK_THROWS_AS(evolve_two_photons(ComplexMatrix::Identity(4, 4), 1, 1), Error);
  CHECK_THROWS_AS(evolve_two_photons(ComplexMatrix::Identity(4, 4), 0, 4), Error);
  CHECK_THROWS_AS(evolve_two_photons(ComplexMatrix(2.0 * Matrix4::Identity()), 0, 1), Error);
  CHECK_THROWS_AS(TwoPhotonState(17), Error);
}

}  // namespace
}  // namespace psgate
