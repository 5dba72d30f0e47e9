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
#include "psgate/linalg.hpp"

namespace psgate {
namespace {

using Catch::Matchers::WithinAbs;

TEST_CASE("kron of identities and Paulis", "[linalg]") {
  CHECK(max_abs_diff(kron(pauli::identity(), pauli::identity()), Matrix4::Identity()) == 0.0);

  Matrix4 anti = Matrix4::Zero();
  for (int k = 0; k < 4; ++k) anti(k, 3 - k) = 1.0;
  CHECK(max_abs_diff(kron(pauli::x(), pauli::x()), anti) == 0.0);

  // X (x) Z written out by hand: rows |00>,|01>,|10>,|11>.
  Matrix4 xz;
  xz << 0, 0, 1, 0,
        0, 0, 0, -1,
        1, 0, 0, 0,
        0, -1, 0, 0;
  CHECK(max_abs_diff(kron(pauli::x(), pauli::z()), xz) == 0.0);
}

TEST_CASE("kron is bilinear", "[linalg]") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    const Matrix2 a = random_complex_matrix(2, 2, rng);
    const Matrix2 a2 = random_complex_matrix(2, 2, rng);
    const Matrix2 b = random_complex_matrix(2, 2, rng);
    const Complex c(0.3, -1.7);
    CHECK(max_abs_diff(kron(Matrix2(a + a2), b), kron(a, b) + kron(a2, b)) < 1e-12);
    CHECK(max_abs_diff(kron(Matrix2(c * a), b), c * kron(a, b)) < 1e-12);
  }
}

TEST_CASE("dynamic kron rejects non-2x2 operands", "[linalg]") {
  const ComplexMatrix a = ComplexMatrix::Identity(3, 3);
  const ComplexMatrix b = ComplexMatrix::Identity(2, 2);
  CHECK_THROWS_AS(kron(a, b), Error);
}

TEST_CASE("singular values", "[linalg]") {
  const auto id = singular_values(Matrix4::Identity());
  REQUIRE(id.size() == 4);
  for (double s : id) CHECK_THAT(s, WithinAbs(1.0, 1e-15));

  Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
  d(0, 0) = 1.0;
  d(1, 1) = 2.0;
  const auto sd = singular_values(d);
  CHECK_THAT(sd[0], WithinAbs(2.0, 1e-15));
  CHECK_THAT(sd[1], WithinAbs(1.0, 1e-15));

  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const ComplexMatrix u = haar_unitary(4, rng);
    for (double s : singular_values(u)) CHECK_THAT(s, WithinAbs(1.0, 1e-12));
  }
}

TEST_CASE("singular values of m and m^dagger agree", "[linalg]") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 100; ++t) {
    const ComplexMatrix m = random_complex_matrix(5, 5, rng);
    const auto a = singular_values(m);
    const auto b = singular_values(m.adjoint());
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK_THAT(a[k], WithinAbs(b[k], 1e-12 * a[0]));
    }
    for (std::size_t k = 1; k < a.size(); ++k) CHECK(a[k - 1] >= a[k]);
  }
}

TEST_CASE("psd_sqrt", "[linalg]") {
  CHECK(max_abs_diff(psd_sqrt(Matrix4::Identity()), Matrix4::Identity()) < 1e-15);

  Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
  d(0, 0) = 4.0;
  d(1, 1) = 9.0;
  Eigen::Matrix2cd d_root = Eigen::Matrix2cd::Zero();
  d_root(0, 0) = 2.0;
  d_root(1, 1) = 3.0;
  CHECK(max_abs_diff(psd_sqrt(d), d_root) < 1e-14);

  // Eigenvalues 3 and 1 with eigenvectors (1, +-1)/sqrt2.
  Eigen::Matrix2cd m;
  m << 2, 1, 1, 2;
  const double r3 = std::sqrt(3.0);
  Eigen::Matrix2cd expected;
  expected << (r3 + 1) / 2, (r3 - 1) / 2, (r3 - 1) / 2, (r3 + 1) / 2;
  CHECK(max_abs_diff(psd_sqrt(m), expected) < 1e-14);
  CHECK(max_abs_diff(oracle::sqrt_2x2(m), expected) < 1e-14);

  Eigen::Matrix2cd neg;
  neg << 1, 0, 0, -1;
  CHECK_THROWS_AS(psd_sqrt(neg), Error);
}

TEST_CASE("psd_sqrt inverts squaring of PSD matrices", "[linalg]") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    const ComplexMatrix g = random_complex_matrix(4, 4, rng);
    const ComplexMatrix r = g * g.adjoint();
    CHECK(max_abs_diff(psd_sqrt(r * r), r) < 1e-9);
  }
  for (int t = 0; t < 20; ++t) {
    const Eigen::Matrix2cd g = random_complex_matrix(2, 2, rng);
    const Eigen::Matrix2cd r = g * g.adjoint();
    CHECK(max_abs_diff(psd_sqrt(r), oracle::sqrt_2x2(r)) < 1e-12);
  }
}

TEST_CASE("is_unitary", "[linalg]") {
  CHECK(is_unitary(Matrix4::Identity(), 1e-12));
  CHECK_FALSE(is_unitary(ComplexMatrix(2.0 * Matrix4::Identity()), 1e-12));
  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    const ComplexMatrix p = haar_unitary(4, rng) * haar_unitary(4, rng);
    CHECK(is_unitary(p, 1e-10));
  }
  CHECK_THROWS_AS(is_unitary(ComplexMatrix::Identity(2, 3), 1e-12), Error);
}

TEST_CASE("input validation helpers", "[linalg]") {
  ComplexMatrix m = Matrix4::Identity();
  m(1, 2) = Complex(std::nan(""), 0.0);
  CHECK_FALSE(is_finite(m));
  CHECK_THROWS_AS(require_finite(m, "m"), Error);
  CHECK_THROWS_AS(max_abs_diff(Matrix4::Identity(), ComplexMatrix::Identity(3, 3)), Error);
  try {
    require_unitary(ComplexMatrix(2.0 * Matrix4::Identity()), 1e-8, "m");
    FAIL("expected NonUnitary");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::NonUnitary);
  }
}

TEST_CASE("random contractions have the requested norm", "[linalg]") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    const ComplexMatrix c = random_contraction(4, 0.7, rng);
    CHECK_THAT(largest_singular_value(c), WithinAbs(0.7, 1e-12));
  }
}

}  // namespace
}  // namespace psgate
