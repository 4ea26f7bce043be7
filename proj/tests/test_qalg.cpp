// Copyright 2026 The qbrach Authors
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

#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qbrach/error.hpp"
#include "qbrach/qalg.hpp"

using namespace qbrach;
using namespace qbrach::qalg;

namespace {

ComplexMatrix sample4() {
  const Complex i = kI;
  return ComplexMatrix::from_rows({{2.0, 1.0 - i, 0.5 * i, 0.0},
                                   {1.0 + i, -1.0, 0.3, 0.2 - 0.1 * i},
                                   {-0.5 * i, 0.3, 0.5, i},
                                   {0.0, 0.2 + 0.1 * i, -i, 1.5}});
}

}  // namespace

TEST_SUITE("qalg") {

TEST_CASE("products agree with the naive oracle") {
  std::mt19937_64 rng(7);
  for (std::size_t n : {1u, 2u, 3u, 4u}) {
    const ComplexMatrix a = oracle::random_matrix(rng, n);
    const ComplexMatrix b = oracle::random_matrix(rng, n);
    CHECK(oracle::dist(a * b, oracle::mul(a, b)) < 1e-13);
    CHECK(oracle::dist(commutator(a, b),
                       oracle::add(oracle::mul(a, b), oracle::mul(b, a), -1.0)) < 1e-13);
    CHECK(oracle::dist(anticommutator(a, b),
                       oracle::add(oracle::mul(a, b), oracle::mul(b, a))) < 1e-13);
    CHECK(std::abs(trace_of_product(a, b) - oracle::mul(a, b).trace()) < 1e-13);
    CHECK(oracle::dist(a.adjoint(), oracle::dagger(a)) == 0.0);
  }
}

TEST_CASE("tensor product and partial trace") {
  std::mt19937_64 rng(11);
  const ComplexMatrix a = oracle::random_matrix(rng, 2);
  const ComplexMatrix b = oracle::random_matrix(rng, 3);
  const ComplexMatrix ab = tensor_product(a, b);
  CHECK(oracle::dist(ab, oracle::kron(a, b)) == 0.0);
  CHECK(oracle::dist(partial_trace(ab, 2, 3, Subsystem::kA), b.trace() * a) < 1e-13);
  CHECK(oracle::dist(partial_trace(ab, 2, 3, Subsystem::kB), a.trace() * b) < 1e-13);
  CHECK_THROWS_AS(partial_trace(ab, 2, 2, Subsystem::kA), DimensionError);
}

TEST_CASE("dimension mismatch is rejected") {
  CHECK_THROWS_AS(ComplexMatrix(2) * ComplexMatrix(3), DimensionError);
  CHECK_THROWS_AS(ComplexMatrix(2) + ComplexMatrix(3), DimensionError);
}

TEST_CASE("traceless part and defects") {
  std::mt19937_64 rng(3);
  const ComplexMatrix a = oracle::random_matrix(rng, 4);
  CHECK(std::abs(traceless_part(a).trace()) < 1e-14);
  const ComplexMatrix h = oracle::random_hermitian(rng, 4);
  CHECK(hermiticity_defect(h) < 1e-15);
  CHECK(is_hermitian(h));
  CHECK_FALSE(is_hermitian(a));
}

TEST_CASE("Pauli algebra") {
  CHECK(oracle::dist(pauli(0) * pauli(1), kI * pauli(2)) == 0.0);
  CHECK(oracle::dist(pauli(1) * pauli(2), kI * pauli(0)) == 0.0);
  CHECK(oracle::dist(pauli(2) * pauli(0), kI * pauli(1)) == 0.0);
  for (int k = 0; k < 3; ++k) CHECK(oracle::dist(pauli(k), oracle::sigma(k)) == 0.0);
}

TEST_CASE("Hermitian eigendecomposition") {
  // Reference eigenvalues from LAPACK (numpy.linalg.eigvalsh).
  const ComplexMatrix a = sample4();
  const HermitianEig e = hermitian_eig(a);
  const double expected[] = {2.670964678693627, 2.075974007987228, -0.06403058227774416,
                             -1.682908104403111};
  for (int k = 0; k < 4; ++k) CHECK(e.eigenvalues[k] == doctest::Approx(expected[k]).epsilon(1e-13));

  ComplexMatrix d(4);
  for (int k = 0; k < 4; ++k) d(k, k) = e.eigenvalues[k];
  CHECK(oracle::dist(e.eigenvectors * d * e.eigenvectors.adjoint(), a) < 1e-13);
  CHECK(unitarity_defect(e.eigenvectors) < 1e-13);

  const HermitianEig again = hermitian_eig(a);
  CHECK(oracle::dist(again.eigenvectors, e.eigenvectors) == 0.0);
}

TEST_CASE("eigendecomposition edge cases") {
  const HermitianEig id = hermitian_eig(ComplexMatrix::identity(3));
  for (double v : id.eigenvalues) CHECK(v == 1.0);
  CHECK(unitarity_defect(id.eigenvectors) == 0.0);

  ComplexMatrix deg(3);
  deg(0, 0) = 1.0;
  deg(1, 1) = 2.0;
  deg(2, 2) = 1.0;
  const HermitianEig e = hermitian_eig(deg);
  CHECK(e.eigenvalues[0] == 2.0);
  CHECK(e.eigenvalues[1] == 1.0);
  CHECK(e.eigenvalues[2] == 1.0);

  ComplexMatrix one(1);
  one(0, 0) = -3.5;
  CHECK(hermitian_eig(one).eigenvalues[0] == -3.5);

  std::mt19937_64 rng(5);
  CHECK_THROWS_AS(hermitian_eig(oracle::random_matrix(rng, 3)), ValidationError);
}

TEST_CASE("random eigenproblems reconstruct") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const ComplexMatrix h = oracle::random_hermitian(rng, n);
    const HermitianEig e = hermitian_eig(h);
    ComplexMatrix d(n);
    for (std::size_t k = 0; k < n; ++k) {
      d(k, k) = e.eigenvalues[k];
      if (k > 0) CHECK(e.eigenvalues[k - 1] >= e.eigenvalues[k]);
    }
    CHECK(oracle::dist(e.eigenvectors * d * e.eigenvectors.adjoint(), h) < 1e-12);
  }
}

TEST_CASE("unitary exponential") {
  const ComplexMatrix a = sample4();
  const ComplexMatrix u = matrix_exp_i(a, 0.7);
  // Reference entries from scipy.linalg.expm.
  CHECK(std::abs(u(0, 0) - Complex(-0.15557178706560348, -0.6900710457820215)) < 1e-13);
  CHECK(std::abs(u(1, 3) - Complex(-0.06272682524151474, -0.17704454645605067)) < 1e-13);
  CHECK(std::abs(u(2, 1) - Complex(0.17525072471004055, -0.13206881816298557)) < 1e-13);
  CHECK(unitarity_defect(u) < 1e-13);
  CHECK(oracle::dist(matrix_exp_i(a, 0.0), ComplexMatrix::identity(4)) < 1e-14);

  std::mt19937_64 rng(23);
  for (std::size_t n : {2u, 4u, 8u}) {
    const ComplexMatrix h = oracle::random_hermitian(rng, n);
    CHECK(oracle::dist(matrix_exp_i(h, 1.3), oracle::expm_i(h, 1.3)) < 1e-11);
  }
}

}  // TEST_SUITE
