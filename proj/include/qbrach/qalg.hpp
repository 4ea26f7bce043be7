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

// Dense complex linear algebra for small Hilbert spaces.
//
// Matrices are square, row-major, and store std::complex<double>, which the
// standard lays out as interleaved (re, im) pairs. Everything here is a pure
// function of its inputs.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qbrach::qalg {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// Inputs further than this from Hermitian (relative Frobenius) are rejected.
inline constexpr double kHermitianTol = 1e-10;

/// Largest dimension the dense routines are meant for.
inline constexpr std::size_t kMaxDenseDim = 32;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  /// Zero matrix of the given dimension.
  explicit ComplexMatrix(std::size_t dim);

  /// Takes ownership of `entries` (row-major, length dim*dim).
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<Complex>> rows);

  std::size_t dim() const { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) {
    return data_[row * dim_ + col];
  }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  std::span<const Complex> entries() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix conjugate() const;
  Complex trace() const;
  double frobenius_norm() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex scale);

/// AB - BA.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
/// AB + BA.
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product; the first factor indexes the most significant digit.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Subsystem { kA, kB };

/// Reduced matrix of `keep` for M acting on C^dim_a (x) C^dim_b.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_a,
                            std::size_t dim_b, Subsystem keep);

/// Tr(A B) without forming the product.
Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// A - (Tr A / N) I.
ComplexMatrix traceless_part(const ComplexMatrix& a);

/// ||A - A^dagger||_F.
double hermiticity_defect(const ComplexMatrix& a);

/// True when ||A - A^dagger||_F <= tol * max(1, ||A||_F).
bool is_hermitian(const ComplexMatrix& a, double tol = kHermitianTol);

/// ||U^dagger U - I||_F.
double unitarity_defect(const ComplexMatrix& u);

struct HermitianEig {
  /// Descending.
  std::vector<double> eigenvalues;
  /// Column k is the eigenvector of eigenvalues[k].
  ComplexMatrix eigenvectors;
  /// ||A - (A + A^dagger)/2||_F, the correction applied before diagonalizing.
  double symmetrization_correction = 0.0;
  int sweeps = 0;
};

/// Cyclic complex Jacobi diagonalization with a fixed (row, column) sweep
/// order, so results are bit-reproducible for identical inputs.
/// Throws ValidationError for inputs that are not Hermitian within
/// kHermitianTol.
HermitianEig hermitian_eig(const ComplexMatrix& a);

/// exp(-i H t) through the eigendecomposition of H.
ComplexMatrix matrix_exp_i(const ComplexMatrix& h, double t);

/// Pauli matrices; index 0, 1, 2 -> x, y, z. Basis order {|up>, |down>}.
const ComplexMatrix& pauli(int index);

}  // namespace qbrach::qalg
