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

#include "qbrach/qalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "qbrach/error.hpp"

namespace qbrach::qalg {
namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b,
                      const char* what) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" +
                         std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()) + ")");
  }
}

double offdiagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (i != j) sum += std::norm(a(i, j));
    }
  }
  return std::sqrt(sum);
}

// One complex Jacobi rotation zeroing a(p, q); accumulates into v.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double b = std::abs(apq);
  if (b == 0.0) return;
  const Complex phase = std::conj(apq) / b;  // e^{-i arg a_pq}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double zeta = (aqq - app) / (2.0 * b);
  const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  // G = diag(1, phase) * [[c, s], [-s, c]] acting on columns p, q.
  const Complex gpp = c;
  const Complex gpq = s;
  const Complex gqp = -s * phase;
  const Complex gqq = c * phase;

  const std::size_t n = a.dim();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * gpp + akq * gqp;
    a(k, q) = akp * gpq + akq * gqq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * gpp + vkq * gqp;
    v(k, q) = vkp * gpq + vkq * gqq;
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), data_(std::move(entries)) {
  if (data_.size() != dim_ * dim_) {
    throw DimensionError("ComplexMatrix: expected " +
                         std::to_string(dim_ * dim_) + " entries, got " +
                         std::to_string(data_.size()));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t dim = rows.size();
  std::vector<Complex> entries;
  entries.reserve(dim * dim);
  for (const auto& row : rows) {
    if (row.size() != dim) {
      throw DimensionError("ComplexMatrix::from_rows: ragged rows");
    }
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return ComplexMatrix(dim, std::move(entries));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  }
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out(*this);
  for (auto& x : out.data_) x = std::conj(x);
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex sum = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) sum += (*this)(i, i);
  return sum;
}

double ComplexMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (const auto& x : data_) sum += std::norm(x);
  return std::sqrt(sum);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& x : data_) x *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
  lhs += rhs;
  return lhs;
}

ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
  lhs -= rhs;
  return lhs;
}

ComplexMatrix operator-(ComplexMatrix m) {
  m *= -1.0;
  return m;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  require_same_dim(lhs, rhs, "operator*");
  const std::size_t n = lhs.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex lik = lhs(i, k);
      if (lik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += lik * rhs(k, j);
    }
  }
  return out;
}

ComplexMatrix operator*(Complex scale, ComplexMatrix m) {
  m *= scale;
  return m;
}

ComplexMatrix operator*(ComplexMatrix m, Complex scale) {
  m *= scale;
  return m;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "anticommutator");
  return a * b + b * a;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  ComplexMatrix out(na * nb);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < na; ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < nb; ++k) {
        for (std::size_t l = 0; l < nb; ++l) {
          out(i * nb + k, j * nb + l) = aij * b(k, l);
        }
      }
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_a,
                            std::size_t dim_b, Subsystem keep) {
  if (dim_a == 0 || dim_b == 0 || dim_a * dim_b != m.dim()) {
    throw DimensionError("partial_trace: " + std::to_string(dim_a) + " x " +
                         std::to_string(dim_b) +
                         " does not factor dimension " +
                         std::to_string(m.dim()));
  }
  if (keep == Subsystem::kA) {
    ComplexMatrix out(dim_a);
    for (std::size_t i = 0; i < dim_a; ++i) {
      for (std::size_t j = 0; j < dim_a; ++j) {
        Complex sum = 0.0;
        for (std::size_t k = 0; k < dim_b; ++k) {
          sum += m(i * dim_b + k, j * dim_b + k);
        }
        out(i, j) = sum;
      }
    }
    return out;
  }
  ComplexMatrix out(dim_b);
  for (std::size_t i = 0; i < dim_b; ++i) {
    for (std::size_t j = 0; j < dim_b; ++j) {
      Complex sum = 0.0;
      for (std::size_t k = 0; k < dim_a; ++k) {
        sum += m(k * dim_b + i, k * dim_b + j);
      }
      out(i, j) = sum;
    }
  }
  return out;
}

Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "trace_of_product");
  Complex sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t k = 0; k < a.dim(); ++k) sum += a(i, k) * b(k, i);
  }
  return sum;
}

ComplexMatrix traceless_part(const ComplexMatrix& a) {
  ComplexMatrix out(a);
  if (a.dim() == 0) return out;
  const Complex shift = a.trace() / static_cast<double>(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out(i, i) -= shift;
  return out;
}

double hermiticity_defect(const ComplexMatrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      sum += std::norm(a(i, j) - std::conj(a(j, i)));
    }
  }
  return std::sqrt(sum);
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  return hermiticity_defect(a) <= tol * std::max(1.0, a.frobenius_norm());
}

double unitarity_defect(const ComplexMatrix& u) {
  return (u.adjoint() * u - ComplexMatrix::identity(u.dim())).frobenius_norm();
}

HermitianEig hermitian_eig(const ComplexMatrix& input) {
  if (!is_hermitian(input)) {
    throw ValidationError("hermitian_eig: input is not Hermitian (defect " +
                          describe(hermiticity_defect(input)) + ")");
  }
  const std::size_t n = input.dim();
  ComplexMatrix a = 0.5 * (input + input.adjoint());
  HermitianEig result;
  result.symmetrization_correction = (input - a).frobenius_norm();

  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = a.frobenius_norm();
  constexpr int kMaxSweeps = 64;
  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    const double off = offdiagonal_norm(a);
    if (off == 0.0 || off <= 1e-17 * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
    }
  }
  result.sweeps = sweep;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&a](std::size_t i, std::size_t j) {
                     return a(i, i).real() > a(j, j).real();
                   });
  result.eigenvalues.resize(n);
  result.eigenvectors = ComplexMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    result.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) {
      result.eigenvectors(i, k) = v(i, order[k]);
    }
  }
  return result;
}

ComplexMatrix matrix_exp_i(const ComplexMatrix& h, double t) {
  const HermitianEig eig = hermitian_eig(h);
  const std::size_t n = h.dim();
  const ComplexMatrix& v = eig.eigenvectors;
  ComplexMatrix out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex phase = std::exp(-kI * (eig.eigenvalues[k] * t));
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = v(i, k) * phase;
      if (vik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(v(j, k));
    }
  }
  return out;
}

const ComplexMatrix& pauli(int index) {
  static const std::array<ComplexMatrix, 3> kPauli = {
      ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}),
      ComplexMatrix::from_rows({{0.0, -kI}, {kI, 0.0}}),
      ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}),
  };
  if (index < 0 || index > 2) {
    throw ValidationError("pauli: index must be 0, 1 or 2");
  }
  return kPauli[static_cast<std::size_t>(index)];
}

}  // namespace qbrach::qalg
