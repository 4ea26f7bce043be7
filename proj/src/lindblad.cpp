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

#include "qbrach/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qbrach/error.hpp"

namespace qbrach::lindblad {
namespace {

using qalg::kI;

void require_dim(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" +
                         std::to_string(expected) + " vs " +
                         std::to_string(got) + ")");
  }
}

void require_lindblad_dims(const HamiltonianOp& h, const LindbladSet& l,
                           const char* what) {
  for (const auto& op : l.ops()) require_dim(h.dim(), op.dim(), what);
}

double min_eigenvalue_of(const ComplexMatrix& m) {
  const auto eig = qalg::hermitian_eig(m);
  return eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.back();
}

}  // namespace

DensityOperator::DensityOperator(ComplexMatrix matrix)
    : matrix_(std::move(matrix)) {
  if (matrix_.dim() == 0) throw ValidationError("DensityOperator: empty matrix");
  if (qalg::hermiticity_defect(matrix_) > kStateTol) {
    throw ValidationError("DensityOperator: matrix is not Hermitian");
  }
  const Complex tr = matrix_.trace();
  if (std::abs(tr - 1.0) > kStateTol) {
    throw ValidationError("DensityOperator: trace " + describe(tr.real()) +
                          " differs from 1");
  }
  const double lowest = min_eigenvalue_of(matrix_);
  if (lowest < -kPositivityTol) {
    throw ValidationError("DensityOperator: negative eigenvalue " +
                          describe(lowest));
  }
}

double DensityOperator::purity() const {
  return qalg::trace_of_product(matrix_, matrix_).real();
}

double DensityOperator::min_eigenvalue() const {
  return min_eigenvalue_of(matrix_);
}

HamiltonianOp::HamiltonianOp(ComplexMatrix matrix, double omega)
    : matrix_(std::move(matrix)), omega_(omega) {
  if (!qalg::is_hermitian(matrix_)) {
    throw ValidationError("HamiltonianOp: matrix is not Hermitian");
  }
  if (!(omega_ >= 0.0) || !std::isfinite(omega_)) {
    throw ValidationError("HamiltonianOp: omega must be finite and >= 0");
  }
}

bool HamiltonianOp::is_traceless(double tol) const {
  return std::abs(matrix_.trace()) <= tol * std::max(1.0, matrix_.frobenius_norm());
}

double HamiltonianOp::normalization_defect() const {
  const double n = static_cast<double>(dim());
  return std::abs(qalg::trace_of_product(matrix_, matrix_).real() -
                  n * omega_ * omega_);
}

LindbladSet::LindbladSet(std::vector<ComplexMatrix> ops) : ops_(std::move(ops)) {
  gammas_.reserve(ops_.size());
  for (const auto& op : ops_) {
    require_dim(ops_.front().dim(), op.dim(), "LindbladSet");
    const double n = static_cast<double>(op.dim());
    gammas_.push_back(std::sqrt(op.frobenius_norm() * op.frobenius_norm() / n));
  }
}

ComplexMatrix LindbladSet::gram() const {
  ComplexMatrix g(ops_.size());
  for (std::size_t a = 0; a < ops_.size(); ++a) {
    const ComplexMatrix adj = ops_[a].adjoint();
    for (std::size_t b = 0; b < ops_.size(); ++b) {
      g(a, b) = qalg::trace_of_product(adj, ops_[b]);
    }
  }
  return g;
}

double LindbladSet::canonical_defect() const {
  double worst = 0.0;
  for (const auto& op : ops_) worst = std::max(worst, std::abs(op.trace()));
  const ComplexMatrix g = gram();
  for (std::size_t a = 0; a < ops_.size(); ++a) {
    const double n = static_cast<double>(ops_[a].dim());
    for (std::size_t b = 0; b < ops_.size(); ++b) {
      const double target = a == b ? n * gammas_[a] * gammas_[a] : 0.0;
      worst = std::max(worst, std::abs(g(a, b) - target));
    }
  }
  return worst;
}

CostateOperator::CostateOperator(ComplexMatrix matrix)
    : matrix_(std::move(matrix)) {
  if (!qalg::is_hermitian(matrix_)) {
    throw ValidationError("CostateOperator: matrix is not Hermitian");
  }
  if (std::abs(matrix_.trace()) >
      kStateTol * std::max(1.0, matrix_.frobenius_norm())) {
    throw ValidationError("CostateOperator: matrix is not traceless");
  }
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const HamiltonianOp& h,
                           const LindbladSet& l) {
  require_dim(h.dim(), rho.dim(), "lindblad_rhs");
  require_lindblad_dims(h, l, "lindblad_rhs");
  ComplexMatrix out = -kI * qalg::commutator(h.matrix(), rho);
  for (const auto& op : l.ops()) {
    const ComplexMatrix adj = op.adjoint();
    out += op * rho * adj;
    out -= 0.5 * qalg::anticommutator(adj * op, rho);
  }
  return out;
}

ComplexMatrix lindblad_rhs(const DensityOperator& rho, const HamiltonianOp& h,
                           const LindbladSet& l) {
  return lindblad_rhs(rho.matrix(), h, l);
}

ComplexMatrix adjoint_generator(const ComplexMatrix& a, const HamiltonianOp& h,
                                const LindbladSet& l) {
  require_dim(h.dim(), a.dim(), "adjoint_generator");
  require_lindblad_dims(h, l, "adjoint_generator");
  ComplexMatrix out = kI * qalg::commutator(h.matrix(), a);
  for (const auto& op : l.ops()) {
    const ComplexMatrix adj = op.adjoint();
    out += adj * a * op;
    out -= 0.5 * qalg::anticommutator(adj * op, a);
  }
  return out;
}

ComplexMatrix adjoint_rhs(const CostateOperator& a, const HamiltonianOp& h,
                          const LindbladSet& l) {
  return -qalg::traceless_part(adjoint_generator(a.matrix(), h, l));
}

GaugedPair gauge_apply(const HamiltonianOp& h, const LindbladSet& l,
                       const GaugeTransform& g) {
  require_lindblad_dims(h, l, "gauge_apply");
  const std::size_t n = h.dim();
  const std::size_t count = l.size();
  if (!g.betas.empty() && g.betas.size() != count) {
    throw ValidationError("gauge_apply: expected " + std::to_string(count) +
                          " betas, got " + std::to_string(g.betas.size()));
  }
  const bool mixes = g.mixing.dim() != 0;
  if (mixes) {
    require_dim(count, g.mixing.dim(), "gauge_apply mixing");
    if (qalg::unitarity_defect(g.mixing) > 1e-12 * std::max(1.0, static_cast<double>(count))) {
      throw ValidationError("gauge_apply: mixing matrix is not unitary");
    }
  }

  ComplexMatrix hm = h.matrix();
  for (std::size_t i = 0; i < n; ++i) hm(i, i) += g.alpha;
  std::vector<ComplexMatrix> shifted = l.ops();
  if (!g.betas.empty()) {
    for (std::size_t a = 0; a < count; ++a) {
      const Complex beta = g.betas[a];
      const ComplexMatrix& la = l.ops()[a];
      // (1/2i)(beta^* L - beta L^dag)
      hm += (-0.5 * kI) * (std::conj(beta) * la - beta * la.adjoint());
      for (std::size_t i = 0; i < n; ++i) shifted[a](i, i) += beta;
    }
  }
  // Hermitian up to rounding; symmetrize so HamiltonianOp accepts it exactly.
  hm = 0.5 * (hm + hm.adjoint());

  std::vector<ComplexMatrix> mixed;
  if (mixes) {
    mixed.reserve(count);
    for (std::size_t a = 0; a < count; ++a) {
      ComplexMatrix acc(n);
      for (std::size_t b = 0; b < count; ++b) acc += g.mixing(a, b) * shifted[b];
      mixed.push_back(std::move(acc));
    }
  } else {
    mixed = std::move(shifted);
  }
  return {HamiltonianOp(std::move(hm), h.omega()), LindbladSet(std::move(mixed))};
}

GaugedPair gauge_fix(const HamiltonianOp& h, const LindbladSet& l) {
  require_lindblad_dims(h, l, "gauge_fix");
  const double n = static_cast<double>(h.dim());

  // Remove the identity components of L_a; the compensating term lands in H.
  GaugeTransform shift;
  shift.betas.reserve(l.size());
  for (const auto& op : l.ops()) shift.betas.push_back(-op.trace() / n);
  GaugedPair out = gauge_apply(h, l, shift);

  GaugeTransform retrace;
  retrace.alpha = -out.hamiltonian.matrix().trace().real() / n;
  out = gauge_apply(out.hamiltonian, out.lindblads, retrace);

  if (out.lindblads.empty()) return out;

  // Diagonalize the Gram matrix: G = W diag(g) W^dag, L'_c = sum_b W_bc L_b.
  const ComplexMatrix gram = out.lindblads.gram();
  const auto eig = qalg::hermitian_eig(gram);
  GaugeTransform orthogonalize;
  orthogonalize.mixing = ComplexMatrix(gram.dim());
  for (std::size_t c = 0; c < gram.dim(); ++c) {
    for (std::size_t b = 0; b < gram.dim(); ++b) {
      orthogonalize.mixing(c, b) = eig.eigenvectors(b, c);
    }
  }
  return gauge_apply(out.hamiltonian, out.lindblads, orthogonalize);
}

double metric_eval(const DensityOperator& rho, const ComplexMatrix& a,
                   const ComplexMatrix& b, const MonotoneMetric& m) {
  require_dim(rho.dim(), a.dim(), "metric_eval");
  require_dim(rho.dim(), b.dim(), "metric_eval");
  if (!qalg::is_hermitian(a) || !qalg::is_hermitian(b)) {
    throw ValidationError("metric_eval: arguments must be Hermitian");
  }
  const auto eig = qalg::hermitian_eig(rho.matrix());
  if (eig.eigenvalues.back() <= kFullRankThreshold) {
    throw ValidationError("metric_eval: state is rank deficient (min eigenvalue " +
                          describe(eig.eigenvalues.back()) + ")");
  }
  const ComplexMatrix& v = eig.eigenvectors;
  const ComplexMatrix vd = v.adjoint();
  const ComplexMatrix ae = vd * a * v;
  const ComplexMatrix be = vd * b * v;
  double sum = 0.0;
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    for (std::size_t j = 0; j < rho.dim(); ++j) {
      const double cij = m.c(eig.eigenvalues[i], eig.eigenvalues[j]);
      sum += (std::conj(ae(i, j)) * cij * be(i, j)).real();
    }
  }
  return sum;
}

double time_functional(const DensityOperator& rho, const ComplexMatrix& rho_dot,
                       const HamiltonianOp& h, const LindbladSet& l,
                       const MonotoneMetric& m) {
  const ComplexMatrix flow = lindblad_rhs(rho, h, l);
  const double denominator = metric_eval(rho, flow, flow, m);
  if (!(denominator > 0.0)) {
    throw ValidationError("time_functional: L(rho) vanishes");
  }
  const double numerator = metric_eval(rho, rho_dot, rho_dot, m);
  return std::sqrt(numerator / denominator);
}

KrausSet kraus_from_lindblad(const HamiltonianOp& h, const LindbladSet& l,
                             double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw ValidationError("kraus_from_lindblad: tau must be positive");
  }
  require_lindblad_dims(h, l, "kraus_from_lindblad");
  const std::size_t n = h.dim();
  ComplexMatrix w0 = ComplexMatrix::identity(n) - (kI * tau) * h.matrix();
  for (const auto& op : l.ops()) w0 -= (0.5 * tau) * (op.adjoint() * op);

  KrausSet k;
  k.tau = tau;
  k.ops.reserve(l.size() + 1);
  k.ops.push_back(std::move(w0));
  const double root = std::sqrt(tau);
  for (const auto& op : l.ops()) k.ops.push_back(Complex(root) * op);

  ComplexMatrix completeness(n);
  for (const auto& w : k.ops) completeness += w.adjoint() * w;
  k.completeness_defect =
      (completeness - ComplexMatrix::identity(n)).frobenius_norm();
  return k;
}

KrausApplication kraus_apply(const DensityOperator& rho, const KrausSet& k) {
  ComplexMatrix out(rho.dim());
  for (const auto& w : k.ops) {
    require_dim(rho.dim(), w.dim(), "kraus_apply");
    out += w * rho.matrix() * w.adjoint();
  }
  const double tr = out.trace().real();
  out *= 1.0 / tr;
  out = 0.5 * (out + out.adjoint());
  return {DensityOperator(std::move(out)), std::abs(tr - 1.0)};
}

ComplexMatrix f_operator(const ComplexMatrix& rho, const ComplexMatrix& costate) {
  return -kI * qalg::commutator(rho, costate);
}

double brachistochrone_residual(std::span<const ResidualSample> samples,
                                double dt) {
  if (samples.size() < 3) {
    throw ValidationError("brachistochrone_residual: need at least 3 samples");
  }
  if (!(dt > 0.0)) {
    throw ValidationError("brachistochrone_residual: dt must be positive");
  }
  std::vector<ComplexMatrix> f;
  f.reserve(samples.size());
  for (const auto& s : samples) f.push_back(f_operator(s.rho, s.costate));

  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < samples.size(); ++k) {
    const ComplexMatrix f_dot = (1.0 / (2.0 * dt)) * (f[k + 1] - f[k - 1]);
    const ComplexMatrix r = kI * f_dot - qalg::commutator(samples[k].hamiltonian, f[k]);
    worst = std::max(worst, r.frobenius_norm());
  }
  return worst;
}

}  // namespace qbrach::lindblad
