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

// Markovian master equation in Lindblad form, its adjoint, the gauge freedom
// of (H, L_a), the SLD monotone metric, and the short-time Kraus map.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qbrach/qalg.hpp"

namespace qbrach::lindblad {

using qalg::Complex;
using qalg::ComplexMatrix;

/// Tolerance on Hermiticity and unit trace of states.
inline constexpr double kStateTol = 1e-10;
/// Most negative eigenvalue a state may carry.
inline constexpr double kPositivityTol = 1e-9;
/// Metric evaluation needs every eigenvalue of rho above this.
inline constexpr double kFullRankThreshold = 1e-8;

/// Hermitian, positive semidefinite, unit-trace matrix.
class DensityOperator {
 public:
  /// Throws ValidationError when the invariants do not hold.
  explicit DensityOperator(ComplexMatrix matrix);

  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return matrix_.dim(); }
  double purity() const;
  double min_eigenvalue() const;

 private:
  ComplexMatrix matrix_;
};

/// Hermitian Hamiltonian with its normalization scale omega (hbar = 1).
class HamiltonianOp {
 public:
  explicit HamiltonianOp(ComplexMatrix matrix, double omega = 0.0);

  static HamiltonianOp zero(std::size_t dim) {
    return HamiltonianOp(ComplexMatrix(dim));
  }

  const ComplexMatrix& matrix() const { return matrix_; }
  double omega() const { return omega_; }
  std::size_t dim() const { return matrix_.dim(); }

  bool is_traceless(double tol = kStateTol) const;
  /// |Tr H^2 - N omega^2|.
  double normalization_defect() const;

 private:
  ComplexMatrix matrix_;
  double omega_ = 0.0;
};

/// Lindblad operators L_a with magnitudes gamma_a = sqrt(Tr(L_a^dag L_a)/N).
class LindbladSet {
 public:
  LindbladSet() = default;
  explicit LindbladSet(std::vector<ComplexMatrix> ops);

  const std::vector<ComplexMatrix>& ops() const { return ops_; }
  const std::vector<double>& gammas() const { return gammas_; }
  std::size_t size() const { return ops_.size(); }
  bool empty() const { return ops_.empty(); }

  /// G_ab = Tr(L_a^dag L_b).
  ComplexMatrix gram() const;

  /// Largest violation of tracelessness and Tr(L_a^dag L_b) = N g_a^2 d_ab.
  double canonical_defect() const;

 private:
  std::vector<ComplexMatrix> ops_;
  std::vector<double> gammas_;
};

/// Hermitian traceless costate sigma'.
class CostateOperator {
 public:
  explicit CostateOperator(ComplexMatrix matrix);
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

/// H -> H + alpha + (1/2i) sum_a (beta_a^* L_a - beta_a L_a^dag),
/// L_a -> L_a + beta_a, followed by L_a -> sum_b U_ab L_b.
struct GaugeTransform {
  double alpha = 0.0;
  std::vector<Complex> betas;  // empty means all zero
  ComplexMatrix mixing;        // empty (dim 0) means identity

  static GaugeTransform identity() { return {}; }
};

enum class MetricKind { kSymmetricLogarithmicDerivative };

/// Monotone metric g_rho(A, B) = Tr[A c(L, R)(B)], c(x, y) = 1/(y eta(x/y)).
struct MonotoneMetric {
  MetricKind kind = MetricKind::kSymmetricLogarithmicDerivative;

  /// eta(t) = (1 + t)/2.
  double eta(double t) const { return 0.5 * (1.0 + t); }
  /// 2/(x + y) for the SLD metric.
  double c(double x, double y) const { return 1.0 / (y * eta(x / y)); }
};

struct KrausSet {
  std::vector<ComplexMatrix> ops;
  double tau = 0.0;
  /// ||sum W^dag W - I||_F.
  double completeness_defect = 0.0;

  /// C in completeness_defect = C tau^2.
  double defect_constant() const {
    return completeness_defect / (tau * tau);
  }
};

struct KrausApplication {
  DensityOperator rho;
  /// |Tr(sum W rho W^dag) - 1| before renormalization.
  double trace_defect;
};

struct GaugedPair {
  HamiltonianOp hamiltonian;
  LindbladSet lindblads;
};

/// -i[H, rho] + sum_a (L_a rho L_a^dag - 1/2 {L_a^dag L_a, rho}).
ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const HamiltonianOp& h,
                           const LindbladSet& l);
ComplexMatrix lindblad_rhs(const DensityOperator& rho, const HamiltonianOp& h,
                           const LindbladSet& l);

/// The dual generator: Tr[A^dag L(B)] = Tr[L^dag(A)^dag B].
/// i[H, A] + sum_a (L_a^dag A L_a - 1/2 {L_a^dag L_a, A}).
ComplexMatrix adjoint_generator(const ComplexMatrix& a, const HamiltonianOp& h,
                                const LindbladSet& l);

/// Costate velocity: minus the traceless part of the dual generator.
ComplexMatrix adjoint_rhs(const CostateOperator& a, const HamiltonianOp& h,
                          const LindbladSet& l);

/// Throws ValidationError if the mixing matrix is not unitary or the number of
/// betas/mixing rows does not match the Lindblad count.
GaugedPair gauge_apply(const HamiltonianOp& h, const LindbladSet& l,
                       const GaugeTransform& g);

/// Canonical gauge: traceless H and L_a, Gram matrix diagonal with
/// descending gamma_a. Stays inside the gauge orbit, so the flow is unchanged.
GaugedPair gauge_fix(const HamiltonianOp& h, const LindbladSet& l);

double metric_eval(const DensityOperator& rho, const ComplexMatrix& a,
                   const ComplexMatrix& b, const MonotoneMetric& m = {});

/// sqrt(g(rho_dot, rho_dot) / g(L(rho), L(rho))); 1 on shell.
double time_functional(const DensityOperator& rho, const ComplexMatrix& rho_dot,
                       const HamiltonianOp& h, const LindbladSet& l,
                       const MonotoneMetric& m = {});

/// W_0 = I - i H tau - (tau/2) sum L^dag L, W_a = sqrt(tau) L_a.
KrausSet kraus_from_lindblad(const HamiltonianOp& h, const LindbladSet& l,
                             double tau);

/// sum W rho W^dag, renormalized to unit trace.
KrausApplication kraus_apply(const DensityOperator& rho, const KrausSet& k);

/// F = -i[rho, sigma'].
ComplexMatrix f_operator(const ComplexMatrix& rho, const ComplexMatrix& costate);

struct ResidualSample {
  ComplexMatrix rho;
  ComplexMatrix costate;
  ComplexMatrix hamiltonian;
};

/// max over interior samples of ||i dF/dt - [H, F]||_F with a central
/// difference for dF/dt. Samples must be uniformly spaced by dt.
double brachistochrone_residual(std::span<const ResidualSample> samples,
                                double dt);

}  // namespace qbrach::lindblad
