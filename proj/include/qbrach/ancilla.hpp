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

// Repeated-interaction model: a system qubit coupled for a short time tau to
// a freshly prepared ancilla qubit, then the ancilla is traced out.
//
//   H_AB = sum_jk h_jk sigma_j (x) sigma_k,   rho_B = (1 + b.sigma)/2
//
// To second order in tau the step is a Lindblad step with H = sum h_jk b_k
// sigma_j and the Lindblad matrix
//
//   a_jk = sum_lm h_jl h_km (delta_lm - i sum_n eps_lmn b_n).

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qbrach/brachistochrone.hpp"
#include "qbrach/lindblad.hpp"
#include "qbrach/qalg.hpp"
#include "qbrach/trajectory.hpp"
#include "qbrach/vec3.hpp"

namespace qbrach::ancilla {

/// Above this value of tau ||h||_F the run records a regime warning.
inline constexpr double kMarkovWarning = 0.1;
/// Eigenvalues of a below this are rejected; between it and 0 they are clamped.
inline constexpr double kNegativeEigenTol = 1e-10;

struct CouplingMatrix {
  std::array<std::array<double, 3>, 3> h{};

  /// [[0, p, 0], [p, 0, 0], [0, 0, q]].
  static CouplingMatrix special(double p, double q);

  double frobenius_norm() const;
  void validate() const;
};

struct AncillaState {
  Vec3 b{};

  /// |b| <= 1 + 1e-12 and finite.
  void validate() const;
};

struct LindbladMatrix {
  qalg::ComplexMatrix a{3};
};

struct MicroConfig {
  double tau = 1e-3;
  std::int64_t steps = 1000;
  CouplingMatrix couplings;
  AncillaState ancilla;
  /// Couplings for step k; empty keeps `couplings` fixed.
  std::function<CouplingMatrix(std::int64_t)> schedule;

  void validate() const;
  /// tau ||h||_F above kMarkovWarning.
  bool outside_markov_regime() const;
};

qalg::ComplexMatrix hab_build(const CouplingMatrix& c);

/// The ancilla density matrix (1 + b.sigma)/2.
lindblad::DensityOperator ancilla_density(const AncillaState& b);

/// Tr_B[exp(-i H_AB tau) (rho (x) rho_B) exp(i H_AB tau)], evaluated exactly.
lindblad::DensityOperator micro_step(const lindblad::DensityOperator& rho,
                                     const CouplingMatrix& c,
                                     const AncillaState& b, double tau);

lindblad::HamiltonianOp effective_hamiltonian(const CouplingMatrix& c,
                                              const AncillaState& b);

LindbladMatrix lindblad_matrix(const CouplingMatrix& c, const AncillaState& b);

/// rho - i tau [H, rho] + tau^2 sum a_jk (sigma_j rho sigma_k - 1/2 {sigma_k sigma_j, rho}).
qalg::ComplexMatrix second_order_step(const qalg::ComplexMatrix& rho,
                                      const CouplingMatrix& c,
                                      const AncillaState& b, double tau);

struct InducedLindblads {
  lindblad::LindbladSet set;
  /// Eigenvalues of a, descending, after clamping.
  std::vector<double> alphas;
  /// Eigenvectors of a as columns, matching `alphas`.
  qalg::ComplexMatrix directions{3};
  std::vector<std::string> warnings;
};

/// L_a = sqrt(tau alpha_a) sum_j V_ja sigma_j from a = V diag(alpha) V^dag.
/// Throws ValidationError if a has an eigenvalue below -kNegativeEigenTol.
InducedLindblads induced_lindblads(const LindbladMatrix& a, double tau);

struct CommutatorResidual {
  /// ||Herm([a, K])||_F; zero for Hermitian a and K.
  double hermitian = 0.0;
  /// ||AntiHerm([a, K])||_F.
  double anti_hermitian = 0.0;
};

CommutatorResidual commutativity_check(const LindbladMatrix& a,
                                       const brach::KMatrix& k);

struct SpecialGammas {
  double plus = 0.0;
  double minus = 0.0;
  double zero = 0.0;
};

/// gamma_+^2 = (1 - b) tau p^2, gamma_-^2 = (1 + b) tau p^2, gamma_0^2 = tau q^2.
SpecialGammas gammas_from_special(double p, double q, double b, double tau);

/// z component -b + (r0 + b) exp(-4 p^2 tau t).
double damping_solution(double t, double r0, double b, double p, double tau);

/// Iterates micro_step; sample k sits at t = k tau. The fidelity column is
/// the population of |down>.
TrajectoryRecord run_micro(const MicroConfig& cfg, const Vec3& r0);

/// max_k |r_z(k tau) - damping_solution(k tau)| for a special-case run.
double damping_deviation(const TrajectoryRecord& rec, double r0, double b,
                         double p, double tau);

}  // namespace qbrach::ancilla
