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

// Time-optimal one-qubit evolution in Bloch form.
//
// With rho = (1 + r.sigma)/2, sigma' = s.sigma, H = h.sigma and
// L_a = l_a.sigma the state and costate obey
//
//   dr/dt = 2[h x r + sum_a (Re((l_a.r) l_a^*) - |l_a|^2 r + i l_a x l_a^*)]
//   ds/dt = 2[h x s - sum_a (Re((l_a.s) l_a^*) - |l_a|^2 s)]
//
// with h fixed by the normalization |h| = omega and r x s = lambda_0 h, and
// the l_a chosen as eigenvectors of the Hermitian matrix
//
//   K_jk(r, s) = r_j s_k + r_k s_j - 2i sum_l eps_jkl s_l
//
// scaled to |l_a| = gamma_a, assigned in descending eigenvalue order.

#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "qbrach/lindblad.hpp"
#include "qbrach/qalg.hpp"
#include "qbrach/trajectory.hpp"
#include "qbrach/vec3.hpp"

namespace qbrach::brach {

/// |r x s| below this selects the degenerate branch of the Hamiltonian.
inline constexpr double kDegeneracyThreshold = 1e-10;

struct BlochState {
  Vec3 r{};
};

struct CostateVector {
  Vec3 s{};
};

/// 3x3 Hermitian matrix whose eigenvectors are the optimal Lindblad vectors.
struct KMatrix {
  qalg::ComplexMatrix entries{3};
};

/// Orthonormal frame with r = |r|(cos(theta/2) e3 + sin(theta/2) e1) and
/// s = |s|(cos(theta/2) e3 - sin(theta/2) e1).
struct FrameBasis {
  Vec3 e1{};
  Vec3 e2{};
  Vec3 e3{};
  double theta = 0.0;
};

struct BrachConfig {
  double omega = 1.0;
  /// Magnitudes assigned to the K eigenvectors in descending eigenvalue order.
  std::array<double, 3> gammas{1.0, 0.0, 0.0};
  /// Branch of h = +-omega (r x s)/|r x s|.
  int sign = +1;
  /// Direction of h while r x s = 0.
  Vec3 degenerate_axis{0.0, 0.0, 1.0};
  double dt = 1e-3;
  double t_max = 5.0;
  /// Integration aborts once ||r x s - (r x s)(0)|| exceeds this.
  double conservation_tol = 1e-6;
  /// Record every n-th step.
  int sample_stride = 1;
  /// Pure target for the fidelity column; none leaves the column empty.
  std::optional<Vec3> target;

  /// Throws ValidationError on inconsistent parameters.
  void validate() const;
};

struct LindbladSolution {
  std::vector<LindbladVector> vectors;
  /// Eigenvalues nu_a, descending.
  std::array<double, 3> eigenvalues{};
  /// Unit eigenvectors matching `vectors`, kept for continuity across steps.
  std::array<CVec3, 3> directions{};
  /// max_a ||K u_a - nu_a u_a||.
  double max_residual = 0.0;
  /// Continuity overlap prefers a different assignment than the ordering.
  bool crossing = false;
};

BlochState bloch_from_density(const lindblad::DensityOperator& rho);
lindblad::DensityOperator density_from_bloch(const Vec3& r);

/// c with M = c_0 I + c . sigma for a 2x2 matrix M.
CVec3 pauli_coefficients(const qalg::ComplexMatrix& m);
qalg::ComplexMatrix pauli_combination(const CVec3& c);
qalg::ComplexMatrix pauli_combination(const Vec3& c);

Vec3 master_rhs_vec(const Vec3& r, const Vec3& h,
                    std::span<const LindbladVector> ls);
Vec3 adjoint_rhs_vec(const Vec3& s, const Vec3& h,
                     std::span<const LindbladVector> ls);

KMatrix k_matrix(const Vec3& r, const Vec3& s);

/// Frame and angle of a non-degenerate (r, s) pair. Parallel inputs get
/// theta = 0 (or pi) with e1 chosen perpendicular to e3.
FrameBasis frame_from(const Vec3& r, const Vec3& s);

/// Eigenvectors of K scaled to |l_a| = gamma_a. Phases follow `previous`
/// (maximal Re<prev, new>) when given, otherwise the first non-negligible
/// component is made real and positive. Degenerate eigenspaces are rotated
/// onto `previous` before phasing.
LindbladSolution lindblad_vectors(const KMatrix& k,
                                  std::span<const double> gammas,
                                  std::span<const CVec3> previous = {});

Vec3 hamiltonian_vec(const Vec3& r, const Vec3& s, const BrachConfig& cfg);

/// Classical fixed-step RK4 on the coupled state/costate system.
///
/// The costate is carried as u = exp(-2 Gamma t) s with Gamma = sum gamma_a^2,
/// which removes the exponential growth of s from the stepper; h and l_a are
/// invariant under this positive rescaling. Records s itself.
/// Throws ToleranceError if |r| exceeds 1 + 1e-6 or r x s drifts by more
/// than cfg.conservation_tol.
TrajectoryRecord integrate(const BrachConfig& cfg, const BlochState& r0,
                           const CostateVector& s0);

/// Interaction-picture solution for parallel r and s:
/// r'(t) = k + (r'(0) - k) exp(-2(g+^2 + g-^2) t), k = (g+^2 - g-^2)/(g+^2 + g-^2).
/// gamma_plus belongs to (e1 + i e2)/sqrt(2), gamma_minus to (e1 - i e2)/sqrt(2).
double parallel_case_solution(double t, double r0, double gamma_plus,
                              double gamma_minus);

struct AngleBracket {
  double lo = 0.0;
  double hi = 0.0;
};

/// Unit costate at angle theta from e3 = r0/|r0| (or the degenerate axis when
/// r0 = 0), rotating towards the x axis, times costate_sign.
Vec3 costate_direction(const Vec3& r0, const Vec3& degenerate_axis,
                       double theta, double costate_sign);

struct ShootResult {
  double theta0 = 0.0;
  double distance = 0.0;
  TrajectoryRecord trajectory;
};

/// Golden-section search over the initial costate angle, minimizing
/// |r(t_max) - target|.
ShootResult shoot(const BrachConfig& cfg, const BlochState& r0,
                  const BlochState& target, AngleBracket bracket,
                  double costate_sign = -1.0, double angle_tol = 1e-5);

}  // namespace qbrach::brach
