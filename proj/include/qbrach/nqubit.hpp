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

// Closed n-qubit model: one system qubit plus n - 1 ancillas, all starting
// up, driven by the fastest constant Hamiltonian with (1/N) Tr H^2 = omega^2
// that sends |0> to |2^(n-1)>, followed by a single measurement.
//
// Basis: |0> = |up...up>, qubit 1 (the system) is the most significant bit.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "qbrach/lindblad.hpp"
#include "qbrach/qalg.hpp"

namespace qbrach::nqubit {

inline constexpr int kMaxQubits = 12;
/// Dense matrices are only built up to this many qubits (dimension 32).
inline constexpr int kMaxDenseQubits = 5;

struct NQubitConfig {
  int n = 1;
  double omega = 1.0;

  void validate() const;
  std::size_t dim() const { return std::size_t{1} << n; }
  /// sqrt(2^(n-1)) omega, the Rabi frequency of the two-level block.
  double coupling() const;
};

/// sqrt(2^(n-1)) omega (|0><2^(n-1)| + h.c.). Dense, so n <= kMaxDenseQubits.
lindblad::HamiltonianOp optimal_hamiltonian(const NQubitConfig& cfg);

/// (1/(M N)) Tr (H (x) 1_M)^2.
double extended_normalization(const NQubitConfig& cfg, std::size_t m);

/// U(t) restricted to span{|0>, |2^(n-1)>}; identity elsewhere.
struct TwoLevelUnitary {
  std::size_t dim = 0;
  std::size_t partner = 0;
  double c = 1.0;  // cos(k t)
  double s = 0.0;  // sin(k t)

  /// U |psi>.
  std::vector<std::complex<double>> apply(
      std::span<const std::complex<double>> psi) const;
  qalg::ComplexMatrix dense() const;
};

TwoLevelUnitary evolve_two_level(const NQubitConfig& cfg, double t);

/// Dense U(t) from the two-level form, cross-checked against the
/// exponential of the dense Hamiltonian. Throws ToleranceError when they
/// disagree by more than 1e-12.
qalg::ComplexMatrix evolve_unitary(const NQubitConfig& cfg, double t);

/// System-qubit state Tr_B[U (|up><up| (x) rho_B) U^dag], checked against the
/// closed form within 1e-12.
lindblad::DensityOperator reduced_state(const NQubitConfig& cfg, double t);

/// pi / (2 sqrt(2^(n-1)) omega).
double optimal_time(const NQubitConfig& cfg);

/// <down| rho(t) |down> on each grid point.
std::vector<std::pair<double, double>> fidelity_curve(
    const NQubitConfig& cfg, std::span<const double> t_grid);

/// Smallest t in [0, T] with fidelity >= level, by bisection to `tol`.
double first_time_above(const NQubitConfig& cfg, double level, double tol = 1e-14);

}  // namespace qbrach::nqubit
