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

#include "qbrach/nqubit.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qbrach/error.hpp"

namespace qbrach::nqubit {
namespace {

using qalg::Complex;
using qalg::ComplexMatrix;

constexpr double kConsistencyTol = 1e-12;

void require_dense(const NQubitConfig& cfg, const char* what) {
  if (cfg.n > kMaxDenseQubits) {
    throw DimensionError(std::string(what) + ": dense path limited to " +
                         std::to_string(kMaxDenseQubits) + " qubits");
  }
}

}  // namespace

void NQubitConfig::validate() const {
  if (n < 1) throw ValidationError("NQubitConfig: n must be >= 1");
  if (n > kMaxQubits) {
    throw DimensionError("NQubitConfig: n exceeds " + std::to_string(kMaxQubits));
  }
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw ValidationError("NQubitConfig: omega must be positive");
  }
}

double NQubitConfig::coupling() const {
  return std::sqrt(static_cast<double>(dim() / 2)) * omega;
}

lindblad::HamiltonianOp optimal_hamiltonian(const NQubitConfig& cfg) {
  cfg.validate();
  require_dense(cfg, "optimal_hamiltonian");
  ComplexMatrix h(cfg.dim());
  const std::size_t partner = cfg.dim() / 2;
  h(0, partner) = cfg.coupling();
  h(partner, 0) = cfg.coupling();
  return lindblad::HamiltonianOp(std::move(h), cfg.omega);
}

double extended_normalization(const NQubitConfig& cfg, std::size_t m) {
  if (m < 1) throw ValidationError("extended_normalization: m must be >= 1");
  const ComplexMatrix h = optimal_hamiltonian(cfg).matrix();
  const ComplexMatrix ext = qalg::tensor_product(h, ComplexMatrix::identity(m));
  if (ext.dim() > qalg::kMaxDenseDim) {
    throw DimensionError("extended_normalization: extension too large");
  }
  return qalg::trace_of_product(ext, ext).real() / static_cast<double>(ext.dim());
}

std::vector<Complex> TwoLevelUnitary::apply(std::span<const Complex> psi) const {
  if (psi.size() != dim) throw DimensionError("TwoLevelUnitary: size mismatch");
  std::vector<Complex> out(psi.begin(), psi.end());
  const Complex minus_i_s(0.0, -s);
  out[0] = c * psi[0] + minus_i_s * psi[partner];
  out[partner] = minus_i_s * psi[0] + c * psi[partner];
  return out;
}

ComplexMatrix TwoLevelUnitary::dense() const {
  ComplexMatrix u = ComplexMatrix::identity(dim);
  u(0, 0) = c;
  u(partner, partner) = c;
  u(0, partner) = Complex(0.0, -s);
  u(partner, 0) = Complex(0.0, -s);
  return u;
}

TwoLevelUnitary evolve_two_level(const NQubitConfig& cfg, double t) {
  cfg.validate();
  const double phase = cfg.coupling() * t;
  return {cfg.dim(), cfg.dim() / 2, std::cos(phase), std::sin(phase)};
}

ComplexMatrix evolve_unitary(const NQubitConfig& cfg, double t) {
  require_dense(cfg, "evolve_unitary");
  const ComplexMatrix u = evolve_two_level(cfg, t).dense();
  const ComplexMatrix reference =
      qalg::matrix_exp_i(optimal_hamiltonian(cfg).matrix(), t);
  const double gap = (u - reference).frobenius_norm();
  if (gap > kConsistencyTol) {
    throw ToleranceError("evolve_unitary: two-level and dense forms differ by " +
                         describe(gap));
  }
  return u;
}

lindblad::DensityOperator reduced_state(const NQubitConfig& cfg, double t) {
  const TwoLevelUnitary u = evolve_two_level(cfg, t);
  std::vector<Complex> psi0(cfg.dim());
  psi0[0] = 1.0;
  const std::vector<Complex> psi = u.apply(psi0);

  const std::size_t env = cfg.dim() / 2;
  ComplexMatrix rho(2);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      Complex v = 0.0;
      for (std::size_t e = 0; e < env; ++e) {
        v += psi[i * env + e] * std::conj(psi[j * env + e]);
      }
      rho(i, j) = v;
    }
  }

  const double phase = 2.0 * cfg.coupling() * t;
  const double cs = 0.5 * std::sin(phase);
  const ComplexMatrix closed = ComplexMatrix::from_rows(
      {{0.5 * (1.0 + std::cos(phase)), Complex(0.0, cs)},
       {Complex(0.0, -cs), 0.5 * (1.0 - std::cos(phase))}});
  const double gap = (rho - closed).frobenius_norm();
  if (gap > kConsistencyTol) {
    throw ToleranceError("reduced_state: partial trace and closed form differ by " +
                         describe(gap));
  }
  return lindblad::DensityOperator(std::move(rho));
}

double optimal_time(const NQubitConfig& cfg) {
  cfg.validate();
  return std::numbers::pi / (2.0 * cfg.coupling());
}

std::vector<std::pair<double, double>> fidelity_curve(const NQubitConfig& cfg,
                                                      std::span<const double> t_grid) {
  std::vector<std::pair<double, double>> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    out.emplace_back(t, reduced_state(cfg, t).matrix()(1, 1).real());
  }
  return out;
}

double first_time_above(const NQubitConfig& cfg, double level, double tol) {
  const double t_opt = optimal_time(cfg);
  auto fidelity = [&](double t) { return reduced_state(cfg, t).matrix()(1, 1).real(); };
  if (fidelity(0.0) >= level) return 0.0;
  double lo = 0.0;
  double hi = t_opt;
  if (fidelity(hi) < level) return hi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (fidelity(mid) >= level) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace qbrach::nqubit
