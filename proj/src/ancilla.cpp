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

#include "qbrach/ancilla.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qbrach/error.hpp"

namespace qbrach::ancilla {
namespace {

using lindblad::DensityOperator;
using qalg::Complex;
using qalg::ComplexMatrix;
using qalg::kI;
using qalg::pauli;

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return Complex(0.5) * (m + m.adjoint());
}

double levi_civita(int i, int j, int k) {
  return 0.5 * (i - j) * (j - k) * (k - i);
}

}  // namespace

CouplingMatrix CouplingMatrix::special(double p, double q) {
  CouplingMatrix c;
  c.h[0][1] = p;
  c.h[1][0] = p;
  c.h[2][2] = q;
  return c;
}

double CouplingMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& row : h) {
    for (double x : row) s += x * x;
  }
  return std::sqrt(s);
}

void CouplingMatrix::validate() const {
  for (const auto& row : h) {
    for (double x : row) {
      if (!std::isfinite(x)) throw ValidationError("CouplingMatrix: non-finite entry");
    }
  }
}

void AncillaState::validate() const {
  for (double x : b) {
    if (!std::isfinite(x)) throw ValidationError("AncillaState: non-finite b");
  }
  if (norm(b) > 1.0 + 1e-12) {
    throw ValidationError("AncillaState: |b| exceeds 1");
  }
}

void MicroConfig::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw ValidationError("MicroConfig: tau must be positive");
  }
  if (steps < 1) throw ValidationError("MicroConfig: steps must be >= 1");
  couplings.validate();
  ancilla.validate();
}

bool MicroConfig::outside_markov_regime() const {
  return tau * couplings.frobenius_norm() > kMarkovWarning;
}

ComplexMatrix hab_build(const CouplingMatrix& c) {
  ComplexMatrix out(4);
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      if (c.h[j][k] == 0.0) continue;
      out += Complex(c.h[j][k]) * qalg::tensor_product(pauli(j), pauli(k));
    }
  }
  return out;
}

DensityOperator ancilla_density(const AncillaState& b) {
  b.validate();
  return brach::density_from_bloch(b.b);
}

DensityOperator micro_step(const DensityOperator& rho, const CouplingMatrix& c,
                           const AncillaState& b, double tau) {
  if (rho.dim() != 2) throw DimensionError("micro_step: system must be a qubit");
  const ComplexMatrix u = qalg::matrix_exp_i(hab_build(c), tau);
  const ComplexMatrix joint =
      qalg::tensor_product(rho.matrix(), ancilla_density(b).matrix());
  const ComplexMatrix reduced = qalg::partial_trace(
      u * joint * u.adjoint(), 2, 2, qalg::Subsystem::kA);
  return DensityOperator(hermitian_part(reduced));
}

lindblad::HamiltonianOp effective_hamiltonian(const CouplingMatrix& c,
                                              const AncillaState& b) {
  Vec3 h{};
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) h[j] += c.h[j][k] * b.b[k];
  }
  return lindblad::HamiltonianOp(brach::pauli_combination(h));
}

LindbladMatrix lindblad_matrix(const CouplingMatrix& c, const AncillaState& b) {
  // w_lm = Tr(sigma_m sigma_l rho_B).
  ComplexMatrix w(3);
  for (int l = 0; l < 3; ++l) {
    for (int m = 0; m < 3; ++m) {
      Complex v = l == m ? 1.0 : 0.0;
      for (int n = 0; n < 3; ++n) v -= kI * levi_civita(l, m, n) * b.b[n];
      w(l, m) = v;
    }
  }
  LindbladMatrix out;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      Complex v = 0.0;
      for (int l = 0; l < 3; ++l) {
        for (int m = 0; m < 3; ++m) v += c.h[j][l] * c.h[k][m] * w(l, m);
      }
      out.a(j, k) = v;
    }
  }
  return out;
}

ComplexMatrix second_order_step(const ComplexMatrix& rho, const CouplingMatrix& c,
                                const AncillaState& b, double tau) {
  const ComplexMatrix h = effective_hamiltonian(c, b).matrix();
  const LindbladMatrix a = lindblad_matrix(c, b);
  ComplexMatrix dissipator(2);
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      if (a.a(j, k) == 0.0) continue;
      const ComplexMatrix term =
          pauli(j) * rho * pauli(k) -
          Complex(0.5) * qalg::anticommutator(pauli(k) * pauli(j), rho);
      dissipator += a.a(j, k) * term;
    }
  }
  return rho - Complex(0.0, tau) * qalg::commutator(h, rho) +
         Complex(tau * tau) * dissipator;
}

InducedLindblads induced_lindblads(const LindbladMatrix& a, double tau) {
  if (!(tau > 0.0)) throw ValidationError("induced_lindblads: tau must be positive");
  const auto eig = qalg::hermitian_eig(a.a);
  InducedLindblads out;
  out.directions = eig.eigenvectors;
  std::vector<ComplexMatrix> ops;
  for (std::size_t k = 0; k < 3; ++k) {
    double alpha = eig.eigenvalues[k];
    if (alpha < -kNegativeEigenTol) {
      throw ValidationError("induced_lindblads: Lindblad matrix is not positive (eigenvalue " +
                            describe(alpha) + ")");
    }
    if (alpha < 0.0) {
      out.warnings.push_back("clamped eigenvalue " + describe(alpha) + " to 0");
      alpha = 0.0;
    }
    out.alphas.push_back(alpha);
    const CVec3 v{eig.eigenvectors(0, k), eig.eigenvectors(1, k), eig.eigenvectors(2, k)};
    ops.push_back(Complex(std::sqrt(tau * alpha)) * brach::pauli_combination(v));
  }
  out.set = lindblad::LindbladSet(std::move(ops));
  return out;
}

CommutatorResidual commutativity_check(const LindbladMatrix& a,
                                       const brach::KMatrix& k) {
  const ComplexMatrix c = qalg::commutator(a.a, k.entries);
  const ComplexMatrix herm = Complex(0.5) * (c + c.adjoint());
  const ComplexMatrix anti = Complex(0.5) * (c - c.adjoint());
  return {herm.frobenius_norm(), anti.frobenius_norm()};
}

SpecialGammas gammas_from_special(double p, double q, double b, double tau) {
  if (!(tau > 0.0)) throw ValidationError("gammas_from_special: tau must be positive");
  if (std::abs(b) > 1.0 + 1e-12) {
    throw ValidationError("gammas_from_special: |b| exceeds 1");
  }
  const double bc = std::clamp(b, -1.0, 1.0);
  return {std::sqrt((1.0 - bc) * tau) * std::abs(p),
          std::sqrt((1.0 + bc) * tau) * std::abs(p), std::sqrt(tau) * std::abs(q)};
}

double damping_solution(double t, double r0, double b, double p, double tau) {
  return -b + (r0 + b) * std::exp(-4.0 * p * p * tau * t);
}

TrajectoryRecord run_micro(const MicroConfig& cfg, const Vec3& r0) {
  cfg.validate();
  DensityOperator rho = brach::density_from_bloch(r0);

  TrajectoryRecord rec;
  rec.dt = cfg.tau;
  rec.samples.reserve(static_cast<std::size_t>(cfg.steps) + 1);
  if (cfg.outside_markov_regime()) {
    std::ostringstream msg;
    msg << "tau ||h|| = " << cfg.tau * cfg.couplings.frobenius_norm()
        << " exceeds " << kMarkovWarning << "; second-order expansion is inaccurate";
    rec.notes.push_back(msg.str());
  }

  const Vec3 down{0.0, 0.0, -1.0};
  auto record = [&](std::int64_t k) {
    TrajectorySample s;
    s.t = static_cast<double>(k) * cfg.tau;
    s.r = brach::bloch_from_density(rho).r;
    s.purity = bloch_purity(s.r);
    s.fidelity = bloch_overlap(s.r, down);
    rec.samples.push_back(std::move(s));
  };

  record(0);
  for (std::int64_t k = 0; k < cfg.steps; ++k) {
    const CouplingMatrix c = cfg.schedule ? cfg.schedule(k) : cfg.couplings;
    rho = micro_step(rho, c, cfg.ancilla, cfg.tau);
    record(k + 1);
  }
  return rec;
}

double damping_deviation(const TrajectoryRecord& rec, double r0, double b,
                         double p, double tau) {
  double worst = 0.0;
  for (const auto& s : rec.samples) {
    worst = std::max(worst, std::abs(s.r[2] - damping_solution(s.t, r0, b, p, tau)));
  }
  return worst;
}

}  // namespace qbrach::ancilla
