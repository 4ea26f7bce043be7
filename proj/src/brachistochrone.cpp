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

#include "qbrach/brachistochrone.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qbrach/error.hpp"

namespace qbrach::brach {
namespace {

using qalg::Complex;
using qalg::ComplexMatrix;
using qalg::kI;

constexpr double kNormTol = 1e-12;
constexpr double kBlochOvershoot = 1e-6;
constexpr double kEigenResidualTol = 1e-10;
constexpr std::size_t kMaxNotes = 20;

Vec3 normalized(const Vec3& v) { return (1.0 / norm(v)) * v; }

CVec3 column(const ComplexMatrix& m, std::size_t c) {
  return {m(0, c), m(1, c), m(2, c)};
}

CVec3 mat_vec(const ComplexMatrix& m, const CVec3& v) {
  CVec3 out{};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) out[i] += m(i, j) * v[j];
  }
  return out;
}

CVec3 canonical_phase(CVec3 v) {
  for (const auto& x : v) {
    if (std::abs(x) > 1e-12) {
      const Complex phase = std::conj(x) / std::abs(x);
      return phase * v;
    }
  }
  return v;
}

// Rotates the columns of `basis` (a degenerate eigenspace) onto `target` with
// the unitary polar factor of basis^dag target.
void align_subspace(std::span<CVec3> basis, std::span<const CVec3> target) {
  const std::size_t m = basis.size();
  ComplexMatrix overlap(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) overlap(i, j) = inner(basis[i], target[j]);
  }
  const ComplexMatrix gram = overlap.adjoint() * overlap;
  const auto eig = qalg::hermitian_eig(gram);
  if (eig.eigenvalues.back() < 1e-12) return;
  ComplexMatrix inv_sqrt(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double w = 1.0 / std::sqrt(eig.eigenvalues[k]);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        inv_sqrt(i, j) += w * eig.eigenvectors(i, k) * std::conj(eig.eigenvectors(j, k));
      }
    }
  }
  const ComplexMatrix polar = overlap * inv_sqrt;
  std::vector<CVec3> rotated(m, CVec3{});
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      rotated[j] = rotated[j] + polar(i, j) * basis[i];
    }
  }
  std::copy(rotated.begin(), rotated.end(), basis.begin());
}

// du/dt for u = exp(-2 Gamma t) s: the adjoint field without its |l|^2 s part.
Vec3 scaled_adjoint_field(const Vec3& u, const Vec3& h,
                          std::span<const LindbladVector> ls) {
  Vec3 out = cross(h, u);
  for (const auto& lv : ls) {
    const Complex lu = dot(lv.l, u);
    for (std::size_t i = 0; i < 3; ++i) out[i] -= (lu * std::conj(lv.l[i])).real();
  }
  return 2.0 * out;
}

struct Stage {
  Vec3 dr;
  Vec3 du;
};

struct Integrator {
  const BrachConfig& cfg;
  double growth;  // 2 Gamma

  LindbladSolution solve(const Vec3& r, const Vec3& s,
                         std::span<const CVec3> previous) const {
    const double sn = norm(s);
    const Vec3 unit_s = sn > 0.0 ? (1.0 / sn) * s : s;
    return lindblad_vectors(k_matrix(r, unit_s), cfg.gammas, previous);
  }

  Stage field(double t, const Vec3& r, const Vec3& u,
              std::span<const CVec3> previous) const {
    const Vec3 s = std::exp(growth * t) * u;
    const Vec3 h = hamiltonian_vec(r, s, cfg);
    const LindbladSolution sol = solve(r, s, previous);
    return {master_rhs_vec(r, h, sol.vectors),
            scaled_adjoint_field(u, h, sol.vectors)};
  }
};

}  // namespace

void BrachConfig::validate() const {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw ValidationError("BrachConfig: omega must be positive");
  }
  for (double g : gammas) {
    if (!(g >= 0.0) || !std::isfinite(g)) {
      throw ValidationError("BrachConfig: gammas must be finite and >= 0");
    }
  }
  if (sign != 1 && sign != -1) {
    throw ValidationError("BrachConfig: sign must be +1 or -1");
  }
  if (std::abs(norm(degenerate_axis) - 1.0) > kNormTol) {
    throw ValidationError("BrachConfig: degenerate_axis must be a unit vector");
  }
  if (!(dt > 0.0) || !(t_max > 0.0) || !(dt < t_max)) {
    throw ValidationError("BrachConfig: need 0 < dt < t_max");
  }
  if (!(conservation_tol > 0.0)) {
    throw ValidationError("BrachConfig: conservation_tol must be positive");
  }
  if (sample_stride < 1) {
    throw ValidationError("BrachConfig: sample_stride must be >= 1");
  }
}

BlochState bloch_from_density(const lindblad::DensityOperator& rho) {
  if (rho.dim() != 2) {
    throw DimensionError("bloch_from_density: state is not a qubit");
  }
  const CVec3 c = pauli_coefficients(rho.matrix());
  return {{2.0 * c[0].real(), 2.0 * c[1].real(), 2.0 * c[2].real()}};
}

lindblad::DensityOperator density_from_bloch(const Vec3& r) {
  ComplexMatrix m = 0.5 * pauli_combination(r);
  m(0, 0) += 0.5;
  m(1, 1) += 0.5;
  return lindblad::DensityOperator(std::move(m));
}

CVec3 pauli_coefficients(const ComplexMatrix& m) {
  if (m.dim() != 2) throw DimensionError("pauli_coefficients: expected 2x2");
  // Tr(M sigma_j)/2 written out entrywise.
  return {0.5 * (m(0, 1) + m(1, 0)), 0.5 * kI * (m(0, 1) - m(1, 0)),
          0.5 * (m(0, 0) - m(1, 1))};
}

ComplexMatrix pauli_combination(const CVec3& c) {
  return ComplexMatrix::from_rows(
      {{c[2], c[0] - kI * c[1]}, {c[0] + kI * c[1], -c[2]}});
}

ComplexMatrix pauli_combination(const Vec3& c) {
  return pauli_combination(complexify(c));
}

Vec3 master_rhs_vec(const Vec3& r, const Vec3& h,
                    std::span<const LindbladVector> ls) {
  Vec3 out = cross(h, r);
  for (const auto& lv : ls) {
    const CVec3& l = lv.l;
    const Complex lr = dot(l, r);
    const double l2 = inner(l, l).real();
    const CVec3 lxl = cross(l, conj(l));
    for (std::size_t i = 0; i < 3; ++i) {
      out[i] += (lr * std::conj(l[i])).real() - l2 * r[i] + (kI * lxl[i]).real();
    }
  }
  return 2.0 * out;
}

Vec3 adjoint_rhs_vec(const Vec3& s, const Vec3& h,
                     std::span<const LindbladVector> ls) {
  Vec3 out = cross(h, s);
  for (const auto& lv : ls) {
    const CVec3& l = lv.l;
    const Complex ls_dot = dot(l, s);
    const double l2 = inner(l, l).real();
    for (std::size_t i = 0; i < 3; ++i) {
      out[i] -= (ls_dot * std::conj(l[i])).real() - l2 * s[i];
    }
  }
  return 2.0 * out;
}

KMatrix k_matrix(const Vec3& r, const Vec3& s) {
  KMatrix k;
  auto& m = k.entries;
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t i = 0; i < 3; ++i) m(j, i) = r[j] * s[i] + r[i] * s[j];
  }
  // -2i sum_l eps_jkl s_l
  m(0, 1) += -2.0 * kI * s[2];
  m(1, 0) += 2.0 * kI * s[2];
  m(1, 2) += -2.0 * kI * s[0];
  m(2, 1) += 2.0 * kI * s[0];
  m(2, 0) += -2.0 * kI * s[1];
  m(0, 2) += 2.0 * kI * s[1];
  return k;
}

FrameBasis frame_from(const Vec3& r, const Vec3& s) {
  const double rn = norm(r);
  const double sn = norm(s);
  if (rn == 0.0 || sn == 0.0) {
    throw ValidationError("frame_from: r and s must be nonzero");
  }
  const Vec3 ru = (1.0 / rn) * r;
  const Vec3 su = (1.0 / sn) * s;
  const double cos_theta = std::clamp(dot(ru, su), -1.0, 1.0);
  FrameBasis f;
  f.theta = std::acos(cos_theta);

  auto perpendicular = [](const Vec3& v) {
    const Vec3 trial = std::abs(v[0]) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
    const Vec3 p = trial - dot(trial, v) * v;
    return normalized(p);
  };

  const Vec3 sum = ru + su;
  const Vec3 diff = ru - su;
  if (norm(sum) < 1e-12) {
    f.e1 = ru;
    f.e3 = perpendicular(ru);
    f.theta = M_PI;
  } else if (norm(diff) < 1e-12) {
    f.e3 = ru;
    f.e1 = perpendicular(ru);
    f.theta = 0.0;
  } else {
    f.e3 = normalized(sum);
    f.e1 = normalized(diff);
  }
  f.e2 = cross(f.e3, f.e1);
  return f;
}

LindbladSolution lindblad_vectors(const KMatrix& k,
                                  std::span<const double> gammas,
                                  std::span<const CVec3> previous) {
  if (gammas.size() != 3) {
    throw ValidationError("lindblad_vectors: expected three gammas");
  }
  if (!previous.empty() && previous.size() != 3) {
    throw ValidationError("lindblad_vectors: expected three previous vectors");
  }
  const auto eig = qalg::hermitian_eig(k.entries);
  LindbladSolution sol;
  for (std::size_t a = 0; a < 3; ++a) {
    sol.eigenvalues[a] = eig.eigenvalues[a];
    sol.directions[a] = column(eig.eigenvectors, a);
  }

  const double scale = std::max({1.0, std::abs(sol.eigenvalues[0]),
                                 std::abs(sol.eigenvalues[2])});
  const double degenerate_gap = 1e-9 * scale;

  if (!previous.empty()) {
    std::size_t begin = 0;
    while (begin < 3) {
      std::size_t end = begin + 1;
      while (end < 3 &&
             sol.eigenvalues[end - 1] - sol.eigenvalues[end] <= degenerate_gap) {
        ++end;
      }
      if (end - begin > 1) {
        align_subspace(std::span(sol.directions).subspan(begin, end - begin),
                       previous.subspan(begin, end - begin));
      }
      begin = end;
    }
    for (std::size_t a = 0; a < 3; ++a) {
      const Complex z = inner(previous[a], sol.directions[a]);
      sol.directions[a] = std::abs(z) > 1e-12
                              ? (std::conj(z) / std::abs(z)) * sol.directions[a]
                              : canonical_phase(sol.directions[a]);
    }
    for (std::size_t a = 0; a < 3; ++a) {
      const double own = std::abs(inner(previous[a], sol.directions[a]));
      for (std::size_t b = 0; b < 3; ++b) {
        if (b == a || gammas[a] == gammas[b]) continue;
        if (std::abs(inner(previous[a], sol.directions[b])) > own + 1e-12) {
          sol.crossing = true;
        }
      }
    }
  } else {
    for (auto& d : sol.directions) d = canonical_phase(d);
  }

  sol.vectors.reserve(3);
  for (std::size_t a = 0; a < 3; ++a) {
    const CVec3 residual =
        mat_vec(k.entries, sol.directions[a]) - Complex(sol.eigenvalues[a]) * sol.directions[a];
    sol.max_residual = std::max(sol.max_residual, norm(residual));
    sol.vectors.push_back({Complex(gammas[a]) * sol.directions[a], gammas[a]});
  }
  return sol;
}

Vec3 hamiltonian_vec(const Vec3& r, const Vec3& s, const BrachConfig& cfg) {
  const Vec3 c = cross(r, s);
  const double cn = norm(c);
  if (cn < kDegeneracyThreshold) return cfg.omega * cfg.degenerate_axis;
  return (cfg.sign * cfg.omega / cn) * c;
}

TrajectoryRecord integrate(const BrachConfig& cfg, const BlochState& r0,
                           const CostateVector& s0) {
  cfg.validate();
  if (norm(r0.r) > 1.0 + kNormTol) {
    throw ValidationError("integrate: |r0| exceeds 1");
  }
  double gamma_sq = 0.0;
  for (double g : cfg.gammas) gamma_sq += g * g;
  const Integrator integ{cfg, 2.0 * gamma_sq};

  const long steps = static_cast<long>(std::floor(cfg.t_max / cfg.dt + 1e-9));
  const double dt = cfg.dt;
  const Vec3 c0 = cross(r0.r, s0.s);

  TrajectoryRecord rec;
  rec.dt = dt * cfg.sample_stride;
  rec.samples.reserve(static_cast<std::size_t>(steps / cfg.sample_stride + 1));

  Vec3 r = r0.r;
  Vec3 u = s0.s;
  LindbladSolution sol = integ.solve(r, u, {});
  std::size_t crossings = 0;

  auto record = [&](double t, const Vec3& s) {
    TrajectorySample smp;
    smp.t = t;
    smp.r = r;
    smp.s = s;
    smp.h = hamiltonian_vec(r, s, cfg);
    smp.lindblads = sol.vectors;
    smp.purity = bloch_purity(r);
    smp.conserved = cross(r, s);
    if (cfg.target) smp.fidelity = bloch_overlap(r, *cfg.target);
    rec.samples.push_back(std::move(smp));
  };

  rec.max_eigen_residual = sol.max_residual;
  record(0.0, u);

  for (long k = 0; k < steps; ++k) {
    const double t = k * dt;
    const std::span<const CVec3> prev(sol.directions);
    const Stage k1 = integ.field(t, r, u, prev);
    const Stage k2 = integ.field(t + 0.5 * dt, r + (0.5 * dt) * k1.dr,
                                 u + (0.5 * dt) * k1.du, prev);
    const Stage k3 = integ.field(t + 0.5 * dt, r + (0.5 * dt) * k2.dr,
                                 u + (0.5 * dt) * k2.du, prev);
    const Stage k4 = integ.field(t + dt, r + dt * k3.dr, u + dt * k3.du, prev);
    r = r + (dt / 6.0) * (k1.dr + 2.0 * k2.dr + 2.0 * k3.dr + k4.dr);
    u = u + (dt / 6.0) * (k1.du + 2.0 * k2.du + 2.0 * k3.du + k4.du);

    const double t_next = (k + 1) * dt;
    const Vec3 s = std::exp(integ.growth * t_next) * u;
    sol = integ.solve(r, s, prev);
    rec.max_eigen_residual = std::max(rec.max_eigen_residual, sol.max_residual);

    if (norm(r) > 1.0 + kBlochOvershoot) {
      throw ToleranceError("integrate: |r| = " + describe(norm(r)) +
                           " exceeds 1 at t = " + describe(t_next));
    }
    const double drift = norm(cross(r, s) - c0);
    if (!(drift <= cfg.conservation_tol)) {
      throw ToleranceError("integrate: r x s drifted by " + describe(drift) +
                           " at t = " + describe(t_next) +
                           " (tolerance " + describe(cfg.conservation_tol) + ")");
    }
    if (sol.max_residual > kEigenResidualTol) {
      throw ToleranceError("integrate: eigenvector residual " +
                           describe(sol.max_residual) + " at t = " +
                           describe(t_next));
    }
    if (sol.crossing) {
      if (crossings < kMaxNotes) {
        rec.notes.push_back("eigenvalue crossing near t = " + describe(t_next));
      }
      ++crossings;
    }
    if ((k + 1) % cfg.sample_stride == 0) {
      // Use the same multiplier as the drift check.
      record(t_next, s);
    }
  }
  if (crossings > kMaxNotes) {
    rec.notes.push_back(std::to_string(crossings - kMaxNotes) +
                        " further eigenvalue crossings not listed");
  }
  return rec;
}

double parallel_case_solution(double t, double r0, double gamma_plus,
                              double gamma_minus) {
  const double gp2 = gamma_plus * gamma_plus;
  const double gm2 = gamma_minus * gamma_minus;
  const double total = gp2 + gm2;
  if (!(total > 0.0)) {
    throw ValidationError("parallel_case_solution: gammas must not both vanish");
  }
  const double fixed_point = (gp2 - gm2) / total;
  return fixed_point + (r0 - fixed_point) * std::exp(-2.0 * total * t);
}

Vec3 costate_direction(const Vec3& r0, const Vec3& degenerate_axis,
                       double theta, double costate_sign) {
  const Vec3 e3 = norm(r0) > kNormTol ? normalized(r0) : normalized(degenerate_axis);
  Vec3 e1 = Vec3{1.0, 0.0, 0.0} - e3[0] * e3;
  if (norm(e1) < 1e-6) e1 = Vec3{0.0, 0.0, 1.0} - e3[2] * e3;
  e1 = normalized(e1);
  return costate_sign * (std::cos(theta) * e3 + std::sin(theta) * e1);
}

ShootResult shoot(const BrachConfig& cfg, const BlochState& r0,
                  const BlochState& target, AngleBracket bracket,
                  double costate_sign, double angle_tol) {
  if (!(bracket.lo < bracket.hi)) {
    throw ValidationError("shoot: bracket must satisfy lo < hi");
  }
  if (cfg.t_max == 0.0) {
    ShootResult out;
    out.theta0 = 0.5 * (bracket.lo + bracket.hi);
    out.distance = norm(r0.r - target.r);
    TrajectorySample smp;
    smp.r = r0.r;
    smp.purity = bloch_purity(r0.r);
    out.trajectory.samples.push_back(smp);
    out.trajectory.dt = cfg.dt;
    return out;
  }
  cfg.validate();

  const Vec3 e3 = norm(r0.r) > kNormTol ? normalized(r0.r) : normalized(cfg.degenerate_axis);
  const Vec3 e1 = normalized(costate_direction(r0.r, cfg.degenerate_axis, M_PI / 2, 1.0));
  const Vec3 e2 = cross(e3, e1);
  if (std::abs(dot(target.r, e2)) > 1e-9) {
    throw ValidationError("shoot: target is not in the plane of the shooting family");
  }

  auto run = [&](double theta) {
    return integrate(cfg, r0, {costate_direction(r0.r, cfg.degenerate_axis, theta,
                                                 costate_sign)});
  };
  auto distance = [&](double theta) {
    return norm(run(theta).samples.back().r - target.r);
  };

  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = bracket.lo;
  double b = bracket.hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = distance(c);
  double fd = distance(d);
  while (b - a > angle_tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = distance(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = distance(d);
    }
  }

  ShootResult out;
  out.theta0 = 0.5 * (a + b);
  out.trajectory = run(out.theta0);
  out.distance = norm(out.trajectory.samples.back().r - target.r);
  const double edge = std::min(distance(bracket.lo), distance(bracket.hi));
  if (out.distance > edge + 1e-12) {
    throw ToleranceError("shoot: no improvement inside the angle bracket");
  }
  return out;
}

}  // namespace qbrach::brach
