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

#include "qbrach/check.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "qbrach/ancilla.hpp"
#include "qbrach/brachistochrone.hpp"

namespace qbrach::check {
namespace {

using lindblad::DensityOperator;
using lindblad::HamiltonianOp;
using lindblad::LindbladSet;
using qalg::Complex;
using qalg::ComplexMatrix;

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double normal() { return normal_(rng_); }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  Complex complex() { return {normal(), normal()}; }

  ComplexMatrix matrix(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) m(i, j) = complex();
    }
    return m;
  }

  ComplexMatrix hermitian(std::size_t dim) {
    const ComplexMatrix m = matrix(dim);
    return Complex(0.5) * (m + m.adjoint());
  }

  LindbladSet lindblads(std::size_t dim, std::size_t count) {
    std::vector<ComplexMatrix> ops;
    for (std::size_t a = 0; a < count; ++a) ops.push_back(qalg::traceless_part(matrix(dim)));
    return LindbladSet(std::move(ops));
  }

  /// Full rank: A A^dag plus a floor, normalized.
  DensityOperator state(std::size_t dim) {
    const ComplexMatrix a = matrix(dim);
    ComplexMatrix m = a * a.adjoint() + Complex(0.1) * ComplexMatrix::identity(dim);
    m *= 1.0 / m.trace().real();
    return DensityOperator(Complex(0.5) * (m + m.adjoint()));
  }

  Vec3 vec(double scale) { return {scale * normal(), scale * normal(), scale * normal()}; }
  CVec3 cvec(double scale) {
    return {scale * complex(), scale * complex(), scale * complex()};
  }

  Vec3 ball_point(double radius) {
    const Vec3 v = vec(1.0);
    return (radius * std::cbrt(uniform(0.0, 1.0)) / norm(v)) * v;
  }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_;
};

constexpr std::size_t kDims[] = {2, 4};

SuiteResult bounded(std::string name, double worst, double tol) {
  return {std::move(name), worst <= tol, worst, 0.0, tol};
}

SuiteResult windowed(std::string name, double value, double lo, double hi) {
  return {std::move(name), value >= lo && value <= hi, value, lo, hi};
}

SuiteResult trace_suite(Sampler& rng, int trials) {
  double worst = 0.0;
  for (std::size_t dim : kDims) {
    for (int k = 0; k < trials; ++k) {
      const DensityOperator rho = rng.state(dim);
      const HamiltonianOp h(rng.hermitian(dim));
      const LindbladSet l = rng.lindblads(dim, 2);
      worst = std::max(worst, std::abs(lindblad::lindblad_rhs(rho, h, l).trace()));
    }
  }
  return bounded("trace", worst, 1e-12);
}

SuiteResult duality_suite(Sampler& rng, int trials, const AdjointFn& adjoint) {
  double worst = 0.0;
  for (std::size_t dim : kDims) {
    for (int k = 0; k < trials; ++k) {
      const HamiltonianOp h(rng.hermitian(dim));
      const LindbladSet l = rng.lindblads(dim, 2);
      const ComplexMatrix a = rng.matrix(dim);
      const ComplexMatrix b = rng.matrix(dim);
      const Complex lhs = qalg::trace_of_product(a.adjoint(), lindblad::lindblad_rhs(b, h, l));
      const Complex rhs = qalg::trace_of_product(adjoint(a, h, l).adjoint(), b);
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    }
  }
  return bounded("duality", worst, 1e-12);
}

SuiteResult gauge_suite(Sampler& rng, int trials) {
  double worst = 0.0;
  for (std::size_t dim : kDims) {
    for (int k = 0; k < trials; ++k) {
      const DensityOperator rho = rng.state(dim);
      const HamiltonianOp h(rng.hermitian(dim));
      std::vector<ComplexMatrix> ops;
      for (int a = 0; a < 2; ++a) ops.push_back(rng.matrix(dim));
      const LindbladSet l(std::move(ops));

      lindblad::GaugeTransform g;
      g.alpha = rng.normal();
      g.betas = {rng.complex(), rng.complex()};
      g.mixing = qalg::matrix_exp_i(rng.hermitian(2), 1.0);

      const ComplexMatrix base = lindblad::lindblad_rhs(rho, h, l);
      const double scale = std::max(1.0, base.frobenius_norm());
      const auto moved = lindblad::gauge_apply(h, l, g);
      const auto fixed = lindblad::gauge_fix(h, l);
      const double d1 =
          (lindblad::lindblad_rhs(rho, moved.hamiltonian, moved.lindblads) - base).frobenius_norm();
      const double d2 =
          (lindblad::lindblad_rhs(rho, fixed.hamiltonian, fixed.lindblads) - base).frobenius_norm();
      worst = std::max({worst, d1 / scale, d2 / scale});
    }
  }
  return bounded("gauge", worst, 1e-12);
}

SuiteResult time_functional_suite(Sampler& rng, int trials) {
  double worst = 0.0;
  for (std::size_t dim : kDims) {
    for (int k = 0; k < trials; ++k) {
      const DensityOperator rho = rng.state(dim);
      const HamiltonianOp h(rng.hermitian(dim));
      const LindbladSet l = rng.lindblads(dim, 2);
      const ComplexMatrix flow = lindblad::lindblad_rhs(rho, h, l);
      worst = std::max(worst, std::abs(lindblad::time_functional(rho, flow, h, l) - 1.0));
    }
  }
  return bounded("time-functional", worst, 1e-9);
}

double log2_ratio(double coarse, double fine) { return std::log2(coarse / fine); }

SuiteResult kraus_suite(Sampler& rng, int trials) {
  double lo = INFINITY;
  double hi = -INFINITY;
  for (std::size_t dim : kDims) {
    for (int k = 0; k < std::max(1, trials / 10); ++k) {
      const DensityOperator rho = rng.state(dim);
      const HamiltonianOp h(rng.hermitian(dim));
      const LindbladSet l = rng.lindblads(dim, 2);
      const ComplexMatrix flow = lindblad::lindblad_rhs(rho, h, l);
      auto defect = [&](double tau) {
        const auto out = lindblad::kraus_apply(rho, lindblad::kraus_from_lindblad(h, l, tau));
        return (out.rho.matrix() - (rho.matrix() + Complex(tau) * flow)).frobenius_norm();
      };
      const double order = log2_ratio(defect(1e-3), defect(5e-4));
      lo = std::min(lo, order);
      hi = std::max(hi, order);
    }
  }
  const double worst = std::abs(lo - 2.0) > std::abs(hi - 2.0) ? lo : hi;
  return windowed("kraus-order", worst, 1.9, 2.1);
}

SuiteResult micro_suite(Sampler& rng, int trials) {
  double lo = INFINITY;
  double hi = -INFINITY;
  for (int k = 0; k < std::max(1, trials / 10); ++k) {
    ancilla::CouplingMatrix c;
    for (auto& row : c.h) {
      for (double& x : row) x = rng.normal();
    }
    const ancilla::AncillaState b{rng.ball_point(1.0)};
    const DensityOperator rho = brach::density_from_bloch(rng.ball_point(1.0));
    auto defect = [&](double tau) {
      return (ancilla::micro_step(rho, c, b, tau).matrix() -
              ancilla::second_order_step(rho.matrix(), c, b, tau))
          .frobenius_norm();
    };
    const double order = log2_ratio(defect(2e-3), defect(1e-3));
    lo = std::min(lo, order);
    hi = std::max(hi, order);
  }
  const double worst = std::abs(lo - 3.0) > std::abs(hi - 3.0) ? lo : hi;
  return windowed("micro-order", worst, 2.8, 3.2);
}

SuiteResult bloch_suite(Sampler& rng, int trials) {
  double worst = 0.0;
  for (int k = 0; k < trials; ++k) {
    const Vec3 r = rng.ball_point(1.0);
    const Vec3 s = rng.vec(1.0);
    const Vec3 h = rng.vec(1.0);
    const std::vector<LindbladVector> ls = {{rng.cvec(0.5), 0.0}, {rng.cvec(0.5), 0.0}};

    std::vector<ComplexMatrix> ops;
    for (const auto& lv : ls) ops.push_back(brach::pauli_combination(lv.l));
    const LindbladSet l(std::move(ops));
    const HamiltonianOp hm(brach::pauli_combination(h));

    const CVec3 dr = brach::pauli_coefficients(
        lindblad::lindblad_rhs(brach::density_from_bloch(r), hm, l));
    const CVec3 ds = brach::pauli_coefficients(
        lindblad::adjoint_rhs(lindblad::CostateOperator(brach::pauli_combination(s)), hm, l));
    const Vec3 vr = brach::master_rhs_vec(r, h, ls);
    const Vec3 vs = brach::adjoint_rhs_vec(s, h, ls);
    for (int i = 0; i < 3; ++i) {
      worst = std::max(worst, std::abs(2.0 * dr[i] - vr[i]));
      worst = std::max(worst, std::abs(ds[i] - vs[i]));
    }
  }
  return bounded("bloch-consistency", worst, 1e-12);
}

SuiteResult residual_suite(Sampler& rng, int trials) {
  double worst = 0.0;
  for (int k = 0; k < std::max(1, trials / 20); ++k) {
    brach::BrachConfig cfg;
    cfg.omega = rng.uniform(0.1, 2.0);
    std::array<double, 3> g{rng.uniform(0, 1), rng.uniform(0, 1), rng.uniform(0, 1)};
    std::sort(g.begin(), g.end(), std::greater<>());
    cfg.gammas = g;
    cfg.t_max = 0.5;
    cfg.dt = 1e-3;
    cfg.conservation_tol = 1e-5;
    const Vec3 r0 = rng.ball_point(0.9);
    const Vec3 s0 = rng.vec(1.0);
    const TrajectoryRecord rec = brach::integrate(cfg, {r0}, {s0});
    std::vector<lindblad::ResidualSample> samples;
    for (const auto& smp : rec.samples) {
      samples.push_back({brach::density_from_bloch(smp.r).matrix(),
                         brach::pauli_combination(*smp.s),
                         brach::pauli_combination(*smp.h)});
    }
    worst = std::max(worst, lindblad::brachistochrone_residual(samples, rec.dt));
  }
  return bounded("brachistochrone-residual", worst, 1e-4);
}

}  // namespace

std::vector<SuiteResult> run_suites(const CheckOptions& opts) {
  // Each suite draws from its own stream so results do not depend on order.
  std::vector<SuiteResult> out;
  std::uint64_t stream = 0;
  auto next = [&] { return Sampler(opts.seed + 0x9E3779B97F4A7C15ULL * ++stream); };
  {
    Sampler rng = next();
    out.push_back(trace_suite(rng, opts.trials));
  }
  {
    Sampler rng = next();
    out.push_back(duality_suite(rng, opts.trials, opts.adjoint));
  }
  {
    Sampler rng = next();
    out.push_back(gauge_suite(rng, opts.trials));
  }
  {
    Sampler rng = next();
    out.push_back(time_functional_suite(rng, opts.trials));
  }
  {
    Sampler rng = next();
    out.push_back(kraus_suite(rng, opts.trials));
  }
  {
    Sampler rng = next();
    out.push_back(micro_suite(rng, opts.trials));
  }
  {
    Sampler rng = next();
    out.push_back(bloch_suite(rng, opts.trials));
  }
  {
    Sampler rng = next();
    out.push_back(residual_suite(rng, opts.trials));
  }
  return out;
}

void write_report(const std::vector<SuiteResult>& results, std::ostream& out) {
  char line[256];
  for (const auto& r : results) {
    if (r.low == 0.0) {
      std::snprintf(line, sizeof line, "%-26s %s  measured=%.3e  bound<=%.1e\n",
                    r.name.c_str(), r.passed ? "PASS" : "FAIL", r.measured, r.high);
    } else {
      std::snprintf(line, sizeof line, "%-26s %s  measured=%.4f  bound=[%.2f, %.2f]\n",
                    r.name.c_str(), r.passed ? "PASS" : "FAIL", r.measured, r.low, r.high);
    }
    out << line;
  }
}

}  // namespace qbrach::check
