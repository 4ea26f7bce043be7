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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qbrach/brachistochrone.hpp"
#include "qbrach/error.hpp"

using namespace qbrach;
using namespace qbrach::brach;
using qalg::Complex;
using qalg::ComplexMatrix;
using qalg::kI;

namespace {

double dist(const Vec3& a, const Vec3& b) { return norm(a - b); }

std::vector<LindbladVector> random_lindblads(std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  std::vector<LindbladVector> out;
  for (int a = 0; a < 2; ++a) {
    const CVec3 l{Complex(nd(rng), nd(rng)), Complex(nd(rng), nd(rng)), Complex(nd(rng), nd(rng))};
    out.push_back({Complex(0.4) * l, 0.0});
  }
  return out;
}

BrachConfig family_config() {
  BrachConfig cfg;
  cfg.omega = 0.002;
  cfg.gammas = {1.0, 0.0, 0.0};
  cfg.dt = 1e-3;
  cfg.t_max = 5.0;
  return cfg;
}

}  // namespace

TEST_SUITE("brachistochrone") {

TEST_CASE("Bloch parametrization round trip") {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 20; ++k) {
    const Vec3 r = oracle::random_ball(rng, 1.0);
    CHECK(dist(bloch_from_density(density_from_bloch(r)).r, r) < 1e-15);
  }
  const CVec3 c{Complex(1, 2), Complex(-0.5, 0.1), Complex(0.3, -0.7)};
  const CVec3 back = pauli_coefficients(pauli_combination(c));
  for (int i = 0; i < 3; ++i) CHECK(std::abs(back[i] - c[i]) < 1e-15);
  CHECK_THROWS_AS(density_from_bloch({0.0, 0.0, 1.5}), ValidationError);
}

TEST_CASE("vector equations match the matrix master equation") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec3 r = oracle::random_ball(rng, 1.0);
    const Vec3 s = oracle::random_ball(rng, 3.0);
    const Vec3 h = oracle::random_ball(rng, 2.0);
    const auto ls = random_lindblads(rng);
    std::vector<ComplexMatrix> ops;
    for (const auto& lv : ls) ops.push_back(pauli_combination(lv.l));
    const ComplexMatrix rho = density_from_bloch(r).matrix();
    const ComplexMatrix hm = pauli_combination(h);

    const ComplexMatrix drho = oracle::lindblad(rho, hm, ops);
    const Vec3 dr = master_rhs_vec(r, h, ls);
    for (int i = 0; i < 3; ++i) {
      CHECK(std::abs(dr[i] - oracle::mul(drho, oracle::sigma(i)).trace().real()) < 1e-12);
    }

    const lindblad::LindbladSet lset(ops);
    const ComplexMatrix ds = lindblad::adjoint_rhs(
        lindblad::CostateOperator(pauli_combination(s)), lindblad::HamiltonianOp(hm), lset);
    const Vec3 dsv = adjoint_rhs_vec(s, h, ls);
    for (int i = 0; i < 3; ++i) {
      CHECK(std::abs(dsv[i] - 0.5 * oracle::mul(ds, oracle::sigma(i)).trace().real()) < 1e-12);
    }
  }
}

TEST_CASE("K matrix") {
  const Vec3 r{0.3, -0.4, 0.5};
  const Vec3 s{-0.7, 0.2, 0.9};
  const KMatrix k = k_matrix(r, s);
  CHECK(qalg::hermiticity_defect(k.entries) == 0.0);
  // Reference eigenvalues from numpy.linalg.eigvalsh.
  const auto e = qalg::hermitian_eig(k.entries);
  CHECK(e.eigenvalues[0] == doctest::Approx(2.4698817728854787).epsilon(1e-13));
  CHECK(e.eigenvalues[1] == doctest::Approx(0.2851856167317792).epsilon(1e-13));
  CHECK(e.eigenvalues[2] == doctest::Approx(-2.435067389617257).epsilon(1e-13));

  // Parallel along e3: K = 2s [[0, -i, 0], [i, 0, 0], [0, 0, r]].
  const KMatrix kp = k_matrix({0.0, 0.0, 0.6}, {0.0, 0.0, 1.5});
  const ComplexMatrix expected = Complex(3.0) * ComplexMatrix::from_rows(
      {{0.0, -kI, 0.0}, {kI, 0.0, 0.0}, {0.0, 0.0, 0.6}});
  CHECK(oracle::dist(kp.entries, expected) < 1e-15);
}

TEST_CASE("frame reconstruction") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec3 r = oracle::random_ball(rng, 1.0);
    const Vec3 s = oracle::random_ball(rng, 2.0);
    const FrameBasis f = frame_from(r, s);
    const double c = std::cos(0.5 * f.theta);
    const double sn = std::sin(0.5 * f.theta);
    CHECK(dist(r, norm(r) * (c * f.e3 + sn * f.e1)) < 1e-12);
    CHECK(dist(s, norm(s) * (c * f.e3 - sn * f.e1)) < 1e-12);
    CHECK(std::abs(dot(f.e1, f.e2)) < 1e-14);
    CHECK(dist(cross(f.e1, f.e2), f.e3) < 1e-14);
  }
  const FrameBasis par = frame_from({0, 0, 0.5}, {0, 0, 2.0});
  CHECK(par.theta == 0.0);
  CHECK(std::abs(dot(par.e1, par.e3)) < 1e-15);
  CHECK(frame_from({0, 0, 0.5}, {0, 0, -2.0}).theta == doctest::Approx(std::numbers::pi));
  CHECK_THROWS_AS(frame_from({0, 0, 0}, {1, 0, 0}), ValidationError);
}

TEST_CASE("Lindblad vectors solve the eigenvalue problem") {
  std::mt19937_64 rng(4);
  const std::array<double, 3> gammas{0.9, 0.5, 0.2};
  std::array<CVec3, 3> prev{};
  for (int trial = 0; trial < 30; ++trial) {
    const Vec3 r = oracle::random_ball(rng, 1.0);
    const Vec3 s = oracle::random_ball(rng, 1.0);
    const KMatrix k = k_matrix(r, s);
    const LindbladSolution sol = lindblad_vectors(k, gammas);
    CHECK(sol.max_residual < 1e-10);
    CHECK(sol.eigenvalues[0] >= sol.eigenvalues[1]);
    CHECK(sol.eigenvalues[1] >= sol.eigenvalues[2]);
    for (int a = 0; a < 3; ++a) {
      CHECK(norm(sol.vectors[a].l) == doctest::Approx(gammas[a]));
      // Canonical phase: first non-negligible component real and positive.
      for (const auto& x : sol.directions[a]) {
        if (std::abs(x) > 1e-12) {
          CHECK(x.real() > 0.0);
          CHECK(std::abs(x.imag()) < 1e-15);
          break;
        }
      }
    }
    prev = sol.directions;
  }

  // Continuity: a nearby K keeps phases aligned with the previous vectors.
  const Vec3 r{0.2, 0.1, 0.6};
  const Vec3 s{-0.3, 0.5, 0.4};
  const LindbladSolution a = lindblad_vectors(k_matrix(r, s), gammas);
  const LindbladSolution b =
      lindblad_vectors(k_matrix(r + Vec3{1e-4, 0, 0}, s), gammas, a.directions);
  for (int i = 0; i < 3; ++i) {
    const Complex z = inner(a.directions[i], b.directions[i]);
    CHECK(z.real() > 0.999);
    CHECK(std::abs(z.imag()) < 1e-12);
  }
  CHECK_FALSE(b.crossing);
}

TEST_CASE("degenerate K follows the previous basis") {
  const std::array<double, 3> gammas{1.0, 0.5, 0.0};
  const double root = 1.0 / std::numbers::sqrt2;
  const std::array<CVec3, 3> prev{CVec3{root, Complex(0, root), 0.0},
                                  CVec3{root, Complex(0, -root), 0.0}, CVec3{0.0, 0.0, 1.0}};
  const LindbladSolution sol = lindblad_vectors(KMatrix{}, gammas, prev);
  for (int a = 0; a < 3; ++a) {
    CHECK(std::abs(inner(prev[a], sol.directions[a]) - 1.0) < 1e-12);
  }
}

TEST_CASE("optimal Hamiltonian vector") {
  BrachConfig cfg;
  cfg.omega = 2.0;
  const Vec3 h = hamiltonian_vec({1, 0, 0}, {0, 1, 0}, cfg);
  CHECK(dist(h, {0, 0, 2.0}) < 1e-15);
  cfg.sign = -1;
  CHECK(dist(hamiltonian_vec({1, 0, 0}, {0, 1, 0}, cfg), {0, 0, -2.0}) < 1e-15);
  cfg.degenerate_axis = {1, 0, 0};
  CHECK(dist(hamiltonian_vec({0, 0, 1}, {0, 0, 3}, cfg), {2.0, 0, 0}) < 1e-15);
}

TEST_CASE("configuration validation") {
  BrachConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.dt = 10.0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = BrachConfig{};
  cfg.gammas = {1.0, -0.1, 0.0};
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = BrachConfig{};
  cfg.sign = 0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = BrachConfig{};
  CHECK_THROWS_AS(integrate(cfg, {{0, 0, 1.1}}, {{0, 0, 1}}), ValidationError);
}

TEST_CASE("parallel closed form") {
  CHECK(parallel_case_solution(0.0, 0.3, 1.0, 0.5) == 0.3);
  CHECK(parallel_case_solution(50.0, 0.3, 1.0, 0.0) == doctest::Approx(1.0));
  CHECK(parallel_case_solution(50.0, 0.3, 0.0, 1.0) == doctest::Approx(-1.0));
  CHECK(parallel_case_solution(1.0, 1.0, 0.0, 1.0) == doctest::Approx(-1.0 + 2.0 * std::exp(-2.0)));
  CHECK(parallel_case_solution(50.0, 0.3, 1.0, 1.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(parallel_case_solution(1.0, 0.3, 0.0, 0.0), ValidationError);
}

TEST_CASE("integration along the parallel solution") {
  BrachConfig cfg;
  cfg.t_max = 3.0;
  const TrajectoryRecord rec = integrate(cfg, {{0, 0, 1}}, {{0, 0, -1}});
  CHECK(rec.samples.size() == 3001);
  double worst = 0.0;
  for (const auto& s : rec.samples) {
    worst = std::max(worst, std::abs(s.r[2] - parallel_case_solution(s.t, 1.0, 0.0, 1.0)));
  }
  CHECK(worst < 1e-8);
  CHECK(rec.max_bloch_norm() <= 1.0 + 1e-12);
}

TEST_CASE("sampling stride and recorded quantities") {
  BrachConfig cfg = family_config();
  cfg.t_max = 1.0;
  cfg.sample_stride = 10;
  cfg.target = Vec3{0, 0, -1};
  const Vec3 s0 = costate_direction({0, 0, 0.8}, cfg.degenerate_axis, std::numbers::pi / 3, -1.0);
  const TrajectoryRecord rec = integrate(cfg, {{0, 0, 0.8}}, {s0});
  CHECK(rec.samples.size() == 101);
  CHECK(rec.dt == doctest::Approx(1e-2));
  const auto& last = rec.samples.back();
  CHECK(last.t == doctest::Approx(1.0));
  REQUIRE(last.s);
  REQUIRE(last.h);
  REQUIRE(last.conserved);
  REQUIRE(last.fidelity);
  CHECK(norm(*last.h) == doctest::Approx(cfg.omega));
  CHECK(*last.fidelity == doctest::Approx(bloch_overlap(last.r, {0, 0, -1})));
  CHECK(last.purity == doctest::Approx(bloch_purity(last.r)));
  CHECK(rec.max_conserved_drift() < 1e-6);
}

TEST_CASE("initial-angle family reproduces reference endpoints") {
  // Endpoints from an independent adaptive DOP853 integration (rtol 1e-12)
  // of the same equations.
  const BrachConfig cfg = family_config();
  const std::pair<int, Vec3> refs[] = {
      {1, {7.9604559037839390e-02, 0.0, -9.9674395851696029e-01}},
      {3, {1.9784277331760325e-01, 0.0, -9.8014480996725872e-01}},
      {5, {-1.9518470082826800e-01, 0.0, -9.8071297569899163e-01}},
  };
  for (const auto& [n, ref] : refs) {
    const Vec3 s0 = costate_direction({0, 0, 0.8}, cfg.degenerate_axis, n * std::numbers::pi / 6, -1.0);
    const TrajectoryRecord rec = integrate(cfg, {{0, 0, 0.8}}, {s0});
    CHECK(dist(rec.samples.back().r, ref) < 1e-7);
    CHECK(rec.max_conserved_drift() < 1e-6);
  }
}

TEST_CASE("conservation breach raises") {
  BrachConfig cfg = family_config();
  cfg.omega = 1.0;
  cfg.conservation_tol = 1e-9;
  const Vec3 s0 = costate_direction({0, 0, 0.8}, cfg.degenerate_axis, std::numbers::pi / 2, -1.0);
  CHECK_THROWS_AS(integrate(cfg, {{0, 0, 0.8}}, {s0}), ToleranceError);
}

TEST_CASE("costate direction") {
  const Vec3 s = costate_direction({0, 0, 0.8}, {0, 0, 1}, std::numbers::pi / 2, 1.0);
  CHECK(dist(s, {1, 0, 0}) < 1e-15);
  CHECK(dist(costate_direction({0, 0, 0.8}, {0, 0, 1}, 0.0, -1.0), {0, 0, -1}) < 1e-15);
  CHECK(dist(costate_direction({0, 0, 0}, {0, 1, 0}, 0.0, 1.0), {0, 1, 0}) < 1e-15);
}

TEST_CASE("shooting over the initial angle") {
  BrachConfig cfg = family_config();
  cfg.t_max = 1.0;
  const BlochState r0{{0, 0, 0.8}};
  const BlochState target{{0.05, 0.0, -0.2}};
  const ShootResult res = shoot(cfg, r0, target, {0.0, std::numbers::pi / 2});
  for (double theta : {0.0, 0.3, 0.8, std::numbers::pi / 2}) {
    const Vec3 s0 = costate_direction(r0.r, cfg.degenerate_axis, theta, -1.0);
    CHECK(res.distance <= norm(integrate(cfg, r0, {s0}).samples.back().r - target.r) + 1e-9);
  }
  CHECK_THROWS_AS(shoot(cfg, r0, {{0.0, 0.3, 0.0}}, {0.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(shoot(cfg, r0, target, {1.0, 0.5}), ValidationError);

  BrachConfig zero = cfg;
  zero.t_max = 0.0;
  const ShootResult trivial = shoot(zero, r0, target, {0.0, 1.0});
  CHECK(trivial.distance == doctest::Approx(norm(r0.r - target.r)));
}

}  // TEST_SUITE
