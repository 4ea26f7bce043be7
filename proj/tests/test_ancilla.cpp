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
#include "qbrach/ancilla.hpp"
#include "qbrach/error.hpp"

using namespace qbrach;
using namespace qbrach::ancilla;
using qalg::Complex;
using qalg::ComplexMatrix;
using qalg::kI;

namespace {

CouplingMatrix random_couplings(std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> nd;
  CouplingMatrix c;
  for (auto& row : c.h) {
    for (double& x : row) x = scale * nd(rng);
  }
  return c;
}

CouplingMatrix sample_couplings() {
  CouplingMatrix c;
  c.h = {{{0.3, -0.1, 0.2}, {0.05, 0.4, -0.3}, {0.1, 0.2, -0.25}}};
  return c;
}

}  // namespace

TEST_SUITE("ancilla") {

TEST_CASE("two-qubit Hamiltonian") {
  const ComplexMatrix special = hab_build(CouplingMatrix::special(1.0, 0.0));
  const ComplexMatrix expected =
      oracle::add(oracle::kron(oracle::sigma(0), oracle::sigma(1)),
                  oracle::kron(oracle::sigma(1), oracle::sigma(0)));
  CHECK(oracle::dist(special, expected) < 1e-15);
  CHECK(hab_build(CouplingMatrix{}).frobenius_norm() == 0.0);
  std::mt19937_64 rng(1);
  CHECK(qalg::hermiticity_defect(hab_build(random_couplings(rng, 1.0))) < 1e-15);

  const ComplexMatrix with_q = hab_build(CouplingMatrix::special(0.5, 2.0));
  CHECK(oracle::dist(with_q, oracle::add(Complex(0.5) * expected,
                                         oracle::kron(oracle::sigma(2), oracle::sigma(2)), 2.0)) <
        1e-15);
}

TEST_CASE("single interaction step") {
  const auto rho = brach::density_from_bloch({0.3, -0.2, 0.5});
  const AncillaState b{{0.2, 0.4, -0.6}};
  CHECK(oracle::dist(micro_step(rho, sample_couplings(), b, 0.0).matrix(), rho.matrix()) < 1e-15);

  // Reference Bloch vector from scipy.linalg.expm and an explicit partial trace.
  const auto out = micro_step(rho, sample_couplings(), b, 0.1);
  const Vec3 r = brach::bloch_from_density(out).r;
  CHECK(r[0] == doctest::Approx(0.34274462898356023).epsilon(1e-12));
  CHECK(r[1] == doctest::Approx(-0.17274397565905658).epsilon(1e-12));
  CHECK(r[2] == doctest::Approx(0.47650856410720077).epsilon(1e-12));
  CHECK(std::abs(out.matrix().trace() - 1.0) < 1e-14);
  CHECK(out.min_eigenvalue() > -1e-12);

  // Down system, up ancilla: fixed point of the flip-flop coupling.
  const auto down = brach::density_from_bloch({0, 0, -1});
  const auto stay = micro_step(down, CouplingMatrix::special(1.0, 0.3), {{0, 0, 1}}, 0.05);
  CHECK(oracle::dist(stay.matrix(), down.matrix()) < 1e-14);
}

TEST_CASE("step agrees with the second-order expansion to third order") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const CouplingMatrix c = random_couplings(rng, 1.0);
    const AncillaState b{oracle::random_ball(rng, 1.0)};
    const auto rho = brach::density_from_bloch(oracle::random_ball(rng, 1.0));
    auto defect = [&](double tau) {
      return oracle::dist(micro_step(rho, c, b, tau).matrix(),
                          second_order_step(rho.matrix(), c, b, tau));
    };
    const double order = std::log2(defect(2e-3) / defect(1e-3));
    CHECK(order > 2.8);
    CHECK(order < 3.2);
  }
}

TEST_CASE("effective Hamiltonian") {
  const auto h = effective_hamiltonian(CouplingMatrix::special(0.7, 1.3), {{0, 0, 0.4}});
  CHECK(oracle::dist(h.matrix(), Complex(1.3 * 0.4) * oracle::sigma(2)) < 1e-15);
  CHECK(effective_hamiltonian(sample_couplings(), {{0, 0, 0}}).matrix().frobenius_norm() == 0.0);
  std::mt19937_64 rng(3);
  const auto r = effective_hamiltonian(random_couplings(rng, 1.0), {oracle::random_ball(rng, 1.0)});
  CHECK(r.is_traceless());
}

TEST_CASE("Lindblad matrix of the special coupling") {
  const double p = 0.8, q = 1.7, b = 0.35;
  const LindbladMatrix a = lindblad_matrix(CouplingMatrix::special(p, q), {{0, 0, b}});
  const ComplexMatrix expected = ComplexMatrix::from_rows({{p * p, kI * b * p * p, 0.0},
                                                           {-kI * b * p * p, p * p, 0.0},
                                                           {0.0, 0.0, q * q}});
  CHECK(oracle::dist(a.a, expected) < 1e-15);

  const auto eig = qalg::hermitian_eig(a.a);
  CHECK(eig.eigenvalues[0] == doctest::Approx(q * q));
  CHECK(eig.eigenvalues[1] == doctest::Approx(p * p * (1 + b)));
  CHECK(eig.eigenvalues[2] == doctest::Approx(p * p * (1 - b)));
}

TEST_CASE("Lindblad matrix without ancilla polarization is h h^T") {
  std::mt19937_64 rng(4);
  const CouplingMatrix c = random_couplings(rng, 1.0);
  const LindbladMatrix a = lindblad_matrix(c, {{0, 0, 0}});
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      double v = 0.0;
      for (int l = 0; l < 3; ++l) v += c.h[j][l] * c.h[k][l];
      CHECK(std::abs(a.a(j, k) - v) < 1e-15);
    }
  }
}

TEST_CASE("induced Lindblad operators reproduce the expansion") {
  std::mt19937_64 rng(5);
  const double tau = 1e-2;
  for (int trial = 0; trial < 10; ++trial) {
    const CouplingMatrix c = random_couplings(rng, 1.0);
    const AncillaState b{oracle::random_ball(rng, 1.0)};
    const ComplexMatrix rho = brach::density_from_bloch(oracle::random_ball(rng, 1.0)).matrix();
    const InducedLindblads ind = induced_lindblads(lindblad_matrix(c, b), tau);
    const auto h = effective_hamiltonian(c, b);
    const ComplexMatrix step =
        oracle::add(rho, lindblad::lindblad_rhs(rho, h, ind.set), tau);
    CHECK(oracle::dist(step, second_order_step(rho, c, b, tau)) < 1e-14);
  }
}

TEST_CASE("special-case eigenvectors are the raising, lowering and z directions") {
  const InducedLindblads ind =
      induced_lindblads(lindblad_matrix(CouplingMatrix::special(1.0, 0.5), {{0, 0, 0.6}}), 1e-3);
  const double root = 1.0 / std::numbers::sqrt2;
  const CVec3 lowering{root, Complex(0, -root), 0.0};
  const CVec3 raising{root, Complex(0, root), 0.0};
  const CVec3 ez{0.0, 0.0, 1.0};
  auto column = [&](int k) {
    return CVec3{ind.directions(0, k), ind.directions(1, k), ind.directions(2, k)};
  };
  // Eigenvalues p^2 (1 + b) = 1.6, p^2 (1 - b) = 0.4, q^2 = 0.25.
  CHECK(ind.alphas[0] == doctest::Approx(1.6));
  CHECK(std::abs(std::abs(inner(lowering, column(0))) - 1.0) < 1e-10);
  CHECK(std::abs(std::abs(inner(raising, column(1))) - 1.0) < 1e-10);
  CHECK(std::abs(std::abs(inner(ez, column(2))) - 1.0) < 1e-10);

  const SpecialGammas g = gammas_from_special(1.0, 0.5, 0.6, 1e-3);
  CHECK(ind.set.gammas()[0] == doctest::Approx(g.minus));
  CHECK(ind.set.gammas()[1] == doctest::Approx(g.plus));
  CHECK(ind.set.gammas()[2] == doctest::Approx(g.zero));
}

TEST_CASE("non-positive Lindblad matrix is rejected") {
  LindbladMatrix a;
  a.a(0, 0) = 1.0;
  a.a(1, 1) = -1e-3;
  CHECK_THROWS_AS(induced_lindblads(a, 1e-2), ValidationError);
  a.a(1, 1) = -1e-13;
  const InducedLindblads ok = induced_lindblads(a, 1e-2);
  CHECK(ok.warnings.size() == 1);
  CHECK(ok.alphas[2] == 0.0);
}

TEST_CASE("commutativity residuals") {
  const LindbladMatrix a = lindblad_matrix(CouplingMatrix::special(1.0, 0.4), {{0, 0, 0.7}});
  const brach::KMatrix k = brach::k_matrix({0, 0, 0.6}, {0, 0, -1.2});
  const CommutatorResidual res = commutativity_check(a, k);
  CHECK(res.hermitian < 1e-12);
  CHECK(res.anti_hermitian < 1e-12);

  LindbladMatrix id;
  id.a = ComplexMatrix::identity(3);
  std::mt19937_64 rng(6);
  const brach::KMatrix kr = brach::k_matrix(oracle::random_ball(rng, 1), oracle::random_ball(rng, 1));
  CHECK(commutativity_check(id, kr).anti_hermitian == 0.0);

  const LindbladMatrix generic = lindblad_matrix(random_couplings(rng, 1.0), {oracle::random_ball(rng, 1)});
  const CommutatorResidual gen = commutativity_check(generic, kr);
  const ComplexMatrix c = qalg::commutator(generic.a, kr.entries);
  CHECK(gen.anti_hermitian == doctest::Approx(c.frobenius_norm()));
  CHECK(gen.anti_hermitian > 1e-3);
  CHECK(gen.hermitian < 1e-14);
}

TEST_CASE("special-case magnitudes") {
  const SpecialGammas up = gammas_from_special(2.0, 3.0, 1.0, 1e-2);
  CHECK(up.plus == 0.0);
  CHECK(up.minus == doctest::Approx(std::sqrt(2e-2) * 2.0));
  CHECK(up.zero == doctest::Approx(std::sqrt(1e-2) * 3.0));
  const SpecialGammas mixed = gammas_from_special(2.0, 0.0, 0.0, 1e-2);
  CHECK(mixed.plus == doctest::Approx(mixed.minus));
  CHECK(mixed.plus == doctest::Approx(0.2));
  const SpecialGammas none = gammas_from_special(0.0, 0.0, 0.5, 1e-2);
  CHECK(none.plus + none.minus + none.zero == 0.0);
  CHECK_THROWS_AS(gammas_from_special(1.0, 0.0, 1.5, 1e-2), ValidationError);
}

TEST_CASE("damping closed form") {
  CHECK(damping_solution(0.0, 0.3, 1.0, 1.0, 1e-2) == doctest::Approx(0.3));
  CHECK(damping_solution(2.0, 0.0, 1.0, 1.0, 0.25) == doctest::Approx(-1.0 + std::exp(-2.0)));
  CHECK(damping_solution(2.0, 0.6, 0.0, 1.0, 0.25) == doctest::Approx(0.6 * std::exp(-2.0)));
}

TEST_CASE("repeated interactions") {
  MicroConfig cfg;
  cfg.tau = 1e-2;
  cfg.steps = 200;
  cfg.ancilla.b = {0, 0, 1};
  const TrajectoryRecord idle = run_micro(cfg, {0.1, 0.2, 0.3});
  for (const auto& s : idle.samples) CHECK(norm(s.r - Vec3{0.1, 0.2, 0.3}) < 1e-15);

  cfg.couplings = CouplingMatrix::special(1.0, 0.0);
  const TrajectoryRecord cool = run_micro(cfg, {0, 0, 0});
  CHECK(cool.samples.size() == 201);
  CHECK(cool.samples.back().t == doctest::Approx(2.0));
  CHECK(damping_deviation(cool, 0.0, 1.0, 1.0, cfg.tau) < 1e-4);
  for (std::size_t k = 1; k < cool.samples.size(); ++k) {
    CHECK(*cool.samples[k].fidelity >= *cool.samples[k - 1].fidelity);
  }

  cfg.couplings = CouplingMatrix::special(1.0, 2.5);
  const TrajectoryRecord with_q = run_micro(cfg, {0, 0, 0});
  for (std::size_t k = 0; k < cool.samples.size(); ++k) {
    CHECK(std::abs(with_q.samples[k].r[2] - cool.samples[k].r[2]) < 1e-12);
  }
  CHECK(cool.notes.empty());
}

TEST_CASE("scheduled couplings and regime warning") {
  MicroConfig cfg;
  cfg.tau = 0.2;
  cfg.steps = 3;
  cfg.couplings = CouplingMatrix::special(1.0, 0.0);
  cfg.ancilla.b = {0, 0, 1};
  CHECK(cfg.outside_markov_regime());
  const TrajectoryRecord rec = run_micro(cfg, {0, 0, 0});
  CHECK(rec.notes.size() == 1);

  int calls = 0;
  cfg.schedule = [&](std::int64_t) {
    ++calls;
    return CouplingMatrix{};
  };
  const TrajectoryRecord frozen = run_micro(cfg, {0, 0, 0.5});
  CHECK(calls == 3);
  CHECK(frozen.samples.back().r[2] == doctest::Approx(0.5));

  cfg.steps = 0;
  CHECK_THROWS_AS(run_micro(cfg, {0, 0, 0}), ValidationError);
  cfg.steps = 1;
  cfg.ancilla.b = {0, 0, 1.1};
  CHECK_THROWS_AS(run_micro(cfg, {0, 0, 0}), ValidationError);
}

}  // TEST_SUITE
