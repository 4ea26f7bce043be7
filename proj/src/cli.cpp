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

#include "qbrach/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <utility>

#include <CLI11.hpp>

#include "qbrach/ancilla.hpp"
#include "qbrach/brachistochrone.hpp"
#include "qbrach/error.hpp"
#include "qbrach/lindblad.hpp"
#include "qbrach/nqubit.hpp"
#include "qbrach/output.hpp"

namespace qbrach::cli {
namespace {

using output::format_number;
using qalg::Complex;
using qalg::ComplexMatrix;

// Defaults for `brach`: initial angle set, start point and field strength.
constexpr double kBrachOmega = 0.002;
constexpr Vec3 kBrachR0{0.0, 0.0, 0.8};
constexpr Vec3 kDown{0.0, 0.0, -1.0};

struct Options {
  std::string out = "-";
  std::string format = "csv";
  std::uint64_t seed = check::CheckOptions{}.seed;

  std::optional<double> dt;
  std::optional<double> t_max;
  std::optional<double> omega;
  std::vector<double> gammas;
  std::vector<int> angle_n;
  std::optional<double> tau;
  std::optional<std::int64_t> steps;
  std::optional<double> p;
  std::optional<double> q;
  std::optional<double> b;
  std::vector<int> n_qubits;
  double threshold = 0.99;
  std::vector<double> r0;
  std::vector<double> h;
  std::vector<std::string> lindblad;
  int sign = 1;
  double costate_sign = -1.0;
  std::optional<double> conservation_tol;
  bool parallel = false;
  bool convergence = false;
};

using Summary = std::vector<std::pair<std::string, std::string>>;

Vec3 to_vec3(const std::vector<double>& v, const char* what) {
  if (v.size() != 3) {
    throw ValidationError(std::string(what) + ": expected three comma-separated values");
  }
  return {v[0], v[1], v[2]};
}

output::Format parse_format(const std::string& f) {
  return f == "json" ? output::Format::kJson : output::Format::kCsv;
}

std::string vec_text(const Vec3& v) {
  return format_number(v[0]) + "," + format_number(v[1]) + "," + format_number(v[2]);
}

// Time grid k dt, k = 0..floor(t_max/dt), plus t_max itself when it falls
// between grid points.
std::vector<double> time_grid(double dt, double t_max) {
  if (!(dt > 0.0) || !(t_max >= 0.0)) {
    throw ValidationError("time grid: need dt > 0 and t_max >= 0");
  }
  const auto n = static_cast<std::int64_t>(std::floor(t_max / dt + 1e-9));
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n) + 2);
  for (std::int64_t k = 0; k <= n; ++k) grid.push_back(static_cast<double>(k) * dt);
  if (t_max - grid.back() > 1e-12 * std::max(1.0, t_max)) grid.push_back(t_max);
  return grid;
}

class Emitter {
 public:
  Emitter(const Options& opts, std::ostream& out, std::ostream& err)
      : opts_(opts), out_(out), err_(err) {}

  bool data_on_stdout() const { return opts_.out == "-"; }

  /// Writes a trajectory to --out (tag empty) or a derived path. With
  /// --out - only untagged data goes to stdout; tagged files are skipped.
  void trajectory(const TrajectoryRecord& rec, const std::string& tag = {}) {
    const auto format = parse_format(opts_.format);
    if (data_on_stdout()) {
      if (tag.empty()) output::write_trajectory(rec, format, out_);
      return;
    }
    const std::string path = tag.empty() ? opts_.out : derived_path(opts_.out, tag);
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ValidationError("cannot open " + path + " for writing");
    output::write_trajectory(rec, format, file);
    if (!file) throw Error("write to " + path + " failed");
  }

  /// key = value lines, to stdout unless stdout carries data. A copy goes
  /// next to --out as <stem>_summary.txt.
  void summary(const Summary& lines) {
    std::ostream& dest = data_on_stdout() && single_stream_data_ ? err_ : out_;
    for (const auto& [k, v] : lines) dest << k << " = " << v << '\n';
    if (!data_on_stdout()) {
      std::filesystem::path path = derived_path(opts_.out, "summary");
      path.replace_extension(".txt");
      std::ofstream file(path, std::ios::binary);
      for (const auto& [k, v] : lines) file << k << " = " << v << '\n';
    }
  }

  void set_single_stream_data(bool v) { single_stream_data_ = v; }

 private:
  const Options& opts_;
  std::ostream& out_;
  std::ostream& err_;
  bool single_stream_data_ = true;
};

int cmd_evolve(const Options& o, Emitter& emit) {
  const double dt = o.dt.value_or(1e-3);
  const double t_max = o.t_max.value_or(5.0);
  const Vec3 h = o.h.empty() ? Vec3{0.0, 0.0, 1.0} : to_vec3(o.h, "--h");
  const Vec3 r0 = o.r0.empty() ? Vec3{1.0, 0.0, 0.0} : to_vec3(o.r0, "--r0");
  if (!(dt > 0.0) || !(t_max > 0.0)) throw ValidationError("evolve: need dt, t_max > 0");

  std::vector<ComplexMatrix> ops;
  std::vector<LindbladVector> lvs;
  for (const auto& spec : o.lindblad) {
    const CVec3 l = parse_complex_vector(spec);
    ops.push_back(brach::pauli_combination(l));
    lvs.push_back({l, norm(l)});
  }
  const lindblad::HamiltonianOp hop(brach::pauli_combination(h));
  const lindblad::LindbladSet lset(std::move(ops));
  ComplexMatrix rho = brach::density_from_bloch(r0).matrix();

  auto rhs = [&](const ComplexMatrix& m) { return lindblad::lindblad_rhs(m, hop, lset); };
  const auto steps = static_cast<std::int64_t>(std::floor(t_max / dt + 1e-9));

  TrajectoryRecord rec;
  rec.dt = dt;
  double norm_drift = 0.0;
  auto record = [&](double t) {
    const CVec3 c = brach::pauli_coefficients(rho);
    TrajectorySample s;
    s.t = t;
    s.r = {2.0 * c[0].real(), 2.0 * c[1].real(), 2.0 * c[2].real()};
    s.h = h;
    s.lindblads = lvs;
    s.purity = bloch_purity(s.r);
    norm_drift = std::max(norm_drift, std::abs(norm(s.r) - norm(r0)));
    rec.samples.push_back(std::move(s));
  };
  record(0.0);
  for (std::int64_t k = 0; k < steps; ++k) {
    const ComplexMatrix k1 = rhs(rho);
    const ComplexMatrix k2 = rhs(rho + Complex(0.5 * dt) * k1);
    const ComplexMatrix k3 = rhs(rho + Complex(0.5 * dt) * k2);
    const ComplexMatrix k4 = rhs(rho + Complex(dt) * k3);
    rho += Complex(dt / 6.0) * (k1 + Complex(2.0) * k2 + Complex(2.0) * k3 + k4);
    record(static_cast<double>(k + 1) * dt);
  }

  output::validate_record(rec, {});
  if (lset.empty() && norm_drift > 1e-9) {
    throw ToleranceError("evolve: |r| drifted by " + format_number(norm_drift) +
                         " under unitary evolution");
  }
  emit.trajectory(rec);
  emit.summary({{"command", "evolve"},
                {"rows", std::to_string(rec.samples.size())},
                {"final_r", vec_text(rec.samples.back().r)},
                {"max_norm_change", format_number(norm_drift)}});
  return kSuccess;
}

brach::BrachConfig brach_config(const Options& o) {
  brach::BrachConfig cfg;
  cfg.omega = o.omega.value_or(kBrachOmega);
  if (!o.gammas.empty()) {
    const Vec3 g = to_vec3(o.gammas, "--gammas");
    cfg.gammas = {g[0], g[1], g[2]};
  }
  cfg.sign = o.sign;
  cfg.dt = o.dt.value_or(1e-3);
  cfg.t_max = o.t_max.value_or(5.0);
  cfg.conservation_tol = o.conservation_tol.value_or(1e-6);
  cfg.target = kDown;
  cfg.validate();
  if (o.costate_sign != 1.0 && o.costate_sign != -1.0) {
    throw ValidationError("--costate-sign must be +1 or -1");
  }
  return cfg;
}

// Splits gamma^2 between raising, lowering and dephasing directions about
// +z; only the first two move r_z.
std::pair<double, double> parallel_rates(const brach::LindbladSolution& sol) {
  const double root = 1.0 / std::numbers::sqrt2;
  const CVec3 raising{root, Complex(0.0, root), 0.0};
  const CVec3 lowering{root, Complex(0.0, -root), 0.0};
  double plus = 0.0;
  double minus = 0.0;
  for (const auto& lv : sol.vectors) {
    plus += std::norm(inner(raising, lv.l));
    minus += std::norm(inner(lowering, lv.l));
  }
  return {std::sqrt(plus), std::sqrt(minus)};
}

int cmd_brach(const Options& o, Emitter& emit) {
  const brach::BrachConfig cfg = brach_config(o);
  const Vec3 r0 = o.r0.empty() ? kBrachR0 : to_vec3(o.r0, "--r0");
  if (norm(r0) > 1.0) throw ValidationError("brach: |r0| exceeds 1");
  emit.set_single_stream_data(false);

  std::vector<int> angles = o.angle_n;
  if (angles.empty()) angles = o.parallel ? std::vector<int>{0} : std::vector<int>{0, 1, 2, 3, 4, 5};
  if (o.parallel && (angles.size() != 1 || angles[0] != 0)) {
    throw ValidationError("brach: --parallel runs the single angle n = 0");
  }
  if (o.parallel && (std::abs(r0[0]) > 0.0 || std::abs(r0[1]) > 0.0 || r0[2] == 0.0)) {
    throw ValidationError("brach: --parallel needs r0 on the z axis");
  }

  Summary sum{{"command", "brach"},
              {"omega", format_number(cfg.omega)},
              {"gammas", vec_text({cfg.gammas[0], cfg.gammas[1], cfg.gammas[2]})},
              {"r0", vec_text(r0)}};
  for (int n : angles) {
    if (n < 0) throw ValidationError("--angle-n must be >= 0");
    const double theta = n * std::numbers::pi / 6.0;
    const Vec3 s0 = brach::costate_direction(r0, cfg.degenerate_axis, theta, o.costate_sign);
    const TrajectoryRecord rec = brach::integrate(cfg, {r0}, {s0});
    output::validate_record(rec, {1e-6, cfg.conservation_tol});
    const std::string tag = "n" + std::to_string(n);
    emit.trajectory(rec, tag);

    sum.emplace_back(tag + ".theta", format_number(theta));
    sum.emplace_back(tag + ".max_conserved_drift", format_number(rec.max_conserved_drift()));
    sum.emplace_back(tag + ".final_r", vec_text(rec.samples.back().r));
    sum.emplace_back(tag + ".final_distance_to_down",
                     format_number(norm(rec.samples.back().r - kDown)));
    for (const auto& note : rec.notes) sum.emplace_back(tag + ".note", note);

    if (o.parallel) {
      const double sn = norm(s0);
      const brach::LindbladSolution sol = brach::lindblad_vectors(
          brach::k_matrix(r0, (1.0 / sn) * s0), cfg.gammas);
      const auto [gp, gm] = parallel_rates(sol);
      double dev = 0.0;
      for (const auto& smp : rec.samples) {
        dev = std::max(dev, std::abs(smp.r[2] - brach::parallel_case_solution(
                                                    smp.t, r0[2], gp, gm)));
      }
      sum.emplace_back("parallel.gamma_plus", format_number(gp));
      sum.emplace_back("parallel.gamma_minus", format_number(gm));
      sum.emplace_back("parallel.max_deviation", format_number(dev));
    }
  }
  emit.summary(sum);
  return kSuccess;
}

int cmd_ancilla(const Options& o, Emitter& emit) {
  ancilla::MicroConfig cfg;
  cfg.tau = o.tau.value_or(1e-3);
  cfg.steps = o.steps.value_or(5000);
  const double p = o.p.value_or(1.0);
  const double q = o.q.value_or(0.0);
  const double b = o.b.value_or(1.0);
  cfg.couplings = ancilla::CouplingMatrix::special(p, q);
  cfg.ancilla.b = {0.0, 0.0, b};
  const Vec3 r0 = o.r0.empty() ? Vec3{0.0, 0.0, 0.0} : to_vec3(o.r0, "--r0");
  if (norm(r0) > 1.0) throw ValidationError("ancilla: |r0| exceeds 1");
  cfg.validate();

  const TrajectoryRecord rec = ancilla::run_micro(cfg, r0);
  output::validate_record(rec, {1e-12, std::nullopt});
  const double dev = ancilla::damping_deviation(rec, r0[2], b, p, cfg.tau);
  emit.trajectory(rec);

  Summary sum{{"command", "ancilla"},
              {"tau", format_number(cfg.tau)},
              {"steps", std::to_string(cfg.steps)},
              {"final_r", vec_text(rec.samples.back().r)},
              {"max_damping_deviation", format_number(dev)}};
  for (const auto& note : rec.notes) sum.emplace_back("note", note);
  if (o.convergence) {
    ancilla::MicroConfig half = cfg;
    half.tau = 0.5 * cfg.tau;
    half.steps = 2 * cfg.steps;
    const TrajectoryRecord fine = ancilla::run_micro(half, r0);
    const double dev_half = ancilla::damping_deviation(fine, r0[2], b, p, half.tau);
    sum.emplace_back("half_tau_deviation", format_number(dev_half));
    sum.emplace_back("error_ratio", format_number(dev / dev_half));
  }
  emit.summary(sum);
  return kSuccess;
}

TrajectoryRecord closed_curve(const nqubit::NQubitConfig& cfg,
                              const std::vector<double>& grid) {
  TrajectoryRecord rec;
  rec.dt = grid.size() > 1 ? grid[1] - grid[0] : 0.0;
  for (double t : grid) {
    const auto rho = nqubit::reduced_state(cfg, t);
    TrajectorySample s;
    s.t = t;
    s.r = brach::bloch_from_density(rho).r;
    s.purity = bloch_purity(s.r);
    s.fidelity = rho.matrix()(1, 1).real();
    rec.samples.push_back(std::move(s));
  }
  return rec;
}

int cmd_closed(const Options& o, Emitter& emit) {
  if (o.n_qubits.size() > 1) throw ValidationError("closed: give a single --n-qubits");
  nqubit::NQubitConfig cfg;
  cfg.n = o.n_qubits.empty() ? 1 : o.n_qubits.front();
  cfg.omega = o.omega.value_or(1.0);
  cfg.validate();
  const double t_opt = nqubit::optimal_time(cfg);
  const auto grid = time_grid(o.dt.value_or(1e-3), o.t_max.value_or(t_opt));

  const TrajectoryRecord rec = closed_curve(cfg, grid);
  output::validate_record(rec, {1e-12, std::nullopt});
  emit.trajectory(rec);

  std::string first = "not reached";
  for (const auto& s : rec.samples) {
    if (*s.fidelity >= 1.0 - 1e-9) {
      first = format_number(s.t);
      break;
    }
  }
  emit.summary({{"command", "closed"},
                {"n_qubits", std::to_string(cfg.n)},
                {"omega", format_number(cfg.omega)},
                {"optimal_time", format_number(t_opt)},
                {"fidelity_at_optimal_time",
                 format_number(nqubit::reduced_state(cfg, t_opt).matrix()(1, 1).real())},
                {"first_grid_time_above_1-1e-9", first}});
  return kSuccess;
}

using Curve = std::function<double(double)>;

double bisect(const Curve& f, double lo, double hi) {
  // f(lo) < 0 <= f(hi)
  for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) >= 0.0 ? hi : lo) = mid;
  }
  return hi;
}

// First grid interval where g turns from negative to non-negative, refined.
std::optional<double> first_upcrossing(const Curve& g, const std::vector<double>& grid) {
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (g(grid[k - 1]) < 0.0 && g(grid[k]) >= 0.0) return bisect(g, grid[k - 1], grid[k]);
  }
  return std::nullopt;
}

std::string time_text(const std::optional<double>& t) {
  return t ? format_number(*t) : std::string("not reached");
}

int cmd_compare(const Options& o, Emitter& emit) {
  emit.set_single_stream_data(false);
  const double omega = o.omega.value_or(1.0);
  const double p = o.p.value_or(0.5);
  const double tau = o.tau.value_or(1.0);
  if (!(tau > 0.0)) throw ValidationError("compare: tau must be positive");
  const double threshold = o.threshold;
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw ValidationError("compare: threshold must lie in (0, 1]");
  }
  const int n_max = o.n_qubits.empty() ? 3 : o.n_qubits.front();
  if (o.n_qubits.size() > 1 || n_max < 1 || n_max > nqubit::kMaxQubits) {
    throw ValidationError("compare: --n-qubits takes one value in [1, 12]");
  }
  const auto grid = time_grid(o.dt.value_or(1e-3), o.t_max.value_or(std::numbers::pi));

  const Curve dashed = [&](double t) {
    return 0.5 * (1.0 - ancilla::damping_solution(t, 1.0, 1.0, p, tau));
  };
  TrajectoryRecord drec;
  for (double t : grid) {
    TrajectorySample s;
    s.t = t;
    s.r = {0.0, 0.0, ancilla::damping_solution(t, 1.0, 1.0, p, tau)};
    s.purity = bloch_purity(s.r);
    s.fidelity = dashed(t);
    drec.samples.push_back(std::move(s));
  }
  output::validate_record(drec, {1e-12, std::nullopt});
  emit.trajectory(drec, "dashed");

  auto reach = [&](const Curve& f) -> std::optional<double> {
    if (f(0.0) >= threshold) return 0.0;
    return first_upcrossing([&](double t) { return f(t) - threshold; }, grid);
  };
  const auto dashed_reach = reach(dashed);

  Summary sum{{"command", "compare"},
              {"omega", format_number(omega)},
              {"dashed_rate", format_number(4.0 * p * p * tau)},
              {"threshold", format_number(threshold)},
              {"dashed.reaches_threshold", time_text(dashed_reach)}};
  for (int n = 1; n <= n_max; ++n) {
    const nqubit::NQubitConfig cfg{n, omega};
    const TrajectoryRecord rec = closed_curve(cfg, grid);
    output::validate_record(rec, {1e-12, std::nullopt});
    const std::string tag = "n" + std::to_string(n);
    emit.trajectory(rec, tag);

    const Curve solid = [&](double t) {
      return nqubit::reduced_state(cfg, t).matrix()(1, 1).real();
    };
    const auto crossing =
        first_upcrossing([&](double t) { return solid(t) - dashed(t); }, grid);
    const auto solid_reach = reach(solid);
    std::string first;
    if (!solid_reach && !dashed_reach) {
      first = "neither";
    } else if (solid_reach && (!dashed_reach || *solid_reach < *dashed_reach)) {
      first = "single-measurement";
    } else if (dashed_reach && (!solid_reach || *dashed_reach < *solid_reach)) {
      first = "repeated-measurement";
    } else {
      first = "tie";
    }
    sum.emplace_back(tag + ".optimal_time", format_number(nqubit::optimal_time(cfg)));
    sum.emplace_back(tag + ".crossing_time",
                     crossing ? format_number(*crossing) : std::string("no crossing in range"));
    sum.emplace_back(tag + ".reaches_threshold", time_text(solid_reach));
    sum.emplace_back(tag + ".first_to_threshold", first);
  }
  emit.summary(sum);
  return kSuccess;
}

int cmd_check(const Options& o, std::ostream& out, const Hooks& hooks) {
  check::CheckOptions opts;
  opts.seed = o.seed;
  if (hooks.adjoint) opts.adjoint = hooks.adjoint;
  const auto results = check::run_suites(opts);
  if (o.out == "-") {
    check::write_report(results, out);
  } else {
    std::ofstream file(o.out, std::ios::binary);
    if (!file) throw ValidationError("cannot open " + o.out + " for writing");
    check::write_report(results, file);
  }
  const bool ok = std::all_of(results.begin(), results.end(),
                              [](const auto& r) { return r.passed; });
  return ok ? kSuccess : kSuiteFailure;
}

void add_options(CLI::App& app, Options& o) {
  app.set_config("--config", "", "Flat `key = value` file; keys are long flag names")
      ->check(CLI::ExistingFile);
  app.add_option("--out", o.out, "Output path, - for stdout")->capture_default_str();
  app.add_option("--format", o.format, "Trajectory format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--seed", o.seed, "Seed of the randomized check suites")->capture_default_str();
  app.add_option("--dt", o.dt, "Step or grid spacing [1e-3]");
  app.add_option("--t-max", o.t_max,
                 "End time [evolve, brach: 5; closed: optimal time; compare: pi]");
  app.add_option("--omega", o.omega,
                 "Hamiltonian scale [brach: 0.002; closed, compare: 1]");
  app.add_option("--gammas", o.gammas, "Lindblad magnitudes a,b,c [1,0,0]")->delimiter(',');
  app.add_option("--angle-n", o.angle_n, "Initial angles n*pi/6 [0..5]")->delimiter(',');
  app.add_option("--tau", o.tau, "Interaction time [ancilla: 1e-3; compare: 1]");
  app.add_option("--steps", o.steps, "Number of interactions [5000]");
  app.add_option("--p", o.p, "Flip-flop coupling [ancilla: 1; compare: 0.5]");
  app.add_option("--q", o.q, "zz coupling [0]");
  app.add_option("--b", o.b, "Ancilla Bloch z component [1]");
  app.add_option("--n-qubits", o.n_qubits, "Qubits in the closed model [closed: 1; compare: 3]")
      ->delimiter(',');
  app.add_option("--threshold", o.threshold, "Fidelity threshold")->capture_default_str();
  app.add_option("--r0", o.r0, "Initial Bloch vector x,y,z")->delimiter(',');
  app.add_option("--h", o.h, "Hamiltonian Pauli coefficients [0,0,1]")->delimiter(',');
  app.add_option("--lindblad", o.lindblad,
                 "Lindblad Pauli coefficients x,y,z (complex, e.g. 0.5,-0.5i,0); repeatable")
      ->take_all()
      ->allow_extra_args(false);
  app.add_option("--sign", o.sign, "Branch of the optimal Hamiltonian")
      ->check(CLI::IsMember({-1, 1}))
      ->capture_default_str();
  app.add_option("--costate-sign", o.costate_sign, "Sign of the initial costate")
      ->capture_default_str();
  app.add_option("--conservation-tol", o.conservation_tol, "Allowed drift of r x s [1e-6]");
  app.add_flag("--parallel", o.parallel, "brach: parallel r, s run checked against the closed form");
  app.add_flag("--convergence", o.convergence, "ancilla: also run tau/2 and report the error ratio");
}

}  // namespace

std::complex<double> parse_complex(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ' && c != '\t') s.push_back(c);
  }
  auto bad = [&] { return ValidationError("cannot parse complex number '" + std::string(text) + "'"); };
  if (s.empty()) throw bad();

  // Splits into at most two signed terms, each real or imaginary.
  std::vector<std::string> terms;
  std::size_t start = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    const bool sign = s[i] == '+' || s[i] == '-';
    const bool exponent = s[i - 1] == 'e' || s[i - 1] == 'E';
    if (sign && !exponent) {
      terms.push_back(s.substr(start, i - start));
      start = i;
    }
  }
  terms.push_back(s.substr(start));
  if (terms.size() > 2) throw bad();

  Complex value = 0.0;
  bool seen_re = false;
  bool seen_im = false;
  for (std::string term : terms) {
    const bool imag = term.back() == 'i' || term.back() == 'j';
    if (imag) {
      term.pop_back();
      if (term.empty() || term == "+") term += "1";
      if (term == "-") term += "1";
    }
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(term, &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != term.size() || !std::isfinite(x)) throw bad();
    if (imag) {
      if (seen_im) throw bad();
      seen_im = true;
      value += Complex(0.0, x);
    } else {
      if (seen_re) throw bad();
      seen_re = true;
      value += x;
    }
  }
  return value;
}

CVec3 parse_complex_vector(std::string_view text) {
  CVec3 out{};
  std::size_t idx = 0;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string_view part = text.substr(start, comma == std::string_view::npos
                                                         ? std::string_view::npos
                                                         : comma - start);
    if (idx >= 3) throw ValidationError("expected three components in '" + std::string(text) + "'");
    out[idx++] = parse_complex(part);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (idx != 3) throw ValidationError("expected three components in '" + std::string(text) + "'");
  return out;
}

std::string derived_path(const std::string& path, const std::string& tag) {
  const std::filesystem::path p(path);
  std::filesystem::path name = p.stem();
  name += "_" + tag;
  name += p.extension();
  return (p.parent_path() / name).string();
}

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err,
        const Hooks& hooks) {
  CLI::App app{"Time-optimal open-system evolutions: trajectories and diagnostics", "qbrach"};
  app.set_help_flag("--help", "Print this help message and exit");
  Options o;
  add_options(app, o);
  app.require_subcommand(1);
  auto* evolve = app.add_subcommand("evolve", "Integrate the master equation for one qubit");
  auto* brach = app.add_subcommand("brach", "Optimal state/costate trajectories");
  auto* anc = app.add_subcommand("ancilla", "Repeated ancilla interactions");
  auto* closed = app.add_subcommand("closed", "n-qubit unitary plus final measurement");
  auto* compare = app.add_subcommand("compare", "Repeated versus single measurement fidelity");
  auto* chk = app.add_subcommand("check", "Randomized invariant suites");
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kValidationFailure;
  }

  try {
    Emitter emit(o, out, err);
    if (evolve->parsed()) return cmd_evolve(o, emit);
    if (brach->parsed()) return cmd_brach(o, emit);
    if (anc->parsed()) return cmd_ancilla(o, emit);
    if (closed->parsed()) return cmd_closed(o, emit);
    if (compare->parsed()) return cmd_compare(o, emit);
    if (chk->parsed()) return cmd_check(o, out, hooks);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const ToleranceError& e) {
    err << "tolerance breach: " << e.what() << '\n';
    return kToleranceBreach;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  }
  return kValidationFailure;
}

}  // namespace qbrach::cli
