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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qbrach/vec3.hpp"

namespace qbrach {

/// A Lindblad operator L = l . sigma in vector form, |l| = gamma.
struct LindbladVector {
  CVec3 l{};
  double gamma = 0.0;
};

/// One time-stamped sample. Quantities a run does not produce stay empty.
struct TrajectorySample {
  double t = 0.0;
  Vec3 r{};
  std::optional<Vec3> s;
  std::optional<Vec3> h;
  std::vector<LindbladVector> lindblads;
  double purity = 0.0;
  std::optional<Vec3> conserved;
  std::optional<double> fidelity;
};

struct TrajectoryRecord {
  std::vector<TrajectorySample> samples;
  double dt = 0.0;
  /// Human-readable events (eigenvalue crossings, regime warnings).
  std::vector<std::string> notes;
  /// Largest eigen-equation residual seen by a solver that tracks one.
  double max_eigen_residual = 0.0;

  /// Largest ||c(t) - c(0)|| over samples that carry the conserved vector.
  double max_conserved_drift() const;
  /// Largest |r(t)| over the run.
  double max_bloch_norm() const;
};

/// Purity Tr(rho^2) of a one-qubit state with Bloch vector r.
inline double bloch_purity(const Vec3& r) { return 0.5 * (1.0 + dot(r, r)); }

/// Tr(rho rho_target) = (1 + r . r_target)/2; the fidelity for a pure target.
inline double bloch_overlap(const Vec3& r, const Vec3& target) {
  return 0.5 * (1.0 + dot(r, target));
}

}  // namespace qbrach
