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

// Trajectory serialization and the post-run validation pass.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "qbrach/trajectory.hpp"

namespace qbrach::output {

inline constexpr const char* kCsvHeader =
    "t,r_x,r_y,r_z,s_x,s_y,s_z,h_x,h_y,h_z,purity,conserved_x,conserved_y,"
    "conserved_z,fidelity";

enum class Format { kCsv, kJson };

/// Shortest decimal that reads back to the same double.
std::string format_number(double x);

void write_csv(const TrajectoryRecord& rec, std::ostream& out);
void write_json(const TrajectoryRecord& rec, std::ostream& out);
void write_trajectory(const TrajectoryRecord& rec, Format format, std::ostream& out);

struct ValidationLimits {
  /// Allowed excess of |r| over 1.
  double bloch_slack = 1e-9;
  /// Allowed ||c(t) - c(0)|| for samples carrying the conserved vector.
  std::optional<double> conserved_tol;
};

/// Throws ToleranceError unless times increase strictly, every value is
/// finite, |r| <= 1 + slack, purity matches r, fidelity lies in [0, 1] and
/// the conserved vector stays within tolerance.
void validate_record(const TrajectoryRecord& rec, const ValidationLimits& limits);

}  // namespace qbrach::output
