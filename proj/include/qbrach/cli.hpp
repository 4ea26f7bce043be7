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

#include <complex>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qbrach/check.hpp"
#include "qbrach/vec3.hpp"

namespace qbrach::cli {

enum ExitCode : int {
  kSuccess = 0,
  kValidationFailure = 1,
  kToleranceBreach = 2,
  kSuiteFailure = 3,
};

struct Hooks {
  /// Replaces the dual generator used by the duality suite of `check`.
  check::AdjointFn adjoint;
};

/// Runs one command line (without the program name). Data goes to the
/// --out path or `out`; summaries and diagnostics to `out` or `err`.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err,
        const Hooks& hooks = {});

/// "1", "-2.5i", "0.3-0.4i", "i".
std::complex<double> parse_complex(std::string_view text);

/// Three comma-separated complex components.
CVec3 parse_complex_vector(std::string_view text);

/// `stem` + "_" + tag + extension of `path`: ("out/run.csv", "n2") -> "out/run_n2.csv".
std::string derived_path(const std::string& path, const std::string& tag);

}  // namespace qbrach::cli
