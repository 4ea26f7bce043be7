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

// Randomized invariant suites behind the `check` command.

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "qbrach/lindblad.hpp"

namespace qbrach::check {

using AdjointFn = std::function<qalg::ComplexMatrix(
    const qalg::ComplexMatrix&, const lindblad::HamiltonianOp&,
    const lindblad::LindbladSet&)>;

struct CheckOptions {
  std::uint64_t seed = 20261017;
  int trials = 100;
  /// Dual generator under test; replaceable to exercise the failure path.
  AdjointFn adjoint = lindblad::adjoint_generator;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  /// Worst measured value and the bound it is held to. For order suites
  /// `measured` is the order and the bound is [low, high].
  double measured = 0.0;
  double low = 0.0;
  double high = 0.0;
};

std::vector<SuiteResult> run_suites(const CheckOptions& opts);

/// One line per suite; identical results give identical bytes.
void write_report(const std::vector<SuiteResult>& results, std::ostream& out);

}  // namespace qbrach::check
