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

#include "qbrach/trajectory.hpp"

#include <algorithm>

namespace qbrach {

double TrajectoryRecord::max_conserved_drift() const {
  const TrajectorySample* first = nullptr;
  double worst = 0.0;
  for (const auto& s : samples) {
    if (!s.conserved) continue;
    if (first == nullptr) {
      first = &s;
      continue;
    }
    worst = std::max(worst, norm(*s.conserved - *first->conserved));
  }
  return worst;
}

double TrajectoryRecord::max_bloch_norm() const {
  double worst = 0.0;
  for (const auto& s : samples) worst = std::max(worst, norm(s.r));
  return worst;
}

}  // namespace qbrach
