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

#include <cstdio>
#include <stdexcept>
#include <string>

namespace qbrach {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs violate a documented precondition or type invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Operands have incompatible dimensions.
class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A numerical run drifted outside its declared tolerance.
class ToleranceError : public Error {
 public:
  using Error::Error;
};

/// Compact rendering of a double for error messages.
inline std::string describe(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace qbrach
