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

// Real and complex 3-vectors for the Pauli (Bloch) parametrization.

#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace qbrach {

using Vec3 = std::array<double, 3>;
using CVec3 = std::array<std::complex<double>, 3>;

constexpr Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
constexpr Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
constexpr Vec3 operator*(double k, const Vec3& a) {
  return {k * a[0], k * a[1], k * a[2]};
}
constexpr double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline CVec3 operator*(std::complex<double> k, const CVec3& a) {
  return {k * a[0], k * a[1], k * a[2]};
}
inline CVec3 operator+(const CVec3& a, const CVec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline CVec3 operator-(const CVec3& a, const CVec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
/// Bilinear a . b (no conjugation).
inline std::complex<double> dot(const CVec3& a, const CVec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
/// Bilinear a . r for real r.
inline std::complex<double> dot(const CVec3& a, const Vec3& r) {
  return a[0] * r[0] + a[1] * r[1] + a[2] * r[2];
}
/// Sesquilinear <a, b> = sum conj(a_i) b_i.
inline std::complex<double> inner(const CVec3& a, const CVec3& b) {
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1] +
         std::conj(a[2]) * b[2];
}
inline CVec3 cross(const CVec3& a, const CVec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}
inline CVec3 conj(const CVec3& a) {
  return {std::conj(a[0]), std::conj(a[1]), std::conj(a[2])};
}
inline double norm(const CVec3& a) { return std::sqrt(inner(a, a).real()); }
inline CVec3 complexify(const Vec3& a) { return {a[0], a[1], a[2]}; }

}  // namespace qbrach
