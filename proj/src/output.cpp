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

#include "qbrach/output.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <system_error>

#include <json.hpp>

#include "qbrach/error.hpp"

namespace qbrach::output {
namespace {

void put_vec(std::ostream& out, const std::optional<Vec3>& v) {
  for (int i = 0; i < 3; ++i) {
    out << ',';
    if (v) out << format_number((*v)[i]);
  }
}

nlohmann::ordered_json vec_json(const std::optional<Vec3>& v) {
  if (!v) return nullptr;
  return {(*v)[0], (*v)[1], (*v)[2]};
}

bool finite(const Vec3& v) {
  return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]);
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  if (res.ec != std::errc()) throw Error("format_number: conversion failed");
  return std::string(buf, res.ptr);
}

void write_csv(const TrajectoryRecord& rec, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& s : rec.samples) {
    out << format_number(s.t);
    put_vec(out, s.r);
    put_vec(out, s.s);
    put_vec(out, s.h);
    out << ',' << format_number(s.purity);
    put_vec(out, s.conserved);
    out << ',';
    if (s.fidelity) out << format_number(*s.fidelity);
    out << '\n';
  }
}

void write_json(const TrajectoryRecord& rec, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["dt"] = rec.dt;
  doc["notes"] = rec.notes;
  auto& rows = doc["samples"] = nlohmann::ordered_json::array();
  for (const auto& s : rec.samples) {
    nlohmann::ordered_json row;
    row["t"] = s.t;
    row["r"] = vec_json(s.r);
    row["s"] = vec_json(s.s);
    row["h"] = vec_json(s.h);
    row["purity"] = s.purity;
    row["conserved"] = vec_json(s.conserved);
    row["fidelity"] = s.fidelity ? nlohmann::ordered_json(*s.fidelity) : nullptr;
    auto& ls = row["lindblads"] = nlohmann::ordered_json::array();
    for (const auto& l : s.lindblads) {
      nlohmann::ordered_json comps = nlohmann::ordered_json::array();
      for (const auto& c : l.l) comps.push_back({c.real(), c.imag()});
      ls.push_back({{"gamma", l.gamma}, {"l", comps}});
    }
    rows.push_back(std::move(row));
  }
  out << doc.dump(1) << '\n';
}

void write_trajectory(const TrajectoryRecord& rec, Format format, std::ostream& out) {
  if (format == Format::kCsv) {
    write_csv(rec, out);
  } else {
    write_json(rec, out);
  }
}

void validate_record(const TrajectoryRecord& rec, const ValidationLimits& limits) {
  auto fail = [](const std::string& what, double t) {
    throw ToleranceError("trajectory check: " + what + " at t = " + format_number(t));
  };
  if (rec.samples.empty()) throw ToleranceError("trajectory check: no samples");
  std::optional<Vec3> c0;
  double prev_t = -INFINITY;
  for (const auto& s : rec.samples) {
    if (!std::isfinite(s.t) || !(s.t > prev_t)) fail("time not increasing", s.t);
    prev_t = s.t;
    if (!finite(s.r) || !std::isfinite(s.purity)) fail("non-finite state", s.t);
    if ((s.s && !finite(*s.s)) || (s.h && !finite(*s.h))) fail("non-finite costate", s.t);
    if (norm(s.r) > 1.0 + limits.bloch_slack) fail("|r| exceeds 1", s.t);
    if (std::abs(s.purity - bloch_purity(s.r)) > 1e-12) fail("purity inconsistent", s.t);
    if (s.fidelity && !(*s.fidelity >= -limits.bloch_slack &&
                        *s.fidelity <= 1.0 + limits.bloch_slack)) {
      fail("fidelity outside [0, 1]", s.t);
    }
    if (s.conserved) {
      if (!finite(*s.conserved)) fail("non-finite conserved vector", s.t);
      if (!c0) c0 = s.conserved;
      if (limits.conserved_tol && norm(*s.conserved - *c0) > *limits.conserved_tol) {
        fail("conserved vector drifted", s.t);
      }
    }
  }
}

}  // namespace qbrach::output
