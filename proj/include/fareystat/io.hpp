// Copyright 2026 The fareystat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fareystat/farey.hpp"
#include "fareystat/report.hpp"
#include "fareystat/statistics.hpp"
#include "fareystat/version.hpp"

namespace fareystat::io {

/// Reals are written with 12 significant digits.
inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// Parses `lo:hi:step` into lo, lo + step, ..., up to hi inclusive.
inline std::vector<double> parse_grid(std::string_view text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw std::invalid_argument("grid: expected lo:hi:step");
  auto num = [](std::string_view t) {
    const std::string s(t);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("grid: bad number '" + s + "'");
    }
    if (used != s.size()) throw std::invalid_argument("grid: bad number '" + s + "'");
    return v;
  };
  const double lo = num(text.substr(0, c1));
  const double hi = num(text.substr(c1 + 1, c2 - c1 - 1));
  const double step = num(text.substr(c2 + 1));
  if (!(step > 0.0) || !(hi >= lo)) throw std::invalid_argument("grid: need step > 0 and hi >= lo");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + static_cast<double>(i) * step;
  return out;
}

/// Header `p1,...,pn,q`, one integer row per point.
inline void write_farey_csv(std::ostream& os, const FareySequence& f) {
  for (int i = 1; i <= f.dim(); ++i) os << 'p' << i << ',';
  os << "q\n";
  std::string line;
  for (std::size_t k = 0; k < f.size(); ++k) {
    line.clear();
    for (const auto p : f.numerator(k)) {
      line += std::to_string(p);
      line += ',';
    }
    line += std::to_string(f.denominator(k));
    line += '\n';
    os << line;
  }
}

/// Header `k,mass`, rows k = 0..kmax.
inline void write_distribution_csv(std::ostream& os, const CountDistribution& d) {
  os << "k,mass\n";
  for (std::size_t k = 0; k <= d.kmax(); ++k) os << k << ',' << format_real(d.mass(k)) << '\n';
}

inline nlohmann::json to_json(const DistributionMetadata& m) {
  return {{"statistic", m.statistic}, {"n", m.n},          {"Q", m.level},       {"D", m.region},
          {"A", m.test_set},          {"boundary", m.boundary}, {"mode", m.mode}, {"seed", m.seed}};
}

inline nlohmann::json to_json(const CountDistribution& d) {
  nlohmann::json j = to_json(d.metadata);
  j["samples"] = d.samples();
  j["kmax"] = d.kmax();
  j["expectation"] = d.expectation();
  j["overflow_count"] = d.overflow();
  j["overflowed"] = d.overflowed();
  j["near_boundary_hits"] = d.near_boundary_hits();
  return j;
}

inline nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json j = {{"name", r.name},
                      {"computed", r.computed},
                      {"reference", r.reference},
                      {"tolerance", r.tolerance},
                      {"norm", r.norm == VerificationReport::Norm::SupAbs ? "sup-abs" : "upper"},
                      {"deviation", r.deviation},
                      {"runtime_seconds", r.runtime_seconds},
                      {"passed", r.passed}};
  if (!r.tolerances.empty()) j["tolerances"] = r.tolerances;
  if (r.runtime_limit_seconds > 0.0) j["runtime_limit_seconds"] = r.runtime_limit_seconds;
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

/// Common header of every sidecar: tool name and version.
inline nlohmann::json sidecar_base(std::string_view subcommand) {
  return {{"tool", "fareystat"}, {"version", kVersion}, {"subcommand", std::string(subcommand)}};
}

inline std::string sidecar_path(const std::string& output) { return output + ".meta.json"; }

inline void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << j.dump(2) << '\n';
}

}  // namespace fareystat::io
