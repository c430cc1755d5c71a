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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace fareystat {

/// Outcome of one named numerical check.
///
/// `SupAbs` passes when max_i |computed_i - reference_i| <= tolerance.
/// `Upper` is one-sided: passes when computed_i <= reference_i + tolerance for
/// every i (used for bounds and monotone-trend checks). With `tolerances` set,
/// entry i is held to tolerances[i] instead.
struct VerificationReport {
  enum class Norm { SupAbs, Upper };

  std::string name;
  std::vector<double> computed;
  std::vector<double> reference;
  double tolerance = 0.0;
  std::vector<double> tolerances;  // optional per-entry tolerances; overrides `tolerance`
  Norm norm = Norm::SupAbs;
  double deviation = 0.0;
  double runtime_seconds = 0.0;
  double runtime_limit_seconds = 0.0;  // 0 disables the limit
  bool passed = false;
  std::string detail;

  /// Recomputes `deviation` and `passed` from the stored values.
  void finalize() {
    deviation = 0.0;
    bool ok = computed.size() == reference.size();
    const std::size_t m = std::min(computed.size(), reference.size());
    for (std::size_t i = 0; i < m; ++i) {
      const double d = norm == Norm::SupAbs ? std::abs(computed[i] - reference[i])
                                            : computed[i] - reference[i];
      if (std::isnan(d)) {
        ok = false;
        deviation = std::numeric_limits<double>::quiet_NaN();
        continue;
      }
      if (i == 0 || d > deviation) deviation = d;
      const double tol_i = i < tolerances.size() ? tolerances[i] : tolerance;
      if (!(d <= tol_i)) ok = false;
    }
    ok = ok && !std::isnan(deviation);
    if (runtime_limit_seconds > 0.0 && runtime_seconds > runtime_limit_seconds) ok = false;
    passed = ok;
  }
};

inline VerificationReport make_report(std::string name, std::vector<double> computed,
                                      std::vector<double> reference, double tolerance,
                                      VerificationReport::Norm norm = VerificationReport::Norm::SupAbs) {
  VerificationReport r;
  r.name = std::move(name);
  r.computed = std::move(computed);
  r.reference = std::move(reference);
  r.tolerance = tolerance;
  r.norm = norm;
  r.finalize();
  return r;
}

/// Wall-clock stopwatch for the runtime fields of a report.
class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace fareystat
