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
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "fareystat/exact.hpp"
#include "fareystat/geometry.hpp"
#include "fareystat/numtheory.hpp"
#include "fareystat/parallel.hpp"
#include "fareystat/quadrature.hpp"
#include "fareystat/statistics.hpp"

namespace fareystat {

/// Test functions f(x, u + iv) on T x (upper half plane) with a known or
/// quadrature-computable integral against dx du dv / v^2.
///
///   VIndicator      1_[v1,v2](v)
///   VPowerWindow    v^power 1_[v1,v2](v)
///   HarmonicWindow  e^{2 pi i (m x + l u)} 1_[v1,v2](v)
///
/// Windows are closed; v2 may be +infinity.
struct TestFunctionSpec {
  enum class Kind { VIndicator, VPowerWindow, HarmonicWindow };

  Kind kind = Kind::VIndicator;
  double v1 = 1.0;
  double v2 = std::numeric_limits<double>::infinity();
  double power = 0.0;
  std::int64_t x_frequency = 0;
  std::int64_t u_frequency = 0;

  static TestFunctionSpec indicator(double v1, double v2) { return check({Kind::VIndicator, v1, v2, 0.0, 0, 0}); }
  static TestFunctionSpec power_window(double v1, double v2, double power) {
    return check({Kind::VPowerWindow, v1, v2, power, 0, 0});
  }
  static TestFunctionSpec harmonic(std::int64_t m, std::int64_t l, double v1, double v2) {
    return check({Kind::HarmonicWindow, v1, v2, 0.0, m, l});
  }

  bool in_window(double v) const { return v >= v1 && v <= v2; }
  bool depends_on_u() const { return kind == Kind::HarmonicWindow && u_frequency != 0; }

  std::complex<double> operator()(double x, double u, double v) const {
    if (!in_window(v)) return 0.0;
    switch (kind) {
      case Kind::VIndicator:
        return 1.0;
      case Kind::VPowerWindow:
        return std::pow(v, power);
      case Kind::HarmonicWindow: {
        const double phase = 2.0 * std::numbers::pi *
                             (static_cast<double>(x_frequency) * x + static_cast<double>(u_frequency) * u);
        return std::polar(1.0, phase);
      }
    }
    return 0.0;
  }

  std::string describe() const {
    std::ostringstream os;
    switch (kind) {
      case Kind::VIndicator: os << "1[" << v1 << "," << v2 << "](v)"; break;
      case Kind::VPowerWindow: os << "v^" << power << " 1[" << v1 << "," << v2 << "](v)"; break;
      case Kind::HarmonicWindow:
        os << "e(" << x_frequency << "x+" << u_frequency << "u) 1[" << v1 << "," << v2 << "](v)";
        break;
    }
    return os.str();
  }

 private:
  static TestFunctionSpec check(TestFunctionSpec f) {
    if (std::isnan(f.v1) || std::isnan(f.v2) || f.v1 < 0.0 || !(f.v2 > f.v1))
      throw std::invalid_argument("TestFunctionSpec: window needs 0 <= v1 < v2");
    return f;
  }
};

/// Right-hand side: the integral of f(x, u + iv) dx du dv / v^2.
inline double rhs_integral(const TestFunctionSpec& f) {
  using Kind = TestFunctionSpec::Kind;
  if (f.kind == Kind::HarmonicWindow && (f.x_frequency != 0 || f.u_frequency != 0)) return 0.0;
  if (f.kind != Kind::VPowerWindow || f.power == 0.0) {
    if (f.v1 == 0.0) throw std::domain_error("rhs_integral: not integrable (window touches v = 0)");
    return 1.0 / f.v1 - (std::isinf(f.v2) ? 0.0 : 1.0 / f.v2);
  }
  // integral of v^{power-2} over [v1, v2]
  if (f.v1 == 0.0 && f.power <= 1.0) throw std::domain_error("rhs_integral: not integrable (window touches v = 0)");
  if (std::isinf(f.v2) && f.power >= 1.0) throw std::domain_error("rhs_integral: not integrable at v = infinity");
  if (f.v1 == 0.0 || std::isinf(f.v2))
    throw std::domain_error("rhs_integral: power windows must be finite and bounded away from 0");
  const double scale = std::max(std::pow(f.v1, f.power - 2.0), std::pow(f.v2, f.power - 2.0)) * (f.v2 - f.v1);
  return adaptive_simpson([&](double v) { return std::pow(v, f.power - 2.0); }, f.v1, f.v2, 1e-13 * scale);
}

/// (1/|F_Q|) sum_{q<=Q} sum_{p ∈ (Z/q)^x} f(p/q, pbar/q, Q^2/q^2), for a
/// callable f(x, u, v) returning a real or complex value. The q = 1 term is
/// the single residue p = 0 with pbar = 0. When `needs_inverse` is false the
/// u-argument is passed as 0 and modular inverses are skipped.
template <class F>
std::complex<double> farey_average(F&& f, std::int64_t level, bool needs_inverse = true) {
  if (level < 1) throw std::invalid_argument("farey_average: level must be >= 1");
  const double big_q = static_cast<double>(level);
  const std::size_t chunks = std::min<std::size_t>(static_cast<std::size_t>(level), 4 * parallel::thread_count());
  std::vector<std::complex<double>> partial(chunks);
  std::vector<std::uint64_t> weight(chunks, 0);
  parallel::for_each_chunk(chunks, [&](std::size_t c) {
    CompensatedSum<std::complex<double>> acc;
    std::uint64_t units = 0;
    // Interleaved q so chunks see similar work.
    for (auto q = static_cast<std::int64_t>(c) + 1; q <= level; q += static_cast<std::int64_t>(chunks)) {
      const double dq = static_cast<double>(q);
      const double v = big_q * big_q / (dq * dq);
      if (q == 1) {
        acc.add(std::complex<double>(f(0.0, 0.0, v)));
        ++units;
        continue;
      }
      for (std::int64_t p = 1; p < q; ++p) {
        if (std::gcd(p, q) != 1) continue;
        const double u = needs_inverse ? static_cast<double>(mod_inverse(p, q)) / dq : 0.0;
        acc.add(std::complex<double>(f(static_cast<double>(p) / dq, u, v)));
        ++units;
      }
    }
    partial[c] = acc.value();
    weight[c] = units;
  });
  CompensatedSum<std::complex<double>> total;
  std::uint64_t size = 0;
  for (std::size_t c = 0; c < chunks; ++c) {
    total.add(partial[c]);
    size += weight[c];
  }
  return total.value() / static_cast<double>(size);
}

inline std::complex<double> farey_average(const TestFunctionSpec& f, std::int64_t level) {
  return farey_average([&f](double x, double u, double v) { return f(x, u, v); }, level, f.depends_on_u());
}

/// Monte Carlo average over x ∈ T^n of g(|Ẑ^{n+1} h(x) a(Q) ∩ C(A)|).
template <class G>
double horosphere_average(G&& g, std::int64_t level, const TestSet& a, const SamplingPlan& plan) {
  const int n = a.dim();
  const std::vector<double> points = sample_points(TestSet::unit_torus(n), plan);
  const auto un = static_cast<std::size_t>(n);
  const std::size_t total = points.size() / un;
  const std::size_t chunks = (total + kSampleChunk - 1) / kSampleChunk;
  std::vector<double> partial(chunks, 0.0);
  parallel::for_each_chunk(chunks, [&](std::size_t c) {
    CompensatedSum<double> acc;
    const std::size_t end = std::min(total, (c + 1) * kSampleChunk);
    for (std::size_t k = c * kSampleChunk; k < end; ++k)
      acc.add(static_cast<double>(g(count_lattice_in_cone(std::span<const double>(points.data() + k * un, un), level, a))));
    partial[c] = acc.value();
  });
  CompensatedSum<double> acc;
  for (const double p : partial) acc.add(p);
  return acc.value() / static_cast<double>(total);
}

}  // namespace fareystat
