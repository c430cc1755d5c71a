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
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fareystat/quadrature.hpp"

namespace fareystat {

// Closed forms of the n = 1 void and gap laws, written in terms of
// a = (pi^2 s / 3)^{-1} and y = lambda^{1/2}.

inline constexpr double kPiSquaredOverThree = std::numbers::pi * std::numbers::pi / 3.0;

struct HallParameters {
  double s = 0.0;
  double a = 0.0;
  double y = 0.0;

  static HallParameters from(double s, double lambda = 1.0) {
    if (std::isnan(s) || s < 0.0) throw std::domain_error("HallParameters: s must be nonnegative");
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::domain_error("HallParameters: lambda must be in [0,1]");
    return {s, 1.0 / (kPiSquaredOverThree * s), std::sqrt(lambda)};
  }
};

/// Branches of the gap law, by range of a.
enum class HallBranch {
  Constant,  // a >= 1
  Middle,    // 1/4 <= a <= 1
  Lower,     // 0 <= a <= 1/4
};

/// Evaluates one branch formula of the gap CDF complement regardless of range.
inline double hall_cdf_branch(HallBranch branch, double a) {
  switch (branch) {
    case HallBranch::Constant:
      return 1.0;
    case HallBranch::Middle:
      return -1.0 + 2.0 * a - 2.0 * a * std::log(a);
    case HallBranch::Lower: {
      const double r = std::sqrt(0.25 - a);
      return -1.0 + 2.0 * a + 2.0 * r - 4.0 * a * std::log(0.5 + r);
    }
  }
  throw std::logic_error("hall_cdf_branch: bad branch");
}

inline double hall_density_branch(HallBranch branch, double a) {
  switch (branch) {
    case HallBranch::Constant:
      return 0.0;
    case HallBranch::Middle:
      return -2.0 * kPiSquaredOverThree * a * a * std::log(a);
    case HallBranch::Lower:
      return -4.0 * kPiSquaredOverThree * a * a * std::log(0.5 + std::sqrt(0.25 - a));
  }
  throw std::logic_error("hall_density_branch: bad branch");
}

inline HallBranch hall_branch(double a) {
  if (a >= 1.0) return HallBranch::Constant;
  if (a >= 0.25) return HallBranch::Middle;
  return HallBranch::Lower;
}

/// Limiting probability that a scaled gap exceeds s (complement of the gap CDF).
/// s = 0 is accepted as the limit s -> 0+.
inline double hall_cdf(double s) {
  const double a = HallParameters::from(s).a;
  return hall_cdf_branch(hall_branch(a), a);
}

/// Gap density -d/ds hall_cdf(s).
inline double hall_density(double s) {
  const double a = HallParameters::from(s).a;
  return hall_density_branch(hall_branch(a), a);
}

/// Void probability of the triangle Delta_{s,lambda} in the space of
/// affine unimodular lattices of the plane.
inline double p0_triangle(double s, double lambda) {
  if (!(s > 0.0)) throw std::domain_error("p0_triangle: s must be positive");
  if (!(lambda > 0.0 && lambda <= 1.0)) throw std::domain_error("p0_triangle: lambda must be in (0,1]");
  const HallParameters hp = HallParameters::from(s, lambda);
  const double a = hp.a, y = hp.y;
  if (a >= 1.0 || y <= a) return 1.0;
  if (a <= 0.25) {
    const double r = std::sqrt(0.25 - a);
    if (y >= 0.5 - r && y <= 0.5 + r) return 0.0;
  }
  return 1.0 - 1.0 / y + a / (y * y);
}

/// Breakpoints in lambda of p0_triangle(s, .): a^2 and (1/2 ± sqrt(1/4 - a))^2.
inline std::vector<double> p0_breakpoints(double s) {
  const double a = HallParameters::from(s).a;
  std::vector<double> out;
  if (a < 1.0) out.push_back(a * a);
  if (a <= 0.25) {
    const double r = std::sqrt(0.25 - a);
    out.push_back((0.5 - r) * (0.5 - r));
    out.push_back((0.5 + r) * (0.5 + r));
  }
  return out;
}

/// Brute-force evaluation of p0_triangle: the measure of x ∈ [0,1) for which
/// no primitive (p, q) has (p, p x + q) ∈ Delta_{s,lambda}.
///
/// The triangle requires p >= 1 and p x + q ∈ [p a / lambda, 1/y], so p runs up
/// to y/a and each coprime q contributes one x-interval. The union of these
/// intervals is merged with a 1e-12 slack and its measure subtracted from 1.
inline double triangle_oracle(double s, double lambda, std::int64_t max_p = 1'000'000) {
  if (!(s > 0.0)) throw std::domain_error("triangle_oracle: s must be positive");
  if (!(lambda > 0.0 && lambda <= 1.0)) throw std::domain_error("triangle_oracle: lambda must be in (0,1]");
  const HallParameters hp = HallParameters::from(s, lambda);
  const double a = hp.a, y = hp.y;
  const double top = 1.0 / y;
  const auto p_max = static_cast<std::int64_t>(std::floor(y / a));
  if (p_max > max_p) throw std::length_error("triangle_oracle: p-range exceeds guard");

  std::vector<std::pair<double, double>> covered;
  for (std::int64_t p = 1; p <= p_max; ++p) {
    const double dp = static_cast<double>(p);
    const double bottom = dp * a / lambda;
    if (bottom > top) continue;
    // t = p x + q sweeps [q, q + p) as x sweeps [0, 1).
    const auto q_lo = static_cast<std::int64_t>(std::floor(bottom)) - p - 1;
    const auto q_hi = static_cast<std::int64_t>(std::ceil(top)) + 1;
    for (std::int64_t q = q_lo; q <= q_hi; ++q) {
      if (std::gcd(p, q) != 1) continue;
      const double lo = std::max(0.0, (bottom - static_cast<double>(q)) / dp);
      const double hi = std::min(1.0, (top - static_cast<double>(q)) / dp);
      if (hi > lo) covered.emplace_back(lo, hi);
    }
  }
  std::sort(covered.begin(), covered.end());
  constexpr double kMergeSlack = 1e-12;
  double measure = 0.0;
  double cur_lo = 0.0, cur_hi = -1.0;
  for (const auto& [lo, hi] : covered) {
    if (lo > cur_hi + kMergeSlack) {
      if (cur_hi > cur_lo) measure += cur_hi - cur_lo;
      cur_lo = lo;
      cur_hi = hi;
    } else {
      cur_hi = std::max(cur_hi, hi);
    }
  }
  if (cur_hi > cur_lo) measure += cur_hi - cur_lo;
  return std::clamp(1.0 - measure, 0.0, 1.0);
}

/// Integral of p0_triangle(s, lambda) over lambda ∈ (0, 1], by adaptive
/// Simpson on the panels cut at the integrand's breakpoints.
inline double p0_quadrature(double s, double tol = 1e-11) {
  const double a = HallParameters::from(s).a;
  if (a >= 1.0) return 1.0;
  auto integrand = [s](double lambda) { return lambda <= 0.0 ? 1.0 : p0_triangle(s, lambda); };
  return integrate_panels(integrand, 0.0, 1.0, p0_breakpoints(s), tol);
}

}  // namespace fareystat
