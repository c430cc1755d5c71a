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
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fareystat/equidist.hpp"
#include "fareystat/farey.hpp"
#include "fareystat/geometry.hpp"
#include "fareystat/limits1d.hpp"
#include "fareystat/numtheory.hpp"
#include "fareystat/report.hpp"
#include "fareystat/statistics.hpp"

/// The acceptance suite: twelve end-to-end checks with pinned tolerances.
namespace fareystat::acceptance {

inline constexpr std::uint64_t kSeed = 20100101;

/// s = 0.1, 0.2, ..., 4.0
inline std::vector<double> s_grid_tenths() {
  std::vector<double> s;
  for (int k = 1; k <= 40; ++k) s.push_back(0.1 * k);
  return s;
}

namespace detail {

inline VerificationReport timed(double limit, const std::function<VerificationReport()>& body) {
  Stopwatch clock;
  VerificationReport r = body();
  r.runtime_seconds = clock.seconds();
  r.runtime_limit_seconds = limit;
  r.finalize();
  return r;
}

inline std::vector<double> point_curve(const FareySequence& f, const TestSet& d, const std::vector<double>& grid) {
  std::vector<double> out;
  for (const double s : grid) out.push_back(point_statistic(f, d, TestSet::interval_oc(0.0, s)).mass(0));
  return out;
}

}  // namespace detail

/// 1. |F_Q| = sum J_n(q) for n = 1,2,3 and Q <= 50; n = 1, Q = 10^4 against sigma_Q.
inline VerificationReport exact_cardinality_check() {
  return detail::timed(5.0, [] {
    EnumerateOptions no_index;
    no_index.build_index = false;
    double mismatches = 0.0;
    for (int n = 1; n <= 3; ++n) {
      const ArithmeticTable table = build_table(50, n);
      for (std::int64_t level = 1; level <= 50; ++level)
        if (enumerate(n, level, no_index).size() != exact_cardinality(table, level)) mismatches += 1.0;
    }
    const std::int64_t big = 10'000;
    const FareySequence f = enumerate(1, big, no_index);
    const ArithmeticTable table = build_table(big, 1);
    std::uint64_t totient_sum = 0;
    for (std::int64_t q = 1; q <= big; ++q) totient_sum += static_cast<std::uint64_t>(table.phi(q));
    if (f.size() != totient_sum) mismatches += 1.0;
    const double ratio = static_cast<double>(f.size()) / sigma(1, big);
    VerificationReport r = make_report("exact cardinality", {mismatches, ratio}, {0.0, 1.0}, 0.0);
    r.tolerances = {0.0, 1e-3};
    r.detail = "|F_10000| = " + std::to_string(f.size()) + ", ratio to sigma_Q = " + std::to_string(ratio);
    return r;
  });
}

/// 2. count_lattice_in_cone == count_in_translate on 200 random instances per n ∈ {1, 2}.
inline VerificationReport counting_equivalence_check() {
  return detail::timed(30.0, [] {
    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double mismatches = 0.0;
    std::uint64_t instances = 0, total_points = 0;
    for (int n = 1; n <= 2; ++n) {
      const std::vector<std::int64_t> levels = n == 1 ? std::vector<std::int64_t>{8, 20, 50, 120, 300}
                                                      : std::vector<std::int64_t>{5, 10, 20, 35};
      std::vector<FareySequence> seqs;
      for (const auto q : levels) seqs.push_back(enumerate(n, q));
      int done = 0;
      while (done < 200) {
        const std::size_t li = static_cast<std::size_t>(rng() % levels.size());
        const double scale = scale_factor(n, levels[li]);
        std::vector<double> x(static_cast<std::size_t>(n));
        const bool on_grid = rng() % 5 == 0;  // rational base points exercise boundary conventions
        for (auto& c : x) c = on_grid ? 0.25 * static_cast<double>(rng() % 4) : unit(rng);
        const int kind = static_cast<int>(rng() % 3);
        const double reach = 0.95 / (scale * std::sqrt(static_cast<double>(n)));
        TestSet a = TestSet::ball(n, reach * (0.02 + 0.48 * unit(rng)));
        if (kind < 2) {
          std::vector<double> lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n));
          for (std::size_t i = 0; i < lo.size(); ++i) {
            const double width = reach * (0.02 + 0.98 * unit(rng));
            lo[i] = on_grid ? 0.0 : -width * unit(rng);
            hi[i] = lo[i] + width;
          }
          a = TestSet::box(lo, hi, kind == 0 ? BoxBoundary::HalfOpen : BoxBoundary::OpenClosed);
        }
        if (!(scale * a.diameter() < 1.0)) continue;
        const auto translate = count_in_translate(seqs[li], x, a, scale).count;
        const auto cone = count_lattice_in_cone(x, levels[li], a);
        if (translate != cone) mismatches += 1.0;
        total_points += translate;
        ++instances;
        ++done;
      }
    }
    VerificationReport r = make_report("counting equivalence", {mismatches}, {0.0}, 0.0);
    r.detail = std::to_string(instances) + " instances, " + std::to_string(total_points) + " points counted";
    return r;
  });
}

/// 3. Scaled gap survival at Q = 2000 against the closed-form limit, s = 0.1..4.0.
inline VerificationReport hall_law_check() {
  return detail::timed(10.0, [] {
    const FareySequence f = enumerate(1, 2000, {.build_index = false});
    const std::vector<double> gaps = gap_distribution_1d(f);
    std::vector<double> computed, reference;
    for (const double s : s_grid_tenths()) {
      computed.push_back(gap_survival(gaps, s));
      reference.push_back(hall_cdf(s));
    }
    return make_report("gap distribution at Q=2000 vs limit law", computed, reference, 0.02);
  });
}

/// 4. lambda-quadrature of the triangle void probability against the closed form.
inline VerificationReport quadrature_identity_check() {
  return detail::timed(5.0, [] {
    std::vector<double> computed, reference;
    for (int i = 1; i <= 100; ++i) {
      const double s = 0.05 * i;
      computed.push_back(p0_quadrature(s));
      reference.push_back(hall_cdf(s));
    }
    return make_report("lambda quadrature vs closed form", computed, reference, 1e-8);
  });
}

/// 5. Closed-form triangle void probability against the interval-union oracle.
inline VerificationReport triangle_oracle_check() {
  return detail::timed(60.0, [] {
    std::vector<double> computed, reference;
    for (int i = 1; i <= 50; ++i) {
      for (int j = 1; j <= 50; ++j) {
        const double s = 3.0 * i / 50.0, lambda = j / 50.0;
        computed.push_back(p0_triangle(s, lambda));
        reference.push_back(triangle_oracle(s, lambda));
      }
    }
    return make_report("triangle closed form vs oracle", computed, reference, 1e-10);
  });
}

/// 6. Branch agreement at a = 1/4 and a = 1; density against central differences.
inline VerificationReport branch_continuity_check() {
  return detail::timed(0.0, [] {
    using B = HallBranch;
    std::vector<double> computed = {hall_cdf_branch(B::Lower, 0.25), hall_cdf_branch(B::Middle, 1.0),
                                    hall_density_branch(B::Lower, 0.25), hall_density_branch(B::Middle, 1.0)};
    std::vector<double> reference = {hall_cdf_branch(B::Middle, 0.25), hall_cdf_branch(B::Constant, 1.0),
                                     hall_density_branch(B::Middle, 0.25), hall_density_branch(B::Constant, 1.0)};
    std::vector<double> tolerances(4, 1e-12);
    constexpr double h = 1e-4;
    for (const double s : {0.5, 1.0, 2.0}) {
      computed.push_back(-(hall_cdf(s + h) - hall_cdf(s - h)) / (2.0 * h));
      reference.push_back(hall_density(s));
      tolerances.push_back(1e-6);
    }
    VerificationReport r = make_report("branch continuity and density", computed, reference, 0.0);
    r.tolerances = tolerances;
    r.finalize();
    return r;
  });
}

/// 7. sum_{q <= 10^5} phi(q)/q^3 against zeta(2)/zeta(3).
inline VerificationReport zeta_identity_check() {
  return detail::timed(2.0, [] { return totient_zeta_identity_check(1.5, 100'000, 1e-4); });
}

/// 8. Farey points on the horocycle section at Q = 5000.
inline VerificationReport equidistribution_check() {
  return detail::timed(10.0, [] {
    const auto f12 = TestFunctionSpec::indicator(1.0, 2.0);
    const auto f14 = TestFunctionSpec::indicator(1.0, 4.0);
    const auto fx = TestFunctionSpec::harmonic(1, 0, 1.0, 2.0);
    constexpr std::int64_t level = 5000;
    std::vector<double> computed = {farey_average(f12, level).real(), farey_average(f14, level).real(),
                                    std::abs(farey_average(fx, level))};
    std::vector<double> reference = {rhs_integral(f12), rhs_integral(f14), rhs_integral(fx)};
    VerificationReport r = make_report("Farey horocycle equidistribution at Q=5000", computed, reference, 0.0);
    r.tolerances = {0.01, 0.01, 0.02};
    r.finalize();
    return r;
  });
}

/// 9. Mean count of the void statistic tends to vol(A) = 1.
inline VerificationReport expectation_check() {
  return detail::timed(0.0, [] {
    const FareySequence f = enumerate(1, 10'000);
    const SamplingPlan plan{SamplingMode::MonteCarlo, 100'000, kSeed};
    const CountDistribution d = void_statistic(f, TestSet::unit_torus(1), TestSet::interval_oc(0.0, 1.0), plan);
    VerificationReport r = make_report("void statistic expectation at Q=10^4", {d.expectation()}, {1.0}, 0.02);
    if (!d.is_normalized()) r.computed.push_back(1.0), r.reference.push_back(0.0);
    return r;
  });
}

/// 10. Point statistic k = 0 curves for two disjoint halves of the circle.
inline VerificationReport region_independence_check() {
  return detail::timed(0.0, [] {
    const FareySequence f = enumerate(1, 2000);
    const auto grid = s_grid_tenths();
    const auto left = detail::point_curve(f, TestSet::box({0.0}, {0.5}), grid);
    const auto right = detail::point_curve(f, TestSet::box({0.5}, {1.0}), grid);
    return make_report("point statistic independent of D", left, right, 0.03);
  });
}

/// 11. n = 2, A = ball of volume 1: successive sup-differences of P_{0,Q}(k)
/// along Q = 50, 100, 150 are non-increasing within a factor 1.5.
inline VerificationReport higher_dim_convergence_check() {
  return detail::timed(120.0, [] {
    const TestSet ball = TestSet::ball_with_volume(2, 1.0);
    std::vector<CountDistribution> family;
    bool exact = true;
    std::uint64_t near = 0;
    for (const std::int64_t level : {50, 100, 150}) {
      const FareySequence f = enumerate(2, level);
      family.push_back(point_statistic(f, TestSet::unit_torus(2), ball));
      exact = exact && family.back().is_normalized();
      near += family.back().near_boundary_hits();
    }
    VerificationReport r = convergence_report("n=2 point statistic convergence", family, 1.5);
    // Normalization and boundary-slack conditions ride along as exact checks.
    r.computed.push_back(exact ? 0.0 : 1.0);
    r.reference.push_back(0.0);
    r.computed.push_back(static_cast<double>(near));
    r.reference.push_back(0.0);
    r.finalize();
    r.detail += "; near-boundary hits " + std::to_string(near);
    return r;
  });
}

/// 12. Slope of s -> P_Q(0, T, (0, s]) against -P_{0,Q}(0, T, (0, s]) at Q = 2000.
inline VerificationReport nearest_element_check() {
  return detail::timed(0.0, [] {
    const FareySequence f = enumerate(1, 2000);
    const auto grid = s_grid_tenths();
    const SamplingPlan plan{SamplingMode::MonteCarlo, 100'000, kSeed};
    const TestSet torus = TestSet::unit_torus(1);
    std::vector<double> void_curve;
    for (const double s : grid) void_curve.push_back(void_statistic(f, torus, TestSet::interval_oc(0.0, s), plan).mass(0));
    std::vector<double> computed, reference;
    for (std::size_t k = 1; k + 1 < grid.size(); ++k) {
      computed.push_back((void_curve[k + 1] - void_curve[k - 1]) / (grid[k + 1] - grid[k - 1]));
      reference.push_back(-point_statistic(f, torus, TestSet::interval_oc(0.0, grid[k])).mass(0));
    }
    return make_report("void-probability slope vs point statistic", computed, reference, 0.05);
  });
}

struct Criterion {
  int id;
  const char* title;
  VerificationReport (*run)();
};

inline const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "exact cardinality", exact_cardinality_check},
      {2, "counting equivalence", counting_equivalence_check},
      {3, "gap law at Q=2000", hall_law_check},
      {4, "quadrature identity", quadrature_identity_check},
      {5, "triangle oracle", triangle_oracle_check},
      {6, "branch continuity", branch_continuity_check},
      {7, "zeta identity", zeta_identity_check},
      {8, "equidistribution n=1", equidistribution_check},
      {9, "expectation normalization", expectation_check},
      {10, "D-independence", region_independence_check},
      {11, "higher-dimensional convergence", higher_dim_convergence_check},
      {12, "nearest-element relation", nearest_element_check},
  };
  return all;
}

}  // namespace fareystat::acceptance
