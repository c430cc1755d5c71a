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

#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "fareystat/farey.hpp"
#include "fareystat/limits1d.hpp"
#include "fareystat/parallel.hpp"
#include "fareystat/statistics.hpp"

namespace fs = fareystat;

TEST(Distribution, RecordAndMerge) {
  fs::CountDistribution a, b;
  for (int k : {0, 0, 1, 3}) a.record(static_cast<std::uint64_t>(k));
  b.record(100);
  b.add_near_boundary(2);
  a.merge(b);
  EXPECT_EQ(a.samples(), 5u);
  EXPECT_EQ(a.overflow(), 1u);
  EXPECT_TRUE(a.overflowed());
  EXPECT_EQ(a.kmax(), 3u);
  EXPECT_DOUBLE_EQ(a.mass(0), 0.4);
  EXPECT_DOUBLE_EQ(a.expectation(), 104.0 / 5.0);
  EXPECT_EQ(a.near_boundary_hits(), 2u);
  EXPECT_TRUE(a.is_normalized());
  EXPECT_EQ(a.masses().size(), 4u);
  EXPECT_FALSE(fs::CountDistribution().is_normalized());
}

TEST(Sampling, DeterministicAndThreadIndependent) {
  const auto d = fs::TestSet::box({0.25, 0.0}, {0.75, 1.0});
  const fs::SamplingPlan plan{fs::SamplingMode::MonteCarlo, 10'000, 42};
  fs::parallel::set_thread_count(1);
  const auto one = fs::sample_points(d, plan);
  fs::parallel::set_thread_count(4);
  const auto four = fs::sample_points(d, plan);
  fs::parallel::set_thread_count(0);
  EXPECT_EQ(one, four);
  ASSERT_EQ(one.size(), 20'000u);
  for (std::size_t i = 0; i < one.size(); i += 2) ASSERT_TRUE(one[i] >= 0.25 && one[i] < 0.75);
  const auto other = fs::sample_points(d, {fs::SamplingMode::MonteCarlo, 10'000, 43});
  EXPECT_NE(one, other);
}

TEST(Sampling, GridAndBall) {
  const auto grid = fs::sample_points(fs::TestSet::unit_torus(2), {fs::SamplingMode::Grid, 100, 0});
  ASSERT_EQ(grid.size(), 200u);
  EXPECT_DOUBLE_EQ(grid[0], 0.05);
  const auto ball = fs::sample_points(fs::TestSet::ball(2, 0.3), {fs::SamplingMode::MonteCarlo, 2000, 1});
  for (std::size_t i = 0; i < ball.size(); i += 2) {
    const double x = std::min(ball[i], 1.0 - ball[i]), y = std::min(ball[i + 1], 1.0 - ball[i + 1]);
    ASSERT_LT(x * x + y * y, 0.09);
  }
}

TEST(VoidStatistic, MatchesBruteForceCounts) {
  const auto f = fs::enumerate(2, 15);
  const double scale = fs::scale_factor(2, 15);
  const auto d = fs::TestSet::unit_torus(2);
  const fs::SamplingPlan plan{fs::SamplingMode::MonteCarlo, 3000, 9};
  for (const auto& a : {fs::TestSet::box({0.0, -0.5}, {1.5, 1.0}), fs::TestSet::ball(2, 1.2)}) {
    const auto dist = fs::void_statistic(f, d, a, plan);
    const auto pts = fs::sample_points(d, plan);
    fs::CountDistribution ref;
    for (std::size_t k = 0; k < pts.size(); k += 2)
      ref.record(fs::count_in_translate_bruteforce(f, std::span<const double>(pts.data() + k, 2), a, scale));
    ASSERT_EQ(dist.samples(), ref.samples());
    for (std::size_t k = 0; k <= fs::CountDistribution::kMaxK; ++k) EXPECT_EQ(dist.count(k), ref.count(k));
    EXPECT_EQ(dist.metadata.statistic, "void");
    EXPECT_EQ(dist.metadata.seed, 9u);
  }
}

TEST(VoidStatistic, ExpectationIsVolume) {
  // The mean count over the torus is |F_Q| vol(A) / sigma_Q.
  const auto f = fs::enumerate(1, 3000);
  const auto a = fs::TestSet::box({0.0}, {2.5});
  const auto dist = fs::void_statistic(f, fs::TestSet::unit_torus(1), a, {fs::SamplingMode::Grid, 200'000, 0});
  EXPECT_NEAR(dist.expectation(), static_cast<double>(f.size()) * 2.5 / fs::sigma(1, 3000), 1e-2);
}

TEST(PointStatistic, MatchesBruteForce) {
  const auto f = fs::enumerate(2, 12);
  const double scale = fs::scale_factor(2, 12);
  const auto d = fs::TestSet::box({0.0, 0.0}, {0.5, 1.0});
  // 0 is interior here, so a floating base agrees with the exact one
  const auto a = fs::TestSet::box({-0.37, -0.61}, {1.13, 0.29});
  const auto dist = fs::point_statistic(f, d, a);
  fs::CountDistribution ref;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double x[] = {static_cast<double>(f.numerator(i)[0]) / static_cast<double>(f.denominator(i)),
                        static_cast<double>(f.numerator(i)[1]) / static_cast<double>(f.denominator(i))};
    if (x[0] >= 0.5) continue;
    ref.record(fs::count_in_translate_bruteforce(f, x, a, scale));
  }
  ASSERT_EQ(dist.samples(), ref.samples());
  for (std::size_t k = 0; k <= fs::CountDistribution::kMaxK; ++k) EXPECT_EQ(dist.count(k), ref.count(k));
}

TEST(PointStatistic, SelfCountingConvention) {
  const auto f = fs::enumerate(1, 50);
  const auto torus = fs::TestSet::unit_torus(1);
  // tiny sets around 0: (0, e] never holds the reference point, [0, e) always does
  const auto oc = fs::point_statistic(f, torus, fs::TestSet::interval_oc(0.0, 1e-6));
  const auto ho = fs::point_statistic(f, torus, fs::TestSet::box({0.0}, {1e-6}));
  EXPECT_DOUBLE_EQ(oc.mass(0), 1.0);
  EXPECT_DOUBLE_EQ(ho.mass(1), 1.0);
  EXPECT_THROW(fs::point_statistic(f, fs::TestSet::box({0.001}, {0.002}), torus), std::invalid_argument);
}

TEST(PointStatistic, GapLawRelation) {
  // P_0(0, (0, s]) is the fraction of gaps longer than s.
  const auto f = fs::enumerate(1, 300);
  const auto gaps = fs::gap_distribution_1d(f);
  for (const double s : {0.3, 0.9, 1.7, 3.1}) {
    const auto dist = fs::point_statistic(f, fs::TestSet::unit_torus(1), fs::TestSet::interval_oc(0.0, s));
    EXPECT_NEAR(dist.mass(0), fs::gap_survival(gaps, s), 1e-12) << s;
  }
}

TEST(Gaps, LevelFive) {
  const auto gaps = fs::gap_distribution_1d(fs::enumerate(1, 5));
  const double sigma = fs::sigma(1, 5);
  ASSERT_EQ(gaps.size(), 10u);
  EXPECT_NEAR(gaps.front(), sigma / 20.0, 1e-14);
  EXPECT_NEAR(gaps.back(), sigma / 5.0, 1e-14);
  EXPECT_NEAR(gaps[8], sigma / 5.0, 1e-14);
  EXPECT_NEAR(std::accumulate(gaps.begin(), gaps.end(), 0.0), sigma, 1e-12);
  EXPECT_DOUBLE_EQ(fs::gap_survival(gaps, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(fs::gap_survival(gaps, gaps.back()), 0.0);
  EXPECT_THROW(fs::gap_distribution_1d(fs::enumerate(2, 3)), std::invalid_argument);
}

TEST(Reference, PoissonMass) {
  double total = 0.0;
  for (std::size_t k = 0; k < 60; ++k) total += fs::poisson_mass(3.0, k);
  EXPECT_NEAR(total, 1.0, 1e-14);
  EXPECT_NEAR(fs::poisson_mass(2.0, 2), 2.0 * std::exp(-2.0), 1e-15);
}

TEST(Convergence, Report) {
  const auto good = fs::convergence_report("good", {{1.0, 0.0}, {0.5, 0.2}, {0.4, 0.25}});
  EXPECT_TRUE(good.passed);
  const auto bad = fs::convergence_report("bad", {{1.0}, {0.9}, {0.5}});
  EXPECT_FALSE(bad.passed);
  EXPECT_THROW(fs::convergence_report("short", std::vector<std::vector<double>>{{1.0}, {2.0}}), std::invalid_argument);
}

TEST(PointStatistic, ApproachesGapLaw) {
  const auto f = fs::enumerate(1, 2000);
  for (const double s : {0.2, 0.5, 1.0, 1.5, 2.5, 3.5}) {
    const auto d = fs::point_statistic(f, fs::TestSet::unit_torus(1), fs::TestSet::interval_oc(0.0, s));
    EXPECT_NEAR(d.mass(0), fs::hall_cdf(s), 0.02) << s;
  }
}

TEST(VoidStatistic, ExpectationAtLevelThousand) {
  const auto f = fs::enumerate(1, 1000);
  const auto d = fs::void_statistic(f, fs::TestSet::unit_torus(1), fs::TestSet::interval_oc(0.0, 1.0),
                                    {fs::SamplingMode::MonteCarlo, 100'000, 20100101});
  EXPECT_NEAR(d.expectation(), 1.0, 0.02);
}
