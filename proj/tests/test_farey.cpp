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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "fareystat/farey.hpp"

namespace fs = fareystat;

namespace {

using Point = std::vector<std::int64_t>;  // p1..pn, q

std::set<Point> naive_farey(int n, std::int64_t level) {
  std::set<Point> out;
  for (std::int64_t q = 1; q <= level; ++q) {
    Point p(static_cast<std::size_t>(n) + 1, 0);
    p.back() = q;
    for (;;) {
      std::int64_t g = q;
      for (int i = 0; i < n; ++i) g = std::gcd(g, p[static_cast<std::size_t>(i)]);
      if (g == 1) out.insert(p);
      int axis = n - 1;
      while (axis >= 0 && p[static_cast<std::size_t>(axis)] == q - 1) p[static_cast<std::size_t>(axis--)] = 0;
      if (axis < 0) break;
      ++p[static_cast<std::size_t>(axis)];
    }
  }
  return out;
}

std::set<Point> as_set(const fs::FareySequence& f) {
  std::set<Point> out;
  for (std::size_t k = 0; k < f.size(); ++k) {
    Point p(f.numerator(k).begin(), f.numerator(k).end());
    p.push_back(f.denominator(k));
    out.insert(p);
  }
  return out;
}

fs::TestSet random_set(std::mt19937_64& rng, int n, double reach) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int kind = static_cast<int>(rng() % 3);
  if (kind == 2) return fs::TestSet::ball(n, reach * (0.05 + 0.45 * u(rng)));
  std::vector<double> lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < lo.size(); ++i) {
    const double w = reach * (0.05 + 0.95 * u(rng));
    lo[i] = -w * u(rng);
    hi[i] = lo[i] + w;
  }
  return fs::TestSet::box(lo, hi, kind == 0 ? fs::BoxBoundary::HalfOpen : fs::BoxBoundary::OpenClosed);
}

}  // namespace

TEST(Farey, LevelFiveList) {
  const auto f = fs::enumerate(1, 5);
  ASSERT_EQ(f.size(), 10u);
  std::vector<std::pair<std::int64_t, std::int64_t>> pts;
  for (std::size_t k = 0; k < f.size(); ++k) pts.emplace_back(f.numerator(k)[0], f.denominator(k));
  std::sort(pts.begin(), pts.end(), [](auto a, auto b) { return a.first * b.second < b.first * a.second; });
  const std::vector<std::pair<std::int64_t, std::int64_t>> expect = {{0, 1}, {1, 5}, {1, 4}, {1, 3}, {2, 5},
                                                                     {1, 2}, {3, 5}, {2, 3}, {3, 4}, {4, 5}};
  EXPECT_EQ(pts, expect);
}

TEST(Farey, MatchesNaiveEnumeration) {
  for (int n = 1; n <= 3; ++n)
    for (std::int64_t level : {1, 2, 7, 12}) EXPECT_EQ(as_set(fs::enumerate(n, level)), naive_farey(n, level)) << n << ' ' << level;
}

TEST(Farey, CardinalityIsJordanSum) {
  for (int n = 1; n <= 4; ++n) {
    const auto t = fs::build_table(40, n);
    for (std::int64_t level = 1; level <= 40; level += 3) {
      std::uint64_t sum = 0;
      for (std::int64_t q = 1; q <= level; ++q) sum += static_cast<std::uint64_t>(t.jordan_totient(q));
      EXPECT_EQ(fs::enumerate(n, level, {.build_index = false}).size(), sum);
      EXPECT_EQ(fs::exact_cardinality(n, level), sum);
    }
  }
}

TEST(Farey, AsymptoticDensity) {
  EXPECT_NEAR(static_cast<double>(fs::exact_cardinality(1, 20'000)) / fs::sigma(1, 20'000), 1.0, 1e-3);
  EXPECT_NEAR(static_cast<double>(fs::exact_cardinality(2, 2000)) / fs::sigma(2, 2000), 1.0, 1e-2);
  EXPECT_NEAR(fs::scale_factor(2, 100), std::pow(fs::sigma(2, 100), -0.5), 1e-15);
}

TEST(Farey, PointsArePrimitiveAndInRange) {
  const auto f = fs::enumerate(2, 30);
  for (std::size_t k = 0; k < f.size(); ++k) {
    const auto p = f.numerator(k);
    const auto q = f.denominator(k);
    ASSERT_GE(q, 1);
    ASSERT_LE(q, 30);
    ASSERT_EQ(std::gcd(std::gcd<std::int64_t>(p[0], p[1]), q), 1);
    ASSERT_TRUE(p[0] >= 0 && p[0] < q && p[1] >= 0 && p[1] < q);
  }
}

TEST(Farey, IndexIsConsistent) {
  const auto f = fs::enumerate(2, 40);
  const auto& idx = f.index();
  ASSERT_FALSE(idx.empty());
  const std::int64_t m = idx.cells_per_axis;
  ASSERT_EQ(idx.cell_start.size(), static_cast<std::size_t>(m * m + 1));
  ASSERT_EQ(idx.order.size(), f.size());
  std::vector<bool> seen(f.size(), false);
  for (std::int64_t cell = 0; cell < m * m; ++cell)
    for (auto k = idx.cell_start[static_cast<std::size_t>(cell)]; k < idx.cell_start[static_cast<std::size_t>(cell) + 1]; ++k) {
      const auto i = idx.order[k];
      seen[i] = true;
      ASSERT_EQ(f.cell_coordinate(i, 1) * m + f.cell_coordinate(i, 0), cell);
    }
  EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
}

TEST(Farey, ExplicitCellCountAndNoIndex) {
  EXPECT_EQ(fs::enumerate(1, 50, {.build_index = true, .cells_per_axis = 7}).index().cells_per_axis, 7);
  EXPECT_TRUE(fs::enumerate(1, 50, {.build_index = false}).index().empty());
}

TEST(Farey, Errors) {
  EXPECT_THROW(fs::enumerate(0, 5), std::invalid_argument);
  EXPECT_THROW(fs::enumerate(1, 0), std::invalid_argument);
  EXPECT_THROW(fs::enumerate(3, 5000), std::length_error);
  EXPECT_THROW(fs::enumerate(1, 1000, {.memory_budget_bytes = 1000}), std::length_error);
}

TEST(TranslateCount, SmallestAndLargestGaps) {
  // Level 5: the shortest gap is 1/20 (1/5 to 1/4); the longest is 1/5 (0 to 1/5, and 4/5 to 1).
  const auto f = fs::enumerate(1, 5);
  const double scale = fs::scale_factor(1, 5);
  const double sigma = fs::sigma(1, 5);
  const auto just_below = [&](double gap) { return fs::TestSet::interval_oc(0.0, gap * sigma * (1.0 - 1e-9)); };
  const auto at = [&](double gap) { return fs::TestSet::interval_oc(0.0, gap * sigma); };
  std::size_t one_fifth = f.size();
  for (std::size_t k = 0; k < f.size(); ++k)
    if (f.numerator(k)[0] == 1 && f.denominator(k) == 5) one_fifth = k;
  ASSERT_LT(one_fifth, f.size());
  EXPECT_EQ(fs::count_in_translate_at(f, one_fifth, just_below(1.0 / 20.0), scale).count, 0u);
  EXPECT_EQ(fs::count_in_translate_at(f, one_fifth, at(1.0 / 20.0), scale).count, 1u);
  // every point sees a neighbour within the longest gap, and some point sees none below it
  std::size_t empty_below_max = 0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    EXPECT_EQ(fs::count_in_translate_at(f, k, at(0.2), scale).count >= 1, true);
    if (fs::count_in_translate_at(f, k, just_below(0.2), scale).count == 0) ++empty_below_max;
  }
  EXPECT_EQ(empty_below_max, 2u);
}

TEST(TranslateCount, MatchesBruteForce) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 1; n <= 3; ++n) {
    const std::int64_t level = n == 1 ? 200 : n == 2 ? 25 : 9;
    const auto f = fs::enumerate(n, level);
    const double scale = fs::scale_factor(n, level);
    const double reach = 0.95 / (scale * std::sqrt(static_cast<double>(n)));
    for (int trial = 0; trial < 150; ++trial) {
      const auto a = random_set(rng, n, reach);
      std::vector<double> x(static_cast<std::size_t>(n));
      for (auto& c : x) c = trial % 4 == 0 ? 0.5 : u(rng);
      ASSERT_EQ(fs::count_in_translate(f, x, a, scale).count, fs::count_in_translate_bruteforce(f, x, a, scale))
          << n << ' ' << a.descriptor();
    }
  }
}

TEST(TranslateCount, WrapsAroundTheTorus) {
  const auto f = fs::enumerate(1, 10);
  const double scale = fs::scale_factor(1, 10);
  const auto a = fs::TestSet::box({-1.0}, {1.0});
  for (const double x : {0.0, 0.999, 0.001}) {
    const double xs[] = {x};
    EXPECT_EQ(fs::count_in_translate(f, xs, a, scale).count, fs::count_in_translate_bruteforce(f, xs, a, scale));
  }
  const double xs[] = {0.0};
  EXPECT_THROW(fs::count_in_translate(f, xs, fs::TestSet::box({0.0}, {2.0 / scale}), scale), std::invalid_argument);
}

TEST(Region, CountsAndValidation) {
  const auto f = fs::enumerate(1, 5);
  EXPECT_EQ(fs::count_in_region(f, fs::TestSet::box({0.0}, {0.5})), 5u);
  EXPECT_EQ(fs::count_in_region(f, fs::TestSet::box({0.5}, {1.0})), 5u);
  EXPECT_EQ(fs::count_in_region(f, fs::TestSet::unit_torus(1)), 10u);
  EXPECT_THROW(fs::validate_torus_region(fs::TestSet::box({-0.1}, {0.5})), std::invalid_argument);
  EXPECT_THROW(fs::validate_torus_region(fs::TestSet::ball(1, 0.6)), std::invalid_argument);
}
