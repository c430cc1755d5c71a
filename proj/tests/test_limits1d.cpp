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
#include <numbers>
#include <stdexcept>

#include "fareystat/limits1d.hpp"
#include "fareystat/quadrature.hpp"

namespace fs = fareystat;

namespace {
constexpr double kC = std::numbers::pi * std::numbers::pi / 3.0;
}

TEST(Hall, EndpointsAndBranches) {
  EXPECT_DOUBLE_EQ(fs::hall_cdf(0.0), 1.0);
  EXPECT_DOUBLE_EQ(fs::hall_cdf(1.0 / kC), 1.0);
  EXPECT_EQ(fs::hall_branch(2.0), fs::HallBranch::Constant);
  EXPECT_EQ(fs::hall_branch(0.5), fs::HallBranch::Middle);
  EXPECT_EQ(fs::hall_branch(0.1), fs::HallBranch::Lower);
  EXPECT_NEAR(fs::hall_cdf_branch(fs::HallBranch::Middle, 1.0), 1.0, 1e-15);
  EXPECT_NEAR(fs::hall_cdf_branch(fs::HallBranch::Lower, 0.25), fs::hall_cdf_branch(fs::HallBranch::Middle, 0.25), 1e-14);
  EXPECT_NEAR(fs::hall_density_branch(fs::HallBranch::Lower, 0.25), fs::hall_density_branch(fs::HallBranch::Middle, 0.25), 1e-13);
  EXPECT_THROW(fs::hall_cdf(-1.0), std::domain_error);
}

TEST(Hall, MonotoneAndBounded) {
  double prev = 1.0;
  for (int i = 1; i <= 2000; ++i) {
    const double v = fs::hall_cdf(0.005 * i);
    ASSERT_LE(v, prev + 1e-15);
    ASSERT_GE(v, 0.0);
    ASSERT_GE(fs::hall_density(0.005 * i), 0.0);
    prev = v;
  }
}

TEST(Hall, MeanGapIsOne) {
  // int_0^inf P(gap > s) ds = 1; tail beyond S is about 2/(C^2 S).
  const double upper = 1e4;
  const double body = fs::integrate_panels([](double s) { return fs::hall_cdf(s); }, 0.0, upper,
                                           {1.0 / kC, 4.0 / kC, 10.0, 100.0, 1000.0}, 1e-12);
  EXPECT_NEAR(body + 2.0 / (kC * kC * upper), 1.0, 1e-6);
}

TEST(Hall, DensityIsDerivative) {
  for (const double s : {0.2, 0.5, 1.0, 2.0, 3.5}) {
    const double h = 1e-5;
    EXPECT_NEAR(-(fs::hall_cdf(s + h) - fs::hall_cdf(s - h)) / (2 * h), fs::hall_density(s), 1e-7) << s;
  }
}

TEST(Triangle, ClosedFormMatchesOracle) {
  for (const double s : {0.2, 0.5, 1.0, 1.5, 2.2, 3.0})
    for (const double lambda : {0.05, 0.3, 0.61, 1.0})
      EXPECT_NEAR(fs::p0_triangle(s, lambda), fs::triangle_oracle(s, lambda), 1e-10) << s << ' ' << lambda;
}

TEST(Triangle, QuadratureRecoversHall) {
  for (const double s : {0.1, 0.3, 0.31, 1.0, 2.0, 4.0}) EXPECT_NEAR(fs::p0_quadrature(s), fs::hall_cdf(s), 1e-9) << s;
  const auto bp = fs::p0_breakpoints(3.0);
  EXPECT_EQ(bp.size(), 3u);
}

TEST(Triangle, Errors) {
  EXPECT_THROW(fs::p0_triangle(0.0, 0.5), std::domain_error);
  EXPECT_THROW(fs::p0_triangle(1.0, 1.5), std::domain_error);
  EXPECT_THROW(fs::triangle_oracle(1.0, 0.0), std::domain_error);
  EXPECT_THROW(fs::triangle_oracle(1e7, 1.0, 10), std::length_error);
}

TEST(Quadrature, SimpsonAndPanels) {
  EXPECT_NEAR(fs::adaptive_simpson([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-13), std::numbers::e - 1.0, 1e-12);
  EXPECT_NEAR(fs::integrate_panels([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, {0.3}, 1e-13), 0.045 + 0.245, 1e-12);
}
