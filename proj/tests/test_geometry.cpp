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

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "fareystat/farey.hpp"
#include "fareystat/geometry.hpp"

namespace fs = fareystat;

TEST(Matrices, ShearGroupLaw) {
  const fs::ShearMatrix a({0.25, -0.5}), b({0.125, 0.75});
  EXPECT_TRUE((a * b).matrix().isApprox(a.matrix() * b.matrix(), 1e-15));
  EXPECT_TRUE((a * fs::ShearMatrix({-0.25, 0.5})).matrix().isIdentity(1e-15));
}

TEST(Matrices, DilationGroupLaw) {
  const fs::DilationMatrix a(3, 2.0), b(3, 5.0);
  EXPECT_TRUE((a * b).matrix().isApprox(a.matrix() * b.matrix(), 1e-14));
  EXPECT_TRUE((a * a.inverse()).matrix().isIdentity(1e-14));
  EXPECT_NEAR(a.matrix().determinant(), 1.0, 1e-14);
  EXPECT_THROW(fs::DilationMatrix(2, 0.0), std::invalid_argument);
}

TEST(Matrices, ClosedFormMatchesProduct) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 1; n <= 3; ++n)
    for (int t = 0; t < 50; ++t) {
      std::vector<double> x(static_cast<std::size_t>(n));
      for (auto& c : x) c = u(rng);
      std::vector<std::int64_t> v(static_cast<std::size_t>(n) + 1);
      for (auto& c : v) c = static_cast<std::int64_t>(rng() % 41) - 20;
      const double qy = 1.0 + 100.0 * u(rng);
      Eigen::RowVectorXd row(n + 1);
      for (int i = 0; i <= n; ++i) row(i) = static_cast<double>(v[static_cast<std::size_t>(i)]);
      const Eigen::RowVectorXd ref = row * fs::ShearMatrix(x).matrix() * fs::DilationMatrix(n, qy).matrix();
      const auto w = fs::apply_h_a(v, x, qy);
      for (int i = 0; i <= n; ++i) EXPECT_NEAR(w[static_cast<std::size_t>(i)], ref(i), 1e-11);
    }
}

TEST(Cone, MembershipAndScaling) {
  const fs::ConeSpec cone(fs::TestSet::box({0.0}, {1.0}));
  const double root = 1.0 / cone.sigma1();
  const double inside[] = {0.5 * root * 0.5, 0.5};
  const double outside[] = {1.2 * root * 0.5, 0.5};
  const double too_high[] = {0.1, 1.5};
  EXPECT_TRUE(cone.contains(inside));
  EXPECT_FALSE(cone.contains(outside));
  EXPECT_FALSE(cone.contains(too_high));
  // C_lambda = C a(lambda^{1/2}) stretches the height bound to lambda^{-1/2}
  const double tall[] = {0.1, 1.5};
  EXPECT_TRUE(cone.contains_scaled(0.25, tall));
  EXPECT_FALSE(cone.contains_scaled(0.25, std::vector<double>{0.1, 2.5}));
  EXPECT_NEAR(cone.sigma1(), 3.0 / (std::acos(-1.0) * std::acos(-1.0)), 1e-15);
}

TEST(Cone, TriangleIsTheConeOfAnInterval) {
  // n = 1, A = (0, s]: C_lambda(A) coincides with the triangle picture.
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double s = 1.7;
  const fs::ConeSpec cone(fs::TestSet::interval_oc(0.0, s));
  for (const double lambda : {1.0, 0.5, 0.2}) {
    const fs::TriangleSpec tri(s, lambda);
    int agree = 0;
    for (int i = 0; i < 5000; ++i) {
      const double w[] = {8.0 * u(rng) - 1.0, 3.0 * u(rng)};
      // cone picture uses (x, y) with x in sigma_1^{-1} y A; triangle uses (x1, x2) = (x, y) reflected to x1 > 0
      if (cone.contains_scaled(lambda, w) == tri.contains(w[0], w[1])) ++agree;
    }
    EXPECT_EQ(agree, 5000) << lambda;
  }
}

TEST(ConeCount, MatchesTranslateCount) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 1; n <= 2; ++n) {
    const std::int64_t level = n == 1 ? 150 : 20;
    const auto f = fs::enumerate(n, level);
    const double scale = fs::scale_factor(n, level);
    const double reach = 0.9 / (scale * std::sqrt(static_cast<double>(n)));
    for (int t = 0; t < 60; ++t) {
      std::vector<double> x(static_cast<std::size_t>(n));
      for (auto& c : x) c = u(rng);
      std::vector<double> lo(x.size()), hi(x.size());
      for (std::size_t i = 0; i < lo.size(); ++i) {
        lo[i] = -reach * 0.5 * u(rng);
        hi[i] = lo[i] + reach * (0.1 + 0.9 * u(rng));
      }
      const auto a = t % 3 == 2 ? fs::TestSet::ball(n, reach * 0.4 * u(rng) + 0.1) : fs::TestSet::box(lo, hi, t % 3 ? fs::BoxBoundary::OpenClosed : fs::BoxBoundary::HalfOpen);
      const auto exact = fs::count_lattice_in_cone(x, level, a);
      EXPECT_EQ(exact, fs::count_in_translate(f, x, a, scale).count);
      // the floating matrix route may only differ on boundary ties, which random data avoids
      EXPECT_EQ(exact, fs::count_lattice_in_cone_matrix(x, level, a));
    }
  }
}

TEST(ConeCount, RejectsOversizedSets) {
  const double x[] = {0.3};
  EXPECT_THROW(fs::count_lattice_in_cone(x, 3, fs::TestSet::box({0.0}, {100.0})), std::invalid_argument);
  EXPECT_THROW(fs::count_lattice_in_cone(x, 0, fs::TestSet::box({0.0}, {1.0})), std::invalid_argument);
}
