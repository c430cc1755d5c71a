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

// Void probability seen from a random point vs. from a Farey point, n = 1.
// The slope of the first is minus the second.
//
//   void_vs_point [Q] [samples]

#include <cstdio>
#include <cstdlib>
#include <vector>

#include "fareystat/farey.hpp"
#include "fareystat/limits1d.hpp"
#include "fareystat/statistics.hpp"

namespace fs = fareystat;

int main(int argc, char** argv) {
  const long long level = argc > 1 ? std::atoll(argv[1]) : 1000;
  const long long samples = argc > 2 ? std::atoll(argv[2]) : 50'000;
  if (level < 1 || samples < 1) {
    std::fprintf(stderr, "usage: void_vs_point [Q >= 1] [samples >= 1]\n");
    return 2;
  }

  const auto f = fs::enumerate(1, level);
  const auto torus = fs::TestSet::unit_torus(1);
  const fs::SamplingPlan plan{fs::SamplingMode::MonteCarlo, static_cast<std::uint64_t>(samples), 7};

  std::vector<double> s, v, p;
  for (int k = 1; k <= 30; ++k) {
    const double sk = 0.1 * k;
    const auto a = fs::TestSet::interval_oc(0.0, sk);
    s.push_back(sk);
    v.push_back(fs::void_statistic(f, torus, a, plan).mass(0));
    p.push_back(fs::point_statistic(f, torus, a).mass(0));
  }

  std::printf("s,void_P0,point_P0,gap_limit,minus_slope\n");
  for (std::size_t k = 0; k < s.size(); ++k) {
    const std::size_t lo = k == 0 ? 0 : k - 1, hi = k + 1 == s.size() ? k : k + 1;
    const double slope = -(v[hi] - v[lo]) / (s[hi] - s[lo]);
    std::printf("%.1f,%.5f,%.5f,%.5f,%.5f\n", s[k], v[k], p[k], fs::hall_cdf(s[k]), slope);
  }
  return 0;
}
