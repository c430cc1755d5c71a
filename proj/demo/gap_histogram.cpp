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

// Histogram of scaled Farey gaps next to the limiting density.
//
//   gap_histogram [Q] [bin width]

#include <cstdio>
#include <cstdlib>
#include <vector>

#include "fareystat/farey.hpp"
#include "fareystat/limits1d.hpp"
#include "fareystat/statistics.hpp"

int main(int argc, char** argv) {
  const long long level = argc > 1 ? std::atoll(argv[1]) : 2000;
  const double width = argc > 2 ? std::atof(argv[2]) : 0.1;
  if (level < 1 || !(width > 0.0)) {
    std::fprintf(stderr, "usage: gap_histogram [Q >= 1] [bin width > 0]\n");
    return 2;
  }

  const auto f = fareystat::enumerate(1, level, {.build_index = false});
  const auto gaps = fareystat::gap_distribution_1d(f);
  const auto bins = static_cast<std::size_t>(4.0 / width);
  std::vector<std::size_t> hist(bins, 0);
  for (const double g : gaps) {
    const auto b = static_cast<std::size_t>(g / width);
    if (b < bins) ++hist[b];
  }

  std::printf("# Q=%lld, %zu gaps\n", level, gaps.size());
  std::printf("s_mid,empirical_density,limit_density\n");
  for (std::size_t b = 0; b < bins; ++b) {
    const double mid = (static_cast<double>(b) + 0.5) * width;
    const double emp = static_cast<double>(hist[b]) / (static_cast<double>(gaps.size()) * width);
    std::printf("%.4f,%.6f,%.6f\n", mid, emp, fareystat::hall_density(mid));
  }
  return 0;
}
