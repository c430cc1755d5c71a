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
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fareystat/farey.hpp"
#include "fareystat/parallel.hpp"
#include "fareystat/report.hpp"
#include "fareystat/test_set.hpp"

namespace fareystat {

enum class SamplingMode { MonteCarlo, Grid };

inline const char* to_string(SamplingMode m) { return m == SamplingMode::MonteCarlo ? "mc" : "grid"; }

struct SamplingPlan {
  SamplingMode mode = SamplingMode::MonteCarlo;
  std::uint64_t count = 100'000;
  std::uint64_t seed = 20100101;
};

inline constexpr std::uint64_t kSampleChunk = 4096;

/// Base points x ∈ D (reduced to [0,1)^n), flattened as count x n.
///
/// Monte Carlo samples are drawn in fixed chunks, each with its own generator
/// seeded from (seed, chunk index), so the result does not depend on the
/// thread count. Grid mode places m^n cell centres over D's bounding box with
/// m = round(count^{1/n}) and keeps those inside D.
inline std::vector<double> sample_points(const TestSet& d, const SamplingPlan& plan) {
  validate_torus_region(d);
  if (plan.count == 0) throw std::invalid_argument("sample_points: sample count must be positive");
  const auto n = static_cast<std::size_t>(d.dim());
  std::vector<double> out;

  if (plan.mode == SamplingMode::Grid) {
    const auto m = std::max<std::int64_t>(1, std::llround(std::pow(static_cast<double>(plan.count), 1.0 / static_cast<double>(n))));
    std::vector<std::int64_t> idx(n, 0);
    std::vector<double> v(n);
    for (;;) {
      for (std::size_t i = 0; i < n; ++i) {
        const double lo = d.lower(static_cast<int>(i)), hi = d.upper(static_cast<int>(i));
        v[i] = lo + (static_cast<double>(idx[i]) + 0.5) * (hi - lo) / static_cast<double>(m);
      }
      if (d.contains(v))
        for (const double c : v) out.push_back(detail::wrap_unit(c));
      std::size_t axis = n;
      while (axis > 0 && idx[axis - 1] + 1 == m) idx[--axis] = 0;
      if (axis == 0) break;
      ++idx[axis - 1];
    }
    return out;
  }

  out.resize(plan.count * n);
  const std::uint64_t chunks = (plan.count + kSampleChunk - 1) / kSampleChunk;
  parallel::for_each_chunk(chunks, [&](std::size_t c) {
    std::seed_seq seq{static_cast<std::uint32_t>(plan.seed), static_cast<std::uint32_t>(plan.seed >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> v(n);
    const std::uint64_t begin = c * kSampleChunk, end = std::min(plan.count, begin + kSampleChunk);
    for (std::uint64_t k = begin; k < end; ++k) {
      do {
        for (std::size_t i = 0; i < n; ++i) {
          const double lo = d.lower(static_cast<int>(i)), hi = d.upper(static_cast<int>(i));
          v[i] = lo + (hi - lo) * unit(rng);
        }
      } while (d.is_ball() && !d.contains(v));
      for (std::size_t i = 0; i < n; ++i) out[k * n + i] = detail::wrap_unit(v[i]);
    }
  });
  return out;
}

/// Where a distribution came from; enough to reproduce it.
struct DistributionMetadata {
  std::string statistic;  // "void" or "point"
  int n = 1;
  std::int64_t level = 1;
  std::string region;     // descriptor of D
  std::string test_set;   // descriptor of A
  std::string boundary;   // box boundary convention of A, or "open-ball"
  std::string mode;       // "mc", "grid" or "exact"
  std::uint64_t seed = 0;
};

/// Empirical probability mass k -> P(k) from integer counts.
///
/// Counts above kMaxK land in an overflow bucket. `count_sum` keeps the exact
/// total of all observed k, so the expectation is unaffected by the cap.
class CountDistribution {
 public:
  static constexpr std::size_t kMaxK = 64;

  CountDistribution() : counts_(kMaxK + 1, 0) {}

  void record(std::uint64_t k) {
    if (k > kMaxK) ++overflow_;
    else ++counts_[k];
    ++samples_;
    count_sum_ += k;
  }

  void merge(const CountDistribution& other) {
    for (std::size_t k = 0; k <= kMaxK; ++k) counts_[k] += other.counts_[k];
    overflow_ += other.overflow_;
    samples_ += other.samples_;
    count_sum_ += other.count_sum_;
    near_boundary_ += other.near_boundary_;
  }

  void add_near_boundary(std::uint64_t hits) { near_boundary_ += hits; }

  std::uint64_t samples() const { return samples_; }
  std::uint64_t count(std::size_t k) const { return k <= kMaxK ? counts_[k] : 0; }
  std::uint64_t overflow() const { return overflow_; }
  bool overflowed() const { return overflow_ > 0; }
  std::uint64_t near_boundary_hits() const { return near_boundary_; }

  /// Largest k with nonzero mass (capped at kMaxK).
  std::size_t kmax() const {
    std::size_t k = kMaxK;
    while (k > 0 && counts_[k] == 0) --k;
    return k;
  }

  double mass(std::size_t k) const {
    if (samples_ == 0) return 0.0;
    return static_cast<double>(count(k)) / static_cast<double>(samples_);
  }
  double overflow_mass() const { return samples_ == 0 ? 0.0 : static_cast<double>(overflow_) / static_cast<double>(samples_); }

  std::vector<double> masses() const {
    std::vector<double> out(kmax() + 1);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = mass(k);
    return out;
  }

  /// True when the integer counts partition the samples, i.e. sum_k P(k) = 1 exactly.
  bool is_normalized() const {
    std::uint64_t total = overflow_;
    for (const auto c : counts_) total += c;
    return samples_ > 0 && total == samples_;
  }

  double expectation() const {
    return samples_ == 0 ? 0.0 : static_cast<double>(count_sum_) / static_cast<double>(samples_);
  }

  DistributionMetadata metadata;

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t overflow_ = 0;
  std::uint64_t samples_ = 0;
  std::uint64_t count_sum_ = 0;
  std::uint64_t near_boundary_ = 0;
};

namespace detail {

inline double checked_scale(const FareySequence& f, const TestSet& a) {
  if (a.dim() != f.dim()) throw std::invalid_argument("statistic: test set dimension mismatch");
  const double scale = scale_factor(f.dim(), f.level());
  require_wrap_safe(a, scale);
  return scale;
}

inline std::string boundary_name(const TestSet& a) {
  return a.is_box() ? to_string(a.as_box().boundary) : "open-ball";
}

}  // namespace detail

/// P_Q(k, D, A): fraction of base points x ∈ D whose translate
/// x + sigma_Q^{-1/n} A contains exactly k Farey points.
inline CountDistribution void_statistic(const FareySequence& f, const TestSet& d, const TestSet& a,
                                        const SamplingPlan& plan = {}) {
  if (d.dim() != f.dim()) throw std::invalid_argument("void_statistic: region dimension mismatch");
  const double scale = detail::checked_scale(f, a);
  const std::vector<double> points = sample_points(d, plan);
  const auto n = static_cast<std::size_t>(f.dim());
  const std::size_t total = points.size() / n;
  const std::size_t chunks = (total + kSampleChunk - 1) / kSampleChunk;
  std::vector<CountDistribution> partial(chunks);
  parallel::for_each_chunk(chunks, [&](std::size_t c) {
    const std::size_t end = std::min(total, (c + 1) * kSampleChunk);
    for (std::size_t k = c * kSampleChunk; k < end; ++k) {
      const auto hit = count_in_translate(f, std::span<const double>(points.data() + k * n, n), a, scale);
      partial[c].record(hit.count);
      partial[c].add_near_boundary(hit.near_boundary);
    }
  });
  CountDistribution out;
  for (const auto& p : partial) out.merge(p);
  out.metadata = {"void", f.dim(), f.level(), d.descriptor(), a.descriptor(), detail::boundary_name(a),
                  to_string(plan.mode), plan.seed};
  return out;
}

/// P_{0,Q}(k, D, A): over Farey points r ∈ D, the fraction whose translate
/// r + sigma_Q^{-1/n} A contains exactly k Farey points. Exact; r itself is
/// counted iff 0 ∈ A.
inline CountDistribution point_statistic(const FareySequence& f, const TestSet& d, const TestSet& a) {
  if (d.dim() != f.dim()) throw std::invalid_argument("point_statistic: region dimension mismatch");
  validate_torus_region(d);
  const double scale = detail::checked_scale(f, a);
  constexpr std::size_t kChunk = 1 << 14;
  const std::size_t chunks = (f.size() + kChunk - 1) / kChunk;
  std::vector<CountDistribution> partial(chunks);
  parallel::for_each_chunk(chunks, [&](std::size_t c) {
    const std::size_t end = std::min(f.size(), (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      if (!torus_region_contains(d, f.numerator(i), f.denominator(i))) continue;
      const auto hit = count_in_translate_at(f, i, a, scale);
      partial[c].record(hit.count);
      partial[c].add_near_boundary(hit.near_boundary);
    }
  });
  CountDistribution out;
  for (const auto& p : partial) out.merge(p);
  if (out.samples() == 0) throw std::invalid_argument("point_statistic: no reference points in D");
  out.metadata = {"point", f.dim(), f.level(), d.descriptor(), a.descriptor(), detail::boundary_name(a), "exact", 0};
  return out;
}

/// Consecutive circular gaps of F_Q (n = 1) times sigma_Q, sorted ascending.
inline std::vector<double> gap_distribution_1d(const FareySequence& f) {
  if (f.dim() != 1) throw std::invalid_argument("gap_distribution_1d: requires n = 1");
  std::vector<std::uint32_t> order(f.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<std::uint32_t>(i);
  auto num = [&](std::uint32_t i) { return static_cast<std::int64_t>(f.numerator(i)[0]); };
  std::sort(order.begin(), order.end(), [&](std::uint32_t i, std::uint32_t j) {
    return num(i) * f.denominator(j) < num(j) * f.denominator(i);
  });
  const double sig = sigma(1, f.level());
  std::vector<double> gaps(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::uint32_t i = order[k];
    const bool wrap = k + 1 == order.size();
    const std::uint32_t j = wrap ? order[0] : order[k + 1];
    const std::int64_t qi = f.denominator(i), qj = f.denominator(j);
    const std::int64_t pj = num(j) + (wrap ? qj : 0);
    const std::int64_t numer = pj * qi - num(i) * qj;
    gaps[k] = sig * static_cast<double>(numer) / (static_cast<double>(qi) * static_cast<double>(qj));
  }
  std::sort(gaps.begin(), gaps.end());
  return gaps;
}

/// Fraction of sorted gaps strictly greater than s.
inline double gap_survival(std::span<const double> sorted_gaps, double s) {
  if (sorted_gaps.empty()) return 0.0;
  const auto it = std::upper_bound(sorted_gaps.begin(), sorted_gaps.end(), s);
  return static_cast<double>(sorted_gaps.end() - it) / static_cast<double>(sorted_gaps.size());
}

/// Poisson reference e^{-v} v^k / k! for comparison plots.
inline double poisson_mass(double volume, std::size_t k) {
  return std::exp(-volume + static_cast<double>(k) * std::log(volume) - std::lgamma(static_cast<double>(k) + 1.0));
}

/// Successive sup-differences d_i = sup |c_{i+1} - c_i| along a family of
/// curves; passes if d_{i+1} <= slack * d_i for every i. Shorter curves are
/// padded with zeros.
inline VerificationReport convergence_report(std::string name, const std::vector<std::vector<double>>& curves,
                                             double slack = 1.5) {
  if (curves.size() < 3) throw std::invalid_argument("convergence_report: needs at least 3 levels");
  std::vector<double> diffs;
  for (std::size_t i = 0; i + 1 < curves.size(); ++i) {
    const auto& u = curves[i];
    const auto& v = curves[i + 1];
    double d = 0.0;
    for (std::size_t k = 0; k < std::max(u.size(), v.size()); ++k) {
      const double a = k < u.size() ? u[k] : 0.0;
      const double b = k < v.size() ? v[k] : 0.0;
      d = std::max(d, std::abs(a - b));
    }
    diffs.push_back(d);
  }
  std::vector<double> computed(diffs.begin() + 1, diffs.end()), bound;
  for (std::size_t i = 0; i + 1 < diffs.size(); ++i) bound.push_back(slack * diffs[i]);
  VerificationReport r = make_report(std::move(name), computed, bound, 0.0, VerificationReport::Norm::Upper);
  r.detail = "successive sup-differences:";
  for (const double d : diffs) r.detail += " " + std::to_string(d);
  return r;
}

inline VerificationReport convergence_report(std::string name, const std::vector<CountDistribution>& family,
                                             double slack = 1.5) {
  std::vector<std::vector<double>> curves;
  for (const auto& d : family) curves.push_back(d.masses());
  return convergence_report(std::move(name), curves, slack);
}

}  // namespace fareystat
