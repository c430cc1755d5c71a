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
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "fareystat/farey.hpp"
#include "fareystat/numtheory.hpp"
#include "fareystat/test_set.hpp"

namespace fareystat {

/// h(x): identity block, bottom row (-x, 1). Acts on row vectors from the right.
class ShearMatrix {
 public:
  explicit ShearMatrix(std::vector<double> x) : x_(std::move(x)) {
    if (x_.empty()) throw std::invalid_argument("ShearMatrix: empty vector");
  }
  int dim() const { return static_cast<int>(x_.size()); }
  const std::vector<double>& x() const { return x_; }

  Eigen::MatrixXd matrix() const {
    const int n = dim();
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n + 1, n + 1);
    for (int i = 0; i < n; ++i) m(n, i) = -x_[static_cast<std::size_t>(i)];
    return m;
  }

  ShearMatrix operator*(const ShearMatrix& other) const {
    if (other.dim() != dim()) throw std::invalid_argument("ShearMatrix: dimension mismatch");
    std::vector<double> sum(x_);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += other.x_[i];
    return ShearMatrix(std::move(sum));
  }

 private:
  std::vector<double> x_;
};

/// a(y) = diag(y^{1/n} 1_n, y^{-1}).
class DilationMatrix {
 public:
  DilationMatrix(int n, double y) : n_(n), y_(y) {
    if (n < 1) throw std::invalid_argument("DilationMatrix: dimension must be >= 1");
    if (!(y > 0.0)) throw std::invalid_argument("DilationMatrix: y must be positive");
  }
  int dim() const { return n_; }
  double y() const { return y_; }

  Eigen::MatrixXd matrix() const {
    Eigen::VectorXd d(n_ + 1);
    d.head(n_).setConstant(std::pow(y_, 1.0 / n_));
    d(n_) = 1.0 / y_;
    return d.asDiagonal();
  }

  DilationMatrix operator*(const DilationMatrix& other) const {
    if (other.n_ != n_) throw std::invalid_argument("DilationMatrix: dimension mismatch");
    return {n_, y_ * other.y_};
  }
  DilationMatrix inverse() const { return {n_, 1.0 / y_}; }

 private:
  int n_;
  double y_;
};

/// (p, q) h(x) a(Qy) = ((p - q x) (Qy)^{1/n}, q / Qy), in closed form.
inline std::vector<double> apply_h_a(std::span<const std::int64_t> v, std::span<const double> x, double qy) {
  if (v.size() != x.size() + 1) throw std::invalid_argument("apply_h_a: v must have length n+1");
  if (!(qy > 0.0)) throw std::invalid_argument("apply_h_a: Qy must be positive");
  const std::size_t n = x.size();
  const double q = static_cast<double>(v[n]);
  const double stretch = std::pow(qy, 1.0 / static_cast<double>(n));
  std::vector<double> w(n + 1);
  for (std::size_t i = 0; i < n; ++i) w[i] = (static_cast<double>(v[i]) - q * x[i]) * stretch;
  w[n] = q / qy;
  return w;
}

/// sigma_1 = 1 / ((n+1) zeta(n+1)).
inline double sigma_one(int n) { return 1.0 / ((n + 1) * zeta_real(n + 1.0)); }

/// The cone C(A) = {(x, y) : 0 < y <= 1, x ∈ sigma_1^{-1/n} y A}.
class ConeSpec {
 public:
  explicit ConeSpec(TestSet a) : a_(std::move(a)), n_(a_.dim()), sigma1_(sigma_one(n_)) {
    inv_root_ = std::pow(sigma1_, -1.0 / n_);
  }

  const TestSet& test_set() const { return a_; }
  int dim() const { return n_; }
  double sigma1() const { return sigma1_; }

  bool contains(std::span<const double> w) const {
    if (static_cast<int>(w.size()) != n_ + 1) throw std::invalid_argument("ConeSpec: w must have length n+1");
    const double y = w[static_cast<std::size_t>(n_)];
    if (!(y > 0.0 && y <= 1.0)) return false;
    std::vector<double> u(w.begin(), w.end() - 1);
    for (auto& c : u) c /= inv_root_ * y;
    return a_.contains(u);
  }

  /// Membership in C_lambda(A) = C(A) a(lambda^{1/(n+1)}): w ∈ C_lambda iff w a(lambda^{1/(n+1)})^{-1} ∈ C(A).
  bool contains_scaled(double lambda, std::span<const double> w) const {
    if (!(lambda > 0.0)) throw std::invalid_argument("ConeSpec: lambda must be positive");
    const double t = std::pow(lambda, -1.0 / (n_ + 1));  // a(t) = a(lambda^{1/(n+1)})^{-1}
    std::vector<double> v(w.begin(), w.end());
    const double stretch = std::pow(t, 1.0 / n_);
    for (int i = 0; i < n_; ++i) v[static_cast<std::size_t>(i)] *= stretch;
    v[static_cast<std::size_t>(n_)] /= t;
    return contains(v);
  }

 private:
  TestSet a_;
  int n_;
  double sigma1_;
  double inv_root_ = 1.0;
};

/// Delta_{s,lambda} = {0 < x1 <= (pi^2/3) x2 lambda s, 0 < x2 <= lambda^{-1/2}}.
struct TriangleSpec {
  double s = 1.0;
  double lambda = 1.0;

  TriangleSpec(double s_, double lambda_) : s(s_), lambda(lambda_) {
    if (!(s > 0.0)) throw std::invalid_argument("TriangleSpec: s must be positive");
    if (!(lambda > 0.0 && lambda <= 1.0)) throw std::invalid_argument("TriangleSpec: lambda must be in (0,1]");
  }

  bool contains(double x1, double x2) const {
    constexpr double kSlope = std::numbers::pi * std::numbers::pi / 3.0;
    return x1 > 0.0 && x1 <= kSlope * x2 * lambda * s && x2 > 0.0 && x2 <= 1.0 / std::sqrt(lambda);
  }
};

namespace detail {

inline void require_level_fits(const TestSet& a, std::int64_t level, double scale) {
  if (level < 1) throw std::invalid_argument("count_lattice_in_cone: level must be >= 1");
  if (!(scale * a.diameter() < 1.0)) throw std::invalid_argument("count_lattice_in_cone: level too small for test set");
}

// Visits each integer p in the per-axis ranges [lo_i, hi_i].
template <class Fn>
void for_each_in_ranges(std::span<const std::int64_t> lo, std::span<const std::int64_t> hi, std::vector<std::int64_t>& p, Fn&& fn) {
  const std::size_t n = lo.size();
  for (std::size_t i = 0; i < n; ++i)
    if (lo[i] > hi[i]) return;
  p.assign(lo.begin(), lo.end());
  for (;;) {
    fn(std::span<const std::int64_t>(p));
    std::size_t axis = n;
    while (axis > 0 && p[axis - 1] == hi[axis - 1]) {
      p[axis - 1] = lo[axis - 1];
      --axis;
    }
    if (axis == 0) return;
    ++p[axis - 1];
  }
}

}  // namespace detail

/// |Ẑ^{n+1} h(x) a(Q) ∩ C(A)|, counted over primitive (p, q), 0 < q <= Q, with p
/// unrestricted in Z^n. For each q the admissible p are the integers of
/// q (x + sigma_Q^{-1/n} A); primitivity is checked with vector_gcd. Membership
/// uses the same exact predicate as count_in_translate.
inline std::uint64_t count_lattice_in_cone(std::span<const double> x, std::int64_t level, const TestSet& a) {
  const int n = a.dim();
  if (static_cast<int>(x.size()) != n) throw std::invalid_argument("count_lattice_in_cone: dimension mismatch");
  const double scale = scale_factor(n, level);
  detail::require_level_fits(a, level, scale);
  std::vector<double> base(x.begin(), x.end());
  for (auto& v : base) v = detail::wrap_unit(v);
  const TranslatedSet set(a, base, scale);

  const auto un = static_cast<std::size_t>(n);
  std::vector<std::int64_t> lo(un), hi(un), p, vec(un + 1);
  std::uint64_t count = 0;
  for (std::int64_t q = 1; q <= level; ++q) {
    const double dq = static_cast<double>(q);
    for (std::size_t i = 0; i < un; ++i) {
      lo[i] = static_cast<std::int64_t>(std::floor(dq * set.lower(i))) - 1;
      hi[i] = static_cast<std::int64_t>(std::floor(dq * set.upper(i))) + 1;
    }
    detail::for_each_in_ranges(lo, hi, p, [&](std::span<const std::int64_t> cand) {
      std::copy(cand.begin(), cand.end(), vec.begin());
      vec[un] = q;
      if (vector_gcd(vec) != 1) return;
      if (set.contains(cand, q)) ++count;
    });
  }
  return count;
}

/// Slow reference: applies h(x) a(Q) in floating point and tests cone membership.
inline std::uint64_t count_lattice_in_cone_matrix(std::span<const double> x, std::int64_t level, const TestSet& a) {
  const int n = a.dim();
  if (static_cast<int>(x.size()) != n) throw std::invalid_argument("count_lattice_in_cone: dimension mismatch");
  const double scale = scale_factor(n, level);
  detail::require_level_fits(a, level, scale);
  const ConeSpec cone(a);
  std::vector<double> base(x.begin(), x.end());
  for (auto& v : base) v = detail::wrap_unit(v);

  const auto un = static_cast<std::size_t>(n);
  std::vector<std::int64_t> lo(un), hi(un), p, vec(un + 1);
  std::uint64_t count = 0;
  for (std::int64_t q = 1; q <= level; ++q) {
    const double reach = static_cast<double>(q) * scale;
    for (int i = 0; i < n; ++i) {
      const double centre = static_cast<double>(q) * base[static_cast<std::size_t>(i)];
      lo[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(std::floor(centre + reach * a.lower(i))) - 1;
      hi[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(std::floor(centre + reach * a.upper(i))) + 1;
    }
    detail::for_each_in_ranges(lo, hi, p, [&](std::span<const std::int64_t> cand) {
      std::copy(cand.begin(), cand.end(), vec.begin());
      vec[un] = q;
      if (vector_gcd(vec) != 1) return;
      if (cone.contains(apply_h_a(vec, base, static_cast<double>(level)))) ++count;
    });
  }
  return count;
}

}  // namespace fareystat
