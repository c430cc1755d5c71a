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

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <type_traits>

namespace fareystat {

__extension__ using int128 = __int128;
__extension__ using uint128 = unsigned __int128;

namespace detail {

inline int bit_length(uint128 v) {
  const auto hi = static_cast<std::uint64_t>(v >> 64);
  if (hi != 0) return 128 - std::countl_zero(hi);
  const auto lo = static_cast<std::uint64_t>(v);
  return 64 - std::countl_zero(lo);
}

// Three-way compare of a and b * 2^shift for nonnegative a, b; shift may be negative.
inline int compare_scaled(uint128 a, uint128 b, int shift) {
  if (b == 0) return a == 0 ? 0 : 1;
  if (a == 0) return -1;
  const int la = bit_length(a);
  const int lb = bit_length(b) + shift;
  if (la > lb) return 1;
  if (la < lb) return -1;
  // Equal bit lengths: both sides are below 2^117, so the shift is exact.
  if (shift >= 0) b <<= shift;
  else a <<= -shift;
  return (a > b) - (a < b);
}

}  // namespace detail

/// Exact sign of num/den - value for integers num, den (den > 0) and a finite
/// or infinite double. The double is treated as the dyadic rational it
/// represents, so no rounding enters the comparison.
inline int compare_ratio(std::int64_t num, std::int64_t den, double value) {
  if (den <= 0) throw std::invalid_argument("compare_ratio: denominator must be positive");
  if (std::isnan(value)) throw std::invalid_argument("compare_ratio: NaN bound");
  if (std::isinf(value)) return value > 0 ? -1 : 1;
  const int num_sign = (num > 0) - (num < 0);
  if (value == 0.0) return num_sign;
  const int value_sign = value > 0 ? 1 : -1;
  if (num_sign != value_sign) return num_sign > value_sign ? 1 : -1;

  int exponent = 0;
  const double frac = std::frexp(std::abs(value), &exponent);
  const auto mantissa = static_cast<std::uint64_t>(std::ldexp(frac, 53));
  const int shift = exponent - 53;  // |value| = mantissa * 2^shift
  const auto abs_num = static_cast<uint128>(num < 0 ? -static_cast<int128>(num) : num);
  const auto rhs = static_cast<uint128>(mantissa) * static_cast<std::uint64_t>(den);
  const int mag = detail::compare_scaled(abs_num, rhs, shift);
  return num_sign > 0 ? mag : -mag;
}

/// Neumaier-compensated running sum.
template <class T>
class CompensatedSum {
 public:
  void add(T v) {
    if constexpr (std::is_floating_point_v<T>) {
      add_real(sum_, comp_, v);
    } else {
      auto s = sum_.real(), c = comp_.real();
      add_real(s, c, v.real());
      auto si = sum_.imag(), ci = comp_.imag();
      add_real(si, ci, v.imag());
      sum_ = T(s, si);
      comp_ = T(c, ci);
    }
  }
  T value() const { return sum_ + comp_; }

 private:
  template <class R>
  static void add_real(R& sum, R& comp, R v) {
    const R t = sum + v;
    if (std::abs(sum) >= std::abs(v)) comp += (sum - t) + v;
    else comp += (v - t) + sum;
    sum = t;
  }
  T sum_{};
  T comp_{};
};

}  // namespace fareystat
