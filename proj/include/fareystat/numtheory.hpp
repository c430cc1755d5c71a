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
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <tuple>
#include <utility>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fareystat/exact.hpp"
#include "fareystat/report.hpp"

namespace fareystat {

/// gcd of all components, sign-insensitive. Throws on the zero vector.
inline std::int64_t vector_gcd(std::span<const std::int64_t> v) {
  std::int64_t g = 0;
  for (const std::int64_t c : v) g = std::gcd(g, c);
  if (g == 0) throw std::invalid_argument("vector_gcd: undefined gcd of the zero vector");
  return g;
}

inline std::int64_t vector_gcd(std::initializer_list<std::int64_t> v) {
  return vector_gcd(std::span<const std::int64_t>(v.begin(), v.size()));
}

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("arithmetic table: 64-bit overflow");
  return r;
}

inline std::int64_t checked_pow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

}  // namespace detail

/// Totient, Moebius and Jordan totient J_n tables on [0, limit], built by one
/// linear sieve. Index 0 is unused.
struct ArithmeticTable {
  std::int64_t limit = 0;
  int order = 1;  // n of the Jordan totient
  std::vector<std::int64_t> totient;
  std::vector<std::int8_t> mobius;
  std::vector<std::int64_t> jordan;
  std::vector<std::int32_t> smallest_factor;
  std::vector<std::int32_t> primes;

  std::int64_t phi(std::int64_t q) const { return totient.at(static_cast<std::size_t>(q)); }
  int mu(std::int64_t q) const { return mobius.at(static_cast<std::size_t>(q)); }
  std::int64_t jordan_totient(std::int64_t q) const { return jordan.at(static_cast<std::size_t>(q)); }

  /// Distinct prime divisors of q, ascending.
  std::vector<std::int32_t> prime_divisors(std::int64_t q) const {
    std::vector<std::int32_t> out;
    while (q > 1) {
      const std::int32_t p = smallest_factor[static_cast<std::size_t>(q)];
      out.push_back(p);
      while (q % p == 0) q /= p;
    }
    return out;
  }
};

inline ArithmeticTable build_table(std::int64_t limit, int n) {
  if (limit < 1) throw std::invalid_argument("build_table: limit must be >= 1");
  if (n < 1) throw std::invalid_argument("build_table: dimension must be >= 1");
  if (limit > std::numeric_limits<std::int32_t>::max())
    throw std::invalid_argument("build_table: limit exceeds 32-bit range");

  ArithmeticTable t;
  t.limit = limit;
  t.order = n;
  const auto size = static_cast<std::size_t>(limit) + 1;
  t.totient.assign(size, 0);
  t.mobius.assign(size, 0);
  t.jordan.assign(size, 0);
  t.smallest_factor.assign(size, 0);
  t.totient[1] = 1;
  t.mobius[1] = 1;
  t.jordan[1] = 1;

  // prime_power[i] = p^n for the smallest prime p of i, cached per prime.
  std::vector<std::int64_t> pn_of_prime;
  for (std::int64_t i = 2; i <= limit; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    if (t.smallest_factor[ui] == 0) {
      t.smallest_factor[ui] = static_cast<std::int32_t>(i);
      t.primes.push_back(static_cast<std::int32_t>(i));
      pn_of_prime.push_back(detail::checked_pow(i, n));
      t.totient[ui] = i - 1;
      t.mobius[ui] = -1;
      t.jordan[ui] = pn_of_prime.back() - 1;
    }
    for (std::size_t k = 0; k < t.primes.size(); ++k) {
      const std::int64_t p = t.primes[k];
      if (p > t.smallest_factor[ui] || i * p > limit) break;
      const auto uip = static_cast<std::size_t>(i * p);
      t.smallest_factor[uip] = static_cast<std::int32_t>(p);
      if (i % p == 0) {
        t.totient[uip] = t.totient[ui] * p;
        t.mobius[uip] = 0;
        t.jordan[uip] = detail::checked_mul(t.jordan[ui], pn_of_prime[k]);
      } else {
        t.totient[uip] = t.totient[ui] * (p - 1);
        t.mobius[uip] = static_cast<std::int8_t>(-t.mobius[ui]);
        t.jordan[uip] = detail::checked_mul(t.jordan[ui], pn_of_prime[k] - 1);
      }
    }
  }
  return t;
}

/// Inverse of p modulo q (q >= 2), as a residue in [1, q).
inline std::int64_t mod_inverse(std::int64_t p, std::int64_t q) {
  if (q < 2) throw std::invalid_argument("mod_inverse: modulus must be >= 2");
  std::int64_t r0 = q, r1 = ((p % q) + q) % q;
  std::int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t k = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - k * r1};
    std::tie(s0, s1) = std::pair{s1, s0 - k * s1};
  }
  if (r0 != 1) throw std::domain_error("mod_inverse: not invertible");
  return ((s0 % q) + q) % q;
}

/// Kloosterman sum K(m1, m2, q) over the invertible residues mod q. The sum is
/// real because p -> -p pairs conjugate terms; the vanishing imaginary part is
/// checked. K(m1, m2, 1) = 1.
inline double kloosterman(std::int64_t m1, std::int64_t m2, std::int64_t q) {
  if (q < 1) throw std::invalid_argument("kloosterman: modulus must be >= 1");
  if (q == 1) return 1.0;
  const std::int64_t a = ((m1 % q) + q) % q;
  const std::int64_t b = ((m2 % q) + q) % q;
  CompensatedSum<double> re, im;
  std::int64_t units = 0;
  for (std::int64_t p = 1; p < q; ++p) {
    if (std::gcd(p, q) != 1) continue;
    ++units;
    const std::int64_t inv = mod_inverse(p, q);
    const auto r = static_cast<std::int64_t>((static_cast<int128>(a) * p + static_cast<int128>(b) * inv) % q);
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(q);
    re.add(std::cos(angle));
    im.add(std::sin(angle));
  }
  if (std::abs(im.value()) >= 1e-9 * static_cast<double>(units))
    throw std::logic_error("kloosterman: imaginary part did not cancel");
  return re.value();
}

/// A truncated Dirichlet series with an upper bound on the discarded tail.
struct PartialSum {
  double value = 0.0;
  double tail_bound = 0.0;
  std::int64_t terms = 0;
};

/// Tail bound sum_{q > qmax} q^{1-2s} <= qmax^{2-2s} / (2s-2), valid for s > 1.
inline double power_tail_bound(double s, std::int64_t qmax) {
  return std::pow(static_cast<double>(qmax), 2.0 - 2.0 * s) / (2.0 * s - 2.0);
}

/// sum_{q <= qmax} K(m1, m2, q) / q^{2s}, with the tail bounded via |K| <= phi(q) <= q.
inline PartialSum kloosterman_zeta_partial(std::int64_t m1, std::int64_t m2, double s, std::int64_t qmax) {
  if (!(s > 1.0)) throw std::domain_error("kloosterman_zeta_partial: requires s > 1");
  if (qmax < 1) throw std::invalid_argument("kloosterman_zeta_partial: qmax must be >= 1");
  CompensatedSum<double> acc;
  for (std::int64_t q = 1; q <= qmax; ++q)
    acc.add(kloosterman(m1, m2, q) * std::pow(static_cast<double>(q), -2.0 * s));
  return {acc.value(), power_tail_bound(s, qmax), qmax};
}

/// sum_{q <= qmax} phi(q) / q^{2s} using a prebuilt table (table.limit >= qmax).
inline PartialSum totient_dirichlet_partial(const ArithmeticTable& table, double s, std::int64_t qmax) {
  if (!(s > 1.0)) throw std::domain_error("totient_dirichlet_partial: requires s > 1");
  if (qmax > table.limit) throw std::invalid_argument("totient_dirichlet_partial: table too small");
  CompensatedSum<double> acc;
  for (std::int64_t q = qmax; q >= 1; --q)
    acc.add(static_cast<double>(table.phi(q)) * std::pow(static_cast<double>(q), -2.0 * s));
  return {acc.value(), power_tail_bound(s, qmax), qmax};
}

/// Riemann zeta for real s > 1 by Euler-Maclaurin summation.
///
/// zeta(s) = sum_{k<N} k^-s + N^{1-s}/(s-1) + N^-s/2
///           + sum_j B_2j/(2j)! s(s+1)...(s+2j-2) N^{-s-2j+1} + R,
/// with N = 32 and the correction series stopped once the next term falls
/// below 1e-17 of the running value, which bounds |R|.
inline double zeta_real(double s) {
  if (!(s > 1.0)) throw std::domain_error("zeta_real: outside implemented domain (s <= 1)");
  // (2j)! / B_2j
  static constexpr double kInvBernoulli[] = {
      12.0,
      -720.0,
      30240.0,
      -1209600.0,
      47900160.0,
      -1.8924375803183791606e9,
      7.47242496e10,
      -2.950130727918164224e12,
      1.1646782814350067249e14,
      -4.5979787224074726105e15,
      1.8152105401943546773e17,
      -7.1661652561756670113e18,
  };
  constexpr int kN = 32;
  CompensatedSum<double> acc;
  for (int k = kN - 1; k >= 1; --k) acc.add(std::pow(static_cast<double>(k), -s));
  const double n = kN;
  const double n_pow = std::pow(n, -s);
  acc.add(n * n_pow / (s - 1.0));
  acc.add(0.5 * n_pow);

  double rising = s;          // s(s+1)...(s+2j-2)
  double power = n_pow / n;   // N^{-s-2j+1}
  for (std::size_t j = 0; j < std::size(kInvBernoulli); ++j) {
    const double term = rising * power / kInvBernoulli[j];
    acc.add(term);
    if (std::abs(term) < 1e-17 * std::abs(acc.value())) break;
    rising *= (s + 2.0 * static_cast<double>(j) + 1.0) * (s + 2.0 * static_cast<double>(j) + 2.0);
    power /= n * n;
  }
  return acc.value();
}

/// Compares sum_{q <= qmax} phi(q)/q^{2s} against zeta(2s-1)/zeta(2s).
/// A negative tolerance means "use the tail bound sum_{q > qmax} q^{1-2s}".
inline VerificationReport totient_zeta_identity_check(double s, std::int64_t qmax, double tolerance = -1.0) {
  Stopwatch clock;
  if (!(s > 1.0)) throw std::domain_error("totient_zeta_identity_check: requires s > 1");
  const ArithmeticTable table = build_table(qmax, 1);
  const PartialSum partial = totient_dirichlet_partial(table, s, qmax);
  const double reference = zeta_real(2.0 * s - 1.0) / zeta_real(2.0 * s);
  const double tol = tolerance < 0.0 ? partial.tail_bound : tolerance;
  VerificationReport r = make_report("totient Dirichlet series vs zeta(2s-1)/zeta(2s)", {partial.value},
                                     {reference}, tol);
  r.detail = "s=" + std::to_string(s) + " qmax=" + std::to_string(qmax) +
             " tail_bound=" + std::to_string(partial.tail_bound);
  r.runtime_seconds = clock.seconds();
  r.finalize();
  return r;
}

}  // namespace fareystat
