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
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fareystat/exact.hpp"
#include "fareystat/numtheory.hpp"
#include "fareystat/parallel.hpp"
#include "fareystat/test_set.hpp"

namespace fareystat {

/// A primitive point p/q in [0,1)^n.
struct FareyPoint {
  std::vector<std::int64_t> p;
  std::int64_t q = 1;

  friend bool operator==(const FareyPoint&, const FareyPoint&) = default;
};

/// sigma_Q = Q^{n+1} / ((n+1) zeta(n+1)), the asymptotic size of F_Q.
inline double sigma(int n, std::int64_t level) {
  if (n < 1 || level < 1) throw std::invalid_argument("sigma: need n >= 1 and Q >= 1");
  return std::pow(static_cast<double>(level), n + 1) / ((n + 1) * zeta_real(n + 1.0));
}

/// sigma_Q^{-1/n}: the factor that gives a scaled test set unit expected count per unit volume.
inline double scale_factor(int n, std::int64_t level) { return std::pow(sigma(n, level), -1.0 / n); }

/// Exact |F_Q| = sum_{q <= Q} J_n(q).
inline std::uint64_t exact_cardinality(const ArithmeticTable& table, std::int64_t level) {
  if (level > table.limit) throw std::invalid_argument("exact_cardinality: table too small");
  std::uint64_t total = 0;
  for (std::int64_t q = 1; q <= level; ++q) total += static_cast<std::uint64_t>(table.jordan_totient(q));
  return total;
}

inline std::uint64_t exact_cardinality(int n, std::int64_t level) {
  return exact_cardinality(build_table(level, n), level);
}

/// Uniform M^n grid over [0,1)^n in CSR layout: the points of cell c are
/// order[cell_start[c] .. cell_start[c+1]).
struct GridIndex {
  std::int64_t cells_per_axis = 1;
  std::vector<std::uint32_t> cell_start;
  std::vector<std::uint32_t> order;

  bool empty() const { return cell_start.empty(); }
};

struct EnumerateOptions {
  bool build_index = true;
  std::int64_t cells_per_axis = 0;  // 0: about one point per cell
  std::uint64_t memory_budget_bytes = 3ull << 30;
  static constexpr std::uint64_t kMaxCells = 1ull << 24;
};

/// F_Q in dimension n, sorted by (q, p) lexicographically.
class FareySequence {
 public:
  int dim() const { return dim_; }
  std::int64_t level() const { return level_; }
  std::size_t size() const { return denominators_.size(); }

  std::span<const std::int32_t> numerator(std::size_t i) const {
    return {numerators_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  std::int64_t denominator(std::size_t i) const { return denominators_[i]; }

  FareyPoint point(std::size_t i) const {
    FareyPoint fp;
    const auto num = numerator(i);
    fp.p.assign(num.begin(), num.end());
    fp.q = denominators_[i];
    return fp;
  }

  const GridIndex& index() const { return index_; }

  /// Cell coordinate of point i along one axis; exact integer floor(M p/q).
  std::int64_t cell_coordinate(std::size_t i, int axis) const {
    return (index_.cells_per_axis * numerator(i)[static_cast<std::size_t>(axis)]) / denominators_[i];
  }

 private:
  friend FareySequence enumerate(int n, std::int64_t level, const EnumerateOptions& options);

  int dim_ = 1;
  std::int64_t level_ = 1;
  std::vector<std::int32_t> numerators_;
  std::vector<std::int32_t> denominators_;
  GridIndex index_;
};

namespace detail {

// Calls emit(p) for each p in [0,q)^n with gcd(p, q) = 1, in lexicographic order.
// A coordinate's mask has bit j set when the j-th prime of q divides it; p is
// primitive exactly when the AND of its masks is empty.
template <class Emit>
void for_each_primitive(int n, std::int64_t q, std::span<const std::int32_t> primes,
                        std::vector<std::uint32_t>& masks, Emit&& emit) {
  const auto uq = static_cast<std::size_t>(q);
  masks.assign(uq, 0);
  for (std::size_t j = 0; j < primes.size(); ++j)
    for (std::size_t v = 0; v < uq; v += static_cast<std::size_t>(primes[j])) masks[v] |= 1u << j;
  const std::uint32_t all = primes.empty() ? 0u : static_cast<std::uint32_t>((1ull << primes.size()) - 1);

  std::vector<std::int32_t> p(static_cast<std::size_t>(n), 0);
  std::vector<std::uint32_t> prefix(static_cast<std::size_t>(n) + 1, all);
  for (int i = 0; i < n; ++i) prefix[static_cast<std::size_t>(i) + 1] = prefix[static_cast<std::size_t>(i)] & masks[0];
  for (;;) {
    if (prefix[static_cast<std::size_t>(n)] == 0) emit(std::span<const std::int32_t>(p));
    int axis = n - 1;
    while (axis >= 0 && p[static_cast<std::size_t>(axis)] + 1 == q) {
      p[static_cast<std::size_t>(axis)] = 0;
      --axis;
    }
    if (axis < 0) return;
    ++p[static_cast<std::size_t>(axis)];
    for (int i = axis; i < n; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      prefix[ui + 1] = prefix[ui] & masks[static_cast<std::size_t>(p[ui])];
    }
  }
}

// Splits 1..Q into contiguous q-ranges of roughly equal work (sum q^n).
inline std::vector<std::int64_t> level_chunks(int n, std::int64_t level, std::size_t chunks) {
  std::vector<double> cumulative(static_cast<std::size_t>(level) + 1, 0.0);
  for (std::int64_t q = 1; q <= level; ++q)
    cumulative[static_cast<std::size_t>(q)] = cumulative[static_cast<std::size_t>(q - 1)] + std::pow(static_cast<double>(q), n);
  std::vector<std::int64_t> bounds{1};
  const double total = cumulative.back();
  for (std::size_t c = 1; c < chunks; ++c) {
    const double target = total * static_cast<double>(c) / static_cast<double>(chunks);
    const auto it = std::lower_bound(cumulative.begin() + 1, cumulative.end(), target);
    const auto q = static_cast<std::int64_t>(it - cumulative.begin()) + 1;
    if (q > bounds.back() && q <= level) bounds.push_back(q);
  }
  bounds.push_back(level + 1);
  return bounds;
}

inline std::int64_t max_cells_per_axis(int n) {
  auto m = static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(EnumerateOptions::kMaxCells), 1.0 / n) + 1e-9));
  return std::max<std::int64_t>(1, m);
}

}  // namespace detail

/// Enumerates all primitive (p, q) with 0 <= p_i < q <= Q.
inline FareySequence enumerate(int n, std::int64_t level, const EnumerateOptions& options = {}) {
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("enumerate: dimension must be in [1, kMaxDim]");
  if (level < 1) throw std::invalid_argument("enumerate: level must be >= 1");
  if (level > std::numeric_limits<std::int32_t>::max()) throw std::invalid_argument("enumerate: level exceeds 32-bit range");

  const ArithmeticTable table = build_table(level, n);
  const std::uint64_t expected = exact_cardinality(table, level);
  const std::uint64_t per_point = 4ull * static_cast<std::uint64_t>(n + 1) + (options.build_index ? 8ull : 0ull);
  if (expected > std::numeric_limits<std::uint32_t>::max() ||
      expected > options.memory_budget_bytes / per_point) {
    throw std::length_error("enumerate: estimated cardinality " + std::to_string(expected) +
                            " exceeds the memory budget of " + std::to_string(options.memory_budget_bytes) + " bytes");
  }

  const std::size_t chunk_count = std::min<std::size_t>(static_cast<std::size_t>(level), 8 * parallel::thread_count());
  const std::vector<std::int64_t> bounds = detail::level_chunks(n, level, chunk_count);
  const std::size_t chunks = bounds.size() - 1;

  // Pass 1: sizes per chunk. Pass 2: fill in place.
  std::vector<std::uint64_t> chunk_size(chunks, 0);
  parallel::for_each_chunk(chunks, [&](std::size_t c) {
    std::vector<std::uint32_t> masks;
    std::uint64_t count = 0;
    for (std::int64_t q = bounds[c]; q < bounds[c + 1]; ++q) {
      const auto primes = table.prime_divisors(q);
      detail::for_each_primitive(n, q, primes, masks, [&](std::span<const std::int32_t>) { ++count; });
    }
    chunk_size[c] = count;
  });
  std::vector<std::uint64_t> chunk_offset(chunks + 1, 0);
  for (std::size_t c = 0; c < chunks; ++c) chunk_offset[c + 1] = chunk_offset[c] + chunk_size[c];
  const std::uint64_t total = chunk_offset.back();

  FareySequence f;
  f.dim_ = n;
  f.level_ = level;
  f.numerators_.resize(total * static_cast<std::uint64_t>(n));
  f.denominators_.resize(total);
  parallel::for_each_chunk(chunks, [&](std::size_t c) {
    std::vector<std::uint32_t> masks;
    std::uint64_t at = chunk_offset[c];
    for (std::int64_t q = bounds[c]; q < bounds[c + 1]; ++q) {
      const auto primes = table.prime_divisors(q);
      detail::for_each_primitive(n, q, primes, masks, [&](std::span<const std::int32_t> p) {
        std::copy(p.begin(), p.end(), f.numerators_.begin() + static_cast<std::ptrdiff_t>(at * static_cast<std::uint64_t>(n)));
        f.denominators_[at] = static_cast<std::int32_t>(q);
        ++at;
      });
    }
  });

  if (!options.build_index) return f;

  std::int64_t m = options.cells_per_axis;
  if (m <= 0) m = static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(std::max<std::uint64_t>(total, 1)), 1.0 / n)));
  m = std::clamp<std::int64_t>(m, 1, detail::max_cells_per_axis(n));
  std::uint64_t cells = 1;
  for (int i = 0; i < n; ++i) cells *= static_cast<std::uint64_t>(m);

  GridIndex& index = f.index_;
  index.cells_per_axis = m;
  index.cell_start.assign(cells + 1, 0);
  std::vector<std::uint32_t> cell_of(total);
  for (std::uint64_t i = 0; i < total; ++i) {
    std::uint64_t cell = 0;
    for (int a = n - 1; a >= 0; --a) cell = cell * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(f.cell_coordinate(i, a));
    cell_of[i] = static_cast<std::uint32_t>(cell);
    ++index.cell_start[cell + 1];
  }
  for (std::uint64_t c = 0; c < cells; ++c) index.cell_start[c + 1] += index.cell_start[c];
  index.order.resize(total);
  std::vector<std::uint32_t> fill(index.cell_start.begin(), index.cell_start.end() - 1);
  for (std::uint64_t i = 0; i < total; ++i) index.order[fill[cell_of[i]]++] = static_cast<std::uint32_t>(i);
  return f;
}

/// Result of a translate count; near_boundary counts ball hits within the
/// floating-point slack of the sphere.
struct TranslateCount {
  std::uint64_t count = 0;
  std::uint64_t near_boundary = 0;
};

namespace detail {

inline void require_wrap_safe(const TestSet& a, double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("translate: scale must be positive");
  if (!(scale * a.diameter() < 1.0)) throw std::invalid_argument("translate: test set too large for torus wrap");
}

inline double wrap_unit(double v) {
  double r = v - std::floor(v);
  if (r >= 1.0) r = 0.0;
  return r;
}

using IntCoords = std::array<std::int64_t, kMaxDim>;

// Steps an odometer over [lo_i, hi_i]; returns false after the last state.
inline bool advance(IntCoords& v, const IntCoords& lo, const IntCoords& hi, std::size_t n) {
  for (std::size_t axis = n; axis-- > 0;) {
    if (v[axis] < hi[axis]) {
      ++v[axis];
      return true;
    }
    v[axis] = lo[axis];
  }
  return false;
}

// Tests the reduced point p'/q against `set` under every lattice shift that
// can bring it into the bounding box. Counts the point at most once.
inline void classify_reduced(const TranslatedSet& set, std::span<const std::int32_t> reduced, std::int64_t q,
                             TranslateCount& out) {
  const std::size_t n = set.dim();
  constexpr double kPad = 1e-9;
  IntCoords lo{}, hi{}, p{};
  for (std::size_t i = 0; i < n; ++i) {
    const double r = static_cast<double>(reduced[i]) / static_cast<double>(q);
    lo[i] = static_cast<std::int64_t>(std::ceil(set.lower(i) - r - kPad));
    hi[i] = static_cast<std::int64_t>(std::floor(set.upper(i) - r + kPad));
    if (lo[i] > hi[i]) return;
  }
  IntCoords shift = lo;
  bool near = false;
  do {
    for (std::size_t i = 0; i < n; ++i) p[i] = reduced[i] + shift[i] * q;
    const auto m = set.classify(std::span<const std::int64_t>(p.data(), n), q);
    near = near || m.near_boundary;
    if (m.inside) {
      ++out.count;
      break;
    }
  } while (advance(shift, lo, hi, n));
  if (near) ++out.near_boundary;
}

inline TranslateCount count_indexed(const FareySequence& f, const TranslatedSet& set) {
  const GridIndex& index = f.index();
  if (index.empty()) throw std::logic_error("count_in_translate: sequence was enumerated without an index");
  const auto n = static_cast<std::size_t>(f.dim());
  const std::int64_t m = index.cells_per_axis;

  // Cells per axis covering the bounding box, one cell of margin each side.
  IntCoords first{}, count{};
  for (std::size_t i = 0; i < n; ++i) {
    const auto c0 = static_cast<std::int64_t>(std::floor(set.lower(i) * static_cast<double>(m))) - 1;
    const auto c1 = static_cast<std::int64_t>(std::floor(set.upper(i) * static_cast<double>(m))) + 1;
    if (c1 - c0 + 1 >= m) {
      first[i] = 0;
      count[i] = m;
    } else {
      first[i] = c0;
      count[i] = c1 - c0 + 1;
    }
  }

  TranslateCount out;
  IntCoords step{}, zero{}, last{};
  for (std::size_t i = 0; i < n; ++i) last[i] = count[i] - 1;
  do {
    std::uint64_t cell = 0;
    for (std::size_t a = n; a-- > 0;) {
      const std::int64_t c = ((first[a] + step[a]) % m + m) % m;
      cell = cell * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(c);
    }
    for (std::uint32_t k = index.cell_start[cell]; k < index.cell_start[cell + 1]; ++k) {
      const std::uint32_t i = index.order[k];
      classify_reduced(set, f.numerator(i), f.denominator(i), out);
    }
  } while (advance(step, zero, last, n));
  return out;
}

}  // namespace detail

/// |(x + scale*A + Z^n) ∩ F_Q| using the grid index.
inline TranslateCount count_in_translate(const FareySequence& f, std::span<const double> x, const TestSet& a, double scale) {
  if (static_cast<int>(x.size()) != f.dim() || a.dim() != f.dim()) throw std::invalid_argument("count_in_translate: dimension mismatch");
  detail::require_wrap_safe(a, scale);
  std::array<double, kMaxDim> base{};
  for (std::size_t i = 0; i < x.size(); ++i) base[i] = detail::wrap_unit(x[i]);
  return detail::count_indexed(f, TranslatedSet(a, std::span<const double>(base.data(), x.size()), scale));
}

/// Translate count based at the Farey point with index `ref`, using exact
/// rational offsets so that the point itself is counted iff 0 ∈ A.
inline TranslateCount count_in_translate_at(const FareySequence& f, std::size_t ref, const TestSet& a, double scale) {
  if (a.dim() != f.dim()) throw std::invalid_argument("count_in_translate_at: dimension mismatch");
  detail::require_wrap_safe(a, scale);
  const auto num = f.numerator(ref);
  detail::IntCoords base{};
  std::copy(num.begin(), num.end(), base.begin());
  return detail::count_indexed(f, TranslatedSet(a, std::span<const std::int64_t>(base.data(), num.size()), f.denominator(ref), scale));
}

/// Index-free reference: scans every point and every candidate lattice shift.
inline std::uint64_t count_in_translate_bruteforce(const FareySequence& f, std::span<const double> x, const TestSet& a, double scale) {
  if (static_cast<int>(x.size()) != f.dim() || a.dim() != f.dim()) throw std::invalid_argument("count_in_translate: dimension mismatch");
  detail::require_wrap_safe(a, scale);
  std::vector<double> base(x.begin(), x.end());
  for (auto& v : base) v = detail::wrap_unit(v);
  const TranslatedSet set(a, base, scale);
  const auto n = static_cast<std::size_t>(f.dim());
  detail::IntCoords lo{}, hi{}, p{};
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = static_cast<std::int64_t>(std::floor(set.lower(i))) - 1;
    hi[i] = static_cast<std::int64_t>(std::floor(set.upper(i))) + 1;
  }
  std::uint64_t count = 0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const auto num = f.numerator(k);
    const std::int64_t q = f.denominator(k);
    detail::IntCoords shift = lo;
    do {
      for (std::size_t i = 0; i < n; ++i) p[i] = num[i] + shift[i] * q;
      if (set.contains(std::span<const std::int64_t>(p.data(), n), q)) {
        ++count;
        break;
      }
    } while (detail::advance(shift, lo, hi, n));
  }
  return count;
}

/// Throws unless D can serve as a region of the torus: a box inside [0,1]^n or
/// a ball of radius at most 1/2 (centred at the origin, wrapping).
inline void validate_torus_region(const TestSet& d) {
  if (d.is_box()) {
    for (int i = 0; i < d.dim(); ++i)
      if (d.lower(i) < 0.0 || d.upper(i) > 1.0) throw std::invalid_argument("torus region: box must lie in [0,1]^n");
  } else if (d.as_ball().radius > 0.5) {
    throw std::invalid_argument("torus region: ball radius must be <= 1/2");
  }
}

/// Membership of the Farey point p/q (0 <= p_i < q) in a torus region.
inline bool torus_region_contains(const TestSet& d, std::span<const std::int32_t> p, std::int64_t q) {
  if (d.is_box()) {
    const auto& b = d.as_box();
    for (std::size_t i = 0; i < p.size(); ++i) {
      const int below = compare_ratio(p[i], q, b.lo[i]);
      const int above = compare_ratio(p[i], q, b.hi[i]);
      const bool in = b.boundary == BoxBoundary::HalfOpen ? (below >= 0 && above < 0) : (below > 0 && above <= 0);
      if (!in) return false;
    }
    return true;
  }
  double d2 = 0.0;
  for (const std::int32_t pi : p) {
    const double r = static_cast<double>(pi) / static_cast<double>(q);
    const double m = std::min(r, 1.0 - r);
    d2 += m * m;
  }
  return d2 < d.as_ball().radius * d.as_ball().radius;
}

/// Exact |F_Q ∩ D| for a torus region D.
inline std::uint64_t count_in_region(const FareySequence& f, const TestSet& d) {
  if (d.dim() != f.dim()) throw std::invalid_argument("count_in_region: dimension mismatch");
  validate_torus_region(d);
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (torus_region_contains(d, f.numerator(i), f.denominator(i))) ++count;
  return count;
}

}  // namespace fareystat
