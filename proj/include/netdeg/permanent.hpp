#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "netdeg/common.hpp"
#include "netdeg/polygraph.hpp"

namespace netdeg {

using IntMatrix = std::vector<std::vector<Int>>;

namespace detail {

template <typename T>
void check_square(const std::vector<std::vector<T>>& a, int cap,
                  const char* what) {
  const int d = static_cast<int>(a.size());
  for (const auto& row : a)
    require(static_cast<int>(row.size()) == d, "matrix must be square");
  if (d > cap)
    throw cap_error(std::string(what) + ": dimension " + std::to_string(d) +
                    " exceeds the cap of " + std::to_string(cap));
}

// Ryser's inclusion-exclusion over column subsets, with Gray-code updates of
// the row sums: perm(A) = sum_{S != 0} (-1)^(d-|S|) prod_i sum_{j in S} a_ij.
template <typename T>
T ryser(const std::vector<std::vector<T>>& a) {
  const int d = static_cast<int>(a.size());
  if (d == 0) return T(1);
  std::vector<T> row_sum(d, T(0));
  T total(0);
  std::uint32_t gray = 0;
  for (std::uint64_t k = 1; k < (std::uint64_t(1) << d); ++k) {
    const std::uint32_t next = static_cast<std::uint32_t>(k ^ (k >> 1));
    const int bit = std::countr_zero(gray ^ next);
    if (next & (std::uint32_t(1) << bit))
      for (int i = 0; i < d; ++i) row_sum[i] += a[i][bit];
    else
      for (int i = 0; i < d; ++i) row_sum[i] -= a[i][bit];
    gray = next;
    T prod(1);
    for (int i = 0; i < d; ++i) {
      prod *= row_sum[i];
      if (prod == 0) break;
    }
    if ((d - std::popcount(next)) % 2 == 0)
      total += prod;
    else
      total -= prod;
  }
  return total;
}

// Same inclusion-exclusion specialized to 0/1 matrices whose subset
// products provably fit in 128 bits: every product is bounded by the
// full-row-sum product, and partial totals are flushed to the big
// accumulator in blocks of 256.
inline Int ryser_01_fast(const std::vector<std::vector<Int>>& a) {
  const int d = static_cast<int>(a.size());
  std::vector<std::vector<std::int32_t>> m(d, std::vector<std::int32_t>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m[i][j] = static_cast<std::int32_t>(a[i][j]);
  std::vector<std::int32_t> row_sum(d, 0);
  Int total = 0;
  __int128 partial = 0;
  int pending = 0;
  std::uint32_t gray = 0;
  for (std::uint64_t k = 1; k < (std::uint64_t(1) << d); ++k) {
    const std::uint32_t next = static_cast<std::uint32_t>(k ^ (k >> 1));
    const int bit = std::countr_zero(gray ^ next);
    if (next & (std::uint32_t(1) << bit))
      for (int i = 0; i < d; ++i) row_sum[i] += m[i][bit];
    else
      for (int i = 0; i < d; ++i) row_sum[i] -= m[i][bit];
    gray = next;
    __int128 prod = 1;
    for (int i = 0; i < d; ++i) {
      prod *= row_sum[i];
      if (prod == 0) break;
    }
    partial += (d - std::popcount(next)) % 2 == 0 ? prod : -prod;
    if (++pending == 256) {
      total += Int(partial);
      partial = 0;
      pending = 0;
    }
  }
  total += Int(partial);
  return total;
}

// True when the fast path's 128-bit arithmetic cannot overflow: entries are
// 0/1 and prod_i (row sum of row i) * 256 stays well inside a signed 128.
inline bool ryser_01_fast_applies(const std::vector<std::vector<Int>>& a) {
  Int bound = 1;
  for (const auto& row : a) {
    Int sum = 0;
    for (const Int& x : row) {
      if (x != 0 && x != 1) return false;
      sum += x;
    }
    bound *= std::max<Int>(sum, 1);
  }
  return bound <= (Int(1) << 110);
}

}  // namespace detail

/// Exact permanent of a square integer matrix, O(2^d * d).
inline Int permanent_ryser(const IntMatrix& a) {
  detail::check_square(a, kMaxPermanentDim, "permanent_ryser");
  if (detail::ryser_01_fast_applies(a)) return detail::ryser_01_fast(a);
  return detail::ryser(a);
}

/// Permutation-sum oracle with zero pruning; only for small d.
inline Int permanent_naive(const IntMatrix& a) {
  detail::check_square(a, kMaxNaivePermanentDim, "permanent_naive");
  const int d = static_cast<int>(a.size());
  std::vector<bool> used(d, false);
  Int total = 0;
  // Depth-first over rows; prune branches through zero entries.
  auto rec = [&](auto&& self, int row, const Int& partial) -> void {
    if (row == d) {
      total += partial;
      return;
    }
    for (int j = 0; j < d; ++j) {
      if (used[j] || a[row][j] == 0) continue;
      used[j] = true;
      self(self, row + 1, partial * a[row][j]);
      used[j] = false;
    }
  };
  rec(rec, 0, Int(1));
  return total;
}

/// Floating permanent of the weighted structure matrix of Def-style weights
/// (k_j!)^(-1/k_j) on the support. Diagnostic only; the exact value is
/// perm(support) / prod k_j!.
inline double permanent_weighted(const StructureMatrix& m) {
  const int d = m.dimension();
  if (d > kMaxPermanentDim)
    throw cap_error("permanent_weighted: dimension " + std::to_string(d) +
                    " exceeds the cap of " + std::to_string(kMaxPermanentDim));
  std::vector<std::vector<double>> a(d, std::vector<double>(d, 0.0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (m.support[i][j]) a[i][j] = m.column_weight(j);
  return detail::ryser(a);
}

/// Number of vertex-disjoint directed cycle covers of the polynomial graph,
/// by dynamic programming over assigned-column bitmasks. Deliberately a
/// separate code path from the permanent so the two can witness each other.
inline Int count_cycle_covers(const PolyGraph& g) {
  const int d = g.dimension();
  if (d > kMaxPermanentDim)
    throw cap_error("count_cycle_covers: dimension " + std::to_string(d) +
                    " exceeds the cap of " + std::to_string(kMaxPermanentDim));
  if (d == 0) return 1;
  // ways[mask] = assignments of rows 0..popcount(mask)-1 to the columns in
  // mask, one per row, respecting the support.
  std::vector<Int> ways(std::size_t(1) << d, Int(0));
  ways[0] = 1;
  for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << d); ++mask) {
    const int row = std::popcount(mask) - 1;
    Int acc = 0;
    for (int j = 0; j < d; ++j)
      if ((mask & (std::uint32_t(1) << j)) && g.adj[row][j])
        acc += ways[mask ^ (std::uint32_t(1) << j)];
    ways[mask] = std::move(acc);
  }
  return ways[(std::size_t(1) << d) - 1];
}

/// Convenience adapters.
inline IntMatrix to_int_matrix(const PolyGraph& g) {
  const int d = g.dimension();
  IntMatrix a(d, std::vector<Int>(d, 0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a[i][j] = g.adj[i][j];
  return a;
}

inline IntMatrix to_int_matrix(const std::vector<std::vector<int>>& m) {
  IntMatrix a(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    a[i].assign(m[i].begin(), m[i].end());
  return a;
}

}  // namespace netdeg
