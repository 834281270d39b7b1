#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Eigenvalues>

#include "netdeg/common.hpp"
#include "netdeg/graph.hpp"

namespace netdeg {

/// Layer-transition matrix of a gadget graph H on m vertices. Rows and
/// columns are indexed by subsets u, v of V(H) in little-endian binary order
/// (bit a-1 belongs to vertex a, counting vertices from 1): entry (u, v)
/// counts edge subsets F of H whose in-degree at vertex a is 1 - u_a and
/// whose out-degree is 1 - v_a.
struct TransferMatrix {
  int m = 0;
  std::vector<std::vector<Int>> t;  // 2^m x 2^m

  int size() const { return 1 << m; }
};

namespace detail {

// Count edge subsets with one prescribed degree vector only (used by the
// subset-enumeration route and by tests as an independent marginal).
inline bool degrees_at_most_one(const std::vector<int>& deg) {
  for (int x : deg)
    if (x > 1) return false;
  return true;
}

}  // namespace detail

namespace detail {

inline TransferMatrix transfer_by_subsets(const DirectedGraph& h) {
  const int m = h.n;
  const int size = 1 << m;
  TransferMatrix tm;
  tm.m = m;
  tm.t.assign(size, std::vector<Int>(size, 0));
  const std::vector<std::pair<int, int>> edges(h.edges.begin(), h.edges.end());
  const int ecount = static_cast<int>(edges.size());
  for (std::uint32_t f = 0; f < (std::uint32_t(1) << ecount); ++f) {
    std::vector<int> din(m, 0), dout(m, 0);
    for (int e = 0; e < ecount; ++e)
      if (f & (std::uint32_t(1) << e)) {
        ++dout[edges[e].first];
        ++din[edges[e].second];
      }
    if (!degrees_at_most_one(din) || !degrees_at_most_one(dout)) continue;
    int u = 0, v = 0;
    for (int a = 0; a < m; ++a) {
      if (din[a] == 0) u |= 1 << a;
      if (dout[a] == 0) v |= 1 << a;
    }
    tm.t[u][v] += 1;
  }
  return tm;
}

// DP over source vertices: for each out-pattern v, every vertex a with
// v_a = 0 emits exactly one edge; the state tracks which receivers are hit.
inline TransferMatrix transfer_by_dp(const DirectedGraph& h) {
  const int m = h.n;
  const int size = 1 << m;
  TransferMatrix tm;
  tm.m = m;
  tm.t.assign(size, std::vector<Int>(size, 0));
  std::vector<std::vector<int>> out(m);
  for (const auto& [a, b] : h.edges) out[a].push_back(b);
  for (int v = 0; v < size; ++v) {
    std::vector<Int> hit(size, 0);
    hit[0] = 1;
    for (int a = 0; a < m; ++a) {
      if (v & (1 << a)) continue;  // vertex a sends no layer-internal edge
      std::vector<Int> next(size, 0);
      for (int mask = 0; mask < size; ++mask) {
        if (hit[mask] == 0) continue;
        for (int b : out[a])
          if (!(mask & (1 << b))) next[mask | (1 << b)] += hit[mask];
      }
      hit = std::move(next);
    }
    for (int mask = 0; mask < size; ++mask)
      if (hit[mask] != 0) tm.t[(size - 1) & ~mask][v] += hit[mask];
  }
  return tm;
}

}  // namespace detail

/// Exact transfer matrix of a gadget. Small edge sets are enumerated
/// directly; larger ones go through a per-vertex DP over receiver bitmasks.
inline TransferMatrix transfer_matrix(const DirectedGraph& h) {
  if (h.n > kMaxTransferVertices)
    throw cap_error("transfer_matrix: gadget has " + std::to_string(h.n) +
                    " vertices, cap is " + std::to_string(kMaxTransferVertices));
  require(h.n >= 1, "gadget must be nonempty");
  if (static_cast<int>(h.edges.size()) <= kTransferSubsetEdgeLimit)
    return detail::transfer_by_subsets(h);
  return detail::transfer_by_dp(h);
}

inline std::vector<std::vector<Int>> multiply(
    const std::vector<std::vector<Int>>& a,
    const std::vector<std::vector<Int>>& b) {
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<Int>> c(n, std::vector<Int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (int j = 0; j < n; ++j)
        if (b[k][j] != 0) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

inline Int trace_power(const TransferMatrix& tm, int n) {
  require(n >= 1, "power must be >= 1");
  std::vector<std::vector<Int>> acc;
  std::vector<std::vector<Int>> base = tm.t;
  int e = n;
  // Binary exponentiation.
  while (e > 0) {
    if (e & 1) acc = acc.empty() ? base : multiply(acc, base);
    e >>= 1;
    if (e > 0) base = multiply(base, base);
  }
  Int tr = 0;
  for (std::size_t i = 0; i < acc.size(); ++i) tr += acc[i][i];
  return tr;
}

/// Degree of the game on C_N box H: the trace of the N-th transfer power.
inline Int cartesian_degree(const DirectedGraph& h, int n) {
  return trace_power(transfer_matrix(h), n);
}

/// Floating eigenvalues of the transfer matrix, for the spectral-expansion
/// diagnostic (degree = sum of N-th powers of these).
inline std::vector<std::complex<double>> transfer_eigenvalues(
    const TransferMatrix& tm) {
  const int size = tm.size();
  Eigen::MatrixXd m(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j)
      m(i, j) = static_cast<double>(tm.t[i][j]);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  std::vector<std::complex<double>> eig(size);
  for (int i = 0; i < size; ++i) eig[i] = solver.eigenvalues()(i);
  return eig;
}

}  // namespace netdeg
