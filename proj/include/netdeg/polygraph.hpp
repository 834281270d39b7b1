#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "netdeg/common.hpp"
#include "netdeg/poly.hpp"

namespace netdeg {

/// Dependency graph of the polynomial system on the d strategy variables:
/// row = equation vertex, column = variable vertex (same flattened index),
/// entry 1 iff the variable appears in the equation.
struct PolyGraph {
  VariableLayout layout;
  std::vector<std::vector<std::uint8_t>> adj;  // d x d, 0/1

  int dimension() const { return layout.d; }

  bool edge(int equation, int variable) const {
    return adj[equation][variable] != 0;
  }
};

/// The support matrix of the degree formula: the same 0/1 pattern plus the
/// per-column block data. The weighted entry (k_j!)^(-1/k_j) is derived on
/// demand, never stored; exact pipelines use the integer permanent divided
/// by prod k_j! instead.
struct StructureMatrix {
  std::vector<std::vector<std::uint8_t>> support;  // d x d
  std::vector<int> col_owner;                      // column -> player
  std::vector<int> block_dims;                     // k_j per player

  int dimension() const { return static_cast<int>(support.size()); }

  double column_weight(int col) const {
    const int k = block_dims[col_owner[col]];
    double kfact = 1.0;
    for (int i = 2; i <= k; ++i) kfact *= i;
    return 1.0 / std::pow(kfact, 1.0 / k);
  }
};

/// Computed support of an explicit system.
inline PolyGraph build_poly_graph(const PolynomialSystem& sys) {
  const int d = sys.layout.d;
  PolyGraph g;
  g.layout = sys.layout;
  g.adj.assign(d, std::vector<std::uint8_t>(d, 0));
  for (int e = 0; e < d; ++e)
    for (const auto& [m, c] : sys.equations[e].terms)
      for (int v : m) g.adj[e][v] = 1;
  return g;
}

/// Generic support implied by the topology alone: equation (i, s) contains
/// every variable of every in-neighbor of i. This is the support of any game
/// with generic payoffs on that topology.
inline PolyGraph generic_poly_graph(const DirectedGraph& graph,
                                    const std::vector<int>& dims) {
  PolyGraph g;
  g.layout = VariableLayout(dims);
  const int d = g.layout.d;
  g.adj.assign(d, std::vector<std::uint8_t>(d, 0));
  for (int i = 0; i < graph.n; ++i)
    for (int j : graph.in_neighbors(i))
      for (int s = 1; s <= dims[i]; ++s)
        for (int t = 1; t <= dims[j]; ++t)
          g.adj[g.layout.index(i, s)][g.layout.index(j, t)] = 1;
  return g;
}

inline StructureMatrix build_structure_matrix(const PolyGraph& g) {
  StructureMatrix m;
  m.support = g.adj;
  m.block_dims = g.layout.dims;
  m.col_owner.resize(g.layout.d);
  for (int v = 0; v < g.layout.d; ++v) m.col_owner[v] = g.layout.owner(v);
  return m;
}

/// Row-i/column-j dependency pattern of the player graph: entry 1 iff the
/// payoff of i depends on j, i.e. iff the edge j -> i exists. This is the
/// orientation whose lift reproduces the polynomial-graph adjacency.
inline std::vector<std::vector<int>> dependency_matrix(
    const DirectedGraph& graph) {
  std::vector<std::vector<int>> a(graph.n, std::vector<int>(graph.n, 0));
  for (const auto& [j, i] : graph.edges) a[i][j] = 1;
  return a;
}

/// Equal-strategy lift: every 1 of A becomes a k x k all-ones block.
inline PolyGraph kronecker_lift(const std::vector<std::vector<int>>& a, int k) {
  require(k >= 1, "block size must be >= 1");
  const int n = static_cast<int>(a.size());
  for (const auto& row : a)
    require(static_cast<int>(row.size()) == n, "matrix must be square");
  PolyGraph g;
  g.layout = VariableLayout(std::vector<int>(n, k));
  g.adj.assign(n * k, std::vector<std::uint8_t>(n * k, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (a[i][j] != 0)
        for (int s = 0; s < k; ++s)
          for (int t = 0; t < k; ++t) g.adj[i * k + s][j * k + t] = 1;
  return g;
}

}  // namespace netdeg
