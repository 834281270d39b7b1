#pragma once

#include <vector>

#include "netdeg/common.hpp"
#include "netdeg/game.hpp"
#include "netdeg/permanent.hpp"
#include "netdeg/poly.hpp"
#include "netdeg/polygraph.hpp"

namespace netdeg {

/// Generic count of isolated torus solutions of the system with the given
/// support: perm(A_poly) divided by prod_i k_i!. An integer whenever every
/// k_i = 1.
inline Rat algebraic_degree(const PolyGraph& g) {
  Int denom = 1;
  for (int k : g.layout.dims) denom *= factorial(k);
  return Rat(permanent_ryser(to_int_matrix(g)), denom);
}

/// Degree of an explicit game, through its computed support. Refuses
/// non-generic payoffs (a cancelled equation breaks the count).
inline Rat algebraic_degree(const NetworkGame& game) {
  PolynomialSystem sys = build_indifference_system(game);
  sys.require_generic();
  return algebraic_degree(build_poly_graph(sys));
}

/// Generic-payoff degree of a topology, without sampling payoffs.
inline Rat algebraic_degree(const DirectedGraph& graph,
                            const std::vector<int>& dims) {
  return algebraic_degree(generic_poly_graph(graph, dims));
}

inline Rat algebraic_degree(const DirectedGraph& graph, int uniform_k = 1) {
  return algebraic_degree(graph, std::vector<int>(graph.n, uniform_k));
}

/// Degree as the product over strongly connected components of the player
/// graph: reorder the structure matrix by the condensation order, take the
/// permanent of each diagonal block, multiply, and normalize once.
inline Rat degree_via_scc(const DirectedGraph& graph, const PolyGraph& g) {
  const auto components = scc_decompose(graph);
  Int prod = 1;
  for (const auto& comp : components) {
    // Flattened variable indices of this component's players.
    std::vector<int> vars;
    for (int p : comp)
      for (int s = 1; s <= g.layout.dims[p]; ++s)
        vars.push_back(g.layout.index(p, s));
    const int b = static_cast<int>(vars.size());
    IntMatrix block(b, std::vector<Int>(b, 0));
    for (int r = 0; r < b; ++r)
      for (int c = 0; c < b; ++c) block[r][c] = g.adj[vars[r]][vars[c]];
    prod *= permanent_ryser(block);
    if (prod == 0) break;
  }
  Int denom = 1;
  for (int k : g.layout.dims) denom *= factorial(k);
  return Rat(prod, denom);
}

inline Rat degree_via_scc(const NetworkGame& game) {
  PolynomialSystem sys = build_indifference_system(game);
  sys.require_generic();
  return degree_via_scc(game.graph, build_poly_graph(sys));
}

/// Degree of the tensor product of a disjoint-cycle base with a gadget:
/// perm(A_H) raised to |V(G)|. Requires every base vertex to have in- and
/// out-degree exactly one.
inline Int tensor_degree(const DirectedGraph& base, const DirectedGraph& gadget) {
  for (int v = 0; v < base.n; ++v)
    if (base.in_degree(v) != 1 || base.out_degree(v) != 1)
      throw validation_error(
          "tensor base must be a disjoint union of directed cycles");
  const Int p = permanent_ryser(to_int_matrix(gadget.adjacency()));
  Int result = 1;
  for (int i = 0; i < base.n; ++i) result *= p;
  return result;
}

}  // namespace netdeg
