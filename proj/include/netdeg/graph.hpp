#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "netdeg/common.hpp"

namespace netdeg {

/// Directed graph on vertices 0..n-1 with a deduplicated edge set.
///
/// Player dependency graphs must be loop-free (a player's payoff dependence
/// on itself is implicit via its own strategy); gadget graphs used as product
/// factors may carry self-loops, so the container itself allows them and
/// NetworkGame validation rejects them.
struct DirectedGraph {
  int n = 0;
  std::set<std::pair<int, int>> edges;  // (from, to)

  DirectedGraph() = default;
  explicit DirectedGraph(int vertices) : n(vertices) {
    require(vertices >= 0, "vertex count must be nonnegative");
  }

  void add_edge(int from, int to) {
    require(from >= 0 && from < n && to >= 0 && to < n,
            "edge endpoint out of range");
    edges.insert({from, to});
  }

  bool has_edge(int from, int to) const {
    return edges.count({from, to}) > 0;
  }

  bool has_self_loop() const {
    for (const auto& [a, b] : edges)
      if (a == b) return true;
    return false;
  }

  /// In-neighbors of v in ascending order, excluding v itself.
  std::vector<int> in_neighbors(int v) const {
    std::vector<int> r;
    for (const auto& [a, b] : edges)
      if (b == v && a != v) r.push_back(a);
    std::sort(r.begin(), r.end());
    return r;
  }

  std::vector<int> out_neighbors(int v) const {
    std::vector<int> r;
    for (const auto& [a, b] : edges)
      if (a == v && b != v) r.push_back(b);
    std::sort(r.begin(), r.end());
    return r;
  }

  int in_degree(int v) const {
    int c = 0;
    for (const auto& [a, b] : edges)
      if (b == v) ++c;
    return c;
  }

  int out_degree(int v) const {
    int c = 0;
    for (const auto& [a, b] : edges)
      if (a == v) ++c;
    return c;
  }

  /// 0/1 adjacency, row = source, column = target.
  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
    for (const auto& [u, v] : edges) a[u][v] = 1;
    return a;
  }

  bool operator==(const DirectedGraph& o) const = default;
};

// ---------------------------------------------------------------------------
// Topology families
// ---------------------------------------------------------------------------

/// Directed cycle 0 -> 1 -> ... -> n-1 -> 0. cycle(1) is a single self-loop.
inline DirectedGraph cycle_graph(int n) {
  require(n >= 1, "cycle needs at least one vertex");
  DirectedGraph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

/// Disjoint union of directed cycles with the given lengths.
inline DirectedGraph disjoint_cycles_graph(const std::vector<int>& lengths) {
  require(!lengths.empty(), "need at least one cycle length");
  int total = 0;
  for (int len : lengths) {
    require(len >= 1, "cycle length must be >= 1");
    total += len;
  }
  DirectedGraph g(total);
  int base = 0;
  for (int len : lengths) {
    for (int i = 0; i < len; ++i) g.add_edge(base + i, base + (i + 1) % len);
    base += len;
  }
  return g;
}

/// Two directed cycles of lengths a and b sharing exactly one vertex.
inline DirectedGraph figure8_graph(int a, int b) {
  require(a >= 2 && b >= 2, "figure-8 lobes need length >= 2");
  // Vertex 0 is shared; lobe A uses 1..a-1, lobe B uses a..a+b-2.
  DirectedGraph g(a + b - 1);
  int prev = 0;
  for (int i = 1; i < a; ++i) {
    g.add_edge(prev, i);
    prev = i;
  }
  g.add_edge(prev, 0);
  prev = 0;
  for (int i = a; i < a + b - 1; ++i) {
    g.add_edge(prev, i);
    prev = i;
  }
  g.add_edge(prev, 0);
  return g;
}

/// Two directed cycles of lengths c1 and c2 sharing exactly one edge (0 -> 1).
/// Lengths below 3 are rejected: a 2-cycle has no vertex of its own, the
/// other cycle alone would cover the whole graph, and the count jumps to 1.
inline DirectedGraph theta_graph(int c1, int c2) {
  require(c1 >= 3 && c2 >= 3, "theta cycles need length >= 3");
  DirectedGraph g(c1 + c2 - 2);
  g.add_edge(0, 1);  // the shared edge
  // Return path of cycle 1: 1 -> 2 -> ... -> c1-1 -> 0.
  int prev = 1;
  for (int i = 2; i < c1; ++i) {
    g.add_edge(prev, i);
    prev = i;
  }
  g.add_edge(prev, 0);
  // Return path of cycle 2 through fresh vertices.
  prev = 1;
  for (int i = c1; i < c1 + c2 - 2; ++i) {
    g.add_edge(prev, i);
    prev = i;
  }
  g.add_edge(prev, 0);
  return g;
}

/// Two cyclic layers i -> i+1 with bidirectional vertical coupling i_1 <-> i_2.
/// Layer 1 occupies vertices 0..n-1, layer 2 occupies n..2n-1.
inline DirectedGraph std_prism_graph(int n) {
  require(n >= 3, "prism families need N >= 3");
  DirectedGraph g(2 * n);
  for (int i = 0; i < n; ++i) {
    g.add_edge(i, (i + 1) % n);
    g.add_edge(n + i, n + (i + 1) % n);
    g.add_edge(i, n + i);
    g.add_edge(n + i, i);
  }
  return g;
}

/// Two cyclic layers plus cross-layer edges i_1 -> (i+1)_2 and i_2 -> (i+1)_1.
inline DirectedGraph cross_prism_graph(int n) {
  require(n >= 3, "prism families need N >= 3");
  DirectedGraph g(2 * n);
  for (int i = 0; i < n; ++i) {
    g.add_edge(i, (i + 1) % n);
    g.add_edge(n + i, n + (i + 1) % n);
    g.add_edge(i, n + (i + 1) % n);
    g.add_edge(n + i, (i + 1) % n);
  }
  return g;
}

/// 2-vertex gadget with edges both ways (the directed K_2).
inline DirectedGraph k2_gadget() {
  DirectedGraph g(2);
  g.add_edge(0, 1);
  g.add_edge(1, 0);
  return g;
}

/// 2-vertex gadget with all four edges including self-loops; its adjacency is
/// the all-ones matrix J_2, the local gadget of the cross-layer coupling.
inline DirectedGraph cross_coupling_gadget() {
  DirectedGraph g(2);
  g.add_edge(0, 0);
  g.add_edge(0, 1);
  g.add_edge(1, 0);
  g.add_edge(1, 1);
  return g;
}

// ---------------------------------------------------------------------------
// Graph products: vertex (g, h) is flattened as g * |V(H)| + h.
// ---------------------------------------------------------------------------

/// Cartesian product: one factor steps, the other stays.
inline DirectedGraph cartesian_product(const DirectedGraph& g,
                                       const DirectedGraph& h) {
  require(g.n > 0 && h.n > 0, "product factors must be nonempty");
  DirectedGraph p(g.n * h.n);
  for (const auto& [a, b] : g.edges)
    for (int x = 0; x < h.n; ++x) p.add_edge(a * h.n + x, b * h.n + x);
  for (const auto& [x, y] : h.edges)
    for (int a = 0; a < g.n; ++a) p.add_edge(a * h.n + x, a * h.n + y);
  return p;
}

/// Tensor (categorical) product: both factors step simultaneously.
inline DirectedGraph tensor_product(const DirectedGraph& g,
                                    const DirectedGraph& h) {
  require(g.n > 0 && h.n > 0, "product factors must be nonempty");
  DirectedGraph p(g.n * h.n);
  for (const auto& [a, b] : g.edges)
    for (const auto& [x, y] : h.edges) p.add_edge(a * h.n + x, b * h.n + y);
  return p;
}

// ---------------------------------------------------------------------------
// Strongly connected components
// ---------------------------------------------------------------------------

/// Tarjan's algorithm. Components come out in reverse topological order of
/// the condensation (sinks first), deterministically for a fixed vertex
/// order; vertices inside a component are sorted ascending.
inline std::vector<std::vector<int>> scc_decompose(const DirectedGraph& g) {
  const int n = g.n;
  std::vector<std::vector<int>> out(n);
  for (const auto& [a, b] : g.edges) out[a].push_back(b);
  for (auto& v : out) std::sort(v.begin(), v.end());

  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  std::vector<std::vector<int>> components;
  int next_index = 0;

  // Iterative DFS; each frame remembers how far it got through out[v].
  struct Frame {
    int v;
    size_t child;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.child < out[f.v].size()) {
        int w = out[f.v][f.child++];
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          std::vector<int> comp;
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp.push_back(w);
          } while (w != f.v);
          std::sort(comp.begin(), comp.end());
          components.push_back(std::move(comp));
        }
        int v = f.v;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }
  return components;
}

}  // namespace netdeg
