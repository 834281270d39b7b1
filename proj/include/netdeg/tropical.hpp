#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "netdeg/common.hpp"
#include "netdeg/poly.hpp"
#include "netdeg/polygraph.hpp"

namespace netdeg {

/// One simplex factor of an equation's Newton polytope: the standard simplex
/// on the coordinate block of a neighboring player, with vertex labels
/// 0..k (label 0 is the origin, the eliminated strategy).
struct SimplexBlock {
  int player = 0;
  int k = 0;

  bool operator==(const SimplexBlock&) const = default;
};

/// Newton polytope of one indifference equation, as a Minkowski sum of
/// simplex blocks on disjoint coordinate blocks, ascending player order.
struct NewtonPolytope {
  int equation = 0;
  std::vector<SimplexBlock> blocks;
};

/// A candidate mixed cell: per equation, one edge in one neighboring block
/// and one vertex in every remaining block. Vertex label t >= 1 denotes the
/// lattice point e_{j,t}; label 0 the origin.
struct MixedCellSelection {
  struct EquationChoice {
    int edge_block = 0;                // player owning the edge
    std::pair<int, int> edge{0, 0};    // vertex labels, first < second
    std::map<int, int> vertices;       // remaining block player -> label

    bool operator==(const EquationChoice&) const = default;
  };
  std::vector<EquationChoice> choices;  // indexed by equation

  bool operator==(const MixedCellSelection&) const = default;
};

/// Blockwise lifting heights realizing a selection: key is (equation,
/// block player), value is the height of every vertex label of that copy.
struct LiftingCertificate {
  std::map<std::pair<int, int>, std::vector<int>> heights;

  bool operator==(const LiftingCertificate&) const = default;
  auto operator<=>(const LiftingCertificate&) const = default;
};

// ---------------------------------------------------------------------------

/// Newton polytope of equation eq. Verifies the product structure: the
/// support must be the full set of block-wise choices, otherwise the payoffs
/// are non-generic and the simplex decomposition does not hold.
inline NewtonPolytope newton_polytope(const PolynomialSystem& sys, int eq) {
  const Polynomial& f = sys.equations[eq];
  if (f.is_zero())
    throw non_generic_error("equation " + std::to_string(eq) +
                            " cancelled to zero");
  // Players whose variables actually appear.
  std::vector<int> players;
  for (const auto& [m, c] : f.terms)
    for (int v : m) players.push_back(sys.layout.owner(v));
  std::sort(players.begin(), players.end());
  players.erase(std::unique(players.begin(), players.end()), players.end());

  NewtonPolytope p;
  p.equation = eq;
  std::size_t expected = 1;
  for (int j : players) {
    p.blocks.push_back({j, sys.layout.dims[j]});
    expected *= sys.layout.dims[j] + 1;
  }
  if (f.terms.size() != expected)
    throw non_generic_error(
        "equation " + std::to_string(eq) +
        " has partially cancelled support; polytope is not a simplex sum");
  // Every variable of every present block must occur.
  std::vector<std::uint8_t> seen(sys.layout.d, 0);
  for (const auto& [m, c] : f.terms)
    for (int v : m) seen[v] = 1;
  for (const auto& b : p.blocks)
    for (int t = 1; t <= b.k; ++t)
      if (!seen[sys.layout.index(b.player, t)])
        throw non_generic_error("equation " + std::to_string(eq) +
                                " lost a variable of a neighbor block");
  return p;
}

namespace detail {

// Direction vector of the edge {t, t'} of a block simplex, as a dense exact
// vector: e_{j,t'} - e_{j,t} with e_{j,0} = 0.
inline std::vector<Rat> edge_direction(const VariableLayout& layout, int player,
                                       std::pair<int, int> edge, int d) {
  std::vector<Rat> v(d, Rat(0));
  if (edge.second >= 1) v[layout.index(player, edge.second)] = 1;
  if (edge.first >= 1) v[layout.index(player, edge.first)] -= 1;
  return v;
}

// Incremental exact Gaussian elimination for the rank test during the
// selection DFS. Rows are kept reduced; push returns false on dependence.
class RankTracker {
 public:
  explicit RankTracker(int d) : d_(d) {}

  bool push(std::vector<Rat> v) {
    for (const auto& row : rows_) {
      const Rat c = v[row.pivot];  // copy: the loop below overwrites v[pivot]
      if (c != 0)
        for (int j = 0; j < d_; ++j) v[j] -= c * row.values[j];
    }
    int pivot = -1;
    for (int j = 0; j < d_; ++j)
      if (v[j] != 0) {
        pivot = j;
        break;
      }
    if (pivot < 0) return false;
    const Rat lead = v[pivot];
    for (int j = 0; j < d_; ++j) v[j] /= lead;
    rows_.push_back({pivot, std::move(v)});
    return true;
  }

  void pop() { rows_.pop_back(); }

  int rank() const { return static_cast<int>(rows_.size()); }

 private:
  struct Row {
    int pivot;
    std::vector<Rat> values;
  };
  int d_;
  std::vector<Row> rows_;
};

}  // namespace detail

/// Every admissible selection: one simplex edge in one neighboring block per
/// equation, canonical vertex 0 elsewhere, edge directions of full rank d.
/// Realizability as a genuine regular mixed cell follows from the 0/1
/// lifting construction (see cycle_cover_to_lifting); enumerating edge
/// families therefore enumerates the mixed cells themselves.
inline std::vector<MixedCellSelection> enumerate_mixed_cells(
    const PolynomialSystem& sys) {
  const int d = sys.layout.d;
  if (d > kMaxMixedCellDim)
    throw cap_error("enumerate_mixed_cells: dimension " + std::to_string(d) +
                    " exceeds the cap of " + std::to_string(kMaxMixedCellDim));
  std::vector<NewtonPolytope> polytopes;
  polytopes.reserve(d);
  for (int e = 0; e < d; ++e) polytopes.push_back(newton_polytope(sys, e));

  std::vector<MixedCellSelection> cells;
  MixedCellSelection current;
  current.choices.resize(d);
  detail::RankTracker rank(d);

  auto dfs = [&](auto&& self, int eq) -> void {
    if (eq == d) {
      if (rank.rank() == d) cells.push_back(current);
      return;
    }
    for (const auto& block : polytopes[eq].blocks) {
      for (int t = 0; t <= block.k; ++t) {
        for (int u = t + 1; u <= block.k; ++u) {
          if (!rank.push(detail::edge_direction(sys.layout, block.player,
                                                {t, u}, d)))
            continue;
          auto& choice = current.choices[eq];
          choice.edge_block = block.player;
          choice.edge = {t, u};
          choice.vertices.clear();
          for (const auto& other : polytopes[eq].blocks)
            if (other.player != block.player) choice.vertices[other.player] = 0;
          self(self, eq + 1);
          rank.pop();
        }
      }
    }
  };
  dfs(dfs, 0);
  return cells;
}

/// Normalized volume of the selection's cell: |det| of the matrix whose
/// columns are the d edge directions. An integer for lattice edges.
inline Rat cell_volume(const MixedCellSelection& sel,
                       const VariableLayout& layout) {
  const int d = layout.d;
  require(static_cast<int>(sel.choices.size()) == d,
          "selection must cover every equation");
  std::vector<std::vector<Rat>> m(d, std::vector<Rat>(d, Rat(0)));
  for (int e = 0; e < d; ++e) {
    auto col = detail::edge_direction(layout, sel.choices[e].edge_block,
                                      sel.choices[e].edge, d);
    for (int r = 0; r < d; ++r) m[r][e] = col[r];
  }
  // Exact Gaussian elimination; determinant is the product of pivots.
  Rat det = 1;
  for (int c = 0; c < d; ++c) {
    int pivot = -1;
    for (int r = c; r < d; ++r)
      if (m[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw validation_error("selection directions are rank-deficient");
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int r = c + 1; r < d; ++r) {
      if (m[r][c] == 0) continue;
      const Rat factor = m[r][c] / m[c][c];
      for (int j = c; j < d; ++j) m[r][j] -= factor * m[c][j];
    }
  }
  return det < 0 ? Rat(-det) : det;
}

/// Cycles (vertex-index lists) of the permutation that a selection induces
/// on the polynomial graph; requires every k_i = 1, where the chosen edge's
/// nonzero endpoint is the selected variable.
inline std::vector<std::vector<int>> selection_to_cycle_cover(
    const MixedCellSelection& sel, const PolyGraph& g) {
  for (int k : g.layout.dims)
    require(k == 1, "cycle-cover reading of a selection needs every k_i = 1");
  const int d = g.dimension();
  require(static_cast<int>(sel.choices.size()) == d,
          "selection must cover every equation");
  std::vector<int> target(d, -1), hits(d, 0);
  for (int e = 0; e < d; ++e) {
    const auto& choice = sel.choices[e];
    require(choice.edge == std::make_pair(0, 1),
            "k = 1 simplex edges must be {0, 1}");
    const int var = g.layout.index(choice.edge_block, 1);
    if (!g.edge(e, var))
      throw validation_error("selected variable does not appear in equation " +
                             std::to_string(e));
    target[e] = var;
    ++hits[var];
  }
  for (int v = 0; v < d; ++v)
    if (hits[v] != 1)
      throw validation_error(
          "selection is not a permutation of the variables");
  // Decompose; each cycle starts at its minimal vertex, cycles sorted.
  std::vector<std::vector<int>> cycles;
  std::vector<bool> done(d, false);
  for (int start = 0; start < d; ++start) {
    if (done[start]) continue;
    std::vector<int> cycle;
    int v = start;
    do {
      cycle.push_back(v);
      done[v] = true;
      v = target[v];
    } while (v != start);
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

/// Selection induced by a vertex-disjoint cycle cover (k_i = 1): equation e
/// selects the edge {0, 1} of the block of its successor's player, vertex 0
/// in every other block.
inline MixedCellSelection cover_to_selection(
    const std::vector<std::vector<int>>& cycles, const PolyGraph& g) {
  for (int k : g.layout.dims)
    require(k == 1, "cover-to-selection needs every k_i = 1");
  const int d = g.dimension();
  std::vector<int> successor(d, -1);
  int covered = 0;
  for (const auto& cycle : cycles) {
    require(!cycle.empty(), "empty cycle");
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const int from = cycle[i];
      const int to = cycle[(i + 1) % cycle.size()];
      require(from >= 0 && from < d && successor[from] == -1,
              "cycles are not vertex-disjoint");
      if (!g.edge(from, to))
        throw validation_error("cover uses a non-edge of the polynomial graph");
      successor[from] = to;
      ++covered;
    }
  }
  require(covered == d, "cycles do not cover every vertex");

  MixedCellSelection sel;
  sel.choices.resize(d);
  for (int e = 0; e < d; ++e) {
    auto& choice = sel.choices[e];
    choice.edge_block = g.layout.owner(successor[e]);
    choice.edge = {0, 1};
    for (int v = 0; v < d; ++v)
      if (g.edge(e, v) && g.layout.owner(v) != choice.edge_block)
        choice.vertices[g.layout.owner(v)] = 0;
  }
  return sel;
}

/// Blockwise 0/1 lifting realizing the selection: height 0 on the selected
/// face of each labeled simplex copy, 1 on its remaining vertices.
inline LiftingCertificate make_lifting(const MixedCellSelection& sel,
                                       const VariableLayout& layout) {
  LiftingCertificate cert;
  for (std::size_t e = 0; e < sel.choices.size(); ++e) {
    const auto& choice = sel.choices[e];
    {
      std::vector<int> h(layout.dims[choice.edge_block] + 1, 1);
      h[choice.edge.first] = 0;
      h[choice.edge.second] = 0;
      cert.heights[{static_cast<int>(e), choice.edge_block}] = std::move(h);
    }
    for (const auto& [player, vertex] : choice.vertices) {
      std::vector<int> h(layout.dims[player] + 1, 1);
      h[vertex] = 0;
      cert.heights[{static_cast<int>(e), player}] = std::move(h);
    }
  }
  return cert;
}

/// Direct minimization check: on every labeled copy, the lifted functional
/// attains its minimum exactly on the selected face. A tampered certificate
/// (extra zero, missing copy, negative height) fails.
inline bool verify_lifting(const MixedCellSelection& sel,
                           const LiftingCertificate& cert,
                           const VariableLayout& layout) {
  for (std::size_t e = 0; e < sel.choices.size(); ++e) {
    const auto& choice = sel.choices[e];
    auto check_face = [&](int player, const std::vector<int>& face) {
      auto it = cert.heights.find({static_cast<int>(e), player});
      if (it == cert.heights.end()) return false;
      const auto& h = it->second;
      if (static_cast<int>(h.size()) != layout.dims[player] + 1) return false;
      for (int x : h)
        if (x < 0) return false;
      int min_h = h[0];
      for (int x : h) min_h = std::min(min_h, x);
      for (int t = 0; t < static_cast<int>(h.size()); ++t) {
        const bool on_face =
            std::find(face.begin(), face.end(), t) != face.end();
        if (on_face != (h[t] == min_h)) return false;
      }
      return true;
    };
    if (!check_face(choice.edge_block, {choice.edge.first, choice.edge.second}))
      return false;
    for (const auto& [player, vertex] : choice.vertices)
      if (!check_face(player, {vertex})) return false;
  }
  return true;
}

/// Lifting certificate of a cycle cover, verified before returning.
inline LiftingCertificate cycle_cover_to_lifting(
    const std::vector<std::vector<int>>& cycles, const PolyGraph& g) {
  const MixedCellSelection sel = cover_to_selection(cycles, g);
  LiftingCertificate cert = make_lifting(sel, g.layout);
  if (!verify_lifting(sel, cert, g.layout))
    throw validation_error("constructed lifting failed verification");
  return cert;
}

/// Tropical count: the sum of mixed-cell volumes. Exact and certified to
/// equal the permanent route when every k_i = 1; the general-k bookkeeping
/// is experimental and must be requested explicitly.
inline Rat tropical_degree(const PolynomialSystem& sys,
                           bool allow_general_k = false) {
  for (int k : sys.layout.dims)
    if (k >= 2 && !allow_general_k)
      throw validation_error(
          "tropical_degree with k >= 2 strategies is experimental; "
          "pass the override flag to proceed");
  Rat total = 0;
  for (const auto& cell : enumerate_mixed_cells(sys))
    total += cell_volume(cell, sys.layout);
  return total;
}

}  // namespace netdeg
