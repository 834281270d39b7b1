#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "netdeg/common.hpp"
#include "netdeg/graph.hpp"

namespace netdeg {

/// Uniform payoff samples are quantized to this denominator so the whole
/// symbolic pipeline stays exact.
constexpr std::int64_t kPayoffDenominator = 1000000;

/// A finite game on a directed dependency graph. Player i has k_i + 1 pure
/// strategies (dims[i] = k_i >= 1) and a payoff table over the pure profiles
/// of its closed neighborhood (in-neighbors plus itself).
///
/// Payoff layout: own strategy is the slowest index; then the in-neighbors in
/// ascending vertex order, row-major (last neighbor fastest).
struct NetworkGame {
  DirectedGraph graph;
  std::vector<int> dims;                  // k_i per player
  std::vector<std::vector<Rat>> payoffs;  // per player, flat table

  int players() const { return graph.n; }

  int strategies(int i) const { return dims[i] + 1; }

  std::size_t table_size(int i) const {
    std::size_t s = strategies(i);
    for (int j : graph.in_neighbors(i)) s *= strategies(j);
    return s;
  }

  std::size_t payoff_index(int i, int own,
                           const std::vector<int>& neighbor_profile) const {
    const auto nbrs = graph.in_neighbors(i);
    std::size_t idx = own;
    for (std::size_t t = 0; t < nbrs.size(); ++t)
      idx = idx * strategies(nbrs[t]) + neighbor_profile[t];
    return idx;
  }

  /// u_i(own; profile of sorted in-neighbors).
  const Rat& payoff(int i, int own,
                    const std::vector<int>& neighbor_profile) const {
    return payoffs[i][payoff_index(i, own, neighbor_profile)];
  }

  void validate() const {
    require(graph.n >= 1, "game needs at least one player");
    require(!graph.has_self_loop(), "player graph must not contain self-loops");
    require(static_cast<int>(dims.size()) == graph.n,
            "strategy_dims length must equal player count");
    for (int i = 0; i < graph.n; ++i)
      require(dims[i] >= 1,
              "player " + std::to_string(i) +
                  " has a single strategy; game is degenerate");
    require(payoffs.size() == static_cast<std::size_t>(graph.n),
            "payoff table count must equal player count");
    for (int i = 0; i < graph.n; ++i)
      require(payoffs[i].size() == table_size(i),
              "payoff table of player " + std::to_string(i) +
                  " has wrong size");
  }
};

/// Named parameters for the topology families.
struct TopologySpec {
  std::string kind;          // cycle, disjoint-cycles, figure8, theta,
                             // std-prism, cross-prism, cartesian, tensor
  int n = 0;                 // cycle length / prism size / C_N factor
  std::vector<int> lengths;  // disjoint-cycles, figure8, theta
  DirectedGraph gadget;      // H factor for cartesian / tensor
};

inline DirectedGraph topology_factory(const TopologySpec& spec) {
  if (spec.kind == "cycle") return cycle_graph(spec.n);
  if (spec.kind == "disjoint-cycles") return disjoint_cycles_graph(spec.lengths);
  if (spec.kind == "figure8") {
    require(spec.lengths.size() == 2, "figure8 needs two lobe lengths");
    return figure8_graph(spec.lengths[0], spec.lengths[1]);
  }
  if (spec.kind == "theta") {
    require(spec.lengths.size() == 2, "theta needs two cycle lengths");
    return theta_graph(spec.lengths[0], spec.lengths[1]);
  }
  if (spec.kind == "std-prism") return std_prism_graph(spec.n);
  if (spec.kind == "cross-prism") return cross_prism_graph(spec.n);
  if (spec.kind == "cartesian") {
    require(spec.gadget.n > 0, "cartesian product needs a gadget graph");
    return cartesian_product(cycle_graph(spec.n), spec.gadget);
  }
  if (spec.kind == "tensor") {
    require(spec.gadget.n > 0, "tensor product needs a gadget graph");
    // Base factor: C_n by default, or any disjoint-cycle union via lengths.
    const DirectedGraph base = spec.lengths.empty()
                                   ? cycle_graph(spec.n)
                                   : disjoint_cycles_graph(spec.lengths);
    return tensor_product(base, spec.gadget);
  }
  throw validation_error("unknown topology kind: " + spec.kind);
}

// ---------------------------------------------------------------------------
// Payoff sampling
// ---------------------------------------------------------------------------

/// Deterministic uniform rational in [lo, hi], quantized to the fixed payoff
/// denominator. Only mt19937_64 raw output is consumed, so samples are
/// bit-for-bit reproducible across platforms.
inline Rat sample_quantized_uniform(std::mt19937_64& rng, const Rat& lo,
                                    const Rat& hi) {
  const Int lo_q = Int(numerator(lo) * kPayoffDenominator / denominator(lo));
  const Int hi_q = Int(numerator(hi) * kPayoffDenominator / denominator(hi));
  const std::uint64_t range = static_cast<std::uint64_t>(Int(hi_q - lo_q));
  const std::uint64_t r = range == 0 ? 0 : rng() % (range + 1);
  return Rat(lo_q + r, kPayoffDenominator);
}

/// Game on the given topology with i.i.d. uniform payoffs in [lo, hi].
inline NetworkGame sample_generic_payoffs(const DirectedGraph& topology,
                                          const std::vector<int>& strategy_dims,
                                          const Rat& lo, const Rat& hi,
                                          std::uint64_t seed) {
  require(lo < hi, "distribution needs lo < hi");
  NetworkGame game;
  game.graph = topology;
  game.dims = strategy_dims;
  std::mt19937_64 rng(seed);
  game.payoffs.resize(topology.n);
  for (int i = 0; i < topology.n; ++i) {
    const std::size_t size = game.table_size(i);
    game.payoffs[i].reserve(size);
    for (std::size_t t = 0; t < size; ++t)
      game.payoffs[i].push_back(sample_quantized_uniform(rng, lo, hi));
  }
  game.validate();
  return game;
}

inline NetworkGame sample_generic_payoffs(const DirectedGraph& topology,
                                          int uniform_k, const Rat& lo,
                                          const Rat& hi, std::uint64_t seed) {
  return sample_generic_payoffs(topology, std::vector<int>(topology.n, uniform_k),
                                lo, hi, seed);
}

/// Cyclic matching pennies: N players on a directed cycle, two strategies
/// each; player i earns +1 for matching player i-1 and -1 otherwise.
inline NetworkGame make_matching_pennies(int n) {
  require(n >= 2, "matching pennies needs at least two players");
  NetworkGame game;
  game.graph = cycle_graph(n);
  game.dims.assign(n, 1);
  game.payoffs.resize(n);
  for (int i = 0; i < n; ++i) {
    game.payoffs[i].resize(4);
    for (int own = 0; own <= 1; ++own)
      for (int prev = 0; prev <= 1; ++prev)
        game.payoffs[i][game.payoff_index(i, own, {prev})] =
            own == prev ? Rat(1) : Rat(-1);
  }
  game.validate();
  return game;
}

}  // namespace netdeg
