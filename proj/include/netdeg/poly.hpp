#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "netdeg/common.hpp"
#include "netdeg/game.hpp"

namespace netdeg {

/// Flattened indexing of strategy variables: variable (player u, strategy v)
/// with v in [1, k_u] sits at prefix(u) + v - 1. Equations share the same
/// index space, so equation (i, s) and variable (i, s) coincide.
struct VariableLayout {
  std::vector<int> dims;  // k per player
  std::vector<int> base;  // prefix sums of dims
  int d = 0;

  VariableLayout() = default;
  explicit VariableLayout(std::vector<int> k) : dims(std::move(k)) {
    base.resize(dims.size() + 1, 0);
    for (std::size_t i = 0; i < dims.size(); ++i)
      base[i + 1] = base[i] + dims[i];
    d = base.back();
  }

  int players() const { return static_cast<int>(dims.size()); }

  int index(int player, int strategy) const {  // strategy in [1, k]
    return base[player] + strategy - 1;
  }

  int owner(int var) const {
    int p = static_cast<int>(std::upper_bound(base.begin(), base.end(), var) -
                             base.begin()) - 1;
    return p;
  }

  int strategy(int var) const { return var - base[owner(var)] + 1; }

  bool operator==(const VariableLayout& o) const = default;
};

/// Multilinear monomial: sorted list of distinct variable indices.
using Monomial = std::vector<int>;

/// Sparse multilinear polynomial with exact rational coefficients.
struct Polynomial {
  std::map<Monomial, Rat> terms;

  bool is_zero() const { return terms.empty(); }

  /// Maximal number of variables in a monomial.
  int degree() const {
    std::size_t deg = 0;
    for (const auto& [m, c] : terms) deg = std::max(deg, m.size());
    return static_cast<int>(deg);
  }

  void add_term(Monomial m, const Rat& c) {
    std::sort(m.begin(), m.end());
    Rat& slot = terms[m];
    slot += c;
    if (slot == 0) terms.erase(m);
  }

  Rat coefficient(Monomial m) const {
    std::sort(m.begin(), m.end());
    auto it = terms.find(m);
    return it == terms.end() ? Rat(0) : it->second;
  }

  Rat evaluate(const std::vector<Rat>& x) const {
    Rat sum = 0;
    for (const auto& [m, c] : terms) {
      Rat prod = c;
      for (int v : m) prod *= x[v];
      sum += prod;
    }
    return sum;
  }

  bool operator==(const Polynomial& o) const = default;
};

/// The d indifference polynomials of a game, indexed like the variables.
struct PolynomialSystem {
  VariableLayout layout;
  std::vector<Polynomial> equations;

  int dimension() const { return layout.d; }

  std::vector<int> degenerate_equations() const {
    std::vector<int> r;
    for (int e = 0; e < layout.d; ++e)
      if (equations[e].is_zero()) r.push_back(e);
    return r;
  }

  bool is_generic() const { return degenerate_equations().empty(); }

  void require_generic() const {
    const auto bad = degenerate_equations();
    if (!bad.empty())
      throw non_generic_error(
          "equation " + std::to_string(bad.front()) +
          " cancelled to zero; payoffs are non-generic");
  }
};

namespace detail {

// Enumerate pure profiles of the (sorted) in-neighbors in row-major order.
inline bool next_profile(std::vector<int>& profile,
                         const std::vector<int>& limits) {
  for (int t = static_cast<int>(profile.size()) - 1; t >= 0; --t) {
    if (++profile[t] < limits[t]) return true;
    profile[t] = 0;
  }
  return false;
}

}  // namespace detail

/// Expand f_{i,s} = u_i(s, x_{-i}) - u_i(0, x_{-i}) after eliminating every
/// x_{j,0} = 1 - sum_t x_{j,t}. Exact; zero coefficients are dropped.
inline Polynomial indifference_polynomial(const NetworkGame& game, int player,
                                          int strategy,
                                          const VariableLayout& layout) {
  const auto nbrs = game.graph.in_neighbors(player);
  std::vector<int> limits;
  limits.reserve(nbrs.size());
  for (int j : nbrs) limits.push_back(game.strategies(j));

  Polynomial f;
  std::vector<int> profile(nbrs.size(), 0);
  bool more = true;
  while (more) {
    const Rat c = game.payoff(player, strategy, profile) -
                  game.payoff(player, 0, profile);
    if (c != 0) {
      // Distribute c * prod_j factor(j, profile_j), where factor is x_{j,t}
      // for t >= 1 and (1 - sum_t x_{j,t}) for the eliminated strategy 0.
      std::vector<std::pair<Monomial, Rat>> partial{{Monomial{}, c}};
      for (std::size_t t = 0; t < nbrs.size(); ++t) {
        const int j = nbrs[t];
        if (profile[t] >= 1) {
          for (auto& [m, a] : partial) m.push_back(layout.index(j, profile[t]));
        } else {
          std::vector<std::pair<Monomial, Rat>> expanded;
          expanded.reserve(partial.size() * (game.dims[j] + 1));
          for (const auto& [m, a] : partial) {
            expanded.emplace_back(m, a);
            for (int u = 1; u <= game.dims[j]; ++u) {
              Monomial mu = m;
              mu.push_back(layout.index(j, u));
              expanded.emplace_back(std::move(mu), -a);
            }
          }
          partial = std::move(expanded);
        }
      }
      for (auto& [m, a] : partial) f.add_term(std::move(m), a);
    }
    more = detail::next_profile(profile, limits);
  }
  return f;
}

/// All d = sum k_i indifference equations of the game.
inline PolynomialSystem build_indifference_system(const NetworkGame& game) {
  game.validate();
  PolynomialSystem sys;
  sys.layout = VariableLayout(game.dims);
  sys.equations.resize(sys.layout.d);
  for (int i = 0; i < game.players(); ++i)
    for (int s = 1; s <= game.dims[i]; ++s)
      sys.equations[sys.layout.index(i, s)] =
          indifference_polynomial(game, i, s, sys.layout);
  return sys;
}

/// Structural sanity: monomials touch at most one variable per player block
/// and never the owner's own block.
inline void validate_multilinear(const PolynomialSystem& sys) {
  for (int e = 0; e < sys.layout.d; ++e) {
    const int owner = sys.layout.owner(e);
    for (const auto& [m, c] : sys.equations[e].terms) {
      int prev_player = -1;
      for (int v : m) {
        const int p = sys.layout.owner(v);
        require(p != owner, "equation uses a variable of its own player");
        require(p != prev_player, "monomial uses two variables of one player");
        prev_player = p;
      }
    }
  }
}

}  // namespace netdeg
