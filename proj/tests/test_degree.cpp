#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "netdeg/degree.hpp"
#include "netdeg/game.hpp"
#include "netdeg/transfer.hpp"
#include "random_graphs.hpp"

using namespace netdeg;
using netdeg::testing::random_dag_of_cycles;

TEST_CASE("directed cycles have degree one") {
  for (int n = 2; n <= 12; ++n) {
    CHECK(algebraic_degree(cycle_graph(n), 1) == Rat(1));
    const NetworkGame game =
        sample_generic_payoffs(cycle_graph(n), 1, Rat(-5), Rat(5), 7 + n);
    CHECK(algebraic_degree(game) == Rat(1));
  }
}

TEST_CASE("standard prism degree is 3 + (-1)^N") {
  for (int n = 3; n <= 7; ++n) {
    const Rat expected = n % 2 == 0 ? 4 : 2;
    CHECK(algebraic_degree(std_prism_graph(n), 1) == expected);
  }
}

TEST_CASE("cross prism degree is 2^N") {
  for (int n = 3; n <= 7; ++n) {
    Int expected = 1;
    for (int i = 0; i < n; ++i) expected *= 2;
    CHECK(algebraic_degree(cross_prism_graph(n), 1) == Rat(expected));
  }
}

TEST_CASE("degenerate polynomial-graph shapes") {
  CHECK(algebraic_degree(figure8_graph(3, 4), 1) == 0);
  CHECK(algebraic_degree(figure8_graph(2, 2), 1) == 0);
  CHECK(algebraic_degree(theta_graph(3, 4), 1) == 0);
  CHECK(algebraic_degree(theta_graph(3, 3), 1) == 0);
  CHECK(algebraic_degree(disjoint_cycles_graph({3, 4}), 1) == 1);
  // A 2-cycle lobe would be swallowed by the other cycle; rejected.
  CHECK_THROWS_AS(theta_graph(2, 3), validation_error);
}

TEST_CASE("cycle covers match the permanent on paper topologies") {
  const PolyGraph cross = generic_poly_graph(cross_prism_graph(3), {1, 1, 1, 1, 1, 1});
  CHECK(count_cycle_covers(cross) == 8);
  const PolyGraph c6 = generic_poly_graph(cycle_graph(6), std::vector<int>(6, 1));
  CHECK(count_cycle_covers(c6) == 1);
}

TEST_CASE("three independent code paths agree for k = 1 games") {
  std::mt19937_64 rng(61);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 2 + static_cast<int>(rng() % 6);
    DirectedGraph g(n);
    for (int tries = 0; tries < 2 * n; ++tries) {
      const int a = static_cast<int>(rng() % n);
      const int b = static_cast<int>(rng() % n);
      if (a != b) g.add_edge(a, b);
    }
    const PolyGraph pg = generic_poly_graph(g, std::vector<int>(n, 1));
    const Int perm = permanent_ryser(to_int_matrix(pg));
    CHECK(algebraic_degree(pg) == Rat(perm));
    CHECK(count_cycle_covers(pg) == perm);
  }
}

TEST_CASE("permanent is divisible by the product of factorials") {
  std::mt19937_64 rng(71);
  for (int rep = 0; rep < 15; ++rep) {
    const int n = 2 + static_cast<int>(rng() % 3);
    DirectedGraph g(n);
    for (int tries = 0; tries < 2 * n; ++tries) {
      const int a = static_cast<int>(rng() % n);
      const int b = static_cast<int>(rng() % n);
      if (a != b) g.add_edge(a, b);
    }
    std::vector<int> dims(n);
    for (auto& k : dims) k = 1 + static_cast<int>(rng() % 3);
    const PolyGraph pg = generic_poly_graph(g, dims);
    Int denom = 1;
    for (int k : dims) denom *= factorial(k);
    CHECK(permanent_ryser(to_int_matrix(pg)) % denom == 0);
  }
}

TEST_CASE("scc route equals the permanent route") {
  std::mt19937_64 rng(101);
  for (int rep = 0; rep < 40; ++rep) {
    const DirectedGraph g = random_dag_of_cycles(rng, 12);
    const NetworkGame game =
        sample_generic_payoffs(g, 1, Rat(-5), Rat(5), rng());
    CHECK(degree_via_scc(game) == algebraic_degree(game));
  }
}

TEST_CASE("scc route on special cases") {
  // Disjoint C_3 and C_4: 1 * 1 = 1.
  CHECK(degree_via_scc(disjoint_cycles_graph({3, 4}),
                       generic_poly_graph(disjoint_cycles_graph({3, 4}),
                                          std::vector<int>(7, 1))) == 1);
  // C_3 feeding forward into another C_3 stays at 1.
  DirectedGraph g = disjoint_cycles_graph({3, 3});
  g.add_edge(0, 3);
  CHECK(algebraic_degree(g, 1) == 1);
  CHECK(degree_via_scc(g, generic_poly_graph(g, std::vector<int>(6, 1))) == 1);
  // A single strongly connected graph: identical to the direct degree.
  const DirectedGraph cross = cross_prism_graph(4);
  const PolyGraph pg = generic_poly_graph(cross, std::vector<int>(8, 1));
  CHECK(degree_via_scc(cross, pg) == algebraic_degree(pg));
}

TEST_CASE("block-triangular permanent factorization") {
  std::mt19937_64 rng(131);
  for (int rep = 0; rep < 25; ++rep) {
    const DirectedGraph g = random_dag_of_cycles(rng, 12);
    const PolyGraph pg = generic_poly_graph(g, std::vector<int>(g.n, 1));
    const auto comps = scc_decompose(g);
    Int blocks = 1;
    for (const auto& comp : comps) {
      IntMatrix sub(comp.size(), std::vector<Int>(comp.size(), 0));
      for (std::size_t r = 0; r < comp.size(); ++r)
        for (std::size_t c = 0; c < comp.size(); ++c)
          sub[r][c] = pg.adj[comp[r]][comp[c]];
      blocks *= permanent_ryser(sub);
    }
    CHECK(blocks == permanent_ryser(to_int_matrix(pg)));
  }
}

TEST_CASE("tensor law for permutation lifts") {
  std::mt19937_64 rng(151);
  for (int rep = 0; rep < 15; ++rep) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const int m = 1 + static_cast<int>(rng() % 3);
    // Random permutation base as disjoint cycles of a shuffle.
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    DirectedGraph base(n);
    for (int i = 0; i < n; ++i) base.add_edge(i, perm[i]);
    DirectedGraph gadget(m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        if (rng() & 1) gadget.add_edge(a, b);
    const DirectedGraph product = tensor_product(base, gadget);
    const Int direct = permanent_ryser(to_int_matrix(product.adjacency()));
    CHECK(tensor_degree(base, gadget) == direct);
  }
}

TEST_CASE("tensor degree requires a disjoint-cycle base") {
  DirectedGraph base(3);
  base.add_edge(0, 1);
  base.add_edge(1, 2);  // a path, not a cycle cover of itself
  CHECK_THROWS_AS(tensor_degree(base, k2_gadget()), validation_error);
}

TEST_CASE("tensor degree of the cross coupling is 2^N for large N") {
  Int expected = 1;
  for (int n = 1; n <= 30; ++n) {
    expected *= 2;
    CHECK(tensor_degree(cycle_graph(n), cross_coupling_gadget()) == expected);
  }
  // perm(A_H) = 1 keeps the degree at one for every N.
  DirectedGraph unit(1);
  unit.add_edge(0, 0);
  CHECK(tensor_degree(cycle_graph(12), unit) == 1);
}

TEST_CASE("tensor route agrees with the permanent route on products") {
  std::mt19937_64 rng(171);
  for (int rep = 0; rep < 10; ++rep) {
    const int m = 1 + static_cast<int>(rng() % 2);
    DirectedGraph gadget(m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        if (rng() & 1) gadget.add_edge(a, b);
    const DirectedGraph product = tensor_product(cycle_graph(3), gadget);
    if (product.has_self_loop()) continue;  // not a valid player graph
    const NetworkGame game =
        sample_generic_payoffs(product, 1, Rat(-5), Rat(5), rng());
    PolynomialSystem sys = build_indifference_system(game);
    if (!sys.is_generic()) continue;  // zero rows possible with empty gadget
    CHECK(algebraic_degree(build_poly_graph(sys)) ==
          Rat(tensor_degree(cycle_graph(3), gadget)));
  }
}

TEST_CASE("non-generic games are refused by the degree routes") {
  DirectedGraph g(2);
  g.add_edge(1, 0);
  g.add_edge(0, 1);
  NetworkGame game;
  game.graph = g;
  game.dims = {1, 1};
  game.payoffs.resize(2);
  game.payoffs[0] = {Rat(3), Rat(7), Rat(3), Rat(7)};
  game.payoffs[1] = {Rat(1), Rat(0), Rat(0), Rat(2)};
  CHECK_THROWS_AS(algebraic_degree(game), non_generic_error);
  CHECK_THROWS_AS(degree_via_scc(game), non_generic_error);
}
