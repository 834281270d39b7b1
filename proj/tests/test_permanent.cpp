#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "netdeg/degree.hpp"
#include "netdeg/permanent.hpp"
#include "netdeg/polygraph.hpp"

using namespace netdeg;

namespace {

IntMatrix ones(int d) {
  return IntMatrix(d, std::vector<Int>(d, 1));
}

IntMatrix identity(int d) {
  IntMatrix a(d, std::vector<Int>(d, 0));
  for (int i = 0; i < d; ++i) a[i][i] = 1;
  return a;
}

IntMatrix cyclic_permutation(int d) {
  IntMatrix a(d, std::vector<Int>(d, 0));
  for (int i = 0; i < d; ++i) a[i][(i + 1) % d] = 1;
  return a;
}

IntMatrix random_01(std::mt19937_64& rng, int d) {
  IntMatrix a(d, std::vector<Int>(d, 0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a[i][j] = (rng() & 1) ? 1 : 0;
  return a;
}

PolyGraph as_poly_graph(const IntMatrix& a) {
  PolyGraph g;
  const int d = static_cast<int>(a.size());
  g.layout = VariableLayout(std::vector<int>(d, 1));
  g.adj.assign(d, std::vector<std::uint8_t>(d, 0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g.adj[i][j] = a[i][j] == 0 ? 0 : 1;
  return g;
}

}  // namespace

TEST_CASE("permanent of all-ones matrices") {
  CHECK(permanent_naive(ones(3)) == 6);
  CHECK(permanent_naive(ones(4)) == 24);
  CHECK(permanent_ryser(ones(3)) == 6);
  CHECK(permanent_ryser(ones(4)) == 24);
}

TEST_CASE("permanent of identity and cyclic permutation") {
  for (int d = 1; d <= 8; ++d) {
    CHECK(permanent_ryser(identity(d)) == 1);
    CHECK(permanent_ryser(cyclic_permutation(d)) == 1);
  }
}

TEST_CASE("zero row or zero column forces permanent zero") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 50; ++rep) {
    const int d = 2 + static_cast<int>(rng() % 7);
    IntMatrix a = random_01(rng, d);
    const int line = static_cast<int>(rng() % d);
    if (rng() & 1)
      for (int j = 0; j < d; ++j) a[line][j] = 0;
    else
      for (int i = 0; i < d; ++i) a[i][line] = 0;
    CHECK(permanent_ryser(a) == 0);
    CHECK(permanent_naive(a) == 0);
  }
}

TEST_CASE("ryser, naive oracle, and cycle-cover DP agree on random matrices") {
  std::mt19937_64 rng(42);
  for (int rep = 0; rep < 200; ++rep) {
    const int d = 1 + static_cast<int>(rng() % 9);
    const IntMatrix a = random_01(rng, d);
    const Int expected = permanent_naive(a);
    CHECK(permanent_ryser(a) == expected);
    CHECK(detail::ryser(a) == expected);  // the big-integer fallback path
    CHECK(count_cycle_covers(as_poly_graph(a)) == expected);
  }
}

TEST_CASE("cycle covers of a single directed cycle") {
  CHECK(count_cycle_covers(as_poly_graph(cyclic_permutation(6))) == 1);
}

TEST_CASE("dimension caps are explicit errors") {
  CHECK_THROWS_AS(permanent_ryser(IntMatrix(31, std::vector<Int>(31, 1))),
                  cap_error);
  CHECK_THROWS_AS(permanent_naive(IntMatrix(11, std::vector<Int>(11, 1))),
                  cap_error);
  CHECK_THROWS_MATCHES(
      permanent_ryser(IntMatrix(31, std::vector<Int>(31, 1))), cap_error,
      Catch::Matchers::MessageMatches(
          Catch::Matchers::ContainsSubstring("30")));
}

TEST_CASE("permanent handles general integer entries") {
  // 2x2 with entries beyond 0/1: perm = ad + bc.
  IntMatrix a{{Int(3), Int(5)}, {Int(7), Int(2)}};
  CHECK(permanent_ryser(a) == 3 * 2 + 5 * 7);
  CHECK(permanent_naive(a) == 41);
}

TEST_CASE("weighted permanent diagnostic tracks the exact value") {
  // For k = 1 blocks the weights are all 1, so the diagnostic must equal the
  // integer permanent up to floating error.
  std::mt19937_64 rng(99);
  for (int rep = 0; rep < 20; ++rep) {
    const int d = 2 + static_cast<int>(rng() % 6);
    const IntMatrix a = random_01(rng, d);
    const PolyGraph g = as_poly_graph(a);
    const double w = permanent_weighted(build_structure_matrix(g));
    const double exact = static_cast<double>(permanent_ryser(a));
    CHECK(w == Catch::Approx(exact).margin(1e-9));
  }
}

TEST_CASE("weighted permanent with k = 2 blocks matches perm/k! scaling") {
  // Two players, k = 2 each, fully coupled: support = [[0,J2],[J2,0]] with
  // weights (2!)^(-1/2). Exact degree = perm(support) / (2! * 2!) = 4/4 = 1.
  PolyGraph g = kronecker_lift({{0, 1}, {1, 0}}, 2);
  const StructureMatrix m = build_structure_matrix(g);
  const double w = permanent_weighted(m);
  const Rat exact = algebraic_degree(g);
  CHECK(w == Catch::Approx(static_cast<double>(exact)).epsilon(1e-9));
}
