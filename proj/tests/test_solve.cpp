#include <catch2/catch_amalgamated.hpp>

#include "netdeg/degree.hpp"
#include "netdeg/game.hpp"
#include "netdeg/solve.hpp"
#include "netdeg/sweep.hpp"

using namespace netdeg;

TEST_CASE("cyclic matching pennies solves to the all-half point") {
  for (int n : {3, 4, 5}) {
    const NetworkGame game = make_matching_pennies(n);
    SolveOptions opts;
    opts.seed = 1000 + n;
    const SolutionSet sol = solve_system(build_indifference_system(game), opts);
    REQUIRE(sol.counts.torus == 1);
    REQUIRE(sol.points.size() == 1);
    for (const Cx& c : sol.points[0].coords) {
      CHECK(std::abs(c.real() - 0.5) < 1e-8);
      CHECK(std::abs(c.imag()) < 1e-8);
    }
    CHECK(sol.counts.real == 1);
    CHECK(sol.counts.simplex_real == 1);
  }
}

TEST_CASE("cross prism trial recovers all eight torus solutions") {
  const NetworkGame game = sample_generic_payoffs(cross_prism_graph(3), 1,
                                                  Rat(-5), Rat(5), 90);
  SolveOptions opts;
  opts.seed = 90;
  const SolutionSet sol = solve_system(build_indifference_system(game), opts);
  CHECK(sol.counts.tracked == 64);  // Bezout count 2^6
  CHECK(sol.counts.torus == 8);
  CHECK(sol.counts.real <= sol.counts.torus);
  for (const auto& pt : sol.points) CHECK(pt.residual < 1e-8);
}

TEST_CASE("standard prism trial recovers both torus solutions") {
  const NetworkGame game =
      sample_generic_payoffs(std_prism_graph(3), 1, Rat(-5), Rat(5), 91);
  SolveOptions opts;
  opts.seed = 91;
  const SolutionSet sol = solve_system(build_indifference_system(game), opts);
  CHECK(sol.counts.torus == 2);
}

TEST_CASE("torus count never exceeds the algebraic degree") {
  for (std::uint64_t seed = 200; seed < 206; ++seed) {
    const NetworkGame game = sample_generic_payoffs(std_prism_graph(3), 1,
                                                    Rat(-5), Rat(5), seed);
    const Rat degree = algebraic_degree(game);
    SolveOptions opts;
    opts.seed = seed;
    const SolutionSet sol = solve_system(build_indifference_system(game), opts);
    CHECK(Rat(sol.counts.torus) <= degree);
    CHECK(sol.counts.real <= sol.counts.torus);
    CHECK(sol.counts.converged <= sol.counts.tracked);
  }
}

TEST_CASE("solve is deterministic for a fixed seed") {
  const NetworkGame game = sample_generic_payoffs(cross_prism_graph(3), 1,
                                                  Rat(-5), Rat(5), 92);
  const PolynomialSystem sys = build_indifference_system(game);
  SolveOptions opts;
  opts.seed = 92;
  const SolutionSet a = solve_system(sys, opts);
  const SolutionSet b = solve_system(sys, opts);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i)
    for (int v = 0; v < sys.layout.d; ++v)
      CHECK(a.points[i].coords[v] == b.points[i].coords[v]);
  CHECK(a.counts.torus == b.counts.torus);
  // The chunked parallel merge gives the same answer as serial tracking.
  opts.threads = 4;
  const SolutionSet c = solve_system(sys, opts);
  opts.threads = 1;
  const SolutionSet d = solve_system(sys, opts);
  CHECK(c.counts.torus == d.counts.torus);
  REQUIRE(c.points.size() == d.points.size());
  for (std::size_t i = 0; i < c.points.size(); ++i)
    for (int v = 0; v < sys.layout.d; ++v)
      CHECK(c.points[i].coords[v] == d.points[i].coords[v]);
}

TEST_CASE("classification is pure and respects the thresholds") {
  SolutionSet set;
  set.layout = VariableLayout({1, 1});
  // A genuine torus + real + simplex point.
  set.points.push_back({{Cx(0.4, 0.0), Cx(0.7, 0.0)}, 0.0, 1.0});
  // Zero coordinate: off the torus.
  set.points.push_back({{Cx(0.0, 0.0), Cx(0.5, 0.0)}, 0.0, 1.0});
  // Eliminated coordinate 1 - x vanishes: off the torus.
  set.points.push_back({{Cx(1.0, 0.0), Cx(0.5, 0.0)}, 0.0, 1.0});
  // Complex torus point, not real.
  set.points.push_back({{Cx(0.5, 0.3), Cx(0.5, 0.0)}, 0.0, 1.0});
  // Real torus point outside the probability simplex.
  set.points.push_back({{Cx(1.5, 0.0), Cx(0.5, 0.0)}, 0.0, 1.0});
  const SolutionCounts counts = classify_solutions(set, 1e-10, 1e-6);
  CHECK(counts.converged == 5);
  CHECK(counts.torus == 3);
  CHECK(counts.real == 2);
  CHECK(counts.simplex_real == 1);
  const SolutionCounts again = classify_solutions(set, 1e-10, 1e-6);
  CHECK(counts.torus == again.torus);
  CHECK(counts.real == again.real);
}

TEST_CASE("dimension cap on the tracker") {
  const NetworkGame game =
      sample_generic_payoffs(cycle_graph(11), 1, Rat(-5), Rat(5), 95);
  CHECK_THROWS_AS(solve_system(build_indifference_system(game)),
                  cap_error);
}

TEST_CASE("sweep rows are reproducible and bounded by theory") {
  const DirectedGraph g = std_prism_graph(3);
  const SweepResult a = run_sweep(g, "std-prism", 3, 4, Rat(-5), Rat(5), 300);
  const SweepResult b = run_sweep(g, "std-prism", 3, 4, Rat(-5), Rat(5), 300);
  REQUIRE(a.rows.size() == 4);
  CHECK(a.theory_degree == Rat(2));
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].trial == b.rows[i].trial);
    CHECK(a.rows[i].seed == b.rows[i].seed);
    CHECK(a.rows[i].torus == b.rows[i].torus);
    CHECK(a.rows[i].real_count == b.rows[i].real_count);
    CHECK(Rat(a.rows[i].torus) <= a.theory_degree);
  }
  CHECK(a.max_torus == b.max_torus);
  CHECK(a.attain_fraction == b.attain_fraction);
}
