#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>

#include "netdeg/degree.hpp"
#include "netdeg/game.hpp"
#include "netdeg/io.hpp"

using namespace netdeg;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("rational rendering and parsing") {
  CHECK(to_string(Rat(4)) == "4");
  CHECK(to_string(Rat(-7, 2)) == "-7/2");
  CHECK(parse_rational("-7/2") == Rat(-7, 2));
  CHECK(parse_rational("12") == Rat(12));
  CHECK_THROWS_AS(parse_rational("x"), validation_error);
}

TEST_CASE("game files round-trip exactly") {
  const DirectedGraph g = std_prism_graph(3);
  const NetworkGame game =
      sample_generic_payoffs(g, {1, 2, 1, 1, 2, 1}, Rat(-5), Rat(5), 111);
  const std::string path = temp_path("netdeg_game.json");
  save_game(game, path);
  const NetworkGame loaded = load_game(path);
  CHECK(loaded.graph == game.graph);
  CHECK(loaded.dims == game.dims);
  CHECK(loaded.payoffs == game.payoffs);
  std::remove(path.c_str());
}

TEST_CASE("game files accept exact rational strings") {
  const nlohmann::json j = {
      {"players", 2},
      {"strategy_dims", {1, 1}},
      {"edges", {{0, 1}, {1, 0}}},
      {"payoffs",
       {{"0", {"1/3", -1, "2/3", 0}}, {"1", {1, 0, 0, "7/2"}}}},
  };
  const NetworkGame game = game_from_json(j);
  CHECK(game.payoffs[0][0] == Rat(1, 3));
  CHECK(game.payoffs[1][3] == Rat(7, 2));
}

TEST_CASE("malformed game files are rejected") {
  nlohmann::json j = {{"players", 2}, {"strategy_dims", {1, 1}}};
  CHECK_THROWS_AS(game_from_json(j), validation_error);
  j["edges"] = {{0, 1}};
  j["payoffs"] = {{"0", {1, 2}}};  // table for player 1 missing
  CHECK_THROWS_AS(game_from_json(j), validation_error);
}

TEST_CASE("matrix export of the 3-cycle is the cyclic pattern") {
  const PolyGraph pg =
      generic_poly_graph(cycle_graph(3), std::vector<int>(3, 1));
  CHECK(format_matrix(pg) == "3\n0 0 1\n1 0 0\n0 1 0\n");
}

TEST_CASE("matrix text round-trips and is byte-stable") {
  const PolyGraph pg =
      generic_poly_graph(cross_prism_graph(3), std::vector<int>(6, 1));
  const std::string text = format_matrix(pg);
  CHECK(text == format_matrix(pg));
  const IntMatrix parsed = parse_matrix(text);
  REQUIRE(parsed.size() == 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      CHECK(parsed[i][j] == Int(static_cast<int>(pg.adj[i][j])));
  CHECK_THROWS_AS(parse_matrix("oops"), validation_error);
}

TEST_CASE("solver input matches the hand-written golden file") {
  const NetworkGame game = make_matching_pennies(2);
  const PolynomialSystem sys = build_indifference_system(game);
  const std::string expected =
      "CONFIG\n"
      "  TRACKTYPE: 0;\n"
      "END;\n"
      "\n"
      "INPUT\n"
      "variable_group x_1_1, x_2_1;\n"
      "function f_1_1, f_2_1;\n"
      "f_1_1 = 4*x_2_1 - 2;\n"
      "f_2_1 = 4*x_1_1 - 2;\n"
      "END;\n";
  CHECK(format_solver_input(sys) == expected);
  // Byte-identical across repeated export.
  const std::string path_a = temp_path("netdeg_a.input");
  const std::string path_b = temp_path("netdeg_b.input");
  export_solver_input(sys, path_a);
  export_solver_input(sys, path_b);
  CHECK(read_text_file(path_a) == expected);
  CHECK(read_text_file(path_a) == read_text_file(path_b));
  std::remove(path_a.c_str());
  std::remove(path_b.c_str());
}

TEST_CASE("re-parsing our own export reproduces the system") {
  for (std::uint64_t seed : {121, 122, 123}) {
    const NetworkGame game = sample_generic_payoffs(
        cross_prism_graph(3), 1, Rat(-5), Rat(5), seed);
    const PolynomialSystem sys = build_indifference_system(game);
    const PolynomialSystem parsed = parse_solver_input(format_solver_input(sys));
    REQUIRE(parsed.layout == sys.layout);
    for (int e = 0; e < sys.layout.d; ++e)
      CHECK(parsed.equations[e] == sys.equations[e]);
  }
  // Mixed strategy dims exercise the rational coefficients.
  DirectedGraph g(2);
  g.add_edge(1, 0);
  g.add_edge(0, 1);
  const NetworkGame game =
      sample_generic_payoffs(g, {2, 3}, Rat(-5), Rat(5), 124);
  const PolynomialSystem sys = build_indifference_system(game);
  const PolynomialSystem parsed = parse_solver_input(format_solver_input(sys));
  REQUIRE(parsed.layout == sys.layout);
  for (int e = 0; e < sys.layout.d; ++e)
    CHECK(parsed.equations[e] == sys.equations[e]);
}

TEST_CASE("empty systems are refused by the exporter") {
  PolynomialSystem sys;
  CHECK_THROWS_AS(format_solver_input(sys), validation_error);
}

TEST_CASE("cells export as one JSON record per mixed cell") {
  const NetworkGame game = sample_generic_payoffs(cross_prism_graph(3), 1,
                                                  Rat(-5), Rat(5), 131);
  const PolynomialSystem sys = build_indifference_system(game);
  const PolyGraph pg = build_poly_graph(sys);
  const auto cells = enumerate_mixed_cells(sys);
  const nlohmann::json j = cells_to_json(cells, pg);
  REQUIRE(j.size() == 8);
  for (const auto& record : j) {
    CHECK(record.contains("selection"));
    CHECK(record["volume"] == 1);
    CHECK(record["cycle_cover"].is_array());
    CHECK(record["selection"].size() == 6);
    for (const auto& [eq, entry] : record["selection"].items()) {
      CHECK(entry.contains("block"));
      CHECK(entry["edge"].size() == 2);
    }
  }
}

TEST_CASE("sweep csv and aggregate formats") {
  SweepResult result;
  result.topology = "cross-prism";
  result.n = 3;
  result.theory_degree = Rat(8);
  result.rows = {{0, 300, 8, 4, 12}, {1, 301, 7, 3, 11}};
  result.max_torus = 8;
  result.attain_fraction = 0.5;
  CHECK(sweep_csv(result) ==
        "trial,seed,torus,real,runtime_ms\n"
        "0,300,8,4,12\n"
        "1,301,7,3,11\n");
  const nlohmann::json j = sweep_aggregate_json(result);
  CHECK(j["topology"] == "cross-prism");
  CHECK(j["N"] == 3);
  CHECK(j["theory_degree"] == 8);
  CHECK(j["max_torus"] == 8);
  CHECK(j["attain_fraction"] == 0.5);
  CHECK(sweep_plot_csv(result) ==
        "trial,real,theory\n"
        "0,4,8\n"
        "1,3,8\n");
}

TEST_CASE("gadget graph files") {
  const nlohmann::json j = {{"vertices", 2},
                            {"edges", {{0, 1}, {1, 0}, {0, 0}, {1, 1}}}};
  const DirectedGraph h = graph_from_json(j);
  CHECK(h.n == 2);
  CHECK(h.edges.size() == 4);
  CHECK(h.has_self_loop());
}
