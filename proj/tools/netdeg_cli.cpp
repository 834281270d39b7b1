// Command-line front end: exact degree computation, cover/cell enumeration,
// transfer matrices, homotopy solving, and Monte Carlo sweeps.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "netdeg/degree.hpp"
#include "netdeg/game.hpp"
#include "netdeg/io.hpp"
#include "netdeg/permanent.hpp"
#include "netdeg/solve.hpp"
#include "netdeg/sweep.hpp"
#include "netdeg/transfer.hpp"
#include "netdeg/tropical.hpp"

namespace {

using namespace netdeg;

constexpr std::uint64_t kDefaultSeed = 12345;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitCap = 3;
constexpr int kExitNonGeneric = 4;

struct RunConfig {
  std::string topology;
  int n = 0;
  std::vector<int> lengths;
  std::string gadget_path;
  std::string game_path;
  int uniform_k = 1;
  std::uint64_t seed = kDefaultSeed;
  double lo = -5.0;
  double hi = 5.0;
  std::string format = "text";
  std::string out;

  Rat lo_rat() const {
    return Rat(Int(std::llround(lo * kPayoffDenominator)), kPayoffDenominator);
  }
  Rat hi_rat() const {
    return Rat(Int(std::llround(hi * kPayoffDenominator)), kPayoffDenominator);
  }
};

void add_topology_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--topology", cfg.topology,
                  "one of cycle, disjoint-cycles, figure8, theta, std-prism, "
                  "cross-prism, cartesian, tensor");
  cmd->add_option("--n", cfg.n, "cycle length / prism size / C_N factor");
  cmd->add_option("--lengths", cfg.lengths,
                  "cycle lengths for disjoint-cycles, figure8, theta")
      ->delimiter(',');
  cmd->add_option("--gadget", cfg.gadget_path,
                  "JSON graph file for the H factor of cartesian/tensor");
  cmd->add_option("--game", cfg.game_path,
                  "game JSON file (overrides --topology)");
  cmd->add_option("--k", cfg.uniform_k,
                  "uniform strategy dimension per player (default 1)");
}

void add_common_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--seed", cfg.seed, "RNG seed (default 12345)");
  cmd->add_option("--lo", cfg.lo, "payoff distribution lower bound (default -5)");
  cmd->add_option("--hi", cfg.hi, "payoff distribution upper bound (default 5)");
  cmd->add_option("--format", cfg.format, "text, json, or csv (solve only)")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_option("--out", cfg.out, "output file (defaults to stdout)");
}

DirectedGraph build_topology(const RunConfig& cfg) {
  require(!cfg.topology.empty(), "--topology or --game is required");
  TopologySpec spec;
  spec.kind = cfg.topology;
  spec.n = cfg.n;
  spec.lengths = cfg.lengths;
  if (!cfg.gadget_path.empty()) spec.gadget = load_graph(cfg.gadget_path);
  if (spec.kind == "tensor" && cfg.gadget_path.empty())
    spec.gadget = cross_coupling_gadget();
  if (spec.kind == "cartesian" && cfg.gadget_path.empty())
    spec.gadget = k2_gadget();
  return topology_factory(spec);
}

struct Instance {
  DirectedGraph graph;
  std::vector<int> dims;
  std::optional<NetworkGame> game;  // set when payoffs exist
};

Instance resolve_instance(const RunConfig& cfg, bool need_payoffs) {
  Instance inst;
  if (!cfg.game_path.empty()) {
    inst.game = load_game(cfg.game_path);
    inst.graph = inst.game->graph;
    inst.dims = inst.game->dims;
    return inst;
  }
  inst.graph = build_topology(cfg);
  inst.dims.assign(inst.graph.n, cfg.uniform_k);
  if (need_payoffs)
    inst.game = sample_generic_payoffs(inst.graph, inst.dims, cfg.lo_rat(),
                                       cfg.hi_rat(), cfg.seed);
  return inst;
}

PolyGraph resolve_poly_graph(const Instance& inst) {
  if (inst.game) {
    PolynomialSystem sys = build_indifference_system(*inst.game);
    sys.require_generic();
    return build_poly_graph(sys);
  }
  return generic_poly_graph(inst.graph, inst.dims);
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty())
    std::cout << text;
  else
    write_text_file(cfg.out, text);
}

// ---------------------------------------------------------------------------

int cmd_degree(const RunConfig& cfg) {
  const Instance inst = resolve_instance(cfg, !cfg.game_path.empty());
  const PolyGraph pg = resolve_poly_graph(inst);
  std::ostringstream out;
  out << "players " << inst.graph.n << ", d = " << pg.dimension() << "\n";

  std::optional<Rat> value;
  std::string primary_route;
  if (pg.dimension() <= kMaxPermanentDim) {
    value = algebraic_degree(pg);
    primary_route = "permanent";
  }

  std::vector<std::pair<std::string, Rat>> cross_checks;
  // The SCC route only says something new when there are several components.
  if (pg.dimension() <= kMaxPermanentDim &&
      scc_decompose(inst.graph).size() > 1)
    cross_checks.emplace_back("scc", degree_via_scc(inst.graph, pg));
  if (cfg.topology == "std-prism")
    cross_checks.emplace_back("transfer", Rat(cartesian_degree(k2_gadget(), cfg.n)));
  if (cfg.topology == "cartesian" && cfg.game_path.empty()) {
    DirectedGraph h = cfg.gadget_path.empty() ? k2_gadget() : load_graph(cfg.gadget_path);
    cross_checks.emplace_back("transfer", Rat(cartesian_degree(h, cfg.n)));
  }
  if (cfg.topology == "cross-prism")
    cross_checks.emplace_back(
        "tensor", Rat(tensor_degree(cycle_graph(cfg.n), cross_coupling_gadget())));
  if (cfg.topology == "tensor" && cfg.game_path.empty()) {
    DirectedGraph h = cfg.gadget_path.empty() ? cross_coupling_gadget()
                                              : load_graph(cfg.gadget_path);
    cross_checks.emplace_back("tensor",
                              Rat(tensor_degree(cycle_graph(cfg.n), h)));
  }

  if (!value) {
    if (cross_checks.empty())
      throw cap_error(
          "dimension " + std::to_string(pg.dimension()) +
          " exceeds the permanent cap and no structural route applies");
    value = cross_checks.front().second;
    primary_route = cross_checks.front().first;
    cross_checks.erase(cross_checks.begin());
  }

  out << "degree " << to_string(*value) << " (" << primary_route
      << " route)\n";
  bool all_agree = true;
  for (const auto& [route, v] : cross_checks) {
    const bool agree = v == *value;
    all_agree = all_agree && agree;
    out << "  " << route << " route: " << to_string(v)
        << (agree ? " (agrees)" : " (DISAGREES)") << "\n";
  }
  emit(cfg, out.str());
  return all_agree ? kExitOk : 1;
}

int cmd_perm(const RunConfig& cfg, const std::string& matrix_path) {
  Int value;
  if (!matrix_path.empty()) {
    value = permanent_ryser(parse_matrix(read_text_file(matrix_path)));
  } else {
    const Instance inst = resolve_instance(cfg, !cfg.game_path.empty());
    value = permanent_ryser(to_int_matrix(resolve_poly_graph(inst)));
  }
  emit(cfg, "perm " + value.str() + "\n");
  return kExitOk;
}

int cmd_covers(const RunConfig& cfg) {
  const Instance inst = resolve_instance(cfg, !cfg.game_path.empty());
  const Int covers = count_cycle_covers(resolve_poly_graph(inst));
  emit(cfg, "cycle covers " + covers.str() + "\n");
  return kExitOk;
}

int cmd_cells(const RunConfig& cfg) {
  const Instance inst = resolve_instance(cfg, true);
  const PolynomialSystem sys = build_indifference_system(*inst.game);
  sys.require_generic();
  const PolyGraph pg = build_poly_graph(sys);
  const auto cells = enumerate_mixed_cells(sys);
  Rat volume = 0;
  for (const auto& cell : cells) volume += cell_volume(cell, sys.layout);
  emit(cfg, cells_to_json(cells, pg).dump(2) + "\n");
  std::cerr << cells.size() << " mixed cells, total volume "
            << to_string(volume) << (cfg.out.empty() ? "" : " -> " + cfg.out)
            << "\n";
  return kExitOk;
}

int cmd_transfer(const RunConfig& cfg, bool eigenvalues) {
  const DirectedGraph h =
      cfg.gadget_path.empty() ? k2_gadget() : load_graph(cfg.gadget_path);
  const TransferMatrix tm = transfer_matrix(h);
  std::ostringstream out;
  out << format_matrix(tm);
  if (cfg.n >= 1)
    out << "trace(T^" << cfg.n << ") = " << trace_power(tm, cfg.n).str()
        << "\n";
  if (eigenvalues) {
    out << "eigenvalues:";
    for (const auto& lambda : transfer_eigenvalues(tm))
      out << " " << lambda.real() << (lambda.imag() < 0 ? "-" : "+")
          << std::abs(lambda.imag()) << "i";
    out << "\n";
  }
  emit(cfg, out.str());
  return kExitOk;
}

int cmd_scc(const RunConfig& cfg) {
  const Instance inst = resolve_instance(cfg, false);
  const auto comps = scc_decompose(inst.graph);
  std::ostringstream out;
  out << comps.size() << " strongly connected components\n";
  for (std::size_t c = 0; c < comps.size(); ++c) {
    out << "component " << c << ":";
    for (int v : comps[c]) out << " " << v;
    out << "\n";
  }
  emit(cfg, out.str());
  return kExitOk;
}

int cmd_export(const RunConfig& cfg, const std::string& matrix_path,
               const std::string& solver_path, const std::string& cells_path,
               const std::string& game_out) {
  require(!matrix_path.empty() || !solver_path.empty() || !cells_path.empty() ||
              !game_out.empty(),
          "export needs at least one of --matrix, --solver, --cells, --game-out");
  const bool needs_payoffs =
      !solver_path.empty() || !cells_path.empty() || !game_out.empty();
  const Instance inst = resolve_instance(cfg, needs_payoffs);
  if (!matrix_path.empty()) {
    write_text_file(matrix_path, format_matrix(resolve_poly_graph(inst)));
    std::cout << "matrix -> " << matrix_path << "\n";
  }
  if (!solver_path.empty()) {
    const PolynomialSystem sys = build_indifference_system(*inst.game);
    export_solver_input(sys, solver_path);
    std::cout << "solver input -> " << solver_path << "\n";
  }
  if (!cells_path.empty()) {
    const PolynomialSystem sys = build_indifference_system(*inst.game);
    sys.require_generic();
    const PolyGraph pg = build_poly_graph(sys);
    const auto cells = enumerate_mixed_cells(sys);
    write_text_file(cells_path, cells_to_json(cells, pg).dump(2) + "\n");
    std::cout << cells.size() << " cells -> " << cells_path << "\n";
  }
  if (!game_out.empty()) {
    save_game(*inst.game, game_out);
    std::cout << "game -> " << game_out << "\n";
  }
  return kExitOk;
}

int cmd_solve(const RunConfig& cfg) {
  const Instance inst = resolve_instance(cfg, true);
  const PolynomialSystem sys = build_indifference_system(*inst.game);
  SolveOptions opts;
  opts.seed = cfg.seed;
  const SolutionSet sol = solve_system(sys, opts);
  if (cfg.format == "json") {
    nlohmann::json j;
    j["seed"] = sol.seed;
    j["tracked"] = sol.counts.tracked;
    j["converged"] = sol.counts.converged;
    j["torus"] = sol.counts.torus;
    j["real"] = sol.counts.real;
    j["simplex_real"] = sol.counts.simplex_real;
    j["divergent_paths"] = sol.divergent_paths;
    auto points = nlohmann::json::array();
    for (const auto& pt : sol.points) {
      nlohmann::json p;
      auto coords = nlohmann::json::array();
      for (const Cx& c : pt.coords)
        coords.push_back(nlohmann::json::array({c.real(), c.imag()}));
      p["coords"] = std::move(coords);
      p["residual"] = pt.residual;
      p["condition"] = pt.condition;
      points.push_back(std::move(p));
    }
    j["points"] = std::move(points);
    emit(cfg, j.dump(2) + "\n");
  } else if (cfg.format == "csv") {
    std::ostringstream out;
    out << "point,torus,real,residual,condition";
    for (int v = 0; v < sys.layout.d; ++v)
      out << ",re_" << variable_name(sys.layout, v) << ",im_"
          << variable_name(sys.layout, v);
    out << "\n";
    const SolveOptions& o = sol.options;
    for (std::size_t i = 0; i < sol.points.size(); ++i) {
      const auto& pt = sol.points[i];
      bool torus = true;
      for (const Cx& c : pt.coords)
        if (std::abs(c) <= o.torus_eps) torus = false;
      for (int p = 0; p < sys.layout.players() && torus; ++p) {
        Cx rest = 1.0;
        for (int s = 1; s <= sys.layout.dims[p]; ++s)
          rest -= pt.coords[sys.layout.index(p, s)];
        if (std::abs(rest) <= o.torus_eps) torus = false;
      }
      double max_im = 0.0;
      for (const Cx& c : pt.coords)
        max_im = std::max(max_im, std::abs(c.imag()));
      out << i << ',' << (torus ? 1 : 0) << ','
          << (torus && max_im < o.real_eps ? 1 : 0) << ',' << pt.residual
          << ',' << pt.condition;
      for (const Cx& c : pt.coords) out << ',' << c.real() << ',' << c.imag();
      out << "\n";
    }
    emit(cfg, out.str());
  } else {
    std::ostringstream out;
    out << "tracked " << sol.counts.tracked << ", converged "
        << sol.counts.converged << ", torus " << sol.counts.torus << ", real "
        << sol.counts.real << ", simplex-real " << sol.counts.simplex_real
        << "\n";
    emit(cfg, out.str());
  }
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, int trials, const std::string& csv_path,
              const std::string& json_path, const std::string& plot_path) {
  require(cfg.game_path.empty(),
          "sweep samples its own payoffs; pass a topology, not a game");
  const DirectedGraph graph = build_topology(cfg);
  const SweepResult result = run_sweep(graph, cfg.topology, cfg.n, trials,
                                       cfg.lo_rat(), cfg.hi_rat(), cfg.seed);
  write_text_file(csv_path, sweep_csv(result));
  write_text_file(json_path, sweep_aggregate_json(result).dump(2) + "\n");
  write_text_file(plot_path, sweep_plot_csv(result));
  std::cout << "theory degree " << to_string(result.theory_degree)
            << ", max torus " << result.max_torus << ", attainment "
            << result.attain_fraction << "\n"
            << csv_path << ", " << json_path << ", " << plot_path
            << " written\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "algebraic degree toolkit for multilinear network games\n"
      "(permanents, cycle covers, mixed cells, transfer matrices, homotopy "
      "solving)"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string matrix_path, solver_path, cells_path, game_out;
  bool eigenvalues = false;
  int trials = 50;
  std::string csv_path = "sweep.csv";
  std::string json_path = "sweep_aggregate.json";
  std::string plot_path = "sweep_plot.csv";

  CLI::App* degree = app.add_subcommand("degree", "exact algebraic degree");
  CLI::App* perm = app.add_subcommand("perm", "permanent of the support matrix");
  perm->add_option("--matrix", matrix_path, "dense text matrix file");
  CLI::App* covers = app.add_subcommand("covers", "count disjoint cycle covers");
  CLI::App* cells =
      app.add_subcommand("cells", "enumerate tropical mixed cells");
  CLI::App* transfer = app.add_subcommand(
      "transfer",
      "transfer matrix of a gadget graph (default: the bidirectional pair)");
  transfer->add_flag("--eigenvalues", eigenvalues,
                     "also print the floating spectrum");
  CLI::App* scc = app.add_subcommand("scc", "strongly connected components");
  CLI::App* exporter = app.add_subcommand("export", "write artifact files");
  exporter->add_option("--matrix", matrix_path, "support matrix output path");
  exporter->add_option("--solver", solver_path, "solver input output path");
  exporter->add_option("--cells", cells_path, "mixed cells JSON output path");
  exporter->add_option("--game-out", game_out, "sampled game output path");
  CLI::App* solve = app.add_subcommand("solve", "homotopy continuation solve");
  CLI::App* sweep = app.add_subcommand("sweep", "Monte Carlo trial sweep");
  sweep->add_option("--trials", trials, "number of trials (default 50)");
  sweep->add_option("--csv", csv_path, "per-trial CSV path");
  sweep->add_option("--json", json_path, "aggregate JSON path");
  sweep->add_option("--plot", plot_path, "plot-data CSV path");

  for (CLI::App* cmd :
       {degree, perm, covers, cells, transfer, scc, exporter, solve, sweep}) {
    add_topology_options(cmd, cfg);
    add_common_options(cmd, cfg);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (degree->parsed()) return cmd_degree(cfg);
    if (perm->parsed()) return cmd_perm(cfg, matrix_path);
    if (covers->parsed()) return cmd_covers(cfg);
    if (cells->parsed()) return cmd_cells(cfg);
    if (transfer->parsed()) return cmd_transfer(cfg, eigenvalues);
    if (scc->parsed()) return cmd_scc(cfg);
    if (exporter->parsed())
      return cmd_export(cfg, matrix_path, solver_path, cells_path, game_out);
    if (solve->parsed()) return cmd_solve(cfg);
    if (sweep->parsed())
      return cmd_sweep(cfg, trials, csv_path, json_path, plot_path);
  } catch (const cap_error& e) {
    std::cerr << "error (cap): " << e.what() << "\n";
    return kExitCap;
  } catch (const non_generic_error& e) {
    std::cerr << "error (non-generic): " << e.what() << "\n";
    return kExitNonGeneric;
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
