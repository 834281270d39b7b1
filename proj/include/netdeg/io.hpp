#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "netdeg/common.hpp"
#include "netdeg/game.hpp"
#include "netdeg/permanent.hpp"
#include "netdeg/poly.hpp"
#include "netdeg/polygraph.hpp"
#include "netdeg/sweep.hpp"
#include "netdeg/transfer.hpp"
#include "netdeg/tropical.hpp"

namespace netdeg {

// ---------------------------------------------------------------------------
// Rational rendering (all file formats avoid floating-point formatting)
// ---------------------------------------------------------------------------

inline std::string to_string(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

inline Rat parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(text));
    return Rat(Int(text.substr(0, slash)), Int(text.substr(slash + 1)));
  } catch (const std::exception&) {
    throw validation_error("malformed rational: " + text);
  }
}

// ---------------------------------------------------------------------------
// Game files: {"players": N, "strategy_dims": [...], "edges": [[j, i], ...],
// "payoffs": {"0": [...], ...}}, everything 0-indexed on disk. Payoff entries
// may be numbers (quantized to the payoff denominator on load) or exact
// "p/q" strings.
// ---------------------------------------------------------------------------

inline nlohmann::json game_to_json(const NetworkGame& game) {
  nlohmann::json j;
  j["players"] = game.players();
  j["strategy_dims"] = game.dims;
  auto edges = nlohmann::json::array();
  for (const auto& [a, b] : game.graph.edges)
    edges.push_back(nlohmann::json::array({a, b}));
  j["edges"] = std::move(edges);
  nlohmann::json payoffs = nlohmann::json::object();
  for (int i = 0; i < game.players(); ++i) {
    auto table = nlohmann::json::array();
    for (const Rat& v : game.payoffs[i]) {
      if (denominator(v) == 1 &&
          numerator(v) >= std::numeric_limits<std::int64_t>::min() &&
          numerator(v) <= std::numeric_limits<std::int64_t>::max())
        table.push_back(static_cast<std::int64_t>(numerator(v)));
      else if (Int(kPayoffDenominator) % denominator(v) == 0)
        table.push_back(static_cast<double>(v));
      else
        table.push_back(to_string(v));
    }
    payoffs[std::to_string(i)] = std::move(table);
  }
  j["payoffs"] = std::move(payoffs);
  return j;
}

inline Rat payoff_from_json(const nlohmann::json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rat(v.get<std::int64_t>());
  if (v.is_number_float()) {
    const double x = v.get<double>();
    require(std::isfinite(x), "payoff entry is not finite");
    const double scaled = x * static_cast<double>(kPayoffDenominator);
    return Rat(Int(std::llround(scaled)), kPayoffDenominator);
  }
  throw validation_error("payoff entry must be a number or a p/q string");
}

inline NetworkGame game_from_json(const nlohmann::json& j) {
  NetworkGame game;
  require(j.contains("players") && j.contains("strategy_dims") &&
              j.contains("edges") && j.contains("payoffs"),
          "game file needs players, strategy_dims, edges, payoffs");
  game.graph = DirectedGraph(j.at("players").get<int>());
  game.dims = j.at("strategy_dims").get<std::vector<int>>();
  for (const auto& e : j.at("edges")) {
    require(e.is_array() && e.size() == 2, "edge must be a [from, to] pair");
    game.graph.add_edge(e[0].get<int>(), e[1].get<int>());
  }
  game.payoffs.resize(game.players());
  for (int i = 0; i < game.players(); ++i) {
    const auto key = std::to_string(i);
    require(j.at("payoffs").contains(key),
            "missing payoff table for player " + key);
    for (const auto& v : j.at("payoffs").at(key))
      game.payoffs[i].push_back(payoff_from_json(v));
  }
  game.validate();
  return game;
}

inline void save_game(const NetworkGame& game, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), "cannot open " + path + " for writing");
  out << game_to_json(game).dump(2) << "\n";
}

inline NetworkGame load_game(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open " + path);
  nlohmann::json j;
  in >> j;
  return game_from_json(j);
}

// Graph files for product gadgets: {"vertices": m, "edges": [[a, b], ...]}.
inline DirectedGraph graph_from_json(const nlohmann::json& j) {
  require(j.contains("vertices") && j.contains("edges"),
          "graph file needs vertices and edges");
  DirectedGraph g(j.at("vertices").get<int>());
  for (const auto& e : j.at("edges")) {
    require(e.is_array() && e.size() == 2, "edge must be a [from, to] pair");
    g.add_edge(e[0].get<int>(), e[1].get<int>());
  }
  return g;
}

inline DirectedGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open " + path);
  nlohmann::json j;
  in >> j;
  return graph_from_json(j);
}

// ---------------------------------------------------------------------------
// Dense matrix text format: a header line with the dimension, then one
// space-separated row per line.
// ---------------------------------------------------------------------------

template <typename Entry>
std::string format_matrix(const std::vector<std::vector<Entry>>& m) {
  std::ostringstream out;
  out << m.size() << "\n";
  for (const auto& row : m) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << ' ';
      if constexpr (std::is_same_v<Entry, std::uint8_t>)
        out << static_cast<int>(row[j]);
      else
        out << row[j];
    }
    out << "\n";
  }
  return out.str();
}

inline std::string format_matrix(const PolyGraph& g) {
  return format_matrix(g.adj);
}

inline std::string format_matrix(const TransferMatrix& t) {
  return format_matrix(t.t);
}

inline IntMatrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  int d = -1;
  in >> d;
  require(!in.fail() && d >= 0, "matrix file must start with the dimension");
  IntMatrix m(d, std::vector<Int>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      std::string tok;
      in >> tok;
      require(!tok.empty(), "matrix file ended early");
      m[i][j] = Int(tok);
    }
  return m;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), "cannot open " + path + " for writing");
  out << text;
  require(out.good(), "write to " + path + " failed");
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ---------------------------------------------------------------------------
// Solver input files (the classic numerical algebraic geometry dialect):
// a CONFIG block, a variable_group declaration, function declarations, and
// one polynomial per function, semicolon-terminated. Variables are named
// x_<player>_<strategy> with 1-based indices.
// ---------------------------------------------------------------------------

inline std::string variable_name(const VariableLayout& layout, int var) {
  return "x_" + std::to_string(layout.owner(var) + 1) + "_" +
         std::to_string(layout.strategy(var));
}

inline std::string function_name(const VariableLayout& layout, int eq) {
  return "f_" + std::to_string(layout.owner(eq) + 1) + "_" +
         std::to_string(layout.strategy(eq));
}

namespace detail {

inline std::string coefficient_string(const Rat& c) {
  const Rat a = c < 0 ? Rat(-c) : c;
  if (denominator(a) == 1) return numerator(a).str();
  return "(" + to_string(a) + ")";
}

inline std::string polynomial_string(const Polynomial& f,
                                     const VariableLayout& layout) {
  if (f.is_zero()) return "0";
  std::string out;
  // Largest monomials first reads naturally for multilinear equations.
  for (auto it = f.terms.rbegin(); it != f.terms.rend(); ++it) {
    const auto& [mono, coeff] = *it;
    if (out.empty())
      out += coeff < 0 ? "-" : "";
    else
      out += coeff < 0 ? " - " : " + ";
    const std::string mag = coefficient_string(coeff);
    if (mono.empty()) {
      out += mag;
    } else {
      if (mag != "1") out += mag + "*";
      for (std::size_t i = 0; i < mono.size(); ++i) {
        if (i) out += "*";
        out += variable_name(layout, mono[i]);
      }
    }
  }
  return out;
}

}  // namespace detail

inline std::string format_solver_input(const PolynomialSystem& sys) {
  require(sys.layout.d > 0, "refusing to export an empty system");
  std::ostringstream out;
  out << "CONFIG\n  TRACKTYPE: 0;\nEND;\n\nINPUT\n";
  out << "variable_group ";
  for (int v = 0; v < sys.layout.d; ++v) {
    if (v) out << ", ";
    out << variable_name(sys.layout, v);
  }
  out << ";\nfunction ";
  for (int e = 0; e < sys.layout.d; ++e) {
    if (e) out << ", ";
    out << function_name(sys.layout, e);
  }
  out << ";\n";
  for (int e = 0; e < sys.layout.d; ++e)
    out << function_name(sys.layout, e) << " = "
        << detail::polynomial_string(sys.equations[e], sys.layout) << ";\n";
  out << "END;\n";
  return out.str();
}

inline void export_solver_input(const PolynomialSystem& sys,
                                const std::string& path) {
  write_text_file(path, format_solver_input(sys));
}

namespace detail {

// Minimal parser for the dialect emitted above; recovers the layout from the
// variable names and each polynomial's support and coefficients.
struct SolverInputParser {
  static std::pair<int, int> parse_var_name(const std::string& name) {
    require(name.size() > 2 && name[0] == 'x' && name[1] == '_',
            "bad variable name: " + name);
    const auto sep = name.find('_', 2);
    require(sep != std::string::npos, "bad variable name: " + name);
    return {std::stoi(name.substr(2, sep - 2)) - 1,
            std::stoi(name.substr(sep + 1))};
  }

  static std::vector<std::string> split(const std::string& s, char delim) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
      if (c == delim) {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    parts.push_back(cur);
    return parts;
  }

  static std::string strip(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
  }
};

}  // namespace detail

inline PolynomialSystem parse_solver_input(const std::string& text) {
  using P = detail::SolverInputParser;
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> var_names;
  std::vector<std::pair<std::string, std::string>> bodies;  // name -> expr
  while (std::getline(in, line)) {
    line = P::strip(line);
    if (line.rfind("variable_group", 0) == 0) {
      auto list = line.substr(std::string("variable_group").size());
      if (!list.empty() && list.back() == ';') list.pop_back();
      for (auto& tok : P::split(list, ','))
        if (!P::strip(tok).empty()) var_names.push_back(P::strip(tok));
    } else if (line.find('=') != std::string::npos && line.rfind("f_", 0) == 0) {
      const auto eq_pos = line.find('=');
      std::string name = P::strip(line.substr(0, eq_pos));
      std::string body = P::strip(line.substr(eq_pos + 1));
      if (!body.empty() && body.back() == ';') body.pop_back();
      bodies.emplace_back(name, P::strip(body));
    }
  }
  require(!var_names.empty(), "no variable_group declaration found");

  // Reconstruct the layout: k_i is the largest strategy index seen.
  int players = 0;
  for (const auto& name : var_names)
    players = std::max(players, P::parse_var_name(name).first + 1);
  std::vector<int> dims(players, 0);
  for (const auto& name : var_names) {
    const auto [p, s] = P::parse_var_name(name);
    dims[p] = std::max(dims[p], s);
  }
  PolynomialSystem sys;
  sys.layout = VariableLayout(dims);
  require(static_cast<int>(var_names.size()) == sys.layout.d,
          "variable_group is missing strategy variables");
  sys.equations.resize(sys.layout.d);

  for (const auto& [name, body] : bodies) {
    require(name.size() > 2 && name[0] == 'f',
            "bad function name: " + name);
    const auto [p, s] =
        P::parse_var_name("x" + name.substr(1));  // same _i_s shape
    const int eq = sys.layout.index(p, s);
    Polynomial f;
    // Split into signed terms at top level (no parentheses except (p/q)).
    std::string term;
    std::vector<std::pair<int, std::string>> terms;  // sign, text
    int sign = 1;
    int depth = 0;
    for (char c : body) {
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (depth == 0 && (c == '+' || c == '-')) {
        if (!P::strip(term).empty()) terms.emplace_back(sign, P::strip(term));
        sign = c == '-' ? -1 : 1;
        term.clear();
      } else {
        term += c;
      }
    }
    if (!P::strip(term).empty()) terms.emplace_back(sign, P::strip(term));
    for (const auto& [sgn, text] : terms) {
      Rat coeff = sgn;
      Monomial mono;
      for (auto& factor : P::split(text, '*')) {
        std::string tok = P::strip(factor);
        require(!tok.empty(), "empty factor in term: " + text);
        if (tok.front() == 'x') {
          const auto [vp, vs] = P::parse_var_name(tok);
          mono.push_back(sys.layout.index(vp, vs));
        } else {
          if (tok.front() == '(' && tok.back() == ')')
            tok = tok.substr(1, tok.size() - 2);
          coeff *= parse_rational(tok);
        }
      }
      f.add_term(std::move(mono), coeff);
    }
    sys.equations[eq] = std::move(f);
  }
  return sys;
}

// ---------------------------------------------------------------------------
// Mixed cells as JSON records
// ---------------------------------------------------------------------------

inline nlohmann::json cell_to_json(const MixedCellSelection& sel,
                                   const PolyGraph& g) {
  nlohmann::json record;
  nlohmann::json selection = nlohmann::json::object();
  for (std::size_t e = 0; e < sel.choices.size(); ++e) {
    const auto& choice = sel.choices[e];
    nlohmann::json entry;
    entry["block"] = choice.edge_block;
    entry["edge"] = nlohmann::json::array({choice.edge.first, choice.edge.second});
    nlohmann::json vertices = nlohmann::json::object();
    for (const auto& [player, vertex] : choice.vertices)
      vertices[std::to_string(player)] = vertex;
    entry["vertices"] = std::move(vertices);
    selection[std::to_string(e)] = std::move(entry);
  }
  record["selection"] = std::move(selection);
  const Rat vol = cell_volume(sel, g.layout);
  if (denominator(vol) == 1)
    record["volume"] = static_cast<std::int64_t>(numerator(vol));
  else
    record["volume"] = to_string(vol);
  bool all_k1 = true;
  for (int k : g.layout.dims) all_k1 = all_k1 && k == 1;
  if (all_k1) record["cycle_cover"] = selection_to_cycle_cover(sel, g);
  return record;
}

inline nlohmann::json cells_to_json(const std::vector<MixedCellSelection>& cells,
                                    const PolyGraph& g) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& cell : cells) arr.push_back(cell_to_json(cell, g));
  return arr;
}

// ---------------------------------------------------------------------------
// Sweep outputs
// ---------------------------------------------------------------------------

inline std::string sweep_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "trial,seed,torus,real,runtime_ms\n";
  for (const auto& row : result.rows)
    out << row.trial << ',' << row.seed << ',' << row.torus << ','
        << row.real_count << ',' << row.runtime_ms << "\n";
  return out.str();
}

inline nlohmann::json sweep_aggregate_json(const SweepResult& result) {
  nlohmann::json j;
  j["topology"] = result.topology;
  j["N"] = result.n;
  if (denominator(result.theory_degree) == 1 &&
      numerator(result.theory_degree) <=
          std::numeric_limits<std::int64_t>::max())
    j["theory_degree"] =
        static_cast<std::int64_t>(numerator(result.theory_degree));
  else
    j["theory_degree"] = to_string(result.theory_degree);
  j["max_torus"] = result.max_torus;
  j["attain_fraction"] = result.attain_fraction;
  return j;
}

/// Plot-ready data: one row per trial with the constant theory line.
inline std::string sweep_plot_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "trial,real,theory\n";
  const std::string theory = to_string(result.theory_degree);
  for (const auto& row : result.rows)
    out << row.trial << ',' << row.real_count << ',' << theory << "\n";
  return out.str();
}

}  // namespace netdeg
