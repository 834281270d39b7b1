#pragma once

#include <chrono>
#include <cstdint>
#include <future>
#include <string>
#include <thread>
#include <vector>

#include "netdeg/common.hpp"
#include "netdeg/degree.hpp"
#include "netdeg/game.hpp"
#include "netdeg/solve.hpp"

namespace netdeg {

struct TrialRow {
  int trial = 0;
  std::uint64_t seed = 0;
  long torus = 0;
  long real_count = 0;
  long runtime_ms = 0;
};

struct SweepResult {
  std::string topology;
  int n = 0;
  Rat theory_degree;
  std::vector<TrialRow> rows;
  long max_torus = 0;
  double attain_fraction = 0.0;
};

/// Monte Carlo sweep: independent trials with fresh uniform payoffs on the
/// same topology, each solved by homotopy continuation. Trial seeds are
/// base_seed + trial index. Trials run as parallel work units and merge by
/// trial index, so everything except the runtime column is reproducible
/// bit-for-bit.
inline SweepResult run_sweep(const DirectedGraph& topology,
                             const std::string& topology_name, int n,
                             int trials, const Rat& lo, const Rat& hi,
                             std::uint64_t base_seed,
                             const SolveOptions& base_opts = {}) {
  require(trials >= 1, "need at least one trial");
  SweepResult result;
  result.topology = topology_name;
  result.n = n;
  result.theory_degree = algebraic_degree(topology, 1);
  result.rows.resize(trials);

  const int workers = std::max(
      1, std::min<int>(trials,
                       base_opts.threads > 0
                           ? base_opts.threads
                           : static_cast<int>(std::thread::hardware_concurrency())));

  auto run_trial = [&](int trial) {
    const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(trial);
    const auto t0 = std::chrono::steady_clock::now();
    const NetworkGame game = sample_generic_payoffs(topology, 1, lo, hi, seed);
    SolveOptions opts = base_opts;
    opts.seed = seed;
    // When trials are spread over workers, each solve stays single-threaded.
    if (workers > 1) opts.threads = 1;
    const SolutionSet sol = solve_system(build_indifference_system(game), opts);
    const auto t1 = std::chrono::steady_clock::now();
    TrialRow row;
    row.trial = trial;
    row.seed = seed;
    row.torus = sol.counts.torus;
    row.real_count = sol.counts.real;
    row.runtime_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    result.rows[trial] = row;
  };

  if (workers == 1) {
    for (int trial = 0; trial < trials; ++trial) run_trial(trial);
  } else {
    std::vector<std::future<void>> futures;
    for (int w = 0; w < workers; ++w)
      futures.push_back(std::async(std::launch::async, [&, w] {
        for (int trial = w; trial < trials; trial += workers) run_trial(trial);
      }));
    for (auto& f : futures) f.get();
  }

  long attained = 0;
  for (const auto& row : result.rows) {
    result.max_torus = std::max(result.max_torus, row.torus);
    if (Rat(row.torus) == result.theory_degree) ++attained;
  }
  result.attain_fraction = static_cast<double>(attained) / trials;
  return result;
}

}  // namespace netdeg
