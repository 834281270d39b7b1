#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <future>
#include <limits>
#include <random>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "netdeg/common.hpp"
#include "netdeg/poly.hpp"

namespace netdeg {

using Cx = std::complex<double>;

struct SolveOptions {
  std::uint64_t seed = 0;
  double corrector_tol = 1e-10;  // per-step Newton residual target
  double dedup_tol = 1e-8;       // endpoint clustering distance
  double torus_eps = 1e-10;      // |coordinate| below this is off-torus
  double real_eps = 1e-6;        // max |Im| below this counts as real
  double blowup_norm = 1e12;     // beyond this a path is at infinity
  double initial_step = 0.05;
  double max_step = 0.05;
  double min_step = 1e-9;
  double endgame_t = 1e-6;  // below this the path is handed to the polisher
  // Few corrector iterations per step: a long Newton walk is how a tracker
  // jumps onto a neighboring path.
  int max_corrector_iters = 3;
  int max_steps = 20000;
  int threads = 0;  // 0 = hardware concurrency
};

struct ComplexPoint {
  std::vector<Cx> coords;
  double residual = 0.0;   // max |f_e| at the point
  double condition = 0.0;  // Jacobian sigma_max / sigma_min
};

struct SolutionCounts {
  long tracked = 0;    // paths started
  long converged = 0;  // deduplicated finite solutions
  long torus = 0;      // all coordinates (incl. eliminated ones) off zero
  long real = 0;       // torus solutions with negligible imaginary parts
  long simplex_real = 0;  // real solutions with all probabilities in (0,1)
};

struct SolutionSet {
  VariableLayout layout;
  std::vector<ComplexPoint> points;
  SolutionCounts counts;
  std::uint64_t seed = 0;
  SolveOptions options;
  long converged_paths = 0;
  long divergent_paths = 0;  // truncated at the blowup norm
};

namespace detail {

// Double-precision view of the system: term list per equation.
struct NumericSystem {
  int d = 0;
  struct Term {
    Cx coeff;
    std::vector<int> vars;
  };
  std::vector<std::vector<Term>> equations;
  std::vector<int> degrees;  // per-equation total degree
};

inline NumericSystem to_numeric(const PolynomialSystem& sys) {
  NumericSystem ns;
  ns.d = sys.layout.d;
  ns.equations.resize(ns.d);
  ns.degrees.resize(ns.d, 0);
  for (int e = 0; e < ns.d; ++e) {
    for (const auto& [m, c] : sys.equations[e].terms) {
      const double value = static_cast<double>(c);
      if (!std::isfinite(value))
        throw validation_error("coefficient not representable as double");
      ns.equations[e].push_back({Cx(value, 0.0), m});
      ns.degrees[e] = std::max(ns.degrees[e], static_cast<int>(m.size()));
    }
  }
  return ns;
}

inline void eval_poly(const NumericSystem& ns, const std::vector<Cx>& x,
                      Eigen::VectorXcd& out) {
  for (int e = 0; e < ns.d; ++e) {
    Cx sum = 0.0;
    for (const auto& term : ns.equations[e]) {
      Cx prod = term.coeff;
      for (int v : term.vars) prod *= x[v];
      sum += prod;
    }
    out(e) = sum;
  }
}

inline void eval_jacobian(const NumericSystem& ns, const std::vector<Cx>& x,
                          Eigen::MatrixXcd& out) {
  out.setZero();
  for (int e = 0; e < ns.d; ++e)
    for (const auto& term : ns.equations[e])
      for (std::size_t skip = 0; skip < term.vars.size(); ++skip) {
        Cx prod = term.coeff;
        for (std::size_t w = 0; w < term.vars.size(); ++w)
          if (w != skip) prod *= x[term.vars[w]];
        out(e, term.vars[skip]) += prod;
      }
}

inline double max_abs(const Eigen::VectorXcd& v) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    m = std::max(m, std::abs(v(i)));
  return m;
}

inline double max_abs(const std::vector<Cx>& v) {
  double m = 0.0;
  for (const Cx& c : v) m = std::max(m, std::abs(c));
  return m;
}

inline bool all_finite(const std::vector<Cx>& v) {
  for (const Cx& c : v)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

// Convex homotopy H(x, t) = (1 - t) F(x) + t g G(x) from the total-degree
// start system G_e = x_e^{d_e} - c_e toward the target F, t running 1 -> 0.
class Homotopy {
 public:
  Homotopy(const NumericSystem& target, std::vector<Cx> start_constants, Cx gamma)
      : f_(target), c_(std::move(start_constants)), gamma_(gamma) {}

  int dim() const { return f_.d; }
  const NumericSystem& target() const { return f_; }

  void value(const std::vector<Cx>& x, double t, Eigen::VectorXcd& out) const {
    eval_poly(f_, x, out);
    for (int e = 0; e < f_.d; ++e)
      out(e) = (1.0 - t) * out(e) + t * gamma_ * start_value(e, x[e]);
  }

  void jacobian(const std::vector<Cx>& x, double t, Eigen::MatrixXcd& out) const {
    eval_jacobian(f_, x, out);
    out *= (1.0 - t);
    for (int e = 0; e < f_.d; ++e)
      out(e, e) += t * gamma_ * start_derivative(e, x[e]);
  }

  void dt(const std::vector<Cx>& x, Eigen::VectorXcd& out) const {
    eval_poly(f_, x, out);
    for (int e = 0; e < f_.d; ++e)
      out(e) = -out(e) + gamma_ * start_value(e, x[e]);
  }

  Cx start_value(int e, Cx xe) const {
    return ipow(xe, f_.degrees[e]) - c_[e];
  }

  Cx start_derivative(int e, Cx xe) const {
    const int deg = f_.degrees[e];
    return static_cast<double>(deg) * ipow(xe, deg - 1);
  }

 private:
  static Cx ipow(Cx x, int n) {
    Cx r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
  }

  const NumericSystem& f_;
  std::vector<Cx> c_;
  Cx gamma_;
};

struct PathResult {
  bool converged = false;
  bool at_infinity = false;
  std::vector<Cx> endpoint;
  double residual = 0.0;
  double final_norm = 0.0;  // where the path was lost, for retry triage
};

// Euler predictor plus Newton corrector with step halving.
inline PathResult track_path(const Homotopy& h, std::vector<Cx> x,
                             const SolveOptions& opts) {
  const int d = h.dim();
  Eigen::VectorXcd r(d), rhs(d);
  Eigen::MatrixXcd jac(d, d);
  std::vector<Cx> trial(d);

  auto correct = [&](std::vector<Cx>& pt, double t) -> bool {
    for (int it = 0; it < opts.max_corrector_iters; ++it) {
      h.value(pt, t, r);
      if (max_abs(r) < opts.corrector_tol) return true;
      h.jacobian(pt, t, jac);
      Eigen::VectorXcd dx = jac.partialPivLu().solve(-r);
      for (int i = 0; i < d; ++i) pt[i] += dx(i);
      if (!all_finite(pt) || max_abs(pt) > opts.blowup_norm) return false;
    }
    h.value(pt, t, r);
    return max_abs(r) < opts.corrector_tol;
  };

  PathResult result;
  double t = 1.0;
  double dt = opts.initial_step;
  int good_steps = 0;
  const double t_end = opts.endgame_t;
  for (int step = 0; step < opts.max_steps && t > t_end; ++step) {
    // Approach t_end geometrically: near the target the solution path can
    // turn sharply, and a single jump to the end swaps basins.
    double h_step = std::min(dt, t - t_end);
    h_step = std::min(h_step, 0.5 * t);
    // Tangent: H_x dx/dt = -H_t; step moves t downward.
    h.jacobian(x, t, jac);
    h.dt(x, rhs);
    Eigen::VectorXcd v = jac.partialPivLu().solve(-rhs);
    for (int i = 0; i < d; ++i) trial[i] = x[i] - v(i) * h_step;
    const double t_next = t - h_step;
    if (all_finite(trial) && correct(trial, t_next)) {
      x = trial;
      t = t_next;
      if (++good_steps >= 4) {
        dt = std::min(dt * 1.5, opts.max_step);
        good_steps = 0;
      }
    } else {
      dt *= 0.5;
      good_steps = 0;
      if (dt < opts.min_step) {
        result.final_norm = max_abs(x);
        return result;
      }
    }
    if (max_abs(x) > opts.blowup_norm) {
      result.at_infinity = true;
      result.final_norm = max_abs(x);
      return result;
    }
  }
  result.final_norm = max_abs(x);
  if (t > t_end) return result;

  // Endpoint polish: plain Newton on the target system.
  const NumericSystem& f = h.target();
  for (int it = 0; it < 20; ++it) {
    eval_poly(f, x, r);
    if (max_abs(r) < opts.corrector_tol) break;
    eval_jacobian(f, x, jac);
    Eigen::VectorXcd dx = jac.partialPivLu().solve(-r);
    for (int i = 0; i < d; ++i) x[i] += dx(i);
    if (!all_finite(x) || max_abs(x) > opts.blowup_norm) return result;
  }
  eval_poly(f, x, r);
  result.residual = max_abs(r);
  if (result.residual < 1e-8) {
    result.converged = true;
    result.endpoint = std::move(x);
  }
  return result;
}

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Classification counts of a deduplicated solution set. Pure; calling it
/// twice with the same thresholds gives the same counts.
inline SolutionCounts classify_solutions(const SolutionSet& set,
                                         double torus_eps, double real_eps) {
  SolutionCounts counts = set.counts;
  counts.converged = static_cast<long>(set.points.size());
  counts.torus = counts.real = counts.simplex_real = 0;
  const VariableLayout& layout = set.layout;
  for (const auto& pt : set.points) {
    bool torus = true;
    for (const Cx& c : pt.coords)
      if (std::abs(c) <= torus_eps) torus = false;
    // The eliminated strategy probability 1 - sum_t x_{i,t} must be nonzero
    // as well for a genuinely totally mixed candidate.
    for (int i = 0; i < layout.players() && torus; ++i) {
      Cx rest = 1.0;
      for (int s = 1; s <= layout.dims[i]; ++s)
        rest -= pt.coords[layout.index(i, s)];
      if (std::abs(rest) <= torus_eps) torus = false;
    }
    if (!torus) continue;
    ++counts.torus;
    double max_im = 0.0;
    for (const Cx& c : pt.coords) max_im = std::max(max_im, std::abs(c.imag()));
    if (max_im >= real_eps) continue;
    ++counts.real;
    bool simplex = true;
    for (int i = 0; i < layout.players() && simplex; ++i) {
      double rest = 1.0;
      for (int s = 1; s <= layout.dims[i]; ++s) {
        const double p = pt.coords[layout.index(i, s)].real();
        if (p <= 0.0 || p >= 1.0) simplex = false;
        rest -= p;
      }
      if (rest <= 0.0 || rest >= 1.0) simplex = false;
    }
    if (simplex) ++counts.simplex_real;
  }
  return counts;
}

/// All isolated complex solutions of the indifference system by total-degree
/// homotopy continuation. Paths are independent work units and are tracked
/// in parallel; results merge in path-index order, so the outcome is
/// deterministic for a fixed seed.
inline SolutionSet solve_system(const PolynomialSystem& sys,
                                const SolveOptions& opts = {}) {
  const int d = sys.layout.d;
  if (d > kMaxSolveDim)
    throw cap_error("solve_system: dimension " + std::to_string(d) +
                    " exceeds the cap of " + std::to_string(kMaxSolveDim));

  SolutionSet set;
  set.layout = sys.layout;
  set.seed = opts.seed;
  set.options = opts;

  const detail::NumericSystem ns = detail::to_numeric(sys);

  // Seeded unit-modulus homotopy constant and per-equation start constants;
  // start roots are the scaled d_e-th roots of unity.
  std::mt19937_64 rng(detail::splitmix64(opts.seed));
  constexpr double kTau = 6.283185307179586476925286766559;
  const Cx gamma = std::polar(1.0, kTau * detail::unit_double(rng));
  std::vector<Cx> start_constants(d);
  std::vector<std::vector<Cx>> start_roots(d);
  long total_paths = d > 0 ? 1 : 0;
  for (int e = 0; e < d; ++e) {
    const double theta = kTau * detail::unit_double(rng);
    start_constants[e] = std::polar(1.0, theta);
    const int deg = ns.degrees[e];
    for (int a = 0; a < deg; ++a)
      start_roots[e].push_back(std::polar(1.0, (theta + kTau * a) / deg));
    total_paths *= deg;
  }
  set.counts.tracked = total_paths;
  if (total_paths == 0) return set;  // a constant equation: no solutions

  const detail::Homotopy homotopy(ns, start_constants, gamma);
  std::vector<detail::PathResult> results(total_paths);

  auto start_point = [&](long p) {
    std::vector<Cx> start(d);
    long rest = p;
    for (int e = d - 1; e >= 0; --e) {
      start[e] = start_roots[e][rest % ns.degrees[e]];
      rest /= ns.degrees[e];
    }
    return start;
  };

  auto run_batch = [&](const std::vector<long>& paths,
                       const SolveOptions& pass_opts) {
    auto run_range = [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i)
        results[paths[i]] =
            detail::track_path(homotopy, start_point(paths[i]), pass_opts);
    };
    int threads = pass_opts.threads > 0
                      ? pass_opts.threads
                      : static_cast<int>(std::thread::hardware_concurrency());
    threads =
        std::max(1, std::min<int>(threads, static_cast<int>(paths.size())));
    if (threads == 1) {
      run_range(0, paths.size());
    } else {
      std::vector<std::future<void>> futures;
      const std::size_t chunk = (paths.size() + threads - 1) / threads;
      for (int w = 0; w < threads; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(paths.size(), begin + chunk);
        if (begin >= end) break;
        futures.push_back(std::async(std::launch::async, run_range, begin, end));
      }
      for (auto& f : futures) f.get();
    }
  };

  std::vector<long> batch(total_paths);
  for (long p = 0; p < total_paths; ++p) batch[p] = p;
  run_batch(batch, opts);

  // Paths that were lost while still at moderate norm get conservative
  // retries; lost paths at large norm are heading to infinity anyway.
  SolveOptions retry = opts;
  for (const double step_scale : {0.2, 0.04}) {
    retry.initial_step = opts.initial_step * step_scale;
    retry.max_step = opts.max_step * step_scale;
    retry.min_step = opts.min_step * 1e-2;
    retry.max_corrector_iters = opts.max_corrector_iters + 2;
    std::vector<long> remaining;
    for (long p = 0; p < total_paths; ++p)
      if (!results[p].converged && !results[p].at_infinity &&
          results[p].final_norm < 1e4)
        remaining.push_back(p);
    if (remaining.empty()) break;
    run_batch(remaining, retry);
  }

  // Merge in path order; endpoints within dedup_tol collapse to the
  // representative with the smaller residual.
  Eigen::MatrixXcd jac(d, d);
  for (const auto& pr : results) {
    if (pr.at_infinity) ++set.divergent_paths;
    if (!pr.converged) continue;
    ++set.converged_paths;
    bool merged = false;
    for (auto& kept : set.points) {
      double dist = 0.0;
      for (int i = 0; i < d; ++i)
        dist = std::max(dist, std::abs(kept.coords[i] - pr.endpoint[i]));
      if (dist < opts.dedup_tol) {
        if (pr.residual < kept.residual) {
          kept.coords = pr.endpoint;
          kept.residual = pr.residual;
        }
        merged = true;
        break;
      }
    }
    if (!merged) set.points.push_back({pr.endpoint, pr.residual, 0.0});
  }

  for (auto& pt : set.points) {
    detail::eval_jacobian(ns, pt.coords, jac);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(jac);
    const double smin = svd.singularValues()(d - 1);
    const double smax = svd.singularValues()(0);
    pt.condition = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  }

  set.counts = classify_solutions(set, opts.torus_eps, opts.real_eps);
  set.counts.tracked = total_paths;
  return set;
}

}  // namespace netdeg
