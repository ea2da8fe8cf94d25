#pragma once

// The lattice-discretization greedy family and its baselines. Every solver
// starts from the origin, reports a trajectory of exact objective values
// (noise affects only what the solver sees, never what is reported), and
// breaks argmax ties by lowest candidate index. Outputs of the greedy family
// are sums of at most l scaled frontier vertices, hence always feasible.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ldgm/geometry.hpp"
#include "ldgm/oracles.hpp"

namespace ldgm {

enum class RhoSchedule { ConstantOne, Power };

/// Averaging weight at iteration t: 1, or 4/(t+8)^(2/3) (equals 1 at t = 0).
inline double rho_value(RhoSchedule s, int t) {
  if (s == RhoSchedule::ConstantOne) return 1.0;
  const double c = std::cbrt(static_cast<double>(t) + 8.0);
  return 4.0 / (c * c);
}

/// d_t = (1 - rho) d_{t-1} + rho * delta; shared by the surrogate updates of
/// the generalized greedy and the averaged-gradient baseline.
inline double surrogate_update(double d_prev, double rho, double delta) {
  return (1.0 - rho) * d_prev + rho * delta;
}

struct SolverConfig {
  int l = 60;                              // steps / iterations
  int gamma = 1;                           // look-ahead horizon
  RhoSchedule rho = RhoSchedule::Power;    // averaging schedule
  BoxConstraint box;                       // used by the box-modified greedy
  std::optional<double> fd_step;           // echo: baselines' difference step

  void validate() const {
    if (l < 1) throw std::invalid_argument("SolverConfig: l must be >= 1");
    if (gamma < 1) throw std::invalid_argument("SolverConfig: gamma must be >= 1");
    if (gamma > 1 && l % gamma != 0)
      throw std::invalid_argument("SolverConfig: gamma must divide l");
  }
};

struct TrajectoryPoint {
  int iteration = 0;
  double value = 0.0;        // exact objective at the iterate
  long long oracle_calls = 0;
};

struct SolverReport {
  std::vector<TrajectoryPoint> trajectory;
  Point final_point;
  std::vector<int> chosen_steps;  // step indices (greedy family) or vertex indices
  std::uint64_t seed = 0;
  SolverConfig config;
  bool truncated = false;

  double final_value() const { return trajectory.back().value; }
};

namespace detail {

inline int argmax_lowest(const std::vector<double>& v) {
  int best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = static_cast<int>(i);
  }
  return best;
}

}  // namespace detail

/// Plain lattice greedy: l additions of the step with the largest noisy
/// marginal gain. The base value f~(x_t) is evaluated once per iteration and
/// shared across candidates, so a run costs exactly l*(m+1) oracle calls.
inline SolverReport ldgm(ValueOracle& oracle, const VPolytope& P, const SolverConfig& cfg) {
  cfg.validate();
  const StepSet eps = step_set(P, cfg.l);
  const int m = eps.count();
  SolverReport rep;
  rep.seed = oracle.seed();
  rep.config = cfg;
  Point x(P.dimension(), 0.0);
  rep.trajectory.push_back({0, oracle.exact(x), oracle.call_count()});
  for (int t = 0; t < cfg.l; ++t) {
    const double base = oracle(x);
    int best = 0;
    double best_gain = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < m; ++j) {
      const double gain = oracle(add(x, eps.steps[j])) - base;
      if (gain > best_gain) {
        best_gain = gain;
        best = j;
      }
    }
    add_in_place(x, eps.steps[best]);
    rep.chosen_steps.push_back(best);
    rep.trajectory.push_back({t + 1, oracle.exact(x), oracle.call_count()});
  }
  rep.final_point = std::move(x);
  return rep;
}

/// Look-ahead/averaging variant: candidate j is scored by the surrogate
/// d_t^(j), an exponential average of the look-ahead differences
/// f~(x_t + gamma e_j) - f~(x_t), but the move itself is a single step e_j.
/// With gamma = 1 and rho == 1 this is bit-identical to ldgm on the same
/// oracle stream.
inline SolverReport generalized_ldgm(ValueOracle& oracle, const VPolytope& P,
                                     const SolverConfig& cfg) {
  cfg.validate();
  const StepSet eps = step_set(P, cfg.l);
  const int m = eps.count();
  SolverReport rep;
  rep.seed = oracle.seed();
  rep.config = cfg;
  std::vector<double> d(m, 0.0);
  Point x(P.dimension(), 0.0);
  rep.trajectory.push_back({0, oracle.exact(x), oracle.call_count()});
  const double lookahead = static_cast<double>(cfg.gamma);
  for (int t = 0; t < cfg.l; ++t) {
    const double rho = rho_value(cfg.rho, t);
    const double base = oracle(x);
    for (int j = 0; j < m; ++j) {
      const double delta = oracle(add_scaled(x, lookahead, eps.steps[j])) - base;
      d[j] = surrogate_update(d[j], rho, delta);
    }
    const int best = detail::argmax_lowest(d);
    add_in_place(x, eps.steps[best]);
    rep.chosen_steps.push_back(best);
    rep.trajectory.push_back({t + 1, oracle.exact(x), oracle.call_count()});
  }
  rep.final_point = std::move(x);
  return rep;
}

/// Generalized greedy for orthogonal step sets: each iteration commits j
/// copies of one step, choosing the pair (step, j) with the best average
/// marginal gain; j may run up to the per-step copy budget l - copies(e).
/// On budget overflow the last step is truncated to l - t copies and the
/// result is the better of that point and the best single full vertex
/// x_hat = argmax_e f(l e). Ties: lowest step index, then smallest j.
inline SolverReport ldgm_g(ValueOracle& oracle, const VPolytope& P, const SolverConfig& cfg) {
  cfg.validate();
  const StepSet eps = step_set(P, cfg.l);
  if (!is_orthogonal_step_set(eps))
    throw std::invalid_argument("LDGM-G requires an orthogonal step set");
  const int m = eps.count();
  const int l = cfg.l;
  SolverReport rep;
  rep.seed = oracle.seed();
  rep.config = cfg;

  std::vector<double> sq(m);
  for (int j = 0; j < m; ++j) sq[j] = dot(eps.steps[j], eps.steps[j]);

  // Best single full vertex, built by repeated addition so that replaying
  // chosen_steps reproduces it exactly.
  int hat_idx = -1;
  double hat_val = -std::numeric_limits<double>::infinity();
  Point hat_point;
  for (int j = 0; j < m; ++j) {
    Point full(P.dimension(), 0.0);
    for (int c = 0; c < l; ++c) add_in_place(full, eps.steps[j]);
    const double v = oracle(full);
    if (v > hat_val) {
      hat_val = v;
      hat_idx = j;
      hat_point = std::move(full);
    }
  }

  Point x(P.dimension(), 0.0);
  rep.trajectory.push_back({0, oracle.exact(x), oracle.call_count()});
  int t = 0;
  int iter = 0;
  Point x_last = x;
  std::vector<int> chosen;
  while (true) {
    const double base = oracle(x);
    int best_e = -1, best_k = 0;
    double best_avg = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < m; ++j) {
      if (!(sq[j] > 0.0)) continue;  // zero step never changes x
      const int copies = static_cast<int>(std::llround(dot(x, eps.steps[j]) / sq[j]));
      const int jmax = l - copies;
      Point probe = x;
      for (int c = 1; c <= jmax; ++c) {
        add_in_place(probe, eps.steps[j]);
        const double avg = (oracle(probe) - base) / static_cast<double>(c);
        if (avg > best_avg) {
          best_avg = avg;
          best_e = j;
          best_k = c;
        }
      }
    }
    if (best_e < 0) {  // no admissible combination left
      x_last = x;
      break;
    }
    if (t + best_k > l) {
      x_last = x;
      for (int c = 0; c < l - t; ++c) {
        add_in_place(x_last, eps.steps[best_e]);
        chosen.push_back(best_e);
      }
      ++iter;
      rep.trajectory.push_back({iter, oracle.exact(x_last), oracle.call_count()});
      break;
    }
    for (int c = 0; c < best_k; ++c) {
      add_in_place(x, eps.steps[best_e]);
      chosen.push_back(best_e);
    }
    t += best_k;
    ++iter;
    rep.trajectory.push_back({iter, oracle.exact(x), oracle.call_count()});
  }

  const double f_last = oracle(x_last);
  const double f_hat = oracle(hat_point);
  if (f_hat > f_last) {
    rep.final_point = hat_point;
    rep.chosen_steps.assign(l, hat_idx);
  } else {
    rep.final_point = x_last;
    rep.chosen_steps = std::move(chosen);
  }
  rep.trajectory.push_back(
      {iter + 1, oracle.exact(rep.final_point), oracle.call_count()});
  return rep;
}

/// Greedy over the simplex {a^T x <= b, x >= 0} with a per-step feasibility
/// filter x_t + e <= c (vertex enumeration of the box-intersected polytope
/// itself is avoided). Stops early with the truncation flag when no step is
/// admissible.
inline SolverReport ldgm_box(ValueOracle& oracle, const Point& a, double b,
                             const BoxConstraint& c, const SolverConfig& cfg) {
  cfg.validate();
  if (!c.present()) throw std::invalid_argument("ldgm_box: box constraint required");
  const VPolytope Q = simplex_vertices(a, b);
  const StepSet eps = step_set(Q, cfg.l);
  const int m = eps.count();
  SolverReport rep;
  rep.seed = oracle.seed();
  rep.config = cfg;
  rep.config.box = c;
  Point x(Q.dimension(), 0.0);
  rep.trajectory.push_back({0, oracle.exact(x), oracle.call_count()});
  for (int t = 0; t < cfg.l; ++t) {
    const double base = oracle(x);
    int best = -1;
    double best_gain = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < m; ++j) {
      Point probe = add(x, eps.steps[j]);
      if (!within_box(probe, c)) continue;
      const double gain = oracle(probe) - base;
      if (gain > best_gain) {
        best_gain = gain;
        best = j;
      }
    }
    if (best < 0) {
      rep.truncated = true;
      break;
    }
    add_in_place(x, eps.steps[best]);
    rep.chosen_steps.push_back(best);
    rep.trajectory.push_back({t + 1, oracle.exact(x), oracle.call_count()});
  }
  rep.final_point = std::move(x);
  return rep;
}

/// Conditional-gradient baseline with constant step 1/l: moves toward the
/// vertex maximizing <v, g_t> over the full vertex list (a dominated vertex,
/// e.g. the origin, can win when the gradient estimate turns negative).
inline SolverReport frank_wolfe(GradientOracle& grad, const VPolytope& P,
                                const SolverConfig& cfg) {
  cfg.validate();
  const auto& E = P.vertices();
  SolverReport rep;
  rep.seed = grad.seed();
  rep.config = cfg;
  Point x(P.dimension(), 0.0);
  rep.trajectory.push_back({0, grad.base().value(x), grad.call_count()});
  const double step = 1.0 / static_cast<double>(cfg.l);
  for (int t = 0; t < cfg.l; ++t) {
    const Point g = grad(x);
    int best = 0;
    double best_ip = -std::numeric_limits<double>::infinity();
    for (std::size_t v = 0; v < E.size(); ++v) {
      const double ip = dot(E[v], g);
      if (ip > best_ip) {
        best_ip = ip;
        best = static_cast<int>(v);
      }
    }
    add_in_place(x, scale(E[best], step));
    rep.chosen_steps.push_back(best);
    rep.trajectory.push_back({t + 1, grad.base().value(x), grad.call_count()});
  }
  rep.final_point = std::move(x);
  return rep;
}

/// Averaged-gradient conditional gradient: the linear maximization uses the
/// exponential average d_t of gradient estimates instead of the latest one.
/// With rho == 1 and an exact gradient this coincides with frank_wolfe.
inline SolverReport scg(GradientOracle& grad, const VPolytope& P, const SolverConfig& cfg) {
  cfg.validate();
  const auto& E = P.vertices();
  SolverReport rep;
  rep.seed = grad.seed();
  rep.config = cfg;
  Point x(P.dimension(), 0.0);
  std::vector<double> d(P.dimension(), 0.0);
  rep.trajectory.push_back({0, grad.base().value(x), grad.call_count()});
  const double step = 1.0 / static_cast<double>(cfg.l);
  for (int t = 0; t < cfg.l; ++t) {
    const double rho = rho_value(cfg.rho, t);
    const Point g = grad(x);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = surrogate_update(d[i], rho, g[i]);
    int best = 0;
    double best_ip = -std::numeric_limits<double>::infinity();
    for (std::size_t v = 0; v < E.size(); ++v) {
      double ip = 0.0;
      for (std::size_t i = 0; i < d.size(); ++i) ip += E[v][i] * d[i];
      if (ip > best_ip) {
        best_ip = ip;
        best = static_cast<int>(v);
      }
    }
    add_in_place(x, scale(E[best], step));
    rep.chosen_steps.push_back(best);
    rep.trajectory.push_back({t + 1, grad.base().value(x), grad.call_count()});
  }
  rep.final_point = std::move(x);
  return rep;
}

/// Evaluates every vertex and returns the best one.
inline SolverReport best_vertex(ValueOracle& oracle, const VPolytope& P) {
  const auto& E = P.vertices();
  SolverReport rep;
  rep.seed = oracle.seed();
  Point origin(P.dimension(), 0.0);
  rep.trajectory.push_back({0, oracle.exact(origin), oracle.call_count()});
  int best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (std::size_t v = 0; v < E.size(); ++v) {
    const double val = oracle(E[v]);
    if (val > best_val) {
      best_val = val;
      best = static_cast<int>(v);
    }
  }
  rep.chosen_steps.push_back(best);
  rep.final_point = E[best];
  rep.trajectory.push_back({1, oracle.exact(rep.final_point), oracle.call_count()});
  return rep;
}

/// Exhaustive exact maximum over the grid of a simplex-form polytope; ties
/// resolve to the lexicographically smallest point. Ground-truth optimum for
/// desk-scale instances.
inline std::pair<Point, double> grid_optimum(const ObjectiveInstance& f, const VPolytope& P,
                                             double resolution,
                                             const BoxConstraint& box = BoxConstraint()) {
  if (!P.simplex_form())
    throw std::invalid_argument("grid_optimum: polytope has no simplex half-space form");
  Point best_point;
  double best_val = -std::numeric_limits<double>::infinity();
  for_each_grid_point(*P.simplex_form(), resolution, box, [&](const Point& p) {
    const double v = f.value(p);
    if (v > best_val || (v == best_val && (best_point.empty() || lex_less(p, best_point)))) {
      best_val = v;
      best_point = p;
    }
  });
  if (best_point.empty()) throw std::runtime_error("grid_optimum: empty grid");
  return {best_point, best_val};
}

}  // namespace ldgm
