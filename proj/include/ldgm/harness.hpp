#pragma once

// Experiment orchestration: seeded instance/constraint generators, repeated
// runs with derived per-run seeds, aggregation, and CSV emission. Reported
// trajectories always carry exact objective values; noise only shapes what
// the solvers observe.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ldgm/geometry.hpp"
#include "ldgm/objectives.hpp"
#include "ldgm/oracles.hpp"
#include "ldgm/random.hpp"
#include "ldgm/solvers.hpp"
#include "ldgm/version.hpp"

namespace ldgm {

// ---------------------------------------------------------------------------
// Generators.

/// n_vertices points with coordinates i.i.d. uniform on [0,1], scaled by k.
inline VPolytope generate_random_vertices(int dim, int n_vertices, double k, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("generate_random_vertices: dim must be >= 1");
  if (n_vertices < 1) throw std::invalid_argument("generate_random_vertices: need >= 1 vertex");
  if (!(k > 0.0)) throw std::invalid_argument("generate_random_vertices: k must be positive");
  Rng rng(seed);
  std::vector<Point> verts(n_vertices);
  for (Point& v : verts) {
    v.resize(dim);
    for (double& c : v) c = k * rng.uniform01();
  }
  return VPolytope(std::move(verts));
}

/// n_edges distinct (source, target) pairs sampled uniformly, activation
/// probabilities uniform on [p_min, p_max) per source.
inline BipartiteInstance random_bipartite_instance(int n_sources, int n_targets, int n_edges,
                                                   std::uint64_t seed, double p_min = 0.0,
                                                   double p_max = 0.4) {
  if (n_sources < 1 || n_targets < 1)
    throw std::invalid_argument("random_bipartite_instance: node counts must be >= 1");
  const long long cap = static_cast<long long>(n_sources) * n_targets;
  if (n_edges < 0 || n_edges > cap)
    throw std::invalid_argument("random_bipartite_instance: edge count out of range");
  Rng rng(seed);
  std::set<long long> seen;
  std::vector<std::pair<int, int>> edges;
  while (static_cast<int>(edges.size()) < n_edges) {
    const int s = rng.uniform_int(n_sources);
    const int t = rng.uniform_int(n_targets);
    const long long key = static_cast<long long>(s) * n_targets + t;
    if (seen.insert(key).second) edges.push_back({s, t});
  }
  std::vector<double> probs(n_sources);
  for (double& p : probs) p = rng.uniform(p_min, p_max);
  return BipartiteInstance(n_sources, n_targets, std::move(edges), std::move(probs));
}

/// Simple undirected graph with n_edges distinct edges, as an adjacency list.
inline std::vector<std::vector<int>> random_graph(int n_nodes, long long n_edges,
                                                  std::uint64_t seed) {
  if (n_nodes < 1) throw std::invalid_argument("random_graph: node count must be >= 1");
  const long long cap = static_cast<long long>(n_nodes) * (n_nodes - 1) / 2;
  if (n_edges < 0 || n_edges > cap)
    throw std::invalid_argument("random_graph: edge count out of range");
  Rng rng(seed);
  std::set<std::pair<int, int>> seen;
  while (static_cast<long long>(seen.size()) < n_edges) {
    int u = rng.uniform_int(n_nodes);
    int v = rng.uniform_int(n_nodes);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    seen.insert({u, v});
  }
  std::vector<std::vector<int>> adj(n_nodes);
  for (const auto& [u, v] : seen) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

/// Uniform random subset of the vertex list (at least one vertex), preserving
/// input order. fraction >= 1 returns the polytope unchanged.
inline VPolytope vertex_subset(const VPolytope& P, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0)) throw std::invalid_argument("vertex_subset: fraction must be positive");
  const int total = static_cast<int>(P.vertices().size());
  if (fraction >= 1.0) return P;
  const int count = std::max(1, static_cast<int>(std::llround(fraction * total)));
  std::vector<int> idx(total);
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed);
  for (int i = 0; i < count; ++i) {  // partial Fisher-Yates
    const int j = i + rng.uniform_int(total - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  std::vector<Point> verts;
  verts.reserve(count);
  for (int i : idx) verts.push_back(P.vertices()[i]);
  return VPolytope(std::move(verts));
}

// ---------------------------------------------------------------------------
// Experiment description.

struct SolverEntry {
  std::string id;  // ldgm | ldgm-g | generalized-ldgm | ldgm-box | fw | scg | best-vertex
  SolverConfig config;
};

struct ExperimentSpec {
  std::string name = "experiment";

  enum class Instance { BudgetSynthetic, BudgetFile, CoverageSynthetic, CoverageFile };
  Instance instance = Instance::BudgetSynthetic;
  int n_sources = 0, n_targets = 0, n_edges = 0;  // budget_synthetic
  int n_nodes = 0;                                 // coverage_synthetic (edges in n_edges)
  std::string path;                                // *_file
  std::uint64_t instance_seed = 0;
  double p_min = 0.0, p_max = 0.4;

  enum class Constraint { Size, Linear, RandomVertexHull, BoxLinear };
  Constraint constraint = Constraint::Size;
  double k = 1.0;                    // budget b
  double a_min = 0.0, a_max = 50.0;  // linear: coefficients uniform on (a_min, a_max]
  int n_vertices = 100;              // hull
  std::uint64_t constraint_seed = 0;
  Point box_a, box_c;                // box_linear
  double box_b = 0.0;
  double vertex_fraction = 1.0;      // < 1: per-repetition random vertex subset

  std::vector<SolverEntry> solvers;
  NoiseMode noise = NoiseMode::exact();
  int repetitions = 1;
  std::uint64_t base_seed = 0;
};

struct SolverAggregate {
  std::string id;
  std::vector<double> mean_f, std_f, mean_calls;        // per iteration, padded
  std::vector<std::vector<double>> per_run_f;           // padded per-run trajectories
  std::vector<double> final_values;                     // per successful run
  std::vector<long long> total_calls;                   // per successful run
  std::vector<std::string> errors;                      // per-run failures, non-fatal
};

struct AggregateResult {
  ExperimentSpec spec;
  std::vector<SolverAggregate> solvers;
};

// ---------------------------------------------------------------------------
// Instance / constraint construction.

namespace detail {

inline ObjectiveInstance build_objective(const ExperimentSpec& spec) {
  switch (spec.instance) {
    case ExperimentSpec::Instance::BudgetSynthetic:
      return budget_objective(random_bipartite_instance(spec.n_sources, spec.n_targets,
                                                        spec.n_edges, spec.instance_seed,
                                                        spec.p_min, spec.p_max));
    case ExperimentSpec::Instance::BudgetFile:
      return budget_objective(
          load_bipartite_instance(spec.path, spec.instance_seed, spec.p_min, spec.p_max));
    case ExperimentSpec::Instance::CoverageSynthetic: {
      auto graph = random_graph(spec.n_nodes, spec.n_edges, mix_seed(spec.instance_seed, 0, 1));
      return coverage_objective(
          make_coverage_instance(graph, mix_seed(spec.instance_seed, 0, 2)));
    }
    case ExperimentSpec::Instance::CoverageFile: {
      auto graph = load_dimacs_graph(spec.path);
      return coverage_objective(make_coverage_instance(graph, spec.instance_seed));
    }
  }
  throw std::logic_error("unreachable");
}

inline Point uniform_positive_coeffs(int n, double lo, double hi, std::uint64_t seed) {
  Rng rng(seed);
  Point a(n);
  for (double& ai : a) ai = lo + (hi - lo) * rng.uniform_open01();  // (lo, hi]
  return a;
}

inline VPolytope build_polytope(const ExperimentSpec& spec, int dim) {
  switch (spec.constraint) {
    case ExperimentSpec::Constraint::Size:
      return simplex_vertices(Point(dim, 1.0), spec.k);
    case ExperimentSpec::Constraint::Linear:
      return simplex_vertices(
          uniform_positive_coeffs(dim, spec.a_min, spec.a_max, spec.constraint_seed), spec.k);
    case ExperimentSpec::Constraint::RandomVertexHull:
      return generate_random_vertices(dim, spec.n_vertices, spec.k, spec.constraint_seed);
    case ExperimentSpec::Constraint::BoxLinear:
      return simplex_vertices(spec.box_a, spec.box_b);
  }
  throw std::logic_error("unreachable");
}

}  // namespace detail

inline const std::vector<std::string>& solver_ids() {
  static const std::vector<std::string> ids = {
      "ldgm", "ldgm-g", "generalized-ldgm", "ldgm-box", "fw", "scg", "best-vertex"};
  return ids;
}

/// Gradient oracle selection for the baselines: explicit fd_step means
/// forward differences over a value oracle in the requested noise mode;
/// otherwise exact mode uses the analytic gradient and stochastic mode the
/// batch-sampled gradient. Additive noise without fd_step is rejected (no
/// gradient observable).
inline GradientOracle make_gradient_oracle(const ObjectiveInstance& obj, const NoiseMode& noise,
                                           const SolverConfig& cfg, std::uint64_t seed) {
  if (cfg.fd_step) return GradientOracle::forward_difference(*cfg.fd_step,
                                                             ValueOracle(obj, noise, seed));
  switch (noise.kind) {
    case NoiseMode::Kind::Exact:
      return GradientOracle::analytic(obj);
    case NoiseMode::Kind::Additive:
      throw std::invalid_argument(
          "gradient baseline under additive noise requires a forward-difference step");
    case NoiseMode::Kind::StochasticBatch:
      return GradientOracle::stochastic_batch(obj, noise.batch_size, seed);
  }
  throw std::logic_error("unreachable");
}

/// Runs one solver once. For box-linear constraints only the box-modified
/// greedy is admissible (the intersection polytope's vertex set is never
/// enumerated).
inline SolverReport run_solver_once(const std::string& id, const ObjectiveInstance& obj,
                                    const VPolytope& P, const ExperimentSpec& spec,
                                    const SolverConfig& cfg, std::uint64_t seed) {
  const bool boxed = spec.constraint == ExperimentSpec::Constraint::BoxLinear;
  if (boxed && id != "ldgm-box")
    throw std::invalid_argument("constraint box_linear supports only solver ldgm-box");
  if (id == "ldgm") {
    ValueOracle o(obj, spec.noise, seed);
    return ldgm(o, P, cfg);
  }
  if (id == "ldgm-g") {
    ValueOracle o(obj, spec.noise, seed);
    return ldgm_g(o, P, cfg);
  }
  if (id == "generalized-ldgm") {
    ValueOracle o(obj, spec.noise, seed);
    return generalized_ldgm(o, P, cfg);
  }
  if (id == "ldgm-box") {
    if (!boxed) throw std::invalid_argument("solver ldgm-box requires constraint box_linear");
    ValueOracle o(obj, spec.noise, seed);
    return ldgm_box(o, spec.box_a, spec.box_b, BoxConstraint(spec.box_c), cfg);
  }
  if (id == "fw") {
    GradientOracle g = make_gradient_oracle(obj, spec.noise, cfg, seed);
    return frank_wolfe(g, P, cfg);
  }
  if (id == "scg") {
    GradientOracle g = make_gradient_oracle(obj, spec.noise, cfg, seed);
    return scg(g, P, cfg);
  }
  if (id == "best-vertex") {
    ValueOracle o(obj, spec.noise, seed);
    return best_vertex(o, P);
  }
  throw std::invalid_argument("unknown solver id: " + id);
}

// ---------------------------------------------------------------------------

/// Runs every (repetition, solver) cell. The instance and base polytope are
/// fixed by their own seeds; run r of solver s uses oracle seed
/// mix_seed(base_seed, r, s), so editing one solver entry never perturbs
/// another. With vertex_fraction < 1 the vertex subset is re-drawn per
/// repetition (shared by all solvers of that repetition).
inline AggregateResult run_experiment(const ExperimentSpec& spec) {
  if (spec.repetitions < 1) throw std::invalid_argument("run_experiment: repetitions must be >= 1");
  if (spec.solvers.empty()) throw std::invalid_argument("run_experiment: no solvers");
  const ObjectiveInstance obj = detail::build_objective(spec);
  const VPolytope base_poly = detail::build_polytope(spec, obj.dimension);

  AggregateResult result;
  result.spec = spec;
  result.solvers.resize(spec.solvers.size());
  std::vector<std::vector<std::vector<double>>> calls(spec.solvers.size());

  for (int rep = 0; rep < spec.repetitions; ++rep) {
    const VPolytope poly =
        spec.vertex_fraction < 1.0
            ? vertex_subset(base_poly, spec.vertex_fraction,
                            mix_seed(spec.base_seed, static_cast<std::uint64_t>(rep),
                                     0xffffffffffffffffULL))
            : base_poly;
    for (std::size_t s = 0; s < spec.solvers.size(); ++s) {
      SolverAggregate& agg = result.solvers[s];
      agg.id = spec.solvers[s].id;
      const std::uint64_t seed = mix_seed(spec.base_seed, static_cast<std::uint64_t>(rep), s);
      SolverReport rep_out;
      try {
        rep_out = run_solver_once(spec.solvers[s].id, obj, poly, spec, spec.solvers[s].config,
                                  seed);
      } catch (const std::exception& e) {
        agg.errors.push_back("rep " + std::to_string(rep) + ": " + e.what());
        continue;
      }
      std::vector<double> f_row, c_row;
      f_row.reserve(rep_out.trajectory.size());
      for (const TrajectoryPoint& tp : rep_out.trajectory) {
        f_row.push_back(tp.value);
        c_row.push_back(static_cast<double>(tp.oracle_calls));
      }
      agg.per_run_f.push_back(std::move(f_row));
      calls[s].push_back(std::move(c_row));
      agg.final_values.push_back(rep_out.trajectory.back().value);
      agg.total_calls.push_back(rep_out.trajectory.back().oracle_calls);
    }
  }

  // Pad to a common length (repeat the final entry) and aggregate.
  std::size_t rows = 0;
  for (const SolverAggregate& agg : result.solvers)
    for (const auto& run : agg.per_run_f) rows = std::max(rows, run.size());
  for (std::size_t s = 0; s < result.solvers.size(); ++s) {
    SolverAggregate& agg = result.solvers[s];
    for (auto& run : agg.per_run_f)
      while (run.size() < rows) run.push_back(run.back());
    for (auto& run : calls[s])
      while (run.size() < rows) run.push_back(run.back());
    const std::size_t n_runs = agg.per_run_f.size();
    agg.mean_f.assign(rows, 0.0);
    agg.std_f.assign(rows, 0.0);
    agg.mean_calls.assign(rows, 0.0);
    if (n_runs == 0) continue;
    for (std::size_t it = 0; it < rows; ++it) {
      double mean = 0.0;
      for (const auto& run : agg.per_run_f) mean += run[it];
      mean /= static_cast<double>(n_runs);
      double var = 0.0;
      for (const auto& run : agg.per_run_f) var += (run[it] - mean) * (run[it] - mean);
      agg.mean_f[it] = mean;
      agg.std_f[it] = n_runs > 1 ? std::sqrt(var / static_cast<double>(n_runs - 1)) : 0.0;
      double mc = 0.0;
      for (const auto& run : calls[s]) mc += run[it];
      agg.mean_calls[it] = mc / static_cast<double>(n_runs);
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// CSV + metadata sidecar.

namespace detail {

inline std::string fmt_g(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

inline std::string meta_path_for(const std::string& csv_path) {
  const std::size_t slash = csv_path.find_last_of('/');
  const std::size_t dot = csv_path.find_last_of('.');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
    return csv_path.substr(0, dot) + ".meta";
  return csv_path + ".meta";
}

inline std::string describe_solver(const SolverEntry& e) {
  std::ostringstream os;
  os << e.id << " l=" << e.config.l << " gamma=" << e.config.gamma
     << " rho=" << (e.config.rho == RhoSchedule::ConstantOne ? "one" : "power");
  if (e.config.fd_step) os << " fd_a=" << fmt_g(*e.config.fd_step);
  return os.str();
}

}  // namespace detail

inline std::string serialize_spec(const ExperimentSpec& spec) {
  std::ostringstream os;
  os << "experiment = " << spec.name << "\n";
  switch (spec.instance) {
    case ExperimentSpec::Instance::BudgetSynthetic:
      os << "instance = budget_synthetic\n"
         << "n_sources = " << spec.n_sources << "\n"
         << "n_targets = " << spec.n_targets << "\n"
         << "n_edges = " << spec.n_edges << "\n"
         << "p_min = " << detail::fmt_g(spec.p_min) << "\n"
         << "p_max = " << detail::fmt_g(spec.p_max) << "\n";
      break;
    case ExperimentSpec::Instance::BudgetFile:
      os << "instance = budget_file\npath = " << spec.path << "\n"
         << "p_min = " << detail::fmt_g(spec.p_min) << "\n"
         << "p_max = " << detail::fmt_g(spec.p_max) << "\n";
      break;
    case ExperimentSpec::Instance::CoverageSynthetic:
      os << "instance = coverage_synthetic\n"
         << "n_nodes = " << spec.n_nodes << "\n"
         << "n_edges = " << spec.n_edges << "\n";
      break;
    case ExperimentSpec::Instance::CoverageFile:
      os << "instance = coverage_file\npath = " << spec.path << "\n";
      break;
  }
  os << "instance_seed = " << spec.instance_seed << "\n";
  switch (spec.constraint) {
    case ExperimentSpec::Constraint::Size:
      os << "constraint = size\nk = " << detail::fmt_g(spec.k) << "\n";
      break;
    case ExperimentSpec::Constraint::Linear:
      os << "constraint = linear\nk = " << detail::fmt_g(spec.k) << "\n"
         << "a_min = " << detail::fmt_g(spec.a_min) << "\n"
         << "a_max = " << detail::fmt_g(spec.a_max) << "\n"
         << "constraint_seed = " << spec.constraint_seed << "\n";
      break;
    case ExperimentSpec::Constraint::RandomVertexHull:
      os << "constraint = random_vertex_hull\nk = " << detail::fmt_g(spec.k) << "\n"
         << "n_vertices = " << spec.n_vertices << "\n"
         << "constraint_seed = " << spec.constraint_seed << "\n";
      break;
    case ExperimentSpec::Constraint::BoxLinear: {
      os << "constraint = box_linear\n";
      auto join = [](const Point& p) {
        std::string s;
        for (std::size_t i = 0; i < p.size(); ++i) {
          if (i) s += ',';
          s += detail::fmt_g(p[i]);
        }
        return s;
      };
      os << "a = " << join(spec.box_a) << "\n"
         << "b = " << detail::fmt_g(spec.box_b) << "\n"
         << "c = " << join(spec.box_c) << "\n";
      break;
    }
  }
  if (spec.vertex_fraction < 1.0)
    os << "vertex_fraction = " << detail::fmt_g(spec.vertex_fraction) << "\n";
  os << "noise = " << spec.noise.describe() << "\n"
     << "repetitions = " << spec.repetitions << "\n"
     << "base_seed = " << spec.base_seed << "\n";
  for (const SolverEntry& e : spec.solvers) os << "solver = " << detail::describe_solver(e) << "\n";
  return os.str();
}

/// Writes "solver,iteration,mean_f,std_f,mean_calls" rows plus a ".meta"
/// sidecar (same basename) echoing the spec, seeds and library version.
inline void write_csv(const AggregateResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open CSV for write: " + path);
  out << "solver,iteration,mean_f,std_f,mean_calls\n";
  for (const SolverAggregate& agg : result.solvers) {
    for (std::size_t it = 0; it < agg.mean_f.size(); ++it) {
      out << agg.id << ',' << it << ',' << detail::fmt_g(agg.mean_f[it]) << ','
          << detail::fmt_g(agg.std_f[it]) << ',' << detail::fmt_g(agg.mean_calls[it]) << '\n';
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path);
  out.close();

  const std::string meta = detail::meta_path_for(path);
  std::ofstream ms(meta, std::ios::binary);
  if (!ms) throw std::runtime_error("cannot open meta for write: " + meta);
  ms << "library_version = " << kVersion << "\n" << serialize_spec(result.spec);
  for (const SolverAggregate& agg : result.solvers) {
    for (const std::string& err : agg.errors) ms << "error = " << agg.id << ": " << err << "\n";
  }
}

/// Single-run trajectory in the same CSV schema (std_f is 0).
inline void write_trajectory_csv(const SolverReport& report, const std::string& solver_id,
                                 const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open CSV for write: " + path);
  out << "solver,iteration,mean_f,std_f,mean_calls\n";
  for (const TrajectoryPoint& tp : report.trajectory) {
    out << solver_id << ',' << tp.iteration << ',' << detail::fmt_g(tp.value) << ",0,"
        << static_cast<double>(tp.oracle_calls) << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

// ---------------------------------------------------------------------------
// Experiment spec files: flat "key = value" lines, '#' comments, one block
// per experiment opened by an "experiment = <name>" line; "solver = <id>
// [l=N] [gamma=N] [rho=one|power] [fd_a=X]" lines may repeat.

struct SpecParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void spec_fail(int lineno, const std::string& msg) {
  throw SpecParseError("spec parse error at line " + std::to_string(lineno) + ": " + msg);
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline Point parse_point_csv(const std::string& s, int lineno) {
  Point p;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t pos = 0;
      p.push_back(std::stod(tok, &pos));
      if (pos != tok.size()) spec_fail(lineno, "malformed number '" + tok + "'");
    } catch (const SpecParseError&) {
      throw;
    } catch (...) {
      spec_fail(lineno, "malformed number '" + tok + "'");
    }
  }
  if (p.empty()) spec_fail(lineno, "empty vector value");
  return p;
}

inline SolverEntry parse_solver_entry(const std::string& value, int lineno) {
  std::istringstream iss(value);
  SolverEntry entry;
  if (!(iss >> entry.id)) spec_fail(lineno, "solver line needs an id");
  bool known = false;
  for (const std::string& id : solver_ids()) known = known || id == entry.id;
  if (!known) spec_fail(lineno, "unknown solver id '" + entry.id + "'");
  std::string tok;
  while (iss >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) spec_fail(lineno, "expected key=value, got '" + tok + "'");
    const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    try {
      if (key == "l") entry.config.l = std::stoi(val);
      else if (key == "gamma") entry.config.gamma = std::stoi(val);
      else if (key == "fd_a") entry.config.fd_step = std::stod(val);
      else if (key == "rho") {
        if (val == "one") entry.config.rho = RhoSchedule::ConstantOne;
        else if (val == "power") entry.config.rho = RhoSchedule::Power;
        else spec_fail(lineno, "rho must be 'one' or 'power'");
      } else spec_fail(lineno, "unknown solver option '" + key + "'");
    } catch (const SpecParseError&) {
      throw;
    } catch (...) {
      spec_fail(lineno, "malformed value for '" + key + "'");
    }
  }
  return entry;
}

}  // namespace detail

inline std::vector<ExperimentSpec> load_experiment_specs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spec file: " + path);
  std::vector<ExperimentSpec> specs;
  std::string line;
  int lineno = 0;
  auto current = [&]() -> ExperimentSpec& {
    if (specs.empty()) detail::spec_fail(lineno, "expected 'experiment = <name>' first");
    return specs.back();
  };
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) detail::spec_fail(lineno, "expected 'key = value'");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) detail::spec_fail(lineno, "empty key or value");

    auto to_int = [&](const std::string& v) {
      try { return std::stoi(v); } catch (...) { detail::spec_fail(lineno, "malformed integer '" + v + "'"); }
      return 0;
    };
    auto to_u64 = [&](const std::string& v) -> std::uint64_t {
      try { return std::stoull(v); } catch (...) { detail::spec_fail(lineno, "malformed seed '" + v + "'"); }
      return 0;
    };
    auto to_double = [&](const std::string& v) {
      try { return std::stod(v); } catch (...) { detail::spec_fail(lineno, "malformed number '" + v + "'"); }
      return 0.0;
    };

    if (key == "experiment") {
      specs.emplace_back();
      specs.back().name = value;
    } else if (key == "instance") {
      auto& s = current();
      if (value == "budget_synthetic") s.instance = ExperimentSpec::Instance::BudgetSynthetic;
      else if (value == "budget_file") s.instance = ExperimentSpec::Instance::BudgetFile;
      else if (value == "coverage_synthetic") s.instance = ExperimentSpec::Instance::CoverageSynthetic;
      else if (value == "coverage_file") s.instance = ExperimentSpec::Instance::CoverageFile;
      else detail::spec_fail(lineno, "unknown instance kind '" + value + "'");
    } else if (key == "n_sources") current().n_sources = to_int(value);
    else if (key == "n_targets") current().n_targets = to_int(value);
    else if (key == "n_edges") current().n_edges = to_int(value);
    else if (key == "n_nodes") current().n_nodes = to_int(value);
    else if (key == "path") current().path = value;
    else if (key == "instance_seed") current().instance_seed = to_u64(value);
    else if (key == "p_min") current().p_min = to_double(value);
    else if (key == "p_max") current().p_max = to_double(value);
    else if (key == "constraint") {
      auto& s = current();
      if (value == "size") s.constraint = ExperimentSpec::Constraint::Size;
      else if (value == "linear") s.constraint = ExperimentSpec::Constraint::Linear;
      else if (value == "random_vertex_hull") s.constraint = ExperimentSpec::Constraint::RandomVertexHull;
      else if (value == "box_linear") s.constraint = ExperimentSpec::Constraint::BoxLinear;
      else detail::spec_fail(lineno, "unknown constraint kind '" + value + "'");
    } else if (key == "k") current().k = to_double(value);
    else if (key == "a_min") current().a_min = to_double(value);
    else if (key == "a_max") current().a_max = to_double(value);
    else if (key == "n_vertices") current().n_vertices = to_int(value);
    else if (key == "constraint_seed") current().constraint_seed = to_u64(value);
    else if (key == "a") current().box_a = detail::parse_point_csv(value, lineno);
    else if (key == "b") current().box_b = to_double(value);
    else if (key == "c") current().box_c = detail::parse_point_csv(value, lineno);
    else if (key == "vertex_fraction") current().vertex_fraction = to_double(value);
    else if (key == "noise") {
      std::istringstream iss(value);
      std::string kind;
      iss >> kind;
      auto& s = current();
      if (kind == "exact") s.noise = NoiseMode::exact();
      else if (kind == "additive") {
        double d;
        if (!(iss >> d)) detail::spec_fail(lineno, "additive noise needs a delta");
        s.noise = NoiseMode::additive(d);
      } else if (kind == "batch") {
        int b;
        if (!(iss >> b)) detail::spec_fail(lineno, "batch noise needs a size");
        s.noise = NoiseMode::stochastic_batch(b);
      } else detail::spec_fail(lineno, "unknown noise kind '" + kind + "'");
    } else if (key == "repetitions") current().repetitions = to_int(value);
    else if (key == "base_seed") current().base_seed = to_u64(value);
    else if (key == "solver") current().solvers.push_back(detail::parse_solver_entry(value, lineno));
    else detail::spec_fail(lineno, "unknown key '" + key + "'");
  }
  if (specs.empty()) throw SpecParseError("spec parse error at line " + std::to_string(lineno) +
                                          ": no experiment blocks found");
  for (const ExperimentSpec& s : specs) {
    if (s.solvers.empty())
      throw SpecParseError("spec parse error: experiment '" + s.name + "' has no solvers");
  }
  return specs;
}

}  // namespace ldgm
