// Command-line front door: solve single instances, run benchmark specs,
// compute frontiers, estimate submodularity ratios, probe noise models.
// Exit codes: 0 success, 1 runtime/domain error, 2 usage/parse error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ldgm/ldgm.hpp"

namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string fmt_point(const ldgm::Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ", ";
    s += fmt(p[i]);
  }
  return s + ")";
}

// Sum of arbitrary positive powers; exponents above 1 give increasing
// marginals, handy for probing the ratio estimators on non-DR objectives.
ldgm::ObjectiveInstance make_power(std::vector<double> c, std::vector<double> exponents) {
  if (c.empty() || c.size() != exponents.size())
    throw std::invalid_argument("power objective needs matching --c and --exponents");
  for (double e : exponents) {
    if (!(e > 0.0)) throw std::invalid_argument("power objective: exponents must be positive");
  }
  for (double ci : c) {
    if (!(ci > 0.0)) throw std::invalid_argument("power objective: weights must be positive");
  }
  auto w = std::make_shared<const std::vector<double>>(std::move(c));
  auto ex = std::make_shared<const std::vector<double>>(std::move(exponents));
  ldgm::ObjectiveInstance f;
  f.name = "power";
  f.dimension = static_cast<int>(w->size());
  f.value = [w, ex](const ldgm::Point& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < w->size(); ++i) s += (*w)[i] * std::pow(x[i], (*ex)[i]);
    return s;
  };
  return f;
}

struct ObjectiveFlags {
  std::string kind = "modular";
  std::vector<double> c;
  std::vector<double> exponents;
  std::vector<double> h_diag;
  std::string edges_path, graph_path;
  int n_sources = 0, n_targets = 0, n_edges = 0, n_nodes = 0;
  std::uint64_t instance_seed = 0;
  double p_min = 0.0, p_max = 0.4;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--objective", kind,
                    "modular | concave | power | quadratic | budget-synthetic | budget-file | "
                    "coverage-synthetic | coverage-file")
        ->required();
    cmd->add_option("--c", c, "weights, comma-separated")->delimiter(',');
    cmd->add_option("--exponents", exponents, "concave exponents in (0,1]")->delimiter(',');
    cmd->add_option("--h-diag", h_diag, "diagonal of the quadratic penalty")->delimiter(',');
    cmd->add_option("--edges", edges_path, "bipartite edge-list file");
    cmd->add_option("--graph", graph_path, "DIMACS-like graph file");
    cmd->add_option("--n-sources", n_sources);
    cmd->add_option("--n-targets", n_targets);
    cmd->add_option("--n-edges", n_edges);
    cmd->add_option("--n-nodes", n_nodes);
    cmd->add_option("--instance-seed", instance_seed);
    cmd->add_option("--p-min", p_min);
    cmd->add_option("--p-max", p_max);
  }

  ldgm::ObjectiveInstance build() const {
    using namespace ldgm;
    if (kind == "modular") return modular_objective(c);
    if (kind == "concave") return separable_concave_objective(c, exponents);
    if (kind == "power") return make_power(c, exponents);
    if (kind == "quadratic") {
      std::vector<Point> H(c.size(), Point(c.size(), 0.0));
      if (h_diag.size() != c.size())
        throw std::invalid_argument("quadratic objective needs --h-diag of the same length as --c");
      for (std::size_t i = 0; i < c.size(); ++i) H[i][i] = h_diag[i];
      return quadratic_objective(c, H);
    }
    if (kind == "budget-synthetic")
      return budget_objective(
          random_bipartite_instance(n_sources, n_targets, n_edges, instance_seed, p_min, p_max));
    if (kind == "budget-file")
      return budget_objective(load_bipartite_instance(edges_path, instance_seed, p_min, p_max));
    if (kind == "coverage-synthetic") {
      auto graph = random_graph(n_nodes, n_edges, mix_seed(instance_seed, 0, 1));
      return coverage_objective(make_coverage_instance(graph, mix_seed(instance_seed, 0, 2)));
    }
    if (kind == "coverage-file")
      return coverage_objective(make_coverage_instance(load_dimacs_graph(graph_path), instance_seed));
    throw std::invalid_argument("unknown objective kind: " + kind);
  }
};

ldgm::NoiseMode noise_from(const std::string& kind, double delta, int batch) {
  if (kind == "exact") return ldgm::NoiseMode::exact();
  if (kind == "additive") return ldgm::NoiseMode::additive(delta);
  if (kind == "batch") return ldgm::NoiseMode::stochastic_batch(batch);
  throw std::invalid_argument("unknown noise kind: " + kind);
}

int usage_error(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"derivative-free maximization of monotone DR-submodular functions "
               "over convex polytopes"};
  app.require_subcommand(1);

  // --- solve ---------------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "run one solver on one instance");
  ObjectiveFlags solve_obj;
  solve_obj.add_to(solve);
  std::string constraint = "simplex";
  std::vector<double> con_a, box_c;
  double con_b = 1.0, con_k = 1.0;
  int hull_vertices = 100;
  std::uint64_t constraint_seed = 0;
  std::string vertices_file;
  solve->add_option("--constraint", constraint, "simplex | size | hull | box | vertices");
  solve->add_option("--a", con_a, "simplex coefficients")->delimiter(',');
  solve->add_option("--b", con_b, "simplex bound");
  solve->add_option("--k", con_k, "budget (size/hull constraints)");
  solve->add_option("--n-vertices", hull_vertices);
  solve->add_option("--constraint-seed", constraint_seed);
  solve->add_option("--box-c", box_c, "box upper bound")->delimiter(',');
  solve->add_option("--vertices", vertices_file, "vertex-set file (constraint vertices)");
  std::string solver_id;
  ldgm::SolverConfig cfg;
  std::string rho = "power", noise_kind = "exact";
  double delta = 0.0, fd_a = 0.0;
  int batch = 0, gamma = 1, l_steps = 0;
  std::uint64_t seed = 0;
  std::string out_path;
  solve->add_option("--solver", solver_id,
                    "ldgm | ldgm-g | generalized-ldgm | ldgm-box | fw | scg | best-vertex")
      ->required();
  solve->add_option("--l", l_steps, "number of steps / iterations")->required();
  auto* gamma_opt = solve->add_option("--gamma", gamma, "look-ahead (generalized-ldgm only)");
  solve->add_option("--rho", rho, "one | power");
  auto* fd_opt = solve->add_option("--fd-a", fd_a, "forward-difference step (fw/scg)");
  solve->add_option("--noise", noise_kind, "exact | additive | batch");
  solve->add_option("--delta", delta, "additive noise amplitude");
  solve->add_option("--batch-size", batch, "stochastic batch size");
  solve->add_option("--seed", seed, "oracle seed");
  solve->add_option("--out", out_path, "trajectory CSV path");

  // --- bench ---------------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "run experiment spec file, emit CSVs");
  std::string spec_path, out_dir = ".";
  bench->add_option("--spec", spec_path, "experiment spec file")->required();
  bench->add_option("--out", out_dir, "output directory");

  // --- frontier ------------------------------------------------------------
  auto* front = app.add_subcommand("frontier", "frontier of a vertex-set file");
  std::string vertices_path, frontier_out;
  front->add_option("--vertices", vertices_path, "vertex-set file")->required();
  front->add_option("--out", frontier_out, "write frontier to this file");

  // --- verify-ratio ----------------------------------------------------------
  auto* ratio = app.add_subcommand("verify-ratio", "sampled alpha/beta estimates");
  ObjectiveFlags ratio_obj;
  ratio_obj.add_to(ratio);
  std::vector<double> ratio_box;
  int samples = 2000;
  std::uint64_t ratio_seed = 0;
  ratio->add_option("--box", ratio_box, "sampling box (defaults to all-ones)")->delimiter(',');
  ratio->add_option("--samples", samples);
  ratio->add_option("--seed", ratio_seed);

  // --- noise-stats -----------------------------------------------------------
  auto* nstats = app.add_subcommand("noise-stats", "mean/variance of an oracle at a point");
  ObjectiveFlags nstats_obj;
  nstats_obj.add_to(nstats);
  std::vector<double> at_point;
  std::string ns_noise = "exact";
  double ns_delta = 0.0;
  int ns_batch = 0, reps = 10000;
  std::uint64_t ns_seed = 0;
  nstats->add_option("--at", at_point, "evaluation point")->delimiter(',');
  nstats->add_option("--noise", ns_noise, "exact | additive | batch");
  nstats->add_option("--delta", ns_delta);
  nstats->add_option("--batch-size", ns_batch);
  nstats->add_option("--reps", reps);
  nstats->add_option("--seed", ns_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) {
      if (gamma_opt->count() > 0 && solver_id != "generalized-ldgm")
        return usage_error("--gamma applies only to --solver generalized-ldgm");
      if (fd_opt->count() > 0 && solver_id != "fw" && solver_id != "scg")
        return usage_error("--fd-a applies only to --solver fw/scg");
      if (constraint == "box" && solver_id != "ldgm-box")
        return usage_error("--constraint box supports only --solver ldgm-box");
      if (constraint != "box" && solver_id == "ldgm-box")
        return usage_error("--solver ldgm-box requires --constraint box");
      bool known = false;
      for (const std::string& id : ldgm::solver_ids()) known = known || id == solver_id;
      if (!known) return usage_error("unknown solver id: " + solver_id);
      if ((constraint == "simplex" || constraint == "box") && con_a.empty())
        return usage_error("--constraint " + constraint + " needs --a and --b");
      if (constraint == "box" && box_c.empty())
        return usage_error("--constraint box needs --box-c");
      if (constraint == "vertices" && vertices_file.empty())
        return usage_error("--constraint vertices needs --vertices");

      cfg.l = l_steps;
      cfg.gamma = gamma;
      cfg.rho = rho == "one" ? ldgm::RhoSchedule::ConstantOne : ldgm::RhoSchedule::Power;
      if (fd_opt->count() > 0) cfg.fd_step = fd_a;

      const ldgm::ObjectiveInstance obj = solve_obj.build();
      ldgm::ExperimentSpec spec;  // carries noise + box parameters for dispatch
      spec.noise = noise_from(noise_kind, delta, batch);

      std::optional<ldgm::VPolytope> poly;
      if (constraint == "simplex") {
        poly = ldgm::simplex_vertices(con_a, con_b);
      } else if (constraint == "size") {
        poly = ldgm::simplex_vertices(ldgm::Point(obj.dimension, 1.0), con_k);
      } else if (constraint == "hull") {
        poly = ldgm::generate_random_vertices(obj.dimension, hull_vertices, con_k, constraint_seed);
      } else if (constraint == "box") {
        spec.constraint = ldgm::ExperimentSpec::Constraint::BoxLinear;
        spec.box_a = con_a;
        spec.box_b = con_b;
        spec.box_c = box_c;
        poly = ldgm::simplex_vertices(con_a, con_b);
      } else if (constraint == "vertices") {
        poly = ldgm::load_vertex_file(vertices_file);
      } else {
        return usage_error("unknown constraint kind: " + constraint);
      }

      const ldgm::SolverReport report =
          ldgm::run_solver_once(solver_id, obj, *poly, spec, cfg, seed);
      std::cout << "f = " << fmt(report.final_value()) << "\n";
      std::cout << "x = " << fmt_point(report.final_point) << "\n";
      if (report.truncated) std::cout << "truncated = true\n";
      if (!out_path.empty()) {
        ldgm::write_trajectory_csv(report, solver_id, out_path);
        std::cout << "wrote " << out_path << "\n";
      }
      return 0;
    }

    if (bench->parsed()) {
      std::vector<ldgm::ExperimentSpec> specs;
      try {
        specs = ldgm::load_experiment_specs(spec_path);
      } catch (const ldgm::SpecParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
      }
      std::filesystem::create_directories(out_dir);
      for (const ldgm::ExperimentSpec& spec : specs) {
        const ldgm::AggregateResult result = ldgm::run_experiment(spec);
        const std::string csv = out_dir + "/" + spec.name + ".csv";
        ldgm::write_csv(result, csv);
        long long runs = 0, failures = 0;
        for (const auto& agg : result.solvers) {
          runs += static_cast<long long>(agg.final_values.size());
          failures += static_cast<long long>(agg.errors.size());
        }
        std::cout << "wrote " << csv << " (" << result.solvers.size() << " solvers, " << runs
                  << " runs";
        if (failures) std::cout << ", " << failures << " failed";
        std::cout << ")\n";
      }
      return 0;
    }

    if (front->parsed()) {
      const ldgm::VPolytope poly = ldgm::load_vertex_file(vertices_path);
      std::vector<ldgm::Point> pts = ldgm::frontier(poly.vertices());
      char buf[64];
      for (const ldgm::Point& p : pts) {
        for (std::size_t i = 0; i < p.size(); ++i) {
          std::snprintf(buf, sizeof(buf), "%.17g", p[i]);
          std::cout << (i ? " " : "") << buf;
        }
        std::cout << "\n";
      }
      if (!frontier_out.empty()) ldgm::write_vertex_file(frontier_out, pts);
      return 0;
    }

    if (ratio->parsed()) {
      const ldgm::ObjectiveInstance obj = ratio_obj.build();
      ldgm::Point box = ratio_box.empty() ? ldgm::Point(obj.dimension, 1.0) : ratio_box;
      const ldgm::RatioEstimate alpha =
          ldgm::estimate_submodularity_ratio(obj, box, samples, ratio_seed);
      const ldgm::RatioEstimate beta = ldgm::estimate_dr_ratio(obj, box, samples, ratio_seed);
      std::cout << "alpha = " << fmt(alpha.value) << " (samples " << alpha.samples_used << ")\n";
      std::cout << "alpha witness: i=" << alpha.witness_i << " k=" << fmt(alpha.witness_k)
                << " x=" << fmt_point(alpha.witness_x) << " y=" << fmt_point(alpha.witness_y)
                << "\n";
      std::cout << "beta = " << fmt(beta.value) << " (samples " << beta.samples_used << ")\n";
      std::cout << "beta witness: i=" << beta.witness_i << " k=" << fmt(beta.witness_k)
                << " x=" << fmt_point(beta.witness_x) << " y=" << fmt_point(beta.witness_y)
                << "\n";
      return 0;
    }

    if (nstats->parsed()) {
      const ldgm::ObjectiveInstance obj = nstats_obj.build();
      ldgm::Point x = at_point.empty() ? ldgm::Point(obj.dimension, 0.0) : at_point;
      ldgm::ValueOracle oracle(obj, noise_from(ns_noise, ns_delta, ns_batch), ns_seed);
      const auto [mean, variance] = ldgm::measure_noise_stats(oracle, x, reps);
      std::cout << "exact = " << fmt(oracle.exact(x)) << "\n";
      std::cout << "mean = " << fmt(mean) << "\n";
      std::cout << "variance = " << fmt(variance) << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
