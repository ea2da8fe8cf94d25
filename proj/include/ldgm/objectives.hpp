#pragma once

// Monotone continuous objectives: budget allocation over a bipartite graph,
// the continuous generalization of maximum coverage, and synthetic fixtures.
// All shipped objectives are normalized (value 0 at the origin). Also houses
// forward-difference gradients and sampled estimators of the submodularity
// ratio alpha and the DR-submodularity ratio beta.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ldgm/geometry.hpp"
#include "ldgm/random.hpp"

namespace ldgm {

// Denominators below this are treated as degenerate in the ratio estimators.
inline constexpr double kDenomTol = 1e-12;

/// A value oracle plus optional analytic gradient and optional sum
/// decomposition f(x) == sum_t term(t, x), used by stochastic batching.
struct ObjectiveInstance {
  std::string name;
  int dimension = 0;
  std::function<double(const Point&)> value;
  std::function<Point(const Point&)> gradient;  // empty when unavailable
  std::optional<double> lipschitz_hint;

  int term_count = 0;  // 0: no decomposition
  std::function<double(int, const Point&)> term;
  std::function<Point(int, const Point&)> term_gradient;

  bool has_gradient() const { return static_cast<bool>(gradient); }
  bool has_terms() const { return term_count > 0 && static_cast<bool>(term); }

  void check_dim(const Point& x) const {
    if (static_cast<int>(x.size()) != dimension)
      throw std::invalid_argument(name + ": point dimension " + std::to_string(x.size()) +
                                  ", expected " + std::to_string(dimension));
  }
};

// ---------------------------------------------------------------------------
// Budget allocation: bipartite graph (sources -> targets), source i activates
// an incident target independently per allocated budget unit with probability
// p_i, so f(x) = sum_t [1 - prod_{i:(i,t) in E} (1-p_i)^{x_i}].

class BipartiteInstance {
 public:
  BipartiteInstance(int n_sources, int n_targets, std::vector<std::pair<int, int>> edges,
                    std::vector<double> activation_probs)
      : n_sources_(n_sources), n_targets_(n_targets), edges_(std::move(edges)),
        probs_(std::move(activation_probs)) {
    if (n_sources_ < 1 || n_targets_ < 1)
      throw std::invalid_argument("BipartiteInstance: node counts must be >= 1");
    if (static_cast<int>(probs_.size()) != n_sources_)
      throw std::invalid_argument("BipartiteInstance: one activation probability per source");
    for (double p : probs_) {
      if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("BipartiteInstance: probabilities must lie in [0,1]");
    }
    std::set<std::pair<int, int>> seen;
    for (const auto& [s, t] : edges_) {
      if (s < 0 || s >= n_sources_ || t < 0 || t >= n_targets_)
        throw std::invalid_argument("BipartiteInstance: edge endpoint out of range");
      if (!seen.insert({s, t}).second)
        throw std::invalid_argument("BipartiteInstance: duplicate edge");
    }
    log_surv_.resize(n_sources_);
    for (int i = 0; i < n_sources_; ++i) {
      log_surv_[i] = std::log1p(-probs_[i]);  // -inf when p == 1
      if (std::isinf(log_surv_[i])) any_certain_ = true;
    }
    // CSR over targets.
    target_off_.assign(n_targets_ + 1, 0);
    for (const auto& e : edges_) ++target_off_[e.second + 1];
    for (int t = 0; t < n_targets_; ++t) target_off_[t + 1] += target_off_[t];
    target_src_.resize(edges_.size());
    std::vector<int> cur(target_off_.begin(), target_off_.end() - 1);
    for (const auto& [s, t] : edges_) target_src_[cur[t]++] = s;
  }

  int n_sources() const { return n_sources_; }
  int n_targets() const { return n_targets_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<double>& activation_probs() const { return probs_; }
  bool has_certain_source() const { return any_certain_; }

  /// log (1-p_i)^{x_i} summed over sources incident to target t.
  double log_survival(int t, const Point& x) const {
    double s = 0.0;
    if (!any_certain_) {
      for (int k = target_off_[t]; k < target_off_[t + 1]; ++k) {
        const int i = target_src_[k];
        s += x[i] * log_surv_[i];
      }
      return s;
    }
    for (int k = target_off_[t]; k < target_off_[t + 1]; ++k) {
      const int i = target_src_[k];
      if (std::isinf(log_surv_[i])) {
        if (x[i] > 0.0) return -std::numeric_limits<double>::infinity();
        continue;  // (1-p)^0 == 1
      }
      s += x[i] * log_surv_[i];
    }
    return s;
  }

  double target_activation(int t, const Point& x) const { return -std::expm1(log_survival(t, x)); }

  int sources_begin(int t) const { return target_off_[t]; }
  int sources_end(int t) const { return target_off_[t + 1]; }
  int source_at(int k) const { return target_src_[k]; }
  double neg_log_surv(int i) const { return -log_surv_[i]; }

 private:
  int n_sources_, n_targets_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<double> probs_;
  std::vector<double> log_surv_;
  std::vector<int> target_off_, target_src_;
  bool any_certain_ = false;
};

/// Expected number of activated targets; isolated targets contribute 0.
inline double budget_allocation_value(const BipartiteInstance& inst, const Point& x) {
  if (static_cast<int>(x.size()) != inst.n_sources())
    throw std::invalid_argument("budget_allocation_value: dimension mismatch");
  double f = 0.0;
  for (int t = 0; t < inst.n_targets(); ++t) f += inst.target_activation(t, x);
  return f;
}

/// df/dx_i = sum_{t incident to i} -ln(1-p_i) * prod_j (1-p_j)^{x_j}.
/// Rejects instances with some p_i == 1 (the survival factor is then a step
/// function of x_i and the partial derivative does not exist).
inline Point budget_allocation_gradient(const BipartiteInstance& inst, const Point& x) {
  if (static_cast<int>(x.size()) != inst.n_sources())
    throw std::invalid_argument("budget_allocation_gradient: dimension mismatch");
  if (inst.has_certain_source())
    throw std::invalid_argument(
        "budget_allocation_gradient: undefined when some activation probability equals 1");
  Point g(inst.n_sources(), 0.0);
  for (int t = 0; t < inst.n_targets(); ++t) {
    const double surv = std::exp(inst.log_survival(t, x));
    for (int k = inst.sources_begin(t); k < inst.sources_end(t); ++k) {
      const int i = inst.source_at(k);
      g[i] += inst.neg_log_surv(i) * surv;
    }
  }
  return g;
}

inline ObjectiveInstance budget_objective(BipartiteInstance inst) {
  auto sh = std::make_shared<const BipartiteInstance>(std::move(inst));
  ObjectiveInstance f;
  f.name = "budget_allocation";
  f.dimension = sh->n_sources();
  f.value = [sh](const Point& x) { return budget_allocation_value(*sh, x); };
  if (!sh->has_certain_source()) {
    f.gradient = [sh](const Point& x) { return budget_allocation_gradient(*sh, x); };
  }
  f.term_count = sh->n_targets();
  f.term = [sh](int t, const Point& x) { return sh->target_activation(t, x); };
  if (!sh->has_certain_source()) {
    f.term_gradient = [sh](int t, const Point& x) {
      Point g(sh->n_sources(), 0.0);
      const double surv = std::exp(sh->log_survival(t, x));
      for (int k = sh->sources_begin(t); k < sh->sources_end(t); ++k) {
        const int i = sh->source_at(k);
        g[i] += sh->neg_log_surv(i) * surv;
      }
      return g;
    };
  }
  return f;
}

// ---------------------------------------------------------------------------
// Maximum coverage with confidences: set i reveals element e of C_i once the
// confidence x_i reaches the threshold theta_{i,e} in (0,1], and the objective
// is the size of the union of revealed elements. Piecewise constant, integer
// valued, monotone, not differentiable.

class CoverageInstance {
 public:
  CoverageInstance(int n_sets, int universe_size, std::vector<std::vector<int>> set_members,
                   std::vector<std::vector<double>> reveal_thresholds)
      : n_sets_(n_sets), universe_(universe_size), members_(std::move(set_members)),
        thresholds_(std::move(reveal_thresholds)) {
    if (n_sets_ < 1 || universe_ < 1)
      throw std::invalid_argument("CoverageInstance: sizes must be >= 1");
    if (static_cast<int>(members_.size()) != n_sets_ ||
        static_cast<int>(thresholds_.size()) != n_sets_)
      throw std::invalid_argument("CoverageInstance: one member/threshold list per set");
    sorted_.resize(n_sets_);
    by_element_.resize(universe_);
    for (int i = 0; i < n_sets_; ++i) {
      if (members_[i].size() != thresholds_[i].size())
        throw std::invalid_argument("CoverageInstance: members/thresholds length mismatch");
      for (std::size_t k = 0; k < members_[i].size(); ++k) {
        const int e = members_[i][k];
        const double th = thresholds_[i][k];
        if (e < 0 || e >= universe_)
          throw std::invalid_argument("CoverageInstance: element out of range");
        if (!(th > 0.0 && th <= 1.0))
          throw std::invalid_argument("CoverageInstance: thresholds must lie in (0,1]");
        sorted_[i].push_back({th, e});
        by_element_[e].push_back({i, th});
      }
      std::sort(sorted_[i].begin(), sorted_[i].end());
    }
  }

  int n_sets() const { return n_sets_; }
  int universe_size() const { return universe_; }
  const std::vector<std::vector<int>>& set_members() const { return members_; }
  const std::vector<std::vector<double>>& reveal_thresholds() const { return thresholds_; }

  static double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

  /// Union size of the revealed elements; x is clamped into [0,1]^n.
  double union_size(const Point& x) const {
    std::vector<char> covered(universe_, 0);
    int count = 0;
    for (int i = 0; i < n_sets_; ++i) {
      const double xi = clamp01(x[i]);
      auto end = std::upper_bound(sorted_[i].begin(), sorted_[i].end(),
                                  std::pair<double, int>{xi, universe_});
      for (auto it = sorted_[i].begin(); it != end; ++it) {
        if (!covered[it->second]) {
          covered[it->second] = 1;
          ++count;
        }
      }
    }
    return static_cast<double>(count);
  }

  /// Indicator that element e is revealed by some set under x.
  double element_covered(int e, const Point& x) const {
    for (const auto& [i, th] : by_element_[e]) {
      if (th <= clamp01(x[i])) return 1.0;
    }
    return 0.0;
  }

 private:
  int n_sets_, universe_;
  std::vector<std::vector<int>> members_;
  std::vector<std::vector<double>> thresholds_;
  std::vector<std::vector<std::pair<double, int>>> sorted_;     // per set, by threshold
  std::vector<std::vector<std::pair<int, double>>> by_element_; // per element: (set, threshold)
};

inline double max_coverage_value(const CoverageInstance& inst, const Point& x) {
  if (static_cast<int>(x.size()) != inst.n_sets())
    throw std::invalid_argument("max_coverage_value: dimension mismatch");
  return inst.union_size(x);
}

/// Builds a coverage instance from a simple undirected graph: C_i is the
/// closed neighborhood of node i, and each (set, element) pair draws an
/// independent uniform threshold on (0,1], so the reveal order of C_i is a
/// uniform random order as x_i grows from 0 to 1.
inline CoverageInstance make_coverage_instance(const std::vector<std::vector<int>>& adjacency,
                                               std::uint64_t seed) {
  const int n = static_cast<int>(adjacency.size());
  if (n < 1) throw std::invalid_argument("make_coverage_instance: empty graph");
  std::vector<std::vector<int>> members(n);
  for (int i = 0; i < n; ++i) {
    members[i].push_back(i);
    std::vector<int> nb = adjacency[i];
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    for (int j : nb) {
      if (j == i) continue;
      if (j < 0 || j >= n) throw std::invalid_argument("make_coverage_instance: bad neighbor id");
      members[i].push_back(j);
    }
  }
  Rng rng(seed);
  std::vector<std::vector<double>> thresholds(n);
  for (int i = 0; i < n; ++i) {
    thresholds[i].resize(members[i].size());
    for (double& th : thresholds[i]) th = rng.uniform_open01();
  }
  return CoverageInstance(n, n, std::move(members), std::move(thresholds));
}

inline ObjectiveInstance coverage_objective(CoverageInstance inst) {
  auto sh = std::make_shared<const CoverageInstance>(std::move(inst));
  ObjectiveInstance f;
  f.name = "max_coverage";
  f.dimension = sh->n_sets();
  f.value = [sh](const Point& x) { return max_coverage_value(*sh, x); };
  f.term_count = sh->universe_size();
  f.term = [sh](int e, const Point& x) { return sh->element_covered(e, x); };
  return f;
}

// ---------------------------------------------------------------------------
// Synthetic fixtures with known ratios.

/// <c, x> with c > 0. Modular: alpha = beta = 1.
inline ObjectiveInstance modular_objective(Point c) {
  if (c.empty()) throw std::invalid_argument("modular_objective: empty weights");
  for (double ci : c) {
    if (!(ci > 0.0)) throw std::invalid_argument("modular_objective: weights must be positive");
  }
  auto w = std::make_shared<const Point>(std::move(c));
  ObjectiveInstance f;
  f.name = "modular";
  f.dimension = static_cast<int>(w->size());
  f.value = [w](const Point& x) { return dot(*w, x); };
  f.gradient = [w](const Point&) { return *w; };
  return f;
}

/// sum_i c_i x_i^{g_i} with c > 0 and exponents in (0,1]. DR-submodular.
inline ObjectiveInstance separable_concave_objective(Point c, Point exponents) {
  if (c.empty() || c.size() != exponents.size())
    throw std::invalid_argument("separable_concave_objective: weight/exponent size mismatch");
  for (double ci : c) {
    if (!(ci > 0.0)) throw std::invalid_argument("separable_concave_objective: weights must be positive");
  }
  for (double g : exponents) {
    if (!(g > 0.0 && g <= 1.0))
      throw std::invalid_argument("separable_concave_objective: exponents must lie in (0,1]");
  }
  auto w = std::make_shared<const Point>(std::move(c));
  auto ex = std::make_shared<const Point>(std::move(exponents));
  ObjectiveInstance f;
  f.name = "separable_concave";
  f.dimension = static_cast<int>(w->size());
  f.value = [w, ex](const Point& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < w->size(); ++i) s += (*w)[i] * std::pow(x[i], (*ex)[i]);
    return s;
  };
  f.gradient = [w, ex](const Point& x) {
    Point g(w->size());
    for (std::size_t i = 0; i < w->size(); ++i)
      g[i] = (*w)[i] * (*ex)[i] * std::pow(x[i], (*ex)[i] - 1.0);
    return g;
  };
  return f;
}

/// <c, x> - x^T H x / 2 with H entrywise >= 0. Monotone only on boxes where
/// the gradient stays non-negative; callers choose the domain accordingly.
inline ObjectiveInstance quadratic_objective(Point c, std::vector<Point> H) {
  const std::size_t n = c.size();
  if (n == 0 || H.size() != n)
    throw std::invalid_argument("quadratic_objective: H must be n x n");
  for (const Point& row : H) {
    if (row.size() != n) throw std::invalid_argument("quadratic_objective: H must be n x n");
    for (double h : row) {
      if (!(h >= 0.0)) throw std::invalid_argument("quadratic_objective: H must be entrywise >= 0");
    }
  }
  auto w = std::make_shared<const Point>(std::move(c));
  auto hm = std::make_shared<const std::vector<Point>>(std::move(H));
  ObjectiveInstance f;
  f.name = "quadratic_test";
  f.dimension = static_cast<int>(n);
  f.value = [w, hm](const Point& x) {
    double s = dot(*w, x);
    for (std::size_t i = 0; i < x.size(); ++i) {
      double hi = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) hi += (*hm)[i][j] * x[j];
      s -= 0.5 * x[i] * hi;
    }
    return s;
  };
  f.gradient = [w, hm](const Point& x) {
    Point g = *w;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::size_t j = 0; j < x.size(); ++j)
        g[i] -= 0.5 * ((*hm)[i][j] + (*hm)[j][i]) * x[j];
    }
    return g;
  };
  return f;
}

// ---------------------------------------------------------------------------

/// Per-coordinate forward difference [f(x + a*chi_i) - f(x)] / a using n+1
/// evaluations; the base value f(x) is shared across coordinates.
inline Point forward_difference_gradient(const std::function<double(const Point&)>& f,
                                         const Point& x, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("forward_difference_gradient: step must be positive");
  const double base = f(x);
  Point g(x.size());
  Point probe = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + a;
    g[i] = (f(probe) - base) / a;
    probe[i] = x[i];
  }
  return g;
}

// ---------------------------------------------------------------------------
// Sampled ratio estimators. Both sample tuples (x <= y, coordinate i,
// increment k) inside [0, box] and track the minimum marginal-gain ratio
//   [f(x + k chi_i) - f(x)] / [f(y + k chi_i) - f(y)],
// an upper bound of the defining infimum. The submodularity-ratio estimator
// restricts to tuples with x_i = y_i by projecting the drawn x; the
// DR estimator additionally scores the unprojected tuple, so on a shared
// seed the alpha estimate is >= the beta estimate by construction.

struct RatioEstimate {
  double value = 1.0;
  long long samples_used = 0;
  Point witness_x, witness_y;
  double witness_k = 0.0;
  int witness_i = 0;
};

namespace detail {

inline RatioEstimate estimate_ratio(const ObjectiveInstance& f, const Point& domain_box,
                                    int n_samples, std::uint64_t seed, bool equal_coord_only) {
  if (n_samples < 1) throw std::invalid_argument("ratio estimate: n_samples must be >= 1");
  if (static_cast<int>(domain_box.size()) != f.dimension)
    throw std::invalid_argument("ratio estimate: box dimension mismatch");
  for (double b : domain_box) {
    if (!(b > 0.0)) throw std::invalid_argument("ratio estimate: box must be positive");
  }
  const int n = f.dimension;
  Rng rng(seed);
  RatioEstimate est;
  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < n_samples; ++s) {
    Point y(n), x(n);
    for (int i = 0; i < n; ++i) y[i] = domain_box[i] * rng.uniform01();
    for (int i = 0; i < n; ++i) x[i] = y[i] * rng.uniform01();
    const int i = rng.uniform_int(n);
    const double k = (domain_box[i] - y[i]) * rng.uniform_open01();
    if (!(k > 0.0)) continue;

    Point y_plus = y;
    y_plus[i] += k;
    const double den = f.value(y_plus) - f.value(y);
    if (std::abs(den) < kDenomTol) continue;

    bool counted = false;
    auto consider = [&](const Point& base) {
      Point base_plus = base;
      base_plus[i] += k;
      const double num = f.value(base_plus) - f.value(base);
      const double r = num / den;
      counted = true;
      if (r < best) {
        best = r;
        est.witness_x = base;
        est.witness_y = y;
        est.witness_k = k;
        est.witness_i = i;
      }
    };
    if (!equal_coord_only) consider(x);
    Point proj = x;
    proj[i] = y[i];
    consider(proj);
    if (counted) ++est.samples_used;
  }
  if (est.samples_used == 0)
    throw std::runtime_error("degenerate objective: every ratio sample was skipped");
  est.value = std::min(1.0, std::max(0.0, best));
  return est;
}

}  // namespace detail

/// Sampled upper bound of the DR-submodularity ratio beta (Definition over
/// all x <= y). 1 for DR-submodular objectives.
inline RatioEstimate estimate_dr_ratio(const ObjectiveInstance& f, const Point& domain_box,
                                       int n_samples, std::uint64_t seed) {
  return detail::estimate_ratio(f, domain_box, n_samples, seed, false);
}

/// Sampled upper bound of the submodularity ratio alpha (tuples restricted
/// to x_i = y_i). Always >= estimate_dr_ratio on the same seed.
inline RatioEstimate estimate_submodularity_ratio(const ObjectiveInstance& f,
                                                  const Point& domain_box, int n_samples,
                                                  std::uint64_t seed) {
  return detail::estimate_ratio(f, domain_box, n_samples, seed, true);
}

// ---------------------------------------------------------------------------
// Loaders.

struct EdgeList {
  int n_sources = 0;
  int n_targets = 0;
  std::vector<std::pair<int, int>> edges;
};

/// Bipartite edge list: one "source<TAB>target" pair per line, 0-based ids,
/// '#' comments. Node counts are inferred as max id + 1.
inline EdgeList load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list: " + path);
  EdgeList el;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream iss(line);
    long long s, t;
    if (!(iss >> s)) continue;  // blank
    if (!(iss >> t) || s < 0 || t < 0)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": malformed edge");
    el.edges.push_back({static_cast<int>(s), static_cast<int>(t)});
    el.n_sources = std::max(el.n_sources, static_cast<int>(s) + 1);
    el.n_targets = std::max(el.n_targets, static_cast<int>(t) + 1);
  }
  if (el.edges.empty()) throw std::runtime_error(path + ": no edges");
  return el;
}

inline std::vector<double> draw_probs(int n, std::uint64_t seed, double lo, double hi) {
  Rng rng(seed);
  std::vector<double> p(n);
  for (double& v : p) v = rng.uniform(lo, hi);
  return p;
}

inline BipartiteInstance load_bipartite_instance(const std::string& path, std::uint64_t p_seed,
                                                 double p_min = 0.0, double p_max = 0.4) {
  EdgeList el = load_edge_list(path);
  return BipartiteInstance(el.n_sources, el.n_targets, std::move(el.edges),
                           draw_probs(el.n_sources, p_seed, p_min, p_max));
}

/// DIMACS-like graph: header "p edge <n> <m>", edge lines "e <u> <v>" with
/// 1-based ids; unknown line types are ignored. Returns an adjacency list of
/// the simple undirected graph (duplicates and self-loops dropped).
inline std::vector<std::vector<int>> load_dimacs_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  int n = -1;
  std::set<std::pair<int, int>> edges;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream iss(line);
    std::string kind;
    if (!(iss >> kind)) continue;
    if (kind == "p") {
      std::string fmt;
      long long nn, mm;
      if (!(iss >> fmt >> nn >> mm) || nn < 1)
        throw std::runtime_error(path + ":" + std::to_string(lineno) + ": malformed problem line");
      n = static_cast<int>(nn);
    } else if (kind == "e") {
      long long u, v;
      if (!(iss >> u >> v))
        throw std::runtime_error(path + ":" + std::to_string(lineno) + ": malformed edge line");
      if (n < 0)
        throw std::runtime_error(path + ":" + std::to_string(lineno) + ": edge before problem line");
      if (u < 1 || u > n || v < 1 || v > n)
        throw std::runtime_error(path + ":" + std::to_string(lineno) + ": node id out of range");
      if (u == v) continue;
      const int a = static_cast<int>(std::min(u, v)) - 1;
      const int b = static_cast<int>(std::max(u, v)) - 1;
      edges.insert({a, b});
    }
    // other line types ignored
  }
  if (n < 0) throw std::runtime_error(path + ": missing problem line");
  std::vector<std::vector<int>> adj(n);
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

}  // namespace ldgm
