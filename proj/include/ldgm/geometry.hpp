#pragma once

// Vectors, dominance, polytopes, frontiers and step sets. Points live in the
// non-negative orthant; a polytope is the convex hull of an explicit vertex
// list, optionally carrying the half-space form {x : a^T x <= b, x >= 0} it
// was built from (needed for grid enumeration).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ldgm {

using Point = std::vector<double>;

// Tolerances. Dominance and frontiers use exact comparison; these apply only
// to inner products and constraint slack accumulated by repeated addition.
inline constexpr double kOrthTol = 1e-12;
inline constexpr double kFeasTol = 1e-9;

namespace detail {

inline void check_same_dim(const Point& x, const Point& y, const char* what) {
  if (x.size() != y.size()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(x.size()) + " vs " + std::to_string(y.size()) + ")");
  }
}

}  // namespace detail

inline double dot(const Point& x, const Point& y) {
  detail::check_same_dim(x, y, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline double norm(const Point& x) { return std::sqrt(dot(x, x)); }

inline Point add(const Point& x, const Point& y) {
  detail::check_same_dim(x, y, "add");
  Point r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
  return r;
}

inline void add_in_place(Point& x, const Point& y) {
  detail::check_same_dim(x, y, "add");
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
}

inline Point scale(const Point& x, double s) {
  Point r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = s * x[i];
  return r;
}

/// x + s*e, elementwise.
inline Point add_scaled(const Point& x, double s, const Point& e) {
  detail::check_same_dim(x, e, "add_scaled");
  Point r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + s * e[i];
  return r;
}

inline bool lex_less(const Point& x, const Point& y) {
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

/// Strict componentwise dominance: y >= x in every coordinate and y != x.
inline bool dominates(const Point& y, const Point& x) {
  detail::check_same_dim(y, x, "dominates");
  bool strict = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (y[i] < x[i]) return false;
    if (y[i] > x[i]) strict = true;
  }
  return strict;
}

/// Indices of the frontier of a point set: members not strictly dominated by
/// any other member, in order of first appearance. Exact duplicates collapse
/// to their first occurrence. Comparison is exact, no tolerance.
inline std::vector<int> frontier_indices(const std::vector<Point>& pts) {
  if (pts.empty()) throw std::invalid_argument("frontier: empty point set");
  const std::size_t n = pts[0].size();
  for (const Point& p : pts) {
    if (p.size() != n) throw std::invalid_argument("frontier: mixed dimensions");
  }
  std::vector<int> keep;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < pts.size() && !drop; ++j) {
      if (j < i && pts[j] == pts[i]) drop = true;           // duplicate collapse
      if (dominates(pts[j], pts[i])) drop = true;
    }
    if (!drop) keep.push_back(static_cast<int>(i));
  }
  return keep;
}

inline std::vector<Point> frontier(const std::vector<Point>& pts) {
  std::vector<Point> out;
  for (int i : frontier_indices(pts)) out.push_back(pts[i]);
  return out;
}

/// Half-space form {x : a^T x <= b, x >= 0} with a > 0, b > 0.
struct SimplexForm {
  Point a;
  double b = 0.0;
};

/// Convex hull of an explicit vertex list in the non-negative orthant.
/// Immutable; the frontier index set is computed once at construction.
class VPolytope {
 public:
  explicit VPolytope(std::vector<Point> vertices, std::optional<SimplexForm> form = std::nullopt)
      : vertices_(std::move(vertices)), form_(std::move(form)) {
    if (vertices_.empty()) throw std::invalid_argument("VPolytope: empty vertex set");
    dim_ = static_cast<int>(vertices_[0].size());
    if (dim_ < 1) throw std::invalid_argument("VPolytope: zero-dimensional vertex");
    for (const Point& v : vertices_) {
      if (static_cast<int>(v.size()) != dim_)
        throw std::invalid_argument("VPolytope: mixed vertex dimensions");
      for (double c : v) {
        if (!(c >= 0.0)) throw std::invalid_argument("VPolytope: negative vertex coordinate");
      }
    }
    radius_ = 0.0;
    for (const Point& v : vertices_) radius_ = std::max(radius_, norm(v));
    frontier_idx_ = ldgm::frontier_indices(vertices_);
  }

  const std::vector<Point>& vertices() const { return vertices_; }
  int dimension() const { return dim_; }

  /// Max Euclidean norm over vertices; bounds every point of the hull.
  double radius_bound() const { return radius_; }

  const std::vector<int>& frontier_indices() const { return frontier_idx_; }
  const std::optional<SimplexForm>& simplex_form() const { return form_; }

 private:
  std::vector<Point> vertices_;
  std::optional<SimplexForm> form_;
  int dim_ = 0;
  double radius_ = 0.0;
  std::vector<int> frontier_idx_;
};

/// The n+1 vertices of {x : a^T x <= b, x >= 0}: the origin plus (b/a_i) on
/// each axis, in coordinate order.
inline VPolytope simplex_vertices(const Point& a, double b) {
  const int n = static_cast<int>(a.size());
  if (n < 1) throw std::invalid_argument("simplex_vertices: empty coefficient vector");
  for (double ai : a) {
    if (!(ai > 0.0)) throw std::invalid_argument("simplex_vertices: coefficients must be positive");
  }
  if (!(b > 0.0)) throw std::invalid_argument("simplex_vertices: bound must be positive");
  std::vector<Point> verts;
  verts.reserve(n + 1);
  verts.emplace_back(n, 0.0);
  for (int i = 0; i < n; ++i) {
    Point v(n, 0.0);
    v[i] = b / a[i];
    verts.push_back(std::move(v));
  }
  return VPolytope(std::move(verts), SimplexForm{a, b});
}

/// Scaled frontier: one step (1/l)*v per frontier vertex v, with the index of
/// its originating vertex. Steps are recomputed deterministically from the
/// vertex list, so step == scale(vertices[source], 1/l) bit for bit.
struct StepSet {
  std::vector<Point> steps;
  int l = 0;
  std::vector<int> source_indices;  // into the polytope's vertex list

  int count() const { return static_cast<int>(steps.size()); }
};

inline StepSet step_set(const VPolytope& P, int l) {
  if (l < 1) throw std::invalid_argument("step_set: l must be >= 1");
  StepSet s;
  s.l = l;
  const double inv = 1.0 / static_cast<double>(l);
  for (int idx : P.frontier_indices()) {
    s.steps.push_back(scale(P.vertices()[idx], inv));
    s.source_indices.push_back(idx);
  }
  return s;
}

/// True iff every pair of distinct steps has |inner product| <= tol.
inline bool is_orthogonal_step_set(const StepSet& s, double tol = kOrthTol) {
  for (std::size_t i = 0; i < s.steps.size(); ++i) {
    for (std::size_t j = i + 1; j < s.steps.size(); ++j) {
      if (std::abs(dot(s.steps[i], s.steps[j])) > tol) return false;
    }
  }
  return true;
}

/// Optional upper bound c > 0; absent means unconstrained.
class BoxConstraint {
 public:
  BoxConstraint() = default;
  explicit BoxConstraint(Point upper) : upper_(std::move(upper)) {
    for (double c : *upper_) {
      if (!(c > 0.0)) throw std::invalid_argument("BoxConstraint: upper bound must be positive");
    }
  }

  bool present() const { return upper_.has_value(); }
  const Point& upper() const { return *upper_; }

 private:
  std::optional<Point> upper_;
};

inline bool within_box(const Point& x, const BoxConstraint& c, double tol = kFeasTol) {
  if (!c.present()) return true;
  detail::check_same_dim(x, c.upper(), "within_box");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > c.upper()[i] + tol) return false;
  }
  return true;
}

/// Visits every lattice point (coordinates multiples of `resolution`) with
/// a^T x <= b + tol, intersected with the box when present. Coordinate 0
/// varies slowest, so points arrive in lexicographic order.
template <typename Fn>
inline void for_each_grid_point(const SimplexForm& form, double resolution,
                                const BoxConstraint& box, Fn&& fn) {
  if (!(resolution > 0.0)) throw std::invalid_argument("grid: resolution must be positive");
  const int n = static_cast<int>(form.a.size());
  if (box.present() && static_cast<int>(box.upper().size()) != n)
    throw std::invalid_argument("grid: box dimension mismatch");
  Point x(n, 0.0);
  auto rec = [&](auto&& self, int i, double used) -> void {
    if (i == n) {
      fn(static_cast<const Point&>(x));
      return;
    }
    for (long long step = 0;; ++step) {
      const double v = static_cast<double>(step) * resolution;
      if (used + form.a[i] * v > form.b + kFeasTol) break;
      if (box.present() && v > box.upper()[i] + kFeasTol) break;
      x[i] = v;
      self(self, i + 1, used + form.a[i] * v);
    }
    x[i] = 0.0;
  };
  rec(rec, 0, 0.0);
}

/// Materialized grid. Only polytopes carrying their simplex H-form are
/// supported; hull membership for arbitrary vertex sets is out of scope.
inline std::vector<Point> grid_points(const VPolytope& P, double resolution,
                                      const BoxConstraint& box = BoxConstraint()) {
  if (!P.simplex_form())
    throw std::invalid_argument("grid_points: polytope has no simplex half-space form");
  std::vector<Point> out;
  for_each_grid_point(*P.simplex_form(), resolution, box,
                      [&](const Point& p) { out.push_back(p); });
  return out;
}

// ---------------------------------------------------------------------------
// Vertex-set file format: one vertex per line, whitespace-separated decimal
// coordinates, '#' comments, blank lines ignored. Dimension is inferred from
// the first vertex line.

inline VPolytope load_vertex_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open vertex file: " + path);
  std::vector<Point> verts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream iss(line);
    Point v;
    double c;
    while (iss >> c) v.push_back(c);
    if (!iss.eof()) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": malformed coordinate");
    }
    if (v.empty()) continue;
    if (!verts.empty() && v.size() != verts[0].size()) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected " +
                               std::to_string(verts[0].size()) + " coordinates, got " +
                               std::to_string(v.size()));
    }
    verts.push_back(std::move(v));
  }
  if (verts.empty()) throw std::runtime_error(path + ": no vertices");
  return VPolytope(std::move(verts));
}

inline void write_vertex_file(const std::string& path, const std::vector<Point>& pts) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write vertex file: " + path);
  char buf[64];
  for (const Point& p : pts) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", p[i]);
      if (i) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace ldgm
