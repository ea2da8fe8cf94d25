#pragma once

// Test-only oracles, kept independent of the library code paths they check:
// a literal pairwise dominance frontier, exhaustive multiset search for the
// best l-step lattice point, central differences, and an empirical Lipschitz
// probe on the simplex frontier face.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "ldgm/geometry.hpp"
#include "ldgm/objectives.hpp"
#include "ldgm/random.hpp"

namespace testsup {

using ldgm::Point;

// Literal pairwise check: keep the first occurrence of every distinct point
// that no other member strictly dominates (>= everywhere, > somewhere).
inline std::vector<Point> oracle_undominated(const std::vector<Point>& pts) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool seen = false;
    for (std::size_t j = 0; j < i && !seen; ++j) seen = pts[j] == pts[i];
    if (seen) continue;
    bool dominated = false;
    for (std::size_t j = 0; j < pts.size() && !dominated; ++j) {
      bool ge = true, gt = false;
      for (std::size_t k = 0; k < pts[i].size(); ++k) {
        if (pts[j][k] < pts[i][k]) ge = false;
        if (pts[j][k] > pts[i][k]) gt = true;
      }
      dominated = ge && gt;
    }
    if (!dominated) out.push_back(pts[i]);
  }
  return out;
}

// Exhaustive search over every multiset of exactly l steps: the lattice
// optimum v* of the greedy analysis. C(m+l-1, l) candidates.
inline std::pair<Point, double> best_multiset(const std::function<double(const Point&)>& f,
                                              const std::vector<Point>& steps, int l) {
  Point zero(steps[0].size(), 0.0);
  Point best_point = zero;
  double best_val = -std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, int, const Point&)> rec = [&](std::size_t i, int left,
                                                                const Point& acc) {
    if (i + 1 == steps.size()) {
      Point v = acc;
      for (int c = 0; c < left; ++c) ldgm::add_in_place(v, steps[i]);
      const double val = f(v);
      if (val > best_val) {
        best_val = val;
        best_point = v;
      }
      return;
    }
    Point v = acc;
    for (int c = 0; c <= left; ++c) {
      rec(i + 1, left - c, v);
      ldgm::add_in_place(v, steps[i]);
    }
  };
  rec(0, l, zero);
  return {best_point, best_val};
}

inline Point central_difference(const std::function<double(const Point&)>& f, const Point& x,
                                double h) {
  Point g(x.size());
  Point lo = x, hi = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    hi[i] = x[i] + h;
    lo[i] = x[i] - h;
    g[i] = (f(hi) - f(lo)) / (2.0 * h);
    hi[i] = x[i];
    lo[i] = x[i];
  }
  return g;
}

// Uniform sample on the frontier face conv{(b/a_i) chi_i} of a simplex-form
// polytope, via normalized exponential weights over the axis vertices.
inline Point sample_frontier_face(const ldgm::VPolytope& P, ldgm::Rng& rng) {
  const auto& verts = P.vertices();
  std::vector<const Point*> face;
  for (int idx : P.frontier_indices()) face.push_back(&verts[idx]);
  std::vector<double> w(face.size());
  double tot = 0.0;
  for (double& wi : w) {
    wi = -std::log(rng.uniform_open01());
    tot += wi;
  }
  Point x(P.dimension(), 0.0);
  for (std::size_t i = 0; i < face.size(); ++i)
    ldgm::add_in_place(x, ldgm::scale(*face[i], w[i] / tot));
  return x;
}

// Empirical Lipschitz constant on the frontier: the max slope over sampled
// pairs on the frontier face plus all frontier vertex pairs.
inline double max_frontier_slope(const std::function<double(const Point&)>& f,
                                 const ldgm::VPolytope& P, int n_pairs, std::uint64_t seed) {
  ldgm::Rng rng(seed);
  double best = 0.0;
  auto slope = [&](const Point& u, const Point& v) {
    Point d(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) d[i] = u[i] - v[i];
    const double dist = ldgm::norm(d);
    if (dist < 1e-12) return;
    best = std::max(best, std::abs(f(u) - f(v)) / dist);
  };
  for (int p = 0; p < n_pairs; ++p)
    slope(sample_frontier_face(P, rng), sample_frontier_face(P, rng));
  const auto& idx = P.frontier_indices();
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j)
      slope(P.vertices()[idx[i]], P.vertices()[idx[j]]);
  return best;
}

// Scratch file living under the system temp dir, removed on destruction.
class TempFile {
 public:
  explicit TempFile(const std::string& tag) {
    static int counter = 0;
    path_ = (std::filesystem::temp_directory_path() /
             ("ldgm_test_" + tag + "_" + std::to_string(++counter) + ".txt"))
                .string();
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  void write(const std::string& contents) const {
    std::ofstream out(path_, std::ios::binary);
    out << contents;
  }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace testsup
