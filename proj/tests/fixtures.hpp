#pragma once

// Small graph fixtures and random surfaces for the test suites.

#include <cmath>
#include <vector>

#include "hdt/fields.hpp"
#include "hdt/geometry.hpp"
#include "hdt/rng.hpp"

namespace fixture {

inline hdt::PointSet circle4() {
  hdt::PointSet ps;
  ps.dim = 1;
  ps.box = 4.0;
  ps.points = {{0, 0}, {0.5, 0}, {1.5, 0}, {3, 0}};
  return ps;
}

/// Five points on a circle of length 5 with uneven gaps.
inline hdt::PointSet circle5() {
  hdt::PointSet ps;
  ps.dim = 1;
  ps.box = 5.0;
  ps.points = {{0, 0}, {0.7, 0}, {1.9, 0}, {3.2, 0}, {4.1, 0}};
  return ps;
}

/// Poisson torus with about n points at unit intensity (Palm origin at 0).
inline hdt::GraphPtr poisson_torus(double n, std::uint64_t seed) {
  return hdt::build_delaunay(hdt::sample_poisson(2, std::sqrt(n), 1.0, seed, true));
}

inline std::vector<double> random_values(std::size_t n, std::uint64_t seed, double scale = 1.0) {
  hdt::Rng rng(seed);
  std::vector<double> v(n);
  for (double& x : v) x = scale * (2 * rng.uniform() - 1);
  return v;
}

inline hdt::Surface random_surface(const hdt::GraphPtr& g, std::uint64_t seed, hdt::Vec2 tilt = {}) {
  return hdt::Surface(g, tilt, random_values(g->vertex_count(), seed));
}

inline hdt::EdgeField random_field(const hdt::GraphPtr& g, std::uint64_t seed) {
  return hdt::EdgeField(g, random_values(g->edges().size(), seed));
}

/// Row-stochastic matrix of the uniform-neighbor chain (dense).
inline std::vector<std::vector<double>> transition_matrix(const hdt::DelaunayGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<double>> P(n, std::vector<double>(n, 0.0));
  for (std::size_t v = 0; v < n; ++v) {
    const auto nbrs = g.neighbors(static_cast<int>(v));
    for (const auto& h : nbrs) P[v][static_cast<std::size_t>(h.neighbor)] += 1.0 / static_cast<double>(nbrs.size());
  }
  return P;
}

}  // namespace fixture
