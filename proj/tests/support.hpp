#pragma once

// Independent oracles shared by the unit and acceptance suites.

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "hdt/pointprocess.hpp"
#include "hdt/vec2.hpp"

namespace oracle {

/// Boundary statistics between two rasterized Voronoi cells.
struct PixelBoundary {
  long horizontal = 0;  // transitions between left/right neighbors
  long vertical = 0;    // transitions between lower/upper neighbors
  long count() const { return horizontal + vertical; }
  // Staircase length of a straight boundary: h * sqrt(H^2 + V^2).
  double length(double step) const {
    return step * std::hypot(static_cast<double>(horizontal), static_cast<double>(vertical));
  }
};

/// Rasterizes the periodic Voronoi tessellation of a d=2 point set at pixel
/// size `step` (pixel centers at (k + 1/2) step) and records, per unordered
/// pair of sites, how many 4-neighbor pixel pairs straddle their boundary.
inline std::map<std::pair<int, int>, PixelBoundary> raster_voronoi(const hdt::PointSet& ps, double step) {
  const double box = ps.box;
  const int res = static_cast<int>(std::lround(box / step));
  const double h = box / res;

  // Candidate sites per coarse block: every site that can be nearest to some
  // point of the block.
  const int blocks = std::max(1, static_cast<int>(box / 0.25));
  const double bsize = box / blocks;
  auto wrap1 = [&](double d) {
    d = std::fmod(d, box);
    if (d > box / 2) d -= box;
    if (d < -box / 2) d += box;
    return d;
  };
  auto dist2 = [&](double x, double y, const hdt::Vec2& p) {
    const double dx = wrap1(p.x - x), dy = wrap1(p.y - y);
    return dx * dx + dy * dy;
  };
  std::vector<std::vector<int>> cand(static_cast<std::size_t>(blocks * blocks));
  const double half_diag = bsize * std::sqrt(0.5);
  for (int by = 0; by < blocks; ++by)
    for (int bx = 0; bx < blocks; ++bx) {
      const double cx = (bx + 0.5) * bsize, cy = (by + 0.5) * bsize;
      double best = 1e300;
      for (const auto& p : ps.points) best = std::min(best, dist2(cx, cy, p));
      const double reach = std::sqrt(best) + 2 * half_diag;
      auto& list = cand[static_cast<std::size_t>(by * blocks + bx)];
      for (std::size_t i = 0; i < ps.size(); ++i)
        if (dist2(cx, cy, ps.points[i]) <= reach * reach) list.push_back(static_cast<int>(i));
    }

  auto owner_row = [&](int row, std::vector<int>& out) {
    out.resize(static_cast<std::size_t>(res));
    const double y = (row + 0.5) * h;
    const int by = std::min(blocks - 1, static_cast<int>(y / bsize));
    for (int col = 0; col < res; ++col) {
      const double x = (col + 0.5) * h;
      const int bx = std::min(blocks - 1, static_cast<int>(x / bsize));
      int best = -1;
      double bd = 0;
      for (int i : cand[static_cast<std::size_t>(by * blocks + bx)]) {
        const double d = dist2(x, y, ps.points[static_cast<std::size_t>(i)]);
        if (best < 0 || d < bd) {
          best = i;
          bd = d;
        }
      }
      out[static_cast<std::size_t>(col)] = best;
    }
  };

  std::map<std::pair<int, int>, PixelBoundary> out;
  auto key = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
  std::vector<int> first, prev, cur;
  owner_row(0, first);
  prev = first;
  for (int row = 0; row < res; ++row) {
    if (row > 0) owner_row(row, cur); else cur = first;
    for (int col = 0; col < res; ++col) {
      const int a = cur[static_cast<std::size_t>(col)];
      const int right = cur[static_cast<std::size_t>((col + 1) % res)];
      if (a != right) ++out[key(a, right)].horizontal;
      if (row > 0) {
        const int below = prev[static_cast<std::size_t>(col)];
        if (a != below) ++out[key(a, below)].vertical;
      }
    }
    if (row + 1 == res)
      for (int col = 0; col < res; ++col) {
        const int a = cur[static_cast<std::size_t>(col)], up = first[static_cast<std::size_t>(col)];
        if (a != up) ++out[key(a, up)].vertical;
      }
    std::swap(prev, cur);
  }
  return out;
}

/// Dense transition semigroup exp(t (P - I)) applied to a start vertex, with P
/// a row-stochastic matrix, by the series truncated once a term drops below
/// `cutoff`.
inline std::vector<double> semigroup_row(const std::vector<std::vector<double>>& P, int start, double t,
                                         double cutoff = 1e-12) {
  const std::size_t n = P.size();
  std::vector<double> term(n, 0.0), sum(n, 0.0);
  term[static_cast<std::size_t>(start)] = std::exp(-t);
  for (int k = 0;; ++k) {
    double mass = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sum[i] += term[i];
      mass += std::fabs(term[i]);
    }
    if (mass < cutoff && k > t) break;
    std::vector<double> next(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) next[j] += term[i] * P[i][j];
    for (double& v : next) v *= t / (k + 1);
    term = std::move(next);
  }
  return sum;
}

}  // namespace oracle
