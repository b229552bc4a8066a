#include "hdt/triangulation.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "hdt/error.hpp"
#include "hdt/predicates.hpp"

namespace hdt {

namespace {

using predicates::incircle;
using predicates::orient2d;

// Hilbert index of (x, y) on a 2^16 grid.
std::uint64_t hilbert_key(std::uint32_t x, std::uint32_t y) {
  constexpr std::uint32_t n = 1u << 16;
  std::uint64_t d = 0;
  for (std::uint32_t s = n / 2; s > 0; s /= 2) {
    const std::uint32_t rx = (x & s) ? 1 : 0;
    const std::uint32_t ry = (y & s) ? 1 : 0;
    d += static_cast<std::uint64_t>(s) * s * ((3 * rx) ^ ry);
    if (ry == 0) {
      if (rx == 1) {
        x = n - 1 - x;
        y = n - 1 - y;
      }
      std::swap(x, y);
    }
  }
  return d;
}

std::vector<int> hilbert_order(std::span<const Vec2> pts) {
  double xmin = pts[0].x, xmax = xmin, ymin = pts[0].y, ymax = ymin;
  for (const auto& p : pts) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-300});
  std::vector<std::uint64_t> key(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto gx = static_cast<std::uint32_t>(std::min(65535.0, (pts[i].x - xmin) / span * 65535.0));
    const auto gy = static_cast<std::uint32_t>(std::min(65535.0, (pts[i].y - ymin) / span * 65535.0));
    key[i] = hilbert_key(gx, gy);
  }
  std::vector<int> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return key[a] != key[b] ? key[a] < key[b] : a < b; });
  return order;
}

// True when p lies strictly between a and b, given that the three are collinear.
bool strictly_between(Vec2 a, Vec2 b, Vec2 p) {
  if (a.x != b.x) return (a.x < p.x && p.x < b.x) || (b.x < p.x && p.x < a.x);
  return (a.y < p.y && p.y < b.y) || (b.y < p.y && p.y < a.y);
}

}  // namespace

Triangulation::Triangulation(std::span<const Vec2> points) : points_(points.begin(), points.end()) {
  const int n = static_cast<int>(points_.size());
  if (n < 3) throw GeometryError("degenerate: too few points");

  {
    std::vector<int> idx(points_.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      return points_[a].x != points_[b].x ? points_[a].x < points_[b].x : points_[a].y < points_[b].y;
    });
    for (std::size_t k = 1; k < idx.size(); ++k)
      if (points_[idx[k]] == points_[idx[k - 1]]) throw GeometryError("duplicate points");
  }

  const std::vector<int> order = hilbert_order(points_);

  // Seed triangle: first two points in insertion order plus the first point
  // not collinear with them.
  const int a = order[0], b = order[1];
  int c = -1;
  std::size_t c_pos = 0;
  for (std::size_t k = 2; k < order.size(); ++k) {
    if (orient2d(points_[a], points_[b], points_[order[k]]) != 0) {
      c = order[k];
      c_pos = k;
      break;
    }
  }
  if (c < 0) throw GeometryError("degenerate: all points are collinear");

  vertex_tri_.assign(points_.size(), -1);
  mark_.reserve(2 * points_.size() + 8);
  start_slot_.assign(points_.size() + 1, -1);

  int p0 = a, p1 = b, p2 = c;
  if (orient2d(points_[p0], points_[p1], points_[p2]) < 0) std::swap(p1, p2);
  const int t0 = new_triangle(p0, p1, p2);
  // Infinite triangles across each hull edge, oriented so the finite edge has
  // the exterior on its left.
  const int t1 = new_triangle(p2, p1, kInfinite);  // across edge p1-p2 (opposite p0)
  const int t2 = new_triangle(p0, p2, kInfinite);  // across edge p2-p0 (opposite p1)
  const int t3 = new_triangle(p1, p0, kInfinite);  // across edge p0-p1 (opposite p2)
  tris_[t0].n = {t1, t2, t3};
  // t1 = (p2, p1, inf): opposite p2 is (p1, inf) shared with t3; opposite p1 is (inf, p2) shared with t2.
  tris_[t1].n = {t3, t2, t0};
  // t2 = (p0, p2, inf): opposite p0 is (p2, inf) -> t1; opposite p2 is (inf, p0) -> t3.
  tris_[t2].n = {t1, t3, t0};
  // t3 = (p1, p0, inf): opposite p1 is (p0, inf) -> t2; opposite p0 is (inf, p1) -> t1.
  tris_[t3].n = {t2, t1, t0};
  last_ = t0;

  for (std::size_t k = 2; k < order.size(); ++k) {
    if (k == c_pos) continue;
    insert(order[k]);
  }
}

int Triangulation::new_triangle(int a, int b, int c) {
  int t;
  if (!free_.empty()) {
    t = free_.back();
    free_.pop_back();
    tris_[t] = Triangle{{a, b, c}, {-1, -1, -1}};
    alive_[t] = 1;
  } else {
    t = static_cast<int>(tris_.size());
    tris_.push_back(Triangle{{a, b, c}, {-1, -1, -1}});
    alive_.push_back(1);
  }
  for (int v : {a, b, c})
    if (v != kInfinite) vertex_tri_[v] = t;
  return t;
}

bool Triangulation::in_conflict(int t, Vec2 p) const {
  const auto& v = tris_[t].v;
  for (int k = 0; k < 3; ++k) {
    if (v[k] == kInfinite) {
      const Vec2 a = points_[v[(k + 1) % 3]];
      const Vec2 b = points_[v[(k + 2) % 3]];
      const int o = orient2d(a, b, p);
      if (o != 0) return o > 0;
      return strictly_between(a, b, p);
    }
  }
  return incircle(points_[v[0]], points_[v[1]], points_[v[2]], p) > 0;
}

int Triangulation::locate(Vec2 p, int start) const {
  int t = start;
  unsigned rot = 0;
  for (std::size_t steps = 0;; ++steps) {
    const auto& tri = tris_[t];
    if (tri.v[0] == kInfinite || tri.v[1] == kInfinite || tri.v[2] == kInfinite) return t;
    int next = -1;
    // Rotating the first tested edge keeps the walk from cycling.
    rot = rot * 1103515245u + 12345u;
    const int first = static_cast<int>((rot >> 16) % 3);
    for (int j = 0; j < 3; ++j) {
      const int k = (first + j) % 3;
      const Vec2 a = points_[tri.v[(k + 1) % 3]];
      const Vec2 b = points_[tri.v[(k + 2) % 3]];
      if (orient2d(a, b, p) < 0) {
        next = tri.n[k];
        break;
      }
    }
    if (next < 0) return t;
    t = next;
    if (steps > 4 * tris_.size() + 16) throw GeometryError("point location failed to terminate");
  }
}

void Triangulation::insert(int pi) {
  const Vec2 p = points_[pi];
  const int start = locate(p, last_);
  if (!in_conflict(start, p)) throw GeometryError("internal: located triangle not in conflict");

  if (mark_.size() < tris_.size()) mark_.resize(tris_.size() + tris_.size() / 2 + 8, 0);

  struct BoundaryEdge {
    int a, b, outside, outside_slot;
  };
  std::vector<BoundaryEdge> boundary;
  cavity_.clear();
  stack_.clear();
  stack_.push_back(start);
  mark_[start] = 1;  // 1 = in cavity, 2 = tested and outside
  std::vector<int> tested_outside;
  while (!stack_.empty()) {
    const int t = stack_.back();
    stack_.pop_back();
    cavity_.push_back(t);
    for (int k = 0; k < 3; ++k) {
      const int nb = tris_[t].n[k];
      if (mark_[nb] == 1) continue;
      if (mark_[nb] == 0) {
        if (in_conflict(nb, p)) {
          mark_[nb] = 1;
          stack_.push_back(nb);
          continue;
        }
        mark_[nb] = 2;
        tested_outside.push_back(nb);
      }
      int slot = 0;
      while (tris_[nb].n[slot] != t) ++slot;
      boundary.push_back({tris_[t].v[(k + 1) % 3], tris_[t].v[(k + 2) % 3], nb, slot});
    }
  }
  for (int t : tested_outside) mark_[t] = 0;
  for (int t : cavity_) {
    mark_[t] = 0;
    alive_[t] = 0;
  }
  for (int t : cavity_) free_.push_back(t);

  // New fan around p. Each boundary edge (a, b) is seen counterclockwise from p.
  auto slot_of = [&](int v) -> int& { return start_slot_[static_cast<std::size_t>(v + 1)]; };
  std::vector<int> created;
  created.reserve(boundary.size());
  for (const auto& e : boundary) {
    const int t = new_triangle(e.a, e.b, pi);
    tris_[t].n[2] = e.outside;
    tris_[e.outside].n[e.outside_slot] = t;
    slot_of(e.a) = t;
    created.push_back(t);
  }
  for (int t : created) {
    // (a, b, p): the edge (b, p) opposite a borders the triangle starting at b;
    // the edge (p, a) opposite b borders the triangle ending at a.
    const int b = tris_[t].v[1];
    const int tb = slot_of(b);
    tris_[t].n[0] = tb;
    tris_[tb].n[1] = t;
  }
  for (int t : created) {
    slot_of(tris_[t].v[0]) = -1;
    if (tris_[t].v[0] != kInfinite && tris_[t].v[1] != kInfinite) last_ = t;
  }
}

std::vector<int> Triangulation::ring(int v) const {
  std::vector<int> out;
  const int t0 = vertex_tri_[v];
  int t = t0;
  do {
    const auto& tri = tris_[t];
    int i = 0;
    while (tri.v[i] != v) ++i;
    out.push_back(tri.v[(i + 1) % 3]);
    t = tri.n[(i + 1) % 3];
  } while (t != t0);
  return out;
}

std::vector<std::array<int, 3>> Triangulation::finite_triangles() const {
  std::vector<std::array<int, 3>> out;
  for (std::size_t t = 0; t < tris_.size(); ++t) {
    if (!alive_[t]) continue;
    const auto& v = tris_[t].v;
    if (v[0] == kInfinite || v[1] == kInfinite || v[2] == kInfinite) continue;
    out.push_back(v);
  }
  return out;
}

}  // namespace hdt
