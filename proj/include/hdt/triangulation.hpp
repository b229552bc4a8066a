#pragma once

#include <array>
#include <span>
#include <vector>

#include "hdt/vec2.hpp"

namespace hdt {

/// Planar Delaunay triangulation by incremental insertion.
///
/// Hull edges are closed off by triangles incident to a symbolic vertex at
/// infinity (`kInfinite`), so every finite edge has exactly two incident
/// triangles. Predicates are exact. Cocircular ties are resolved by insertion
/// order: a triangle is only replaced when the new point is strictly inside
/// its circumcircle, which yields one valid Delaunay triangulation.
class Triangulation {
 public:
  static constexpr int kInfinite = -1;

  struct Triangle {
    std::array<int, 3> v;  // counterclockwise; at most one entry is kInfinite
    std::array<int, 3> n;  // n[k] is the triangle across the edge opposite v[k]
  };

  /// Throws GeometryError when fewer than three points are given, points
  /// repeat, or all points are collinear.
  explicit Triangulation(std::span<const Vec2> points);

  std::size_t vertex_count() const noexcept { return points_.size(); }
  const Vec2& point(int v) const { return points_[static_cast<std::size_t>(v)]; }

  /// Neighbors of `v` in counterclockwise order. Hull vertices include
  /// kInfinite between their two hull neighbors.
  std::vector<int> ring(int v) const;

  /// Live finite triangles, counterclockwise.
  std::vector<std::array<int, 3>> finite_triangles() const;

  /// Alive triangles including the infinite ones.
  const std::vector<Triangle>& raw_triangles() const noexcept { return tris_; }
  bool alive(std::size_t t) const noexcept { return alive_[t]; }

 private:
  void insert(int p);
  int locate(Vec2 p, int start) const;
  bool in_conflict(int t, Vec2 p) const;
  int new_triangle(int a, int b, int c);

  std::vector<Vec2> points_;
  std::vector<Triangle> tris_;
  std::vector<char> alive_;
  std::vector<int> free_;
  std::vector<int> vertex_tri_;
  int last_ = 0;

  // Scratch buffers reused across insertions.
  std::vector<int> stack_;
  std::vector<int> cavity_;
  std::vector<char> mark_;
  std::vector<int> start_slot_;
};

}  // namespace hdt
