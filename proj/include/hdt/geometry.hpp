#pragma once

#include <array>
#include <memory>
#include <span>
#include <vector>

#include "hdt/edge_field.hpp"
#include "hdt/pointprocess.hpp"
#include "hdt/stats.hpp"
#include "hdt/vec2.hpp"

namespace hdt {

/// Undirected Voronoi-neighbor edge, stored with i < j.
struct Edge {
  int i = 0;
  int j = 0;
  Vec2 delta;                          // minimal-image displacement from i to j
  double facet = 0.0;                  // measure of the shared Voronoi facet (d=2 length, d=1 counting)
  std::array<double, 2> facet_proj{};  // facet projected on the hyperplane orthogonal to e1, e2
};

/// One endpoint's view of an edge.
struct HalfEdge {
  int neighbor = 0;
  int edge = 0;
  int sign = 1;  // +1 when this vertex is edge.i, so a flux reads sign * value
  Vec2 delta;    // displacement from this vertex to the neighbor
};

struct VoronoiCell {
  std::vector<Vec2> polygon;  // counterclockwise, absolute coordinates (may leave the box)
  double volume = 0.0;
  double perimeter = 0.0;
};

/// Delaunay triangle (of the periodic quotient on a torus), counterclockwise,
/// anchored at `v[0]`.
struct Face {
  std::array<int, 3> v{};
  Vec2 d1;  // displacement v0 -> v1
  Vec2 d2;  // displacement v0 -> v2
};

/// Voronoi-neighbor graph of a point configuration.
///
/// Conductances are implicit: a(s, s') = 1 exactly for stored edges. Pairs of
/// Delaunay neighbors whose Voronoi facet degenerates to a point (exactly
/// cocircular quadruples, e.g. lattice diagonals) are not edges.
class DelaunayGraph {
 public:
  const PointSet& points() const noexcept { return points_; }
  int dim() const noexcept { return points_.dim; }
  Mode mode() const noexcept { return points_.mode; }
  bool periodic() const noexcept { return points_.mode == Mode::periodic; }
  std::size_t vertex_count() const noexcept { return points_.size(); }
  double volume() const noexcept { return points_.volume(); }
  Vec2 position(int v) const { return points_.points[static_cast<std::size_t>(v)]; }

  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }

  /// Incident half-edges of `v`, counterclockwise by direction (d=2) or
  /// left-then-right (d=1).
  std::span<const HalfEdge> neighbors(int v) const {
    return {half_.data() + offsets_[static_cast<std::size_t>(v)],
            half_.data() + offsets_[static_cast<std::size_t>(v) + 1]};
  }
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
  int max_degree() const;

  bool has_facets() const noexcept { return has_facets_; }
  std::span<const VoronoiCell> cells() const noexcept { return cells_; }
  std::span<const Face> faces() const noexcept { return faces_; }

  /// Index of the edge joining u and v, or -1.
  int find_edge(int u, int v) const;

 private:
  friend std::shared_ptr<const DelaunayGraph> build_delaunay(const PointSet&);
  void finalize_adjacency();

  PointSet points_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<HalfEdge> half_;
  std::vector<VoronoiCell> cells_;
  std::vector<Face> faces_;
  bool has_facets_ = false;
};

using GraphPtr = std::shared_ptr<const DelaunayGraph>;

/// Builds the Voronoi-neighbor graph.
///
/// Periodic mode triangulates the 3^d tiled copies and keeps the quotient;
/// facet measures, Voronoi cells and faces are filled in. Planar mode
/// provides adjacency and faces only. Throws GeometryError ("degenerate: too few points",
/// "box too small for periodic quotient").
GraphPtr build_delaunay(const PointSet& points);

/// Returns `graph` after checking that facet measures, projected facet
/// measures and cells are populated (they are computed during periodic
/// construction). Throws GeometryError "facet measures require periodic mode".
const GraphPtr& facet_measures(const GraphPtr& graph);

/// Signed projected facet measures: omega_u(s, s') = sg(delta . u) * |b_u(s, s')|,
/// with sg(0) = 0. Throws ConfigError for an axis outside [0, dim) and
/// GeometryError when facet measures are unavailable (planar mode).
EdgeField omega_field(const GraphPtr& graph, int axis);

/// Nearest-point queries under the graph's metric (periodic or planar).
/// Ties go to the lexicographically smallest coordinates.
class VoronoiLocator {
 public:
  explicit VoronoiLocator(GraphPtr graph);
  int locate(Vec2 x) const;

 private:
  GraphPtr graph_;
  int cells_per_side_ = 1;
  double cell_size_ = 1.0;
  Vec2 origin_;
  std::vector<std::vector<int>> buckets_;
};

/// Empirical vertex averages behind the moment assumptions (exponential
/// degree moment, squared cell perimeter, r-th displacement moment).
struct AssumptionReport {
  double beta = 0.0;
  double r = 0.0;
  std::size_t vertices = 0;
  Estimate exp_degree;
  Estimate perimeter_sq;
  Estimate displacement_r;
  Estimate degree;
};

AssumptionReport assumption_diagnostics(const DelaunayGraph& graph, double beta, double r);

}  // namespace hdt
