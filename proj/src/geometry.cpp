#include "hdt/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>

#include "hdt/error.hpp"
#include "hdt/predicates.hpp"
#include "hdt/triangulation.hpp"

namespace hdt {

namespace {

constexpr char kTooSmall[] = "box too small for periodic quotient";

// Circumcenter of the triangle (0, a, b), relative to the first vertex.
Vec2 circumcenter(Vec2 a, Vec2 b) {
  const double d = 2.0 * cross(a, b);
  const double a2 = norm2(a), b2 = norm2(b);
  return {(b.y * a2 - a.y * b2) / d, (a.x * b2 - b.x * a2) / d};
}

// A view of one Delaunay edge from one endpoint.
struct EdgeView {
  int from = 0;
  int to = 0;
  Vec2 delta;
  bool kept = true;
  double facet = 0.0;
  std::array<double, 2> proj{};
};

void build_1d(const PointSet& ps, std::vector<Edge>& edges, std::vector<VoronoiCell>& cells) {
  const std::size_t n = ps.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return ps.points[a].x < ps.points[b].x; });

  auto add_edge = [&](int a, int b, double dx) {
    Edge e;
    e.i = std::min(a, b);
    e.j = std::max(a, b);
    e.delta = {a < b ? dx : -dx, 0.0};
    e.facet = 1.0;
    e.facet_proj = {1.0, 0.0};
    edges.push_back(e);
  };

  if (ps.mode == Mode::planar) {
    if (n < 2) throw GeometryError("degenerate: too few points");
    for (std::size_t k = 0; k + 1 < n; ++k)
      add_edge(order[k], order[k + 1], ps.points[order[k + 1]].x - ps.points[order[k]].x);
    return;
  }

  if (n < 2) throw GeometryError("degenerate: too few points");
  if (n == 2) throw GeometryError(kTooSmall);
  cells.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const int a = order[k];
    const int b = order[(k + 1) % n];
    double dx = ps.points[b].x - ps.points[a].x;
    if (k + 1 == n) dx += ps.box;
    add_edge(a, b, dx);
  }
  for (std::size_t k = 0; k < n; ++k) {
    const int v = order[k];
    const int left = order[(k + n - 1) % n];
    const int right = order[(k + 1) % n];
    double gl = ps.points[v].x - ps.points[left].x;
    double gr = ps.points[right].x - ps.points[v].x;
    if (k == 0) gl += ps.box;
    if (k + 1 == n) gr += ps.box;
    auto& cell = cells[v];
    cell.polygon = {{ps.points[v].x - gl / 2, 0.0}, {ps.points[v].x + gr / 2, 0.0}};
    cell.volume = (gl + gr) / 2;
    cell.perimeter = 2.0;  // counting measure of the two endpoints
  }
}

void build_2d_planar(const PointSet& ps, std::vector<Edge>& edges, std::vector<Face>& faces) {
  const Triangulation tri(ps.points);
  for (const auto& t : tri.finite_triangles())
    faces.push_back(Face{t, ps.points[t[1]] - ps.points[t[0]], ps.points[t[2]] - ps.points[t[0]]});
  const int n = static_cast<int>(ps.size());
  for (int v = 0; v < n; ++v) {
    const std::vector<int> ring = tri.ring(v);
    const std::size_t m = ring.size();
    for (std::size_t k = 0; k < m; ++k) {
      const int w = ring[k];
      if (w == Triangulation::kInfinite || w < v) continue;
      const int prev = ring[(k + m - 1) % m];
      const int next = ring[(k + 1) % m];
      if (prev != Triangulation::kInfinite && next != Triangulation::kInfinite &&
          predicates::incircle(tri.point(v), tri.point(w), tri.point(next), tri.point(prev)) == 0)
        continue;  // Voronoi facet degenerates to a point
      Edge e;
      e.i = v;
      e.j = w;
      e.delta = ps.points[w] - ps.points[v];
      edges.push_back(e);
    }
  }
}

void build_2d_periodic(const PointSet& ps, std::vector<Edge>& edges, std::vector<VoronoiCell>& cells,
                       std::vector<Face>& faces) {
  const int n = static_cast<int>(ps.size());
  if (n < 3) throw GeometryError("degenerate: too few points");
  const double box = ps.box;

  // Tile t in [0, 9) has shift (t % 3 - 1, t / 3 - 1); tile 4 is the box itself.
  std::vector<Vec2> tiled;
  tiled.reserve(9 * static_cast<std::size_t>(n));
  for (int t = 0; t < 9; ++t) {
    const Vec2 shift{box * (t % 3 - 1), box * (t / 3 - 1)};
    for (const auto& p : ps.points) tiled.push_back(p + shift);
  }
  const Triangulation tri(tiled);
  const int center = 4 * n;

  std::vector<EdgeView> views;
  cells.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int v = center + i;
    const std::vector<int> ring = tri.ring(v);
    const std::size_t m = ring.size();
    if (std::find(ring.begin(), ring.end(), Triangulation::kInfinite) != ring.end())
      throw GeometryError(kTooSmall);

    const Vec2 pv = tri.point(v);
    std::vector<Vec2> delta(m), cc(m);
    for (std::size_t k = 0; k < m; ++k) delta[k] = tri.point(ring[k]) - pv;
    // cc[k] is the circumcenter of the face (v, ring[k], ring[k+1]).
    for (std::size_t k = 0; k < m; ++k) {
      cc[k] = circumcenter(delta[k], delta[(k + 1) % m]);
      // The empty circumdisk must fit inside the tiled region for the face to
      // belong to the periodic triangulation.
      if (!(norm(cc[k]) < box / 2)) throw GeometryError(kTooSmall);
    }

    auto& cell = cells[static_cast<std::size_t>(i)];
    cell.polygon.resize(m);
    double area2 = 0.0, perimeter = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      cell.polygon[k] = pv + cc[k];
      area2 += cross(cc[k], cc[(k + 1) % m]);
      perimeter += norm(cc[(k + 1) % m] - cc[k]);
    }
    cell.volume = area2 / 2;
    cell.perimeter = perimeter;

    for (std::size_t k = 0; k < m; ++k) {
      const int w = ring[k];
      const int j = w % n;
      if (j == i) throw GeometryError(kTooSmall);
      const int prev = ring[(k + m - 1) % m];
      const int next = ring[(k + 1) % m];
      EdgeView view;
      view.from = i;
      view.to = j;
      view.delta = delta[k];
      view.kept = predicates::incircle(pv, tri.point(w), tri.point(next), tri.point(prev)) != 0;
      const Vec2 a = cc[(k + m - 1) % m], b = cc[k];
      view.facet = view.kept ? norm(b - a) : 0.0;
      view.proj = view.kept ? std::array<double, 2>{std::fabs(b.y - a.y), std::fabs(b.x - a.x)}
                            : std::array<double, 2>{0.0, 0.0};
      views.push_back(view);

      const int jn = next % n;
      if (i < j && i < jn) faces.push_back(Face{{i, j, jn}, delta[k], delta[(k + 1) % m]});
    }
  }

  // Each undirected edge must be seen exactly once from each endpoint with
  // opposite displacements; anything else means the box is too small.
  // Degenerate (cocircular) diagonals may be chosen differently in different
  // tiles, so they are discarded before the check.
  std::map<std::pair<int, int>, std::vector<const EdgeView*>> by_pair;
  for (const auto& view : views)
    if (view.kept) by_pair[{std::min(view.from, view.to), std::max(view.from, view.to)}].push_back(&view);
  const double tol = 1e-9 * std::max(1.0, box);
  for (const auto& [key, list] : by_pair) {
    if (list.size() != 2 || list[0]->from == list[1]->from) throw GeometryError(kTooSmall);
    const EdgeView* lo = list[0]->from == key.first ? list[0] : list[1];
    const EdgeView* hi = lo == list[0] ? list[1] : list[0];
    if (norm(lo->delta + hi->delta) > tol) throw GeometryError(kTooSmall);
    Edge e;
    e.i = key.first;
    e.j = key.second;
    e.delta = lo->delta;
    e.facet = lo->facet;
    e.facet_proj = lo->proj;
    edges.push_back(e);
  }
}

}  // namespace

int DelaunayGraph::max_degree() const {
  int m = 0;
  for (std::size_t v = 0; v < vertex_count(); ++v) m = std::max(m, degree(static_cast<int>(v)));
  return m;
}

int DelaunayGraph::find_edge(int u, int v) const {
  for (const auto& h : neighbors(u))
    if (h.neighbor == v) return h.edge;
  return -1;
}

void DelaunayGraph::finalize_adjacency() {
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  const std::size_t n = vertex_count();
  std::vector<std::vector<HalfEdge>> adj(n);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& ed = edges_[e];
    adj[static_cast<std::size_t>(ed.i)].push_back({ed.j, static_cast<int>(e), +1, ed.delta});
    adj[static_cast<std::size_t>(ed.j)].push_back({ed.i, static_cast<int>(e), -1, -ed.delta});
  }
  offsets_.assign(n + 1, 0);
  half_.clear();
  for (std::size_t v = 0; v < n; ++v) {
    auto& list = adj[v];
    std::sort(list.begin(), list.end(), [](const HalfEdge& a, const HalfEdge& b) {
      return std::atan2(a.delta.y, a.delta.x) < std::atan2(b.delta.y, b.delta.x);
    });
    half_.insert(half_.end(), list.begin(), list.end());
    offsets_[v + 1] = half_.size();
  }
}

GraphPtr build_delaunay(const PointSet& points) {
  validate(points);
  auto graph = std::shared_ptr<DelaunayGraph>(new DelaunayGraph());
  graph->points_ = points;
  if (points.dim == 1) {
    build_1d(points, graph->edges_, graph->cells_);
  } else if (points.mode == Mode::planar) {
    build_2d_planar(points, graph->edges_, graph->faces_);
  } else {
    build_2d_periodic(points, graph->edges_, graph->cells_, graph->faces_);
  }
  graph->has_facets_ = points.mode == Mode::periodic;
  graph->finalize_adjacency();
  return graph;
}

const GraphPtr& facet_measures(const GraphPtr& graph) {
  if (!graph->has_facets()) throw GeometryError("facet measures require periodic mode");
  return graph;
}

EdgeField omega_field(const GraphPtr& graph, int axis) {
  if (axis < 0 || axis >= graph->dim()) throw ConfigError("axis out of range");
  facet_measures(graph);
  EdgeField omega(graph);
  const auto edges = graph->edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const double along = edges[e].delta[axis];
    const double sg = along > 0 ? 1.0 : (along < 0 ? -1.0 : 0.0);
    omega.values[e] = sg * edges[e].facet_proj[static_cast<std::size_t>(axis)];
  }
  return omega;
}

VoronoiLocator::VoronoiLocator(GraphPtr graph) : graph_(std::move(graph)) {
  const auto& ps = graph_->points();
  if (ps.mode != Mode::periodic) return;  // planar queries use a linear scan
  const double n = static_cast<double>(std::max<std::size_t>(ps.size(), 1));
  cells_per_side_ = ps.dim == 2 ? std::max(1, static_cast<int>(std::sqrt(n / 2.0)))
                                : std::max(1, static_cast<int>(n / 2.0));
  cell_size_ = ps.box / cells_per_side_;
  const int rows = ps.dim == 2 ? cells_per_side_ : 1;
  buckets_.assign(static_cast<std::size_t>(cells_per_side_ * rows), {});
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const Vec2 p = ps.points[i];
    const int cx = std::min(cells_per_side_ - 1, static_cast<int>(p.x / cell_size_));
    const int cy = ps.dim == 2 ? std::min(cells_per_side_ - 1, static_cast<int>(p.y / cell_size_)) : 0;
    buckets_[static_cast<std::size_t>(cy * cells_per_side_ + cx)].push_back(static_cast<int>(i));
  }
}

int VoronoiLocator::locate(Vec2 x) const {
  const auto& ps = graph_->points();
  int best = -1;
  double best_d2 = 0.0;
  auto consider = [&](int i) {
    const Vec2 p = ps.points[static_cast<std::size_t>(i)];
    const double d2 = norm2(wrap_delta(ps, x, p));
    if (best < 0 || d2 < best_d2) {
      best = i;
      best_d2 = d2;
      return;
    }
    if (d2 == best_d2) {
      const Vec2 q = ps.points[static_cast<std::size_t>(best)];
      if (p.x < q.x || (p.x == q.x && p.y < q.y)) best = i;
    }
  };

  if (ps.mode != Mode::periodic) {
    for (std::size_t i = 0; i < ps.size(); ++i) consider(static_cast<int>(i));
    return best;
  }

  x = wrap_point(ps, x);
  const int k = cells_per_side_;
  const int rows = ps.dim == 2 ? k : 1;
  const int cx = std::min(k - 1, static_cast<int>(x.x / cell_size_));
  const int cy = ps.dim == 2 ? std::min(k - 1, static_cast<int>(x.y / cell_size_)) : 0;
  const int max_ring = k / 2 + 1;
  std::vector<char> seen(buckets_.size(), 0);
  for (int r = 0; r <= max_ring; ++r) {
    const int ylo = ps.dim == 2 ? -r : 0, yhi = ps.dim == 2 ? r : 0;
    for (int dy = ylo; dy <= yhi; ++dy)
      for (int dx = -r; dx <= r; ++dx) {
        if (std::max(std::abs(dx), std::abs(dy)) != r) continue;
        const int bx = ((cx + dx) % k + k) % k;
        const int by = ((cy + dy) % rows + rows) % rows;
        const auto b = static_cast<std::size_t>(by * k + bx);
        if (seen[b]) continue;
        seen[b] = 1;
        for (int i : buckets_[b]) consider(i);
      }
    // Unvisited buckets are at least r cells away from x.
    if (best >= 0 && best_d2 < (r * cell_size_) * (r * cell_size_)) break;
  }
  return best;
}

AssumptionReport assumption_diagnostics(const DelaunayGraph& graph, double beta, double r) {
  AssumptionReport rep;
  rep.beta = beta;
  rep.r = r;
  rep.vertices = graph.vertex_count();
  RunningStats exp_deg, per2, disp, deg;
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    const int a = graph.degree(static_cast<int>(v));
    exp_deg.add(std::exp(beta * a));
    deg.add(a);
    if (graph.has_facets()) {
      const double p = graph.cells()[v].perimeter;
      per2.add(p * p);
    }
    double sum = 0.0;
    for (const auto& h : graph.neighbors(static_cast<int>(v))) sum += std::pow(norm(h.delta), r);
    disp.add(sum);
  }
  rep.exp_degree = exp_deg.estimate();
  rep.perimeter_sq = per2.estimate();
  rep.displacement_r = disp.estimate();
  rep.degree = deg.estimate();
  return rep;
}

}  // namespace hdt
