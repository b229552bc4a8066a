#include "hdt/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hdt/error.hpp"

namespace hdt {

Surface::Surface(GraphPtr g, Vec2 c) : graph(std::move(g)), tilt(c), psi(graph->vertex_count(), 0.0) {}

Surface::Surface(GraphPtr g, Vec2 c, std::vector<double> periodic)
    : graph(std::move(g)), tilt(c), psi(std::move(periodic)) {
  if (psi.size() != graph->vertex_count()) throw ConfigError("surface size does not match the graph");
}

double Surface::height(int v) const {
  return dot(tilt, graph->position(v)) + psi[static_cast<std::size_t>(v)];
}

void Surface::normalize_gauge() {
  if (psi.empty()) return;
  const double shift = psi[0];
  for (double& p : psi) p -= shift;
}

EdgeField gradient(const Surface& eta) {
  EdgeField g(eta.graph);
  const auto edges = eta.graph->edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Edge& ed = edges[e];
    g.values[e] = dot(eta.tilt, ed.delta) + eta.psi[static_cast<std::size_t>(ed.j)] -
                  eta.psi[static_cast<std::size_t>(ed.i)];
  }
  return g;
}

std::vector<double> divergence(const EdgeField& zeta) {
  const auto& g = *zeta.graph;
  std::vector<double> div(g.vertex_count(), 0.0);
  for (std::size_t v = 0; v < div.size(); ++v)
    for (const auto& h : g.neighbors(static_cast<int>(v))) div[v] += zeta.at(h);
  return div;
}

std::vector<double> divergence(const DirectedField& zeta) {
  const auto& g = *zeta.graph;
  std::vector<double> div(g.vertex_count(), 0.0);
  for (std::size_t v = 0; v < div.size(); ++v)
    for (const auto& h : g.neighbors(static_cast<int>(v))) div[v] += zeta.at(h);
  return div;
}

double laplacian_at(const Surface& eta, int v) {
  double sum = 0.0;
  for (const auto& h : eta.graph->neighbors(v)) sum += eta.increment(v, h);
  return sum;
}

std::vector<double> laplacian(const Surface& eta) {
  std::vector<double> out(eta.size());
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = laplacian_at(eta, static_cast<int>(v));
  return out;
}

double max_abs(std::span<const double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::fabs(v));
  return m;
}

double campbell_mean(const EdgeField& zeta) {
  const auto& g = *zeta.graph;
  double sum = 0.0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    for (const auto& h : g.neighbors(static_cast<int>(v))) sum += zeta.at(h);
  return sum / (2.0 * g.volume());
}

double campbell_mean(const DirectedField& zeta) {
  const auto& g = *zeta.graph;
  double sum = 0.0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    for (const auto& h : g.neighbors(static_cast<int>(v))) sum += zeta.at(h);
  return sum / (2.0 * g.volume());
}

double campbell_inner(const EdgeField& a, const EdgeField& b) {
  // Both orientations contribute the same product, so the 1/2 cancels.
  double sum = 0.0;
  for (std::size_t e = 0; e < a.values.size(); ++e) sum += a.values[e] * b.values[e];
  return sum / a.graph->volume();
}

double campbell_inner(const EdgeField& a, const DirectedField& b) {
  const auto& g = *a.graph;
  double sum = 0.0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    for (const auto& h : g.neighbors(static_cast<int>(v))) sum += a.at(h) * b.at(h);
  return sum / (2.0 * g.volume());
}

double campbell_power(const EdgeField& zeta, double r) {
  double sum = 0.0;
  for (double v : zeta.values) sum += std::pow(std::fabs(v), r);
  return sum / zeta.graph->volume();
}

double tilt_J(const Surface& eta, int axis) {
  return campbell_inner(gradient(eta), omega_field(eta.graph, axis));
}

namespace {

// One pass along the line; returns false when the line comes within `tie` of
// a Voronoi vertex.
bool trace_line(const Surface& eta, const VoronoiLocator& locator, int axis, double offset, double K,
                PointwiseTilt& out) {
  const auto& g = *eta.graph;
  const Vec2 u = axis_vector(axis);
  const Vec2 start = axis == 0 ? Vec2{0.0, offset} : Vec2{offset, 0.0};
  const double tie = 1e-10 * std::max(1.0, g.points().box);

  int s = locator.locate(start);
  // Unwrapped position of the current site, consistent with the line.
  Vec2 site = start + wrap_delta(g.points(), start, g.position(s));
  double sum = 0.0;
  std::size_t crossings = 0;
  for (;;) {
    double best = std::numeric_limits<double>::infinity();
    const HalfEdge* exit = nullptr;
    for (const auto& h : g.neighbors(s)) {
      const double along = dot(u, h.delta);
      if (!(along > 0)) continue;
      const double k = (0.5 * norm2(h.delta) - dot(start - site, h.delta)) / along;
      if (k < best) {
        best = k;
        exit = &h;
      }
    }
    if (exit == nullptr) throw GeometryError("line leaves a cell without crossing a facet");
    if (best > K) break;
    // At the exit point every other neighbor must be strictly farther than s;
    // a tie means the line meets a Voronoi vertex.
    const Vec2 x = start + best * u - site;
    for (const auto& h : g.neighbors(s))
      if (&h != exit && norm2(x - h.delta) - norm2(x) < tie) return false;
    sum += eta.increment(s, *exit);
    site += exit->delta;
    s = exit->neighbor;
    ++crossings;
  }
  out.value = sum / K;
  out.offset = offset;
  out.crossings = crossings;
  return true;
}

}  // namespace

PointwiseTilt tilt_I_pointwise(const Surface& eta, int axis, double offset, double K) {
  const auto& g = *eta.graph;
  if (!g.periodic()) throw ConfigError("pointwise tilt requires periodic mode");
  if (axis < 0 || axis >= g.dim()) throw ConfigError("axis out of range");
  if (!(K > 0)) throw ConfigError("line length K must be positive");
  if (g.dim() == 1) offset = 0.0;
  const VoronoiLocator locator(eta.graph);
  PointwiseTilt out;
  for (int attempt = 0; attempt < 16; ++attempt) {
    if (trace_line(eta, locator, axis, offset, K, out)) {
      out.perturbed = attempt > 0;
      return out;
    }
    offset += 1e-9;
  }
  throw GeometryError("line repeatedly meets Voronoi vertices");
}

double mass_transport_check(const DirectedField& phi) {
  const auto& g = *phi.graph;
  double out = 0.0, in = 0.0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    for (const auto& h : g.neighbors(static_cast<int>(v))) out += phi.at(h);
  // Same sum with every pair read backwards, visiting edges by index.
  for (std::size_t e = 0; e < phi.forward.size(); ++e) in += phi.backward[e] + phi.forward[e];
  return std::fabs(out - in);
}

double IdentityCheck::residual() const noexcept { return std::fabs(lhs - rhs); }

IdentityCheck integration_by_parts_check(const Surface& phi, const EdgeField& zeta) {
  if (phi.tilt.x != 0.0 || phi.tilt.y != 0.0)
    throw ConfigError("identity requires translation-invariant surface");
  IdentityCheck c;
  c.lhs = campbell_inner(gradient(phi), zeta);
  const auto div = divergence(zeta);
  double sum = 0.0;
  for (std::size_t v = 0; v < div.size(); ++v) sum += phi.psi[v] * div[v];
  c.rhs = -sum / phi.graph->volume();
  return c;
}

}  // namespace hdt
