#include "hdt/energy.hpp"

#include <algorithm>
#include <cmath>

#include "hdt/error.hpp"

namespace hdt {

TriangleOrientation::TriangleOrientation(GraphPtr graph) : graph_(std::move(graph)) {
  const auto& g = *graph_;
  if (g.dim() != 2) throw ConfigError("triangle orientation requires d = 2");
  const double tol = 1e-9 * std::max(1.0, g.points().box);
  offsets_.assign(g.vertex_count() + 1, 0);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const int s = static_cast<int>(v);
    for (const auto& h : g.neighbors(s)) {
      Apexes a;
      double best_right = -4.0, best_left = 4.0;
      for (const auto& cand : g.neighbors(s)) {
        if (cand.edge == h.edge) continue;
        // The apex must also neighbor s' at the matching displacement.
        const Vec2 from_target = cand.delta - h.delta;
        bool common = false;
        for (const auto& back : g.neighbors(h.neighbor))
          if (back.neighbor == cand.neighbor && norm(back.delta - from_target) < tol) common = true;
        if (!common) continue;
        const double angle = std::atan2(cross(h.delta, cand.delta), dot(h.delta, cand.delta));
        if (angle < 0 && angle > best_right) {
          best_right = angle;
          a.plus = cand.neighbor;
          a.d_plus = cand.delta;
        } else if (angle > 0 && angle < best_left) {
          best_left = angle;
          a.minus = cand.neighbor;
          a.d_minus = cand.delta;
        }
      }
      if (a.plus < 0 || a.minus < 0) {
        if (g.periodic() || (a.plus < 0 && a.minus < 0))
          throw GeometryError("edge with fewer than two common neighbors");
        if (a.plus < 0) {
          a.plus = a.minus;
          a.d_plus = a.d_minus;
        } else {
          a.minus = a.plus;
          a.d_minus = a.d_plus;
        }
      }
      apexes_.push_back(a);
    }
    offsets_[v + 1] = apexes_.size();
  }
}

ZetaPair zeta_pm(const Surface& eta, const TriangleOrientation& orient) {
  if (eta.graph != orient.graph()) throw ConfigError("surface and orientation use different graphs");
  const auto& g = *eta.graph;
  ZetaPair z{DirectedField(eta.graph), DirectedField(eta.graph)};
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const int s = static_cast<int>(v);
    const auto nbrs = g.neighbors(s);
    const auto apex = orient.of(s);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      const auto& a = apex[k];
      z.plus.set(nbrs[k], dot(eta.tilt, a.d_plus) + eta.psi[static_cast<std::size_t>(a.plus)] - eta.psi[v]);
      z.minus.set(nbrs[k], dot(eta.tilt, a.d_minus) + eta.psi[static_cast<std::size_t>(a.minus)] - eta.psi[v]);
    }
  }
  return z;
}

double row_identity_residual(const Surface& eta, const ZetaPair& zeta) {
  const auto& g = *eta.graph;
  double worst = 0.0;
  for (const DirectedField* f : {&zeta.plus, &zeta.minus}) {
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      double out = 0.0, in = 0.0;
      for (const auto& h : g.neighbors(static_cast<int>(v))) {
        out += f->at(h);
        // The reverse half-edge carries zeta(s', s).
        HalfEdge back = h;
        back.sign = -h.sign;
        in += f->at(back);
      }
      worst = std::max({worst, std::fabs(out - laplacian_at(eta, static_cast<int>(v))), std::fabs(in)});
    }
  }
  return worst;
}

double regularization_functional(const Surface& eta, const TriangleOrientation& orient) {
  return campbell_inner(gradient(eta), zeta_pm(eta, orient).plus);
}

Vec2 barycenter_argmin(std::span<const Vec2> points) {
  if (points.empty()) throw ConfigError("barycenter of an empty set");
  Vec2 sum{};
  for (const auto& p : points) sum += p;
  return (1.0 / static_cast<double>(points.size())) * sum;
}

double barycenter_objective(std::span<const Vec2> points, Vec2 x) {
  double f = 0.0;
  for (std::size_t k = 0; k < points.size(); ++k)
    f += dot(points[k] - x, points[(k + 1) % points.size()] - x);
  return f;
}

}  // namespace hdt
