#pragma once

#include <span>
#include <vector>

#include "hdt/fields.hpp"

namespace hdt {

/// For every directed edge (s, s') the two common neighbors of s and s'.
///
/// alpha_plus lies to the right of s' - s (cross product (s' - s) x (alpha - s)
/// < 0) and is the first such common neighbor met turning clockwise from
/// s' - s; alpha_minus is the first one counterclockwise. Hull edges of planar
/// graphs have a single apex, which then serves as both.
class TriangleOrientation {
 public:
  struct Apexes {
    int plus = -1;
    int minus = -1;
    Vec2 d_plus;   // displacement s -> alpha_plus
    Vec2 d_minus;  // displacement s -> alpha_minus
  };

  /// Throws GeometryError "edge with fewer than two common neighbors" when a
  /// periodic edge lacks an apex on either side (or a planar edge has none).
  explicit TriangleOrientation(GraphPtr graph);

  const GraphPtr& graph() const noexcept { return graph_; }
  /// Apexes of the half-edges of v, aligned with graph.neighbors(v).
  std::span<const Apexes> of(int v) const {
    return {apexes_.data() + offsets_[static_cast<std::size_t>(v)],
            apexes_.data() + offsets_[static_cast<std::size_t>(v) + 1]};
  }

 private:
  GraphPtr graph_;
  std::vector<std::size_t> offsets_;
  std::vector<Apexes> apexes_;
};

/// zeta_pm(s, s') = grad eta(s, alpha_pm(s, s')), stored per directed edge.
struct ZetaPair {
  DirectedField plus;
  DirectedField minus;
};

ZetaPair zeta_pm(const Surface& eta, const TriangleOrientation& orient);

/// Largest deviation in the row identities sum_{s'} zeta(s, s') = Delta eta(s)
/// and sum_{s'} zeta(s', s) = 0, over both fields and all vertices.
double row_identity_residual(const Surface& eta, const ZetaPair& zeta);

/// C(grad eta . zeta_plus^eta).
double regularization_functional(const Surface& eta, const TriangleOrientation& orient);

/// Arithmetic mean of the points, the minimizer of barycenter_objective.
Vec2 barycenter_argmin(std::span<const Vec2> points);

/// F(x) = sum_k (s_k - x) . (s_{k+1} - x) over the cyclic sequence.
double barycenter_objective(std::span<const Vec2> points, Vec2 x);

}  // namespace hdt
