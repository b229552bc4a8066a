#pragma once

#include <span>
#include <vector>

#include "hdt/edge_field.hpp"
#include "hdt/geometry.hpp"
#include "hdt/vec2.hpp"

namespace hdt {

/// Height function eta(s) = tilt . pos(s) + psi(s) on the vertices of a graph.
///
/// Only psi is stored, so on a torus eta is an affine surface plus a periodic
/// one. Edge increments always go through the wrapped displacement.
struct Surface {
  GraphPtr graph;
  Vec2 tilt;
  std::vector<double> psi;

  Surface() = default;
  explicit Surface(GraphPtr g, Vec2 c = {});
  Surface(GraphPtr g, Vec2 c, std::vector<double> periodic);

  /// eta(s') - eta(s) along the half-edge h leaving `from`.
  double increment(int from, const HalfEdge& h) const {
    return dot(tilt, h.delta) + psi[static_cast<std::size_t>(h.neighbor)] - psi[static_cast<std::size_t>(from)];
  }
  double height(int v) const;
  std::size_t size() const noexcept { return psi.size(); }

  /// Shifts psi so that psi(0) = 0.
  void normalize_gauge();
};

EdgeField gradient(const Surface& eta);
std::vector<double> divergence(const EdgeField& zeta);
std::vector<double> divergence(const DirectedField& zeta);
std::vector<double> laplacian(const Surface& eta);
double laplacian_at(const Surface& eta, int v);
double max_abs(std::span<const double> values);

/// (1 / (2 V)) sum over directed edges, V the box volume.
double campbell_mean(const EdgeField& zeta);
double campbell_mean(const DirectedField& zeta);
/// Campbell mean of the product zeta . zeta'.
double campbell_inner(const EdgeField& a, const EdgeField& b);
double campbell_inner(const EdgeField& a, const DirectedField& b);
/// Campbell mean of |zeta|^r.
double campbell_power(const EdgeField& zeta, double r);

/// C(grad eta . omega_u).
double tilt_J(const Surface& eta, int axis);

/// Line-crossing estimate of the tilt along axis `axis`.
struct PointwiseTilt {
  double value = 0.0;
  double offset = 0.0;     // transverse coordinate actually used
  bool perturbed = false;  // offset moved off a Voronoi vertex
  std::size_t crossings = 0;
};

/// Walks the line {offset * e_perp + k * u : 0 <= k <= K} through the Voronoi
/// cells, summing grad eta over consecutive crossings, and divides by K.
/// When the line meets a Voronoi vertex the offset is moved by 1e-9.
PointwiseTilt tilt_I_pointwise(const Surface& eta, int axis, double offset, double K);

/// |sum phi(s,s') - sum phi(s',s)| over all directed edges.
double mass_transport_check(const DirectedField& phi);

/// Both sides of C(grad phi . zeta) = -(1/V) sum_s phi(s) div zeta(s).
struct IdentityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual() const noexcept;
};

/// Throws ConfigError "identity requires translation-invariant surface" when
/// phi has a nonzero tilt.
IdentityCheck integration_by_parts_check(const Surface& phi, const EdgeField& zeta);

}  // namespace hdt
