#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hdt/error.hpp"
#include "hdt/fields.hpp"

namespace hdt {

enum class Method { conjugate_gradient, gauss_seidel };

std::string to_string(Method m);
Method parse_method(const std::string& text);

struct SolverOptions {
  double tol = 1e-10;                  // target for ||Delta h||_inf
  std::uint64_t max_iter = 1000000;    // CG iterations or Gauss-Seidel sweeps
  Method method = Method::conjugate_gradient;
  std::optional<std::vector<double>> initial_psi;
  /// Planar graphs only: hold convex-hull vertices at psi = 0 (heights of the
  /// affine surface) instead of the free-boundary problem.
  bool dirichlet = false;
};

struct SolverReport {
  std::uint64_t iterations = 0;
  double residual_inf = 0.0;
  double residual_l2 = 0.0;
  double energy = 0.0;
  double wall_seconds = 0.0;
  Method method = Method::conjugate_gradient;
};

/// Thrown when max_iter is reached; carries the report of the last iterate.
struct NotConverged : ConvergenceError {
  SolverReport report;
  explicit NotConverged(const SolverReport& r);
};

struct HarmonicSolution {
  Surface h;
  SolverReport report;
};

/// Harmonic surface h = c . pos + chi with ||Delta h||_inf <= tol and the
/// gauge chi(0) = 0 (periodic and free-boundary planar problems).
HarmonicSolution solve_harmonic(const GraphPtr& graph, Vec2 tilt, const SolverOptions& options = {});

struct CorrectorReport {
  std::vector<double> chi;
  double max_abs = 0.0;
  double energy_gamma = 0.0;  // C(|grad gamma|^2)
  double energy_h = 0.0;      // C(|grad h|^2)
  double energy_diff = 0.0;   // C(|grad gamma - grad h|^2)
  double split_residual() const noexcept;  // relative defect of the orthogonal split
};

CorrectorReport corrector(const Surface& h, Vec2 tilt);

/// Image points H(s) = s + chi(s), one harmonic solve per coordinate.
struct DeformedGraph {
  GraphPtr graph;
  std::vector<Vec2> image;
  std::vector<Vec2> chi;
  std::vector<SolverReport> reports;
  double tol = 0.0;
};

DeformedGraph deform(const GraphPtr& graph, const SolverOptions& options = {});

/// max_s |H(s) - mean of H over the neighbors of s| (Euclidean).
double barycenter_residual(const DeformedGraph& deformed);

/// Compares the harmonic graph with the Delaunay graph of the image points.
struct OverlayReport {
  GraphPtr delaunay;
  std::size_t harmonic_only = 0;  // harmonic edges missing from the new triangulation
  std::size_t delaunay_only = 0;  // new Delaunay edges that are not harmonic edges
};

OverlayReport compare_with_delaunay(const DeformedGraph& deformed);

struct SublinearityRow {
  double half_width = 0.0;
  double max_abs_chi = 0.0;
  double ratio = 0.0;
  std::size_t vertices = 0;
};

/// max |chi| / n over centered windows of half-width n = L * f.
std::vector<SublinearityRow> sublinearity_scan(const Surface& h, Vec2 tilt,
                                               const std::vector<double>& fractions = {1.0 / 16, 1.0 / 8,
                                                                                       1.0 / 4, 1.0 / 2});

/// Convex-hull vertices of a planar configuration (counterclockwise).
std::vector<int> hull_vertices(const PointSet& ps);

}  // namespace hdt
