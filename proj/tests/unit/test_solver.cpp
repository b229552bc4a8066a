#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "hdt/harness.hpp"
#include "hdt/solver.hpp"

using namespace hdt;

namespace {

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("one-dimensional closed form") {
  const auto g = build_delaunay(fixture::circle4());
  for (Method m : {Method::conjugate_gradient, Method::gauss_seidel}) {
    const auto sol = solve_harmonic(g, {1, 0}, {.method = m});
    for (int v = 0; v < 4; ++v) CHECK(std::fabs(sol.h.height(v) - v) < 1e-12);
    const auto chi = corrector(sol.h, {1, 0});
    const double expected[] = {0, 0.5, 0.5, 0};
    for (int v = 0; v < 4; ++v) CHECK(std::fabs(chi.chi[static_cast<std::size_t>(v)] - expected[v]) < 1e-12);
  }
}

TEST_CASE("affine surfaces on the lattice need no correction") {
  const auto g = build_delaunay(lattice(2, 8));
  const auto sol = solve_harmonic(g, {0.6, -2.0});
  CHECK(max_abs(sol.h.psi) < 1e-14);
  const auto d = deform(g);
  for (std::size_t v = 0; v < d.image.size(); ++v) CHECK(d.image[v] == g->position(static_cast<int>(v)));
  for (const auto& row : sublinearity_scan(sol.h, {0.6, -2.0})) CHECK(row.max_abs_chi < 1e-14);
  const auto overlay = compare_with_delaunay(d);
  CHECK(overlay.harmonic_only == 0);
  CHECK(overlay.delaunay_only == 0);
}

TEST_CASE("residual contract, tilt and method agreement") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto g = fixture::poisson_torus(seed == 0 ? 1000 : 300, seed);
    const Vec2 c{1, 0};
    const auto cg = solve_harmonic(g, c, {.tol = 1e-10});
    const auto gs = solve_harmonic(g, c, {.tol = 1e-10, .method = Method::gauss_seidel});
    CHECK(cg.report.residual_inf <= 1e-10);
    CHECK(gs.report.residual_inf <= 1e-10);
    CHECK(max_abs(laplacian(cg.h)) <= 1e-10);
    CHECK(cg.h.psi[0] == 0.0);
    CHECK(std::fabs(tilt_J(cg.h, 0) - 1.0) < 1e-8);
    CHECK(max_diff(cg.h.psi, gs.h.psi) < 10 * 1e-10);
    const auto chi = corrector(cg.h, c);
    CHECK(chi.split_residual() < 1e-9);
    // Orthogonality of grad(gamma - h) to divergence-free fields.
    Surface gap(g, {}, std::vector<double>(g->vertex_count()));
    for (std::size_t v = 0; v < gap.size(); ++v) gap.psi[v] = -cg.h.psi[v];
    CHECK(std::fabs(campbell_inner(gradient(gap), gradient(cg.h))) < 1e-9);
    CHECK(std::fabs(campbell_inner(gradient(gap), omega_field(g, 0))) < 1e-9);
  }
}

TEST_CASE("harmonic surface minimizes energy among same-tilt surfaces") {
  const auto g = fixture::poisson_torus(200, 44);
  const auto h = solve_harmonic(g, {0.5, 0.5}, {.tol = 1e-12}).h;
  const double e = energy(h);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Surface other = h;
    const auto noise = fixture::random_values(h.size(), seed, 1e-3);
    for (std::size_t v = 0; v < h.size(); ++v) other.psi[v] += noise[v];
    CHECK(energy(other) > e);
  }
  Surface shifted = h;
  for (double& p : shifted.psi) p += 5.0;
  CHECK(std::fabs(energy(shifted) - e) < 1e-12);
}

TEST_CASE("distinct initial surfaces reach the same gradients") {
  const auto g = fixture::poisson_torus(300, 8);
  const Vec2 c{0.2, 1.0};
  const auto a = solve_harmonic(g, c, {.tol = 1e-11, .initial_psi = fixture::random_values(g->vertex_count(), 1, 5)});
  const auto b = solve_harmonic(g, c, {.tol = 1e-11, .initial_psi = fixture::random_values(g->vertex_count(), 2, 5)});
  CHECK(max_diff(gradient(a.h).values, gradient(b.h).values) < 1e-8);
}

TEST_CASE("deformation satisfies the barycenter property") {
  const auto g = fixture::poisson_torus(500, 6);
  const auto d = deform(g, {.tol = 1e-10});
  CHECK(barycenter_residual(d) <= 1e-10 * g->max_degree());
  const auto overlay = compare_with_delaunay(d);
  MESSAGE("harmonic edges absent from the new triangulation: " << overlay.harmonic_only);
}

TEST_CASE("sublinearity scan arithmetic") {
  const auto g = fixture::poisson_torus(400, 10);
  auto h = solve_harmonic(g, {1, 0}).h;
  const auto base = sublinearity_scan(h, {1, 0});
  REQUIRE(base.size() == 4);
  for (double& p : h.psi) p = 3.0;
  const auto shifted = sublinearity_scan(h, {1, 0});
  for (std::size_t k = 0; k < 4; ++k) CHECK(shifted[k].ratio == doctest::Approx(3.0 / shifted[k].half_width));
  for (std::size_t k = 1; k < 4; ++k) CHECK(shifted[k].ratio < shifted[k - 1].ratio);
}

TEST_CASE("solver errors and limits") {
  const auto g = fixture::poisson_torus(300, 3);
  CHECK_THROWS_AS(solve_harmonic(g, {1, 0}, {.tol = 1e-10, .max_iter = 3}), NotConverged);
  try {
    solve_harmonic(g, {1, 0}, {.tol = 1e-10, .max_iter = 3, .method = Method::gauss_seidel});
    FAIL("expected non-convergence");
  } catch (const NotConverged& e) {
    CHECK(e.report.iterations == 3);
  }
  CHECK_THROWS_AS(solve_harmonic(g, {1, 0}, {.tol = 0}), ConfigError);
  CHECK_THROWS_AS(solve_harmonic(g, {1, 0}, {.dirichlet = true}), ConfigError);
}

TEST_CASE("planar Dirichlet problem holds the hull at the affine heights") {
  PointSet ps = sample_poisson(2, 12.0, 1.0, 2, false);
  ps.mode = Mode::planar;
  const auto g = build_delaunay(ps);
  const auto hull = hull_vertices(ps);
  CHECK(hull.size() >= 3);
  const auto sol = solve_harmonic(g, {1, 0}, {.dirichlet = true});
  std::vector<char> on_hull(g->vertex_count(), 0);
  for (int v : hull) {
    on_hull[static_cast<std::size_t>(v)] = 1;
    CHECK(sol.h.psi[static_cast<std::size_t>(v)] == 0.0);
  }
  for (std::size_t v = 0; v < g->vertex_count(); ++v)
    if (!on_hull[v]) CHECK(std::fabs(laplacian_at(sol.h, static_cast<int>(v))) <= 1e-10);
}
