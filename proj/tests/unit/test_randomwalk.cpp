#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "hdt/randomwalk.hpp"
#include "support.hpp"

using namespace hdt;

TEST_CASE("walk traces are valid and reproducible") {
  const auto g = fixture::poisson_torus(200, 3);
  for (Clock clock : {Clock::jump_rate, Clock::uniformized}) {
    const auto a = walk(g, 5, 30.0, 11, clock);
    const auto b = walk(g, 5, 30.0, 11, clock);
    CHECK(a.vertices == b.vertices);
    CHECK(a.times == b.times);
    REQUIRE(a.vertices.size() > 1);
    Vec2 pos = g->position(5);
    for (std::size_t k = 1; k < a.vertices.size(); ++k) {
      CHECK(a.times[k] > a.times[k - 1]);
      const int e = g->find_edge(a.vertices[k - 1], a.vertices[k]);
      REQUIRE(e >= 0);
      for (const auto& h : g->neighbors(a.vertices[k - 1]))
        if (h.neighbor == a.vertices[k]) pos += h.delta;
    }
    // Unwrapped displacement is the sum of per-jump displacements.
    CHECK(a.unwrapped.back() == pos);
  }
}

TEST_CASE("short walks stay put") {
  const auto g = fixture::poisson_torus(100, 1);
  std::uint64_t seed = 0;
  for (;; ++seed) {
    Rng rng(seed, Stream::walks);
    if (rng.exponential(g->degree(0)) > 0.01) break;
  }
  const auto tr = walk(g, 0, 0.01, seed, Clock::jump_rate);
  CHECK(tr.vertices.size() == 1);
}

TEST_CASE("uniformized walk matches the semigroup oracle") {
  PointSet ps;
  ps.dim = 1;
  ps.box = 4.0;
  ps.points = {{0, 0}, {1, 0}, {2, 0}, {3, 0}};
  const auto g = build_delaunay(ps);
  const auto exact = oracle::semigroup_row(fixture::transition_matrix(*g), 0, 1.0);
  const std::uint64_t n = 200000;
  std::vector<double> hits(4, 0.0);
  for (std::uint64_t w = 0; w < n; ++w) hits[static_cast<std::size_t>(walk(g, 0, 1.0, w, Clock::uniformized).vertices.back())] += 1;
  for (std::size_t v = 0; v < 4; ++v) {
    const double p = hits[v] / n;
    CHECK(std::fabs(p - exact[v]) < 4 * std::sqrt(exact[v] * (1 - exact[v]) / n));
  }
}

TEST_CASE("jump counts follow the vertex rates") {
  // Holding times at a vertex are Exp(a(s)): their mean is 1 / a(s).
  const auto g = fixture::poisson_torus(100, 9);
  std::vector<RunningStats> hold(g->vertex_count());
  for (std::uint64_t w = 0; w < 200; ++w) {
    const auto tr = walk(g, static_cast<int>(w % g->vertex_count()), 50.0, w, Clock::jump_rate);
    for (std::size_t k = 0; k + 1 < tr.times.size(); ++k)
      hold[static_cast<std::size_t>(tr.vertices[k])].add(tr.times[k + 1] - tr.times[k]);
  }
  // Chi-square style aggregate: standardized deviations should be O(1).
  double chi2 = 0;
  int cells = 0;
  for (std::size_t v = 0; v < hold.size(); ++v) {
    if (hold[v].count() < 30) continue;
    const double a = g->degree(static_cast<int>(v));
    const double z = (hold[v].mean() - 1 / a) / (1 / a / std::sqrt(static_cast<double>(hold[v].count())));
    chi2 += z * z;
    ++cells;
  }
  REQUIRE(cells > 20);
  CHECK(chi2 < cells + 6 * std::sqrt(2.0 * cells));
}

TEST_CASE("martingale residual equals the harmonic residual") {
  const auto g = fixture::poisson_torus(300, 4);
  const auto d = deform(g, {.tol = 1e-10});
  double lap = 0;
  for (int axis = 0; axis < 2; ++axis) {
    Surface h(g, axis_vector(axis));
    for (std::size_t v = 0; v < h.size(); ++v) h.psi[v] = d.chi[v][axis];
    lap = std::max(lap, max_abs(laplacian(h)));
  }
  CHECK(std::fabs(martingale_residual(d) - lap) < 1e-12);
  CHECK(martingale_residual(d) <= 1e-10 * g->max_degree());

  DeformedGraph identity{g, {}, std::vector<Vec2>(g->vertex_count()), {}, 0};
  for (std::size_t v = 0; v < g->vertex_count(); ++v) identity.image.push_back(g->position(static_cast<int>(v)));
  CHECK(martingale_residual(identity) > 1e-3);
  const auto grid = build_delaunay(lattice(2, 6));
  DeformedGraph grid_id{grid, {}, std::vector<Vec2>(36), {}, 0};
  CHECK(martingale_residual(grid_id) == 0.0);
}

TEST_CASE("mean squared displacement diagnostic") {
  const auto g = fixture::poisson_torus(300, 2);
  const auto d = deform(g);
  const auto rep = msd_diagnostic(d, 300, 10.0, 5);
  CHECK(rep.times.size() == 20);
  CHECK(rep.slope > 0);
  CHECK(rep.r2 > 0.9);
  CHECK(std::fabs(rep.mean_x.back().mean) < 4 * rep.mean_x.back().std_error);
  const auto zero = msd_diagnostic(d, 10, 0.0, 5, 1);
  CHECK(zero.msd == std::vector<double>{0.0});
}

TEST_CASE("environment seen from the walker") {
  const auto g = fixture::poisson_torus(200, 6);
  std::vector<double> ones(g->vertex_count(), 1.0), degree;
  for (std::size_t v = 0; v < g->vertex_count(); ++v) degree.push_back(g->degree(static_cast<int>(v)));
  const auto one = environment_check(*g, ones, 1000, 1);
  CHECK(one.time_average == 1.0);
  CHECK(one.spatial_average == 1.0);
  const auto rep = environment_check(*g, degree, 200000, 2);
  CHECK(std::fabs(rep.difference()) < 4 * rep.std_error);
  const auto grid = build_delaunay(lattice(2, 6));
  const auto flat = environment_check(*grid, std::vector<double>(36, 4.0), 1000, 3);
  CHECK(flat.time_average == 4.0);
  CHECK(flat.spatial_average == 4.0);
}

TEST_CASE("poisson moments") {
  CHECK(poisson_moment(0, 3.0) == 1.0);
  CHECK(poisson_moment(1, 3.0) == 3.0);
  CHECK(poisson_moment(2, 3.0) == 12.0);               // t + t^2
  CHECK(poisson_moment(3, 2.0) == 2.0 + 12.0 + 8.0);   // t + 3t^2 + t^3
  CHECK(poisson_moment(4, 1.0) == 15.0);               // Bell number B_4
  CHECK(poisson_moment(2, 0.0) == 0.0);
}

TEST_CASE("moment check against the Poisson bound") {
  const auto g = fixture::poisson_torus(300, 13);
  const Surface gamma(g, {1, 0});
  const auto rows = moment_check(gamma, 2, {0.0, 1.0, 2.0, 5.0}, 20000, 7);
  CHECK(rows[0].moment.mean == 0.0);
  CHECK(rows[0].bound == 0.0);
  CHECK(rows[1].bound == doctest::Approx(2 * energy(gamma) * 2));
  for (const auto& r : rows) CHECK(r.within());
}
