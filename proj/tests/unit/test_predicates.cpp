#include <cmath>
#include <vector>

#include "doctest.h"
#include "hdt/predicates.hpp"
#include "hdt/rng.hpp"

#ifdef HDT_HAVE_GMP
#include <gmpxx.h>
#endif

using namespace hdt;
using predicates::incircle;
using predicates::orient2d;

namespace {

#ifdef HDT_HAVE_GMP

int orient_oracle(Vec2 a, Vec2 b, Vec2 c) {
  const mpq_class acx = mpq_class(a.x) - c.x, acy = mpq_class(a.y) - c.y;
  const mpq_class bcx = mpq_class(b.x) - c.x, bcy = mpq_class(b.y) - c.y;
  return mpq_sgn(mpq_class(acx * bcy - acy * bcx).get_mpq_t());
}

int incircle_oracle(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const mpq_class adx = mpq_class(a.x) - d.x, ady = mpq_class(a.y) - d.y;
  const mpq_class bdx = mpq_class(b.x) - d.x, bdy = mpq_class(b.y) - d.y;
  const mpq_class cdx = mpq_class(c.x) - d.x, cdy = mpq_class(c.y) - d.y;
  const mpq_class al = adx * adx + ady * ady, bl = bdx * bdx + bdy * bdy, cl = cdx * cdx + cdy * cdy;
  const mpq_class det = al * (bdx * cdy - cdx * bdy) + bl * (cdx * ady - adx * cdy) + cl * (adx * bdy - bdx * ady);
  return mpq_sgn(det.get_mpq_t());
}
#endif

// Near-degenerate generator: points on a line or circle nudged by a few ulps.
Vec2 nudge(Rng& rng, Vec2 p) {
  auto bump = [&](double v) {
    const int k = static_cast<int>(rng.below(7)) - 3;
    for (int i = 0; i < std::abs(k); ++i) v = std::nextafter(v, k > 0 ? 1e300 : -1e300);
    return v;
  };
  return {bump(p.x), bump(p.y)};
}

}  // namespace

TEST_CASE("orientation basics") {
  CHECK(orient2d({0, 0}, {1, 0}, {0, 1}) == 1);
  CHECK(orient2d({0, 0}, {0, 1}, {1, 0}) == -1);
  CHECK(orient2d({0, 0}, {1, 1}, {2, 2}) == 0);
  CHECK(orient2d({0.1, 0.1}, {0.2, 0.2}, {0.3, 0.3}) == orient2d({0.1, 0.1}, {0.2, 0.2}, {0.3, 0.3}));
}

TEST_CASE("incircle basics") {
  CHECK(incircle({0, 0}, {1, 0}, {0, 1}, {0.5, 0.5}) == 1);
  CHECK(incircle({0, 0}, {1, 0}, {0, 1}, {2, 2}) == -1);
  CHECK(incircle({0, 0}, {1, 0}, {0, 1}, {1, 1}) == 0);
}

#ifdef HDT_HAVE_GMP
TEST_CASE("predicates agree with rational arithmetic on near-degenerate inputs") {
  Rng rng(12345);
  int mismatches = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    // Collinear triples.
    const Vec2 a{rng.uniform(), rng.uniform()};
    const Vec2 dir{rng.uniform() - 0.5, rng.uniform() - 0.5};
    const Vec2 b = nudge(rng, a + 0.37 * dir);
    const Vec2 c = nudge(rng, a + 1.91 * dir);
    if (orient2d(a, b, c) != orient_oracle(a, b, c)) ++mismatches;
    // Cocircular quadruples.
    const double r = 0.5 + rng.uniform();
    const Vec2 o{rng.uniform() * 4, rng.uniform() * 4};
    Vec2 q[4];
    for (auto& p : q) {
      const double th = 2 * M_PI * rng.uniform();
      p = nudge(rng, o + Vec2{r * std::cos(th), r * std::sin(th)});
    }
    if (incircle(q[0], q[1], q[2], q[3]) != incircle_oracle(q[0], q[1], q[2], q[3])) ++mismatches;
    // Integer lattice quadruples hit exact zeros often.
    Vec2 z[4];
    for (auto& p : z) p = {static_cast<double>(rng.below(4)), static_cast<double>(rng.below(4))};
    if (incircle(z[0], z[1], z[2], z[3]) != incircle_oracle(z[0], z[1], z[2], z[3])) ++mismatches;
    if (orient2d(z[0], z[1], z[2]) != orient_oracle(z[0], z[1], z[2])) ++mismatches;
  }
  CHECK(mismatches == 0);
}
#endif

TEST_CASE("predicates are antisymmetric under swaps") {
  Rng rng(7);
  for (int trial = 0; trial < 5000; ++trial) {
    const Vec2 a{rng.uniform(), rng.uniform()}, b{rng.uniform(), rng.uniform()};
    const Vec2 c = nudge(rng, 0.5 * (a + b));
    CHECK(orient2d(a, b, c) == -orient2d(b, a, c));
    CHECK(orient2d(a, b, c) == orient2d(b, c, a));
    const Vec2 d{rng.uniform(), rng.uniform()};
    CHECK(incircle(a, b, c, d) == -incircle(b, a, c, d));
  }
}
