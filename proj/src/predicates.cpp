#include "hdt/predicates.hpp"

#include <cmath>
#include <vector>

namespace hdt::predicates {

namespace {

// Floating-point expansion arithmetic: a value is represented as an unevaluated
// sum of nonoverlapping doubles ordered by increasing magnitude. All operations
// are exact under round-to-nearest-even; zero components are dropped.
using Expansion = std::vector<double>;

constexpr double kEps = 0x1.0p-53;
constexpr double kOrientBound = (3.0 + 16.0 * kEps) * kEps;
constexpr double kIncircleBound = (10.0 + 96.0 * kEps) * kEps;

inline void two_sum(double a, double b, double& x, double& y) {
  x = a + b;
  const double bv = x - a;
  const double av = x - bv;
  y = (a - av) + (b - bv);
}

inline void fast_two_sum(double a, double b, double& x, double& y) {
  x = a + b;
  y = b - (x - a);
}

inline void two_product(double a, double b, double& x, double& y) {
  x = a * b;
  y = std::fma(a, b, -x);
}

Expansion from_diff(double a, double b) {
  double x, y;
  two_sum(a, -b, x, y);
  Expansion e;
  if (y != 0.0) e.push_back(y);
  if (x != 0.0 || e.empty()) e.push_back(x);
  return e;
}

// Expansion sum: merge by magnitude, then a Two-Sum chain (zero-eliminating).
Expansion add(const Expansion& e, const Expansion& f) {
  Expansion h;
  h.reserve(e.size() + f.size());
  std::size_t ei = 0, fi = 0;
  auto take_smaller = [&]() {
    const double en = ei < e.size() ? e[ei] : 0.0;
    const double fn = fi < f.size() ? f[fi] : 0.0;
    if (fi >= f.size() || (ei < e.size() && ((fn > en) == (fn > -en)))) {
      ++ei;
      return en;
    }
    ++fi;
    return fn;
  };
  if (e.empty()) return f;
  if (f.empty()) return e;
  double q = take_smaller();
  double qnew, hh;
  while (ei < e.size() || fi < f.size()) {
    two_sum(q, take_smaller(), qnew, hh);
    q = qnew;
    if (hh != 0.0) h.push_back(hh);
  }
  if (q != 0.0 || h.empty()) h.push_back(q);
  return h;
}

Expansion negate(Expansion e) {
  for (double& v : e) v = -v;
  return e;
}

// SCALE-EXPANSION with zero elimination.
Expansion scale(const Expansion& e, double b) {
  Expansion h;
  h.reserve(2 * e.size());
  double q, hh, p1, p0, sum;
  two_product(e[0], b, q, hh);
  if (hh != 0.0) h.push_back(hh);
  for (std::size_t i = 1; i < e.size(); ++i) {
    two_product(e[i], b, p1, p0);
    two_sum(q, p0, sum, hh);
    if (hh != 0.0) h.push_back(hh);
    fast_two_sum(p1, sum, q, hh);
    if (hh != 0.0) h.push_back(hh);
  }
  if (q != 0.0 || h.empty()) h.push_back(q);
  return h;
}

Expansion mul(const Expansion& a, const Expansion& b) {
  Expansion acc{0.0};
  for (double bj : b) acc = add(acc, scale(a, bj));
  return acc;
}

int sign_of(const Expansion& e) {
  // The most significant component carries the sign.
  for (auto it = e.rbegin(); it != e.rend(); ++it)
    if (*it != 0.0) return *it > 0 ? 1 : -1;
  return 0;
}

int orient2d_exact(Vec2 a, Vec2 b, Vec2 c) {
  const Expansion acx = from_diff(a.x, c.x), acy = from_diff(a.y, c.y);
  const Expansion bcx = from_diff(b.x, c.x), bcy = from_diff(b.y, c.y);
  return sign_of(add(mul(acx, bcy), negate(mul(acy, bcx))));
}

int incircle_exact(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const Expansion adx = from_diff(a.x, d.x), ady = from_diff(a.y, d.y);
  const Expansion bdx = from_diff(b.x, d.x), bdy = from_diff(b.y, d.y);
  const Expansion cdx = from_diff(c.x, d.x), cdy = from_diff(c.y, d.y);
  const Expansion alift = add(mul(adx, adx), mul(ady, ady));
  const Expansion blift = add(mul(bdx, bdx), mul(bdy, bdy));
  const Expansion clift = add(mul(cdx, cdx), mul(cdy, cdy));
  const Expansion bc = add(mul(bdx, cdy), negate(mul(cdx, bdy)));
  const Expansion ca = add(mul(cdx, ady), negate(mul(adx, cdy)));
  const Expansion ab = add(mul(adx, bdy), negate(mul(bdx, ady)));
  return sign_of(add(add(mul(alift, bc), mul(blift, ca)), mul(clift, ab)));
}

}  // namespace

double orient2d_fast(Vec2 a, Vec2 b, Vec2 c) noexcept {
  return (a.x - c.x) * (b.y - c.y) - (a.y - c.y) * (b.x - c.x);
}

double incircle_fast(Vec2 a, Vec2 b, Vec2 c, Vec2 d) noexcept {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;
  return alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) + clift * (adx * bdy - bdx * ady);
}

int orient2d(Vec2 a, Vec2 b, Vec2 c) {
  const double left = (a.x - c.x) * (b.y - c.y);
  const double right = (a.y - c.y) * (b.x - c.x);
  const double det = left - right;
  double detsum;
  if (left > 0.0) {
    if (right <= 0.0) return det > 0 ? 1 : (det < 0 ? -1 : 0);
    detsum = left + right;
  } else if (left < 0.0) {
    if (right >= 0.0) return det > 0 ? 1 : (det < 0 ? -1 : 0);
    detsum = -left - right;
  } else {
    return det > 0 ? 1 : (det < 0 ? -1 : 0);
  }
  const double bound = kOrientBound * detsum;
  if (det >= bound) return 1;
  if (-det >= bound) return -1;
  return orient2d_exact(a, b, c);
}

int incircle(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;
  const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
  const double permanent = (std::fabs(bdxcdy) + std::fabs(cdxbdy)) * alift +
                           (std::fabs(cdxady) + std::fabs(adxcdy)) * blift +
                           (std::fabs(adxbdy) + std::fabs(bdxady)) * clift;
  const double bound = kIncircleBound * permanent;
  if (det > bound) return 1;
  if (-det > bound) return -1;
  return incircle_exact(a, b, c, d);
}

}  // namespace hdt::predicates
