#pragma once

#include "hdt/vec2.hpp"

namespace hdt::predicates {

/// Sign of the orientation determinant of (a, b, c): +1 when counterclockwise,
/// -1 when clockwise, 0 when collinear. Exact for all finite doubles.
int orient2d(Vec2 a, Vec2 b, Vec2 c);

/// Sign of the incircle determinant: +1 when d lies strictly inside the circle
/// through the counterclockwise triangle (a, b, c), -1 outside, 0 cocircular.
/// Exact for all finite doubles.
int incircle(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

/// Unfiltered floating-point determinants (for diagnostics and tests).
double orient2d_fast(Vec2 a, Vec2 b, Vec2 c) noexcept;
double incircle_fast(Vec2 a, Vec2 b, Vec2 c, Vec2 d) noexcept;

}  // namespace hdt::predicates
