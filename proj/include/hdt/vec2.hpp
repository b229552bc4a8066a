#pragma once

#include <cmath>

namespace hdt {

/// Planar vector. One-dimensional configurations keep y == 0.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(Vec2 o) noexcept { x += o.x; y += o.y; return *this; }
  constexpr Vec2& operator-=(Vec2 o) noexcept { x -= o.x; y -= o.y; return *this; }
  constexpr Vec2& operator*=(double k) noexcept { x *= k; y *= k; return *this; }

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) noexcept { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) noexcept { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator-(Vec2 a) noexcept { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double k, Vec2 a) noexcept { return {k * a.x, k * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double k) noexcept { return {k * a.x, k * a.y}; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) noexcept = default;

  constexpr double operator[](int axis) const noexcept { return axis == 0 ? x : y; }
};

constexpr double dot(Vec2 a, Vec2 b) noexcept { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) noexcept { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) noexcept { return std::hypot(a.x, a.y); }
constexpr double norm2(Vec2 a) noexcept { return dot(a, a); }

/// Unit vector along coordinate axis 0 or 1.
constexpr Vec2 axis_vector(int axis) noexcept { return axis == 0 ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0}; }

}  // namespace hdt
