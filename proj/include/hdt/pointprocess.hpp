#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hdt/vec2.hpp"

namespace hdt {

enum class Mode { periodic, planar };

std::string to_string(Mode mode);
Mode parse_mode(const std::string& text);

/// A finite point configuration in dimension 1 or 2.
///
/// Periodic sets live on the flat torus [0, box)^dim; planar sets are
/// unconstrained and only used as test fixtures. In dimension 1 every point
/// has y == 0. With `palm` set, point 0 is the origin.
struct PointSet {
  int dim = 2;
  double box = 1.0;
  double intensity = 1.0;
  std::uint64_t seed = 0;
  Mode mode = Mode::periodic;
  bool palm = false;
  std::vector<Vec2> points;

  std::size_t size() const noexcept { return points.size(); }
  double volume() const noexcept { return dim == 1 ? box : box * box; }
};

/// Throws ConfigError / GeometryError when `ps` violates an invariant
/// (coordinates outside the box, exact duplicates, missing Palm origin).
void validate(const PointSet& ps);

/// Homogeneous Poisson sample on the periodic box [0, box)^dim.
///
/// The count is drawn from cumulative Exp(1) arrivals below intensity*box^dim,
/// so it is Poisson distributed and reproducible bit-for-bit from `seed`.
/// With `palm` the origin is placed at index 0.
PointSet sample_poisson(int dim, double box, double intensity, std::uint64_t seed, bool palm);

/// Exact lattice Z^dim ∩ [0, box) with unit spacing, periodic. `jitter` adds a
/// uniform perturbation in [-jitter, jitter] per coordinate (seeded).
PointSet lattice(int dim, int side, double jitter = 0.0, std::uint64_t seed = 0);

/// Overrides applied when loading a CSV (the `.meta` sidecar, when present,
/// supplies defaults for everything not overridden).
struct LoadOptions {
  std::optional<int> dim;
  std::optional<double> box;
  std::optional<Mode> mode;
  std::optional<bool> palm;
};

std::filesystem::path meta_path(const std::filesystem::path& csv);

/// Writes `x[,y]` rows with 17 significant digits plus the `.meta` sidecar.
void save_points(const PointSet& ps, const std::filesystem::path& path);
PointSet load_points(const std::filesystem::path& path, const LoadOptions& options = {});

/// Shortest-displacement difference `to - from` under the box metric.
Vec2 wrap_delta(const PointSet& ps, Vec2 from, Vec2 to) noexcept;
/// Reduces a coordinate into [0, box).
Vec2 wrap_point(const PointSet& ps, Vec2 p) noexcept;

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double v);

}  // namespace hdt
