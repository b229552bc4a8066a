#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hdt/geometry.hpp"
#include "hdt/solver.hpp"

namespace hdt::render {

struct Style {
  double width_px = 800.0;
  double point_radius = 0.12;  // in data units
  double edge_width = 0.04;
  std::string point_color = "#1f2933";
  std::string edge_color = "#3e4c59";
  std::string star_color = "#d64545";
  std::string cell_color = "#52606d";
  std::string level_color = "#2680c2";
  std::string zero_level_color = "#d64545";
  std::string harmonic_color = "#f0b429";
  std::string delaunay_color = "#000000";
};

/// Points and straight edges to draw. Edge k runs from pos[i] to
/// pos[i] + delta[k]; on a torus it is drawn a second time from pos[j] when
/// it leaves the box, and everything is clipped to the box.
struct GraphView {
  std::vector<Vec2> pos;
  std::vector<std::pair<int, int>> edges;
  std::vector<Vec2> deltas;
  int dim = 2;
  bool periodic = true;
  double box = 1.0;
};

GraphView view_of(const DelaunayGraph& g);
/// Image points H(s), wrapped into the box on a torus.
GraphView view_of(const DeformedGraph& d);

/// Element counts of a rendered figure, matching the SVG contents.
struct Svg {
  std::string text;
  std::size_t lines = 0;      // <line> elements
  std::size_t markers = 0;    // <circle> elements
  std::size_t polygons = 0;   // <polygon> elements, the star included
  std::size_t iso_segments = 0;
  std::size_t zero_segments = 0;
  std::size_t non_shared = 0;
};

/// Points as circles, edges as lines, and an optional star at vertex `star`.
Svg triangulation(const GraphView& view, std::optional<int> star, const Style& style = {});

/// Voronoi cells as polygons (periodic d=2 graphs only).
Svg voronoi(const DelaunayGraph& g, const Style& style = {});

/// Iso-lines of the piecewise linear interpolation of `values` over the
/// Delaunay faces. Levels equal to zero get the highlighted style.
Svg level_curves(const DelaunayGraph& g, const std::vector<double>& values, const std::vector<double>& levels,
                 const Style& style = {});

/// Zero plus the multiples of (max - min) / (count + 1) strictly inside the range of `values`.
std::vector<double> default_levels(const std::vector<double>& values, int count);

/// Harmonic graph on the image points against the Delaunay graph of those
/// points; `non_shared` counts edges present in only one of the two.
Svg overlay(const DeformedGraph& d, const OverlayReport& report, const Style& style = {});

}  // namespace hdt::render
