#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "hdt/render.hpp"

#ifdef HDT_HAVE_BOOST
#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#endif

using namespace hdt;

namespace {

#ifdef HDT_HAVE_BOOST
using boost::property_tree::ptree;

std::size_t count_tag(const ptree& t, const std::string& tag, const std::string& cls = {}) {
  std::size_t n = 0;
  for (const auto& [name, child] : t) {
    if (name == tag && (cls.empty() || child.get<std::string>("<xmlattr>.class", "") == cls)) ++n;
    n += count_tag(child, tag, cls);
  }
  return n;
}

ptree parse(const std::string& text) {
  std::istringstream in(text);
  ptree t;
  boost::property_tree::read_xml(in, t);
  return t;
}
#endif

PointSet triangle() {
  PointSet ps;
  ps.mode = Mode::planar;
  ps.points = {{0, 0}, {2, 0}, {0.5, 1.5}};
  return ps;
}

}  // namespace

TEST_CASE("triangle fixture draws three edges and three points") {
  const auto g = build_delaunay(triangle());
  const auto svg = render::triangulation(render::view_of(*g), std::nullopt);
  CHECK(svg.lines == 3);
  CHECK(svg.markers == 3);
#ifdef HDT_HAVE_BOOST
  const auto t = parse(svg.text);
  CHECK(count_tag(t, "line") == 3);
  CHECK(count_tag(t, "circle") == 3);
#endif
}

TEST_CASE("the star marks the requested vertex") {
  const auto g = fixture::poisson_torus(80, 2);
  const auto svg = render::triangulation(render::view_of(*g), 0);
  CHECK(svg.polygons == 1);
  CHECK(svg.markers == g->vertex_count());
  CHECK(svg.lines >= g->edges().size());
#ifdef HDT_HAVE_BOOST
  CHECK(count_tag(parse(svg.text), "polygon", "star") == 1);
#endif
  CHECK_THROWS_AS(render::triangulation(render::view_of(*g), -1), ConfigError);
}

TEST_CASE("constant scalar has no iso-lines away from its value") {
  const auto g = fixture::poisson_torus(60, 3);
  const std::vector<double> values(g->vertex_count(), 2.0);
  for (double level : {0.0, 1.0, 2.0, 3.0}) {
    const auto svg = render::level_curves(*g, values, {level});
    CHECK(svg.iso_segments == 0);
    CHECK(svg.lines == 0);
#ifdef HDT_HAVE_BOOST
    CHECK(count_tag(parse(svg.text), "line") == 0);
#endif
  }
}

TEST_CASE("iso-lines of a linear scalar are straight") {
  PointSet ps;
  ps.mode = Mode::planar;
  Rng rng(17, Stream::perturbation);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) ps.points.push_back({i + 0.3 * rng.uniform(), j + 0.3 * rng.uniform()});
  const auto g = build_delaunay(ps);
  std::vector<double> values;
  for (Vec2 p : ps.points) values.push_back(p.x - 2.5);
  const auto svg = render::level_curves(*g, values, {0.0});
  CHECK(svg.iso_segments > 0);
  CHECK(svg.zero_segments == svg.iso_segments);
  // Every zero-level segment lies on the vertical line x = 2.5, so both
  // endpoints print the same abscissa.
  std::istringstream in(svg.text);
  std::size_t checked = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.find("level-zero") == std::string::npos) continue;
    const auto x1 = line.substr(line.find("x1=\"") + 4, 8), x2 = line.substr(line.find("x2=\"") + 4, 8);
    CHECK(x1 == x2);
    ++checked;
  }
  CHECK(checked == svg.iso_segments);
}

TEST_CASE("default levels contain zero and stay inside the range") {
  const std::vector<double> values{-1.3, 0.2, 2.9};
  const auto levels = render::default_levels(values, 6);
  CHECK(std::count(levels.begin(), levels.end(), 0.0) == 1);
  for (double l : levels) CHECK((l == 0.0 || (l > -1.3 && l < 2.9)));
  CHECK(std::is_sorted(levels.begin(), levels.end()));
}

TEST_CASE("grid deformation overlay has no non-shared edges") {
  const auto g = build_delaunay(lattice(2, 6, 0.2, 5));
  auto d = deform(g);
  // Replace the image by the identity: the harmonic graph is the Delaunay graph.
  for (std::size_t v = 0; v < d.image.size(); ++v) {
    d.image[v] = g->position(static_cast<int>(v));
    d.chi[v] = {};
  }
  const auto report = compare_with_delaunay(d);
  const auto svg = render::overlay(d, report);
  CHECK(svg.non_shared == 0);
  CHECK(svg.text.find("non-shared edges: 0") != std::string::npos);
}

#ifdef HDT_HAVE_BOOST
TEST_CASE("every renderer emits well-formed XML") {
  const auto g = fixture::poisson_torus(150, 8);
  const auto sol = solve_harmonic(g, {1, 0});
  const auto d = deform(g);
  const auto ov = compare_with_delaunay(d);
  std::vector<double> values(sol.h.psi);
  for (auto& v : values) v = -v;
  const std::vector<render::Svg> all{
      render::triangulation(render::view_of(*g), 0), render::triangulation(render::view_of(d), 0),
      render::voronoi(*g), render::level_curves(*g, values, render::default_levels(values, 8)),
      render::overlay(d, ov)};
  for (const auto& svg : all) {
    const auto t = parse(svg.text);
    CHECK(count_tag(t, "svg") == 1);
    CHECK(count_tag(t, "line") == svg.lines);
    CHECK(count_tag(t, "circle") == svg.markers);
    CHECK(count_tag(t, "polygon") == svg.polygons);
  }
  CHECK(all[2].polygons >= g->vertex_count());
  CHECK(all[3].zero_segments > 0);
}
#endif
