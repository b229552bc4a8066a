#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "doctest.h"
#include "fixtures.hpp"
#include "tempdir.hpp"
#include "hdt/io.hpp"

using namespace hdt;
namespace fs = std::filesystem;

namespace {

using fixture::TempDir;

std::string first_line(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line;
}

}  // namespace

TEST_CASE("surface and deformed CSVs round-trip exactly") {
  TempDir tmp("io");
  const auto g = fixture::poisson_torus(60, 4);
  const auto eta = fixture::random_surface(g, 9, {0.3, -1.2});
  io::write_surface(eta, tmp.path / "surface.csv");
  CHECK(io::read_surface_psi(tmp.path / "surface.csv") == eta.psi);

  const auto d = deform(g);
  io::write_deformed(d, tmp.path / "deformed.csv");
  DeformedGraph back;
  back.graph = g;
  io::read_deformed(back, tmp.path / "deformed.csv");
  for (std::size_t v = 0; v < d.chi.size(); ++v) {
    CHECK(back.chi[v] == d.chi[v]);
    CHECK(back.image[v] == g->position(static_cast<int>(v)) + d.chi[v]);
  }
}

TEST_CASE("CSV headers follow the dimension and mode") {
  TempDir tmp("io");
  const auto torus = fixture::poisson_torus(40, 1);
  io::write_edges(*torus, tmp.path / "e2.csv");
  CHECK(first_line(tmp.path / "e2.csv") == "i,j,dx,dy,facet,facet_u1,facet_u2");

  const auto circle = build_delaunay(fixture::circle5());
  io::write_edges(*circle, tmp.path / "e1.csv");
  CHECK(first_line(tmp.path / "e1.csv") == "i,j,dx,facet,facet_u1");

  PointSet planar;
  planar.mode = Mode::planar;
  planar.points = {{0, 0}, {1, 0}, {0, 1}, {1.2, 1.1}};
  io::write_edges(*build_delaunay(planar), tmp.path / "ep.csv");
  CHECK(first_line(tmp.path / "ep.csv") == "i,j,dx,dy");

  io::write_trace({TracePoint{}}, 1, tmp.path / "t1.csv");
  CHECK(first_line(tmp.path / "t1.csv") == "event,t,energy,max_laplacian_abs,tilt_u1");
  io::write_field(gradient(Surface(torus, {1, 0})), tmp.path / "f.csv");
  CHECK(first_line(tmp.path / "f.csv").rfind("# ", 0) == 0);
}

TEST_CASE("malformed inputs raise IoError") {
  TempDir tmp("io");
  {
    std::ofstream(tmp.path / "bad.csv") << "vertex,psi,height\n0,abc,1\n";
  }
  CHECK_THROWS_AS(io::read_surface_psi(tmp.path / "bad.csv"), IoError);
  {
    std::ofstream(tmp.path / "hdr.csv") << "x,y\n0,1\n";
  }
  CHECK_THROWS_AS(io::read_surface_psi(tmp.path / "hdr.csv"), IoError);
  CHECK_THROWS_AS(io::read_surface_psi(tmp.path / "absent.csv"), IoError);
}

TEST_CASE("JSON report keeps value types") {
  TempDir tmp("io");
  io::Report r;
  r.add("name", std::string("cg"));
  r.add("residual", 1.5e-12);
  r.add("iterations", static_cast<std::uint64_t>(42));
  r.add("ok", true);
  r.write_json(tmp.path / "r.json");
  r.write_text(tmp.path / "r.txt");
  std::ifstream in(tmp.path / "r.json");
  const auto j = nlohmann::json::parse(in);
  CHECK(j["name"] == "cg");
  CHECK(j["residual"].get<double>() == 1.5e-12);
  CHECK(j["iterations"].get<int>() == 42);
  CHECK(j["ok"] == true);
  CHECK(first_line(tmp.path / "r.txt") == "name=cg");
}
