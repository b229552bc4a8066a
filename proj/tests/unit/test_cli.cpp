#include <fstream>
#include <iterator>
#include <sstream>

#include "doctest.h"
#include "hdt/app.hpp"
#include "hdt/error.hpp"
#include "tempdir.hpp"

#ifdef HDT_HAVE_BOOST
#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#endif

using namespace hdt;
namespace fs = std::filesystem;
using fixture::TempDir;

namespace {

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "hdt");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return app::main(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::string> small_run(const fs::path& out) {
  return {"pipeline", "-o", out.string(), "--L", "8", "--seed", "11", "--t-max", "3", "--trace-every", "50"};
}

}  // namespace

TEST_CASE("config validation names the offending field") {
  app::RunConfig c;
  c.lambda = 0;
  try {
    app::validate(c);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("lambda") != std::string::npos);
  }
  CHECK_THROWS_AS(app::from_json(nlohmann::json::parse(R"({"solver": {"tolerance": 1}})")), ConfigError);
  CHECK_THROWS_AS(app::from_json(nlohmann::json::parse(R"({"points": {"L": "big"}})")), ConfigError);
  CHECK_THROWS_AS(app::from_json(nlohmann::json::parse(R"({"tilt": [1, 2, 3]})")), ConfigError);
}

TEST_CASE("config serialization is a fixed point") {
  app::RunConfig c;
  c.command = "walk";
  c.tilt = {0.25, -3};
  c.levels = {-1, 0, 1};
  c.render_kinds = {"overlay"};
  const auto j = app::to_json(c);
  CHECK(app::to_json(app::from_json(j)) == j);
}

TEST_CASE("exit codes follow the error kind") {
  TempDir tmp("cli");
  CHECK(run_cli({"pipeline", "-o", (tmp.path / "a").string(), "--lambda", "0"}) == 2);
  CHECK(run_cli({"pipeline", "-o", (tmp.path / "a").string(), "--no-such-flag"}) == 2);
  CHECK(run_cli({"pipeline", "-o", (tmp.path / "a").string(), "--L", "8", "--max-iter", "2"}) == 3);
  CHECK(run_cli({"solve", "-o", (tmp.path / "a").string(), "--points", (tmp.path / "none.csv").string()}) == 4);
  {
    std::ofstream(tmp.path / "broken.json") << "{\"points\": ";
  }
  CHECK(run_cli({"-c", (tmp.path / "broken.json").string()}) == 2);
  // Failed runs leave nothing behind.
  CHECK(fs::directory_iterator(tmp.path) != fs::directory_iterator());
  for (const auto& entry : fs::directory_iterator(tmp.path)) CHECK(entry.path().filename() == "broken.json");
}

TEST_CASE("existing output is kept unless overwrite is set") {
  TempDir tmp("cli");
  const auto out = tmp.path / "run";
  fs::create_directories(out);
  {
    std::ofstream(out / "keep.txt") << "x";
  }
  CHECK(run_cli({"sample", "-o", out.string(), "--L", "5"}) == 4);
  CHECK(fs::exists(out / "keep.txt"));
  CHECK(run_cli({"sample", "-o", out.string(), "--L", "5", "--overwrite"}) == 0);
  CHECK(!fs::exists(out / "keep.txt"));
  CHECK(fs::exists(out / "points.csv"));
}

TEST_CASE("a run replays from its sidecar with identical CSVs") {
  TempDir tmp("cli");
  const auto a = tmp.path / "a", b = tmp.path / "b", c = tmp.path / "c";
  REQUIRE(run_cli(small_run(a)) == 0);
  REQUIRE(run_cli(small_run(b)) == 0);
  REQUIRE(run_cli({"--config", (a / "run.json").string(), "-o", c.string()}) == 0);
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    if (entry.path().extension() != ".csv") continue;
    CHECK(slurp(entry.path()) == slurp(b / entry.path().filename()));
    CHECK(slurp(entry.path()) == slurp(c / entry.path().filename()));
    ++compared;
  }
  CHECK(compared >= 8);
}

TEST_CASE("every command writes its artifacts") {
  TempDir tmp("cli");
  const std::vector<std::pair<std::string, std::vector<std::string>>> expected{
      {"sample", {"points.csv", "points.meta"}},
      {"triangulate", {"edges.csv", "cells.csv"}},
      {"harness", {"trace.csv", "surface.csv"}},
      {"solve", {"surface.csv", "gradient.csv"}},
      {"deform", {"deformed.csv"}},
      {"walk", {"walk.csv"}},
      {"diagnostics", {"report.txt"}},
  };
  for (const auto& [cmd, files] : expected) {
    const auto out = tmp.path / cmd;
    CHECK(run_cli({cmd, "-o", out.string(), "--L", "6", "--t-max", "2", "--walk-t", "2", "--n-walks", "20"}) == 0);
    for (const auto& f : files) CHECK_MESSAGE(fs::exists(out / f), cmd << " / " << f);
    CHECK(fs::exists(out / "run.json"));
    CHECK(fs::exists(out / "report.json"));
  }
  // render reads the artifacts of earlier commands.
  const auto r = tmp.path / "render";
  CHECK(run_cli({"render", "--input", (tmp.path / "deform").string(), "-o", r.string(), "--kind", "deformed",
                 "--kind", "overlay"}) == 0);
  CHECK(fs::exists(r / "deformed.svg"));
  CHECK(fs::exists(r / "overlay.svg"));
  CHECK(run_cli({"render", "--input", (tmp.path / "deform").string(), "-o", (r / "x").string(), "--kind",
                 "level-curves"}) == 4);
}

#ifdef HDT_HAVE_BOOST
TEST_CASE("pipeline figures are valid SVG with the expected elements") {
  TempDir tmp("cli");
  const auto out = tmp.path / "p";
  REQUIRE(run_cli(small_run(out)) == 0);
  for (const char* name : {"triangulation.svg", "deformed.svg", "voronoi.svg", "level_curves.svg", "overlay.svg"}) {
    std::ifstream in(out / name);
    boost::property_tree::ptree t;
    REQUIRE_NOTHROW(boost::property_tree::read_xml(in, t));
    CHECK(t.count("svg") == 1);
  }
  const auto tri = slurp(out / "triangulation.svg"), def = slurp(out / "deformed.svg");
  CHECK(tri.find("class=\"star\"") != std::string::npos);
  CHECK(def.find("class=\"star\"") != std::string::npos);
  CHECK(slurp(out / "level_curves.svg").find("level-zero") != std::string::npos);
  CHECK(slurp(out / "overlay.svg").find("non-shared edges:") != std::string::npos);
}
#endif
