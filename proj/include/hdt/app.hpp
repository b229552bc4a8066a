#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace hdt::app {

/// Every parameter of a run. Serialized in full into `run.json` so that a
/// run replays from its sidecar alone.
struct RunConfig {
  std::string command = "pipeline";
  std::string output = "out";
  bool overwrite = false;

  // Point configuration: sampled unless `points_file` is set.
  std::string points_file;
  int dim = 2;
  double L = 20.0;
  double lambda = 1.0;
  std::uint64_t seed = 1;
  bool palm = true;

  std::array<double, 2> tilt{1.0, 0.0};

  std::string method = "cg";
  double tol = 1e-10;
  std::uint64_t max_iter = 1000000;

  bool harness = true;  // pipeline only
  double t_max = 20.0;
  std::uint64_t trace_every = 1000;
  std::uint64_t recompute_every = 10000;
  double stop_tol = 0.0;
  double initial_noise = 0.0;  // uniform periodic noise added to gamma = tilt . s

  int walk_start = 0;
  double walk_t = 20.0;
  std::string clock = "jump-rate";
  std::uint64_t n_walks = 500;

  double beta = 1.0;
  double moment_r = 4.5;
  std::uint64_t env_steps = 1000000;
  std::uint64_t moment_walks = 100000;
  std::vector<double> moment_times{1.0, 2.0, 5.0};
  int tilt_lines = 20;

  std::string render_input;  // directory with points/surface/deformed CSVs
  std::vector<std::string> render_kinds{"triangulation", "deformed", "voronoi", "level-curves", "overlay"};
  std::vector<double> levels;  // empty: default levels
  int level_count = 12;
  double width_px = 800.0;
};

nlohmann::ordered_json to_json(const RunConfig& c);
/// Starts from `base` and applies every key of `j`; unknown keys are
/// rejected with ConfigError.
RunConfig from_json(const nlohmann::json& j, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path);

/// Throws ConfigError naming the offending field.
void validate(const RunConfig& c);

/// Runs `c.command` into `c.output` through a staging directory that only
/// replaces the output on success.
void run(const RunConfig& c);

/// Command-line entry point; returns the process exit code.
int main(int argc, char** argv);

}  // namespace hdt::app
