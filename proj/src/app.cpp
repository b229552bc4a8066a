#include "hdt/app.hpp"

#include <unistd.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>

#include <CLI11.hpp>

#include "hdt/energy.hpp"
#include "hdt/error.hpp"
#include "hdt/fields.hpp"
#include "hdt/harness.hpp"
#include "hdt/io.hpp"
#include "hdt/randomwalk.hpp"
#include "hdt/render.hpp"
#include "hdt/rng.hpp"
#include "hdt/solver.hpp"

namespace hdt::app {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

const std::set<std::string> kCommands{"sample", "triangulate", "harness", "solve", "deform",
                                      "walk",   "diagnostics", "render",  "pipeline"};
const std::set<std::string> kRenderKinds{"triangulation", "deformed", "voronoi", "level-curves", "overlay"};

// Reads one section, rejecting keys nobody asked for.
class Section {
 public:
  Section(const json& j, std::string name) : j_(j), name_(std::move(name)) {
    if (!j_.is_object()) throw ConfigError("config section '" + name_ + "' must be an object");
  }

  template <class T>
  void get(const char* key, T& into) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) return;
    try {
      into = it->template get<T>();
    } catch (const json::exception&) {
      throw ConfigError("config field '" + path(key) + "' has the wrong type");
    }
  }

  std::optional<Section> sub(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) return std::nullopt;
    return Section(*it, path(key));
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) throw ConfigError("unknown config field '" + path(it.key()) + "'");
  }

 private:
  std::string path(const std::string& key) const { return name_.empty() ? key : name_ + "." + key; }
  const json& j_;
  std::string name_;
  std::set<std::string> seen_;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

Clock parse_clock(const std::string& s) {
  if (s == "jump-rate") return Clock::jump_rate;
  if (s == "uniformized") return Clock::uniformized;
  throw ConfigError("walk.clock must be 'jump-rate' or 'uniformized'");
}

Vec2 tilt_of(const RunConfig& c) { return {c.tilt[0], c.dim == 2 ? c.tilt[1] : 0.0}; }

SolverOptions solver_options(const RunConfig& c) {
  SolverOptions o;
  o.tol = c.tol;
  o.max_iter = c.max_iter;
  o.method = parse_method(c.method);
  return o;
}

// Everything a command produces lands here first.
struct Context {
  const RunConfig& cfg;
  fs::path dir;
  io::Report report;
  PointSet points;
  GraphPtr graph;
  std::optional<HarmonicSolution> solution;
  std::optional<DeformedGraph> deformed;
};

void load_or_sample(Context& ctx) {
  const auto& c = ctx.cfg;
  if (!c.points_file.empty()) {
    LoadOptions lo;
    ctx.points = load_points(c.points_file, lo);
  } else {
    ctx.points = sample_poisson(c.dim, c.L, c.lambda, c.seed, c.palm);
  }
  save_points(ctx.points, ctx.dir / "points.csv");
  ctx.report.add("points.count", static_cast<std::uint64_t>(ctx.points.size()));
  ctx.report.add("points.dim", ctx.points.dim);
  ctx.report.add("points.box", ctx.points.box);
  ctx.report.add("points.mode", to_string(ctx.points.mode));
  ctx.report.add("points.generator", std::string(kGeneratorId));
}

void triangulate(Context& ctx) {
  ctx.graph = build_delaunay(ctx.points);
  const auto& g = *ctx.graph;
  io::write_edges(g, ctx.dir / "edges.csv");
  if (g.has_facets()) io::write_cells(g, ctx.dir / "cells.csv");
  ctx.report.add("graph.edges", static_cast<std::uint64_t>(g.edges().size()));
  ctx.report.add("graph.mean_degree", 2.0 * static_cast<double>(g.edges().size()) / static_cast<double>(g.vertex_count()));
  ctx.report.add("graph.max_degree", g.max_degree());
  if (g.has_facets()) {
    double div = 0;
    for (int axis = 0; axis < g.dim(); ++axis) div = std::max(div, max_abs(divergence(omega_field(ctx.graph, axis))));
    ctx.report.add("graph.omega_max_abs_divergence", div);
  }
}

void solve(Context& ctx) {
  ctx.solution = solve_harmonic(ctx.graph, tilt_of(ctx.cfg), solver_options(ctx.cfg));
  const auto& h = ctx.solution->h;
  io::write_surface(h, ctx.dir / "surface.csv");
  io::write_field(gradient(h), ctx.dir / "gradient.csv");
  ctx.report.merge(io::solver_report(ctx.solution->report, "solve."));
  const auto corr = corrector(h, tilt_of(ctx.cfg));
  ctx.report.add("corrector.max_abs", corr.max_abs);
  ctx.report.add("corrector.energy_gamma", corr.energy_gamma);
  ctx.report.add("corrector.energy_h", corr.energy_h);
  ctx.report.add("corrector.energy_diff", corr.energy_diff);
  ctx.report.add("corrector.split_residual", corr.split_residual());
  if (ctx.graph->periodic()) {
    for (const auto& row : sublinearity_scan(h, tilt_of(ctx.cfg))) {
      const std::string key = "sublinearity.n_" + format_double(row.half_width);
      ctx.report.add(key + ".max_abs_chi", row.max_abs_chi);
      ctx.report.add(key + ".ratio", row.ratio);
    }
    for (int axis = 0; axis < ctx.graph->dim(); ++axis)
      ctx.report.add("solve.tilt_J_u" + std::to_string(axis + 1), tilt_J(h, axis));
  }
}

Surface initial_surface(const Context& ctx) {
  Surface gamma(ctx.graph, tilt_of(ctx.cfg));
  if (ctx.cfg.initial_noise > 0) {
    Rng rng(derive_seed(ctx.cfg.seed, Stream::perturbation, 1), Stream::perturbation);
    for (auto& v : gamma.psi) v = ctx.cfg.initial_noise * (2.0 * rng.uniform() - 1.0);
  }
  return gamma;
}

void harness(Context& ctx, const std::string& surface_name) {
  const auto& c = ctx.cfg;
  HarnessOptions o;
  o.t_max = c.t_max;
  o.seed = c.seed;
  o.trace_every = c.trace_every;
  o.recompute_every = c.recompute_every;
  o.track_tilt = ctx.graph->has_facets();
  o.stop_tol = c.stop_tol;
  const auto res = harness_run(initial_surface(ctx), o);
  io::write_trace(res.trace, ctx.graph->dim(), ctx.dir / "trace.csv");
  io::write_surface(res.final, ctx.dir / surface_name);
  ctx.report.add("harness.events", res.events);
  ctx.report.add("harness.t", res.t);
  ctx.report.add("harness.energy_initial", res.trace.front().energy);
  ctx.report.add("harness.energy_final", res.trace.back().energy);
  ctx.report.add("harness.max_energy_increase", res.max_energy_increase);
  ctx.report.add("harness.max_tilt_drift", res.max_tilt_drift);
  ctx.report.add("harness.max_energy_resync_drift", res.max_energy_resync_drift);
  if (c.stop_tol > 0) ctx.report.add("harness.converged", res.converged);
  if (ctx.solution) {
    const auto gh = gradient(ctx.solution->h), ge = gradient(res.final);
    std::vector<double> diff(gh.values.size());
    for (std::size_t e = 0; e < diff.size(); ++e) diff[e] = ge.values[e] - gh.values[e];
    const EdgeField d(ctx.graph, diff);
    ctx.report.add("harness.gap_to_harmonic", campbell_inner(d, d));
  }
}

void deform(Context& ctx) {
  ctx.deformed = hdt::deform(ctx.graph, solver_options(ctx.cfg));
  io::write_deformed(*ctx.deformed, ctx.dir / "deformed.csv");
  for (std::size_t k = 0; k < ctx.deformed->reports.size(); ++k)
    ctx.report.merge(io::solver_report(ctx.deformed->reports[k], "deform.axis" + std::to_string(k + 1) + "."));
  ctx.report.add("deform.barycenter_residual", barycenter_residual(*ctx.deformed));
  ctx.report.add("deform.martingale_residual", martingale_residual(*ctx.deformed));
  if (ctx.graph->dim() == 2) {
    const auto ov = compare_with_delaunay(*ctx.deformed);
    ctx.report.add("overlay.harmonic_only", static_cast<std::uint64_t>(ov.harmonic_only));
    ctx.report.add("overlay.delaunay_only", static_cast<std::uint64_t>(ov.delaunay_only));
  }
}

void walk_cmd(Context& ctx) {
  const auto& c = ctx.cfg;
  require(c.walk_start >= 0 && static_cast<std::size_t>(c.walk_start) < ctx.graph->vertex_count(),
          "walk.start is not a vertex of the sample");
  const auto w = hdt::walk(ctx.graph, c.walk_start, c.walk_t, c.seed, parse_clock(c.clock));
  io::write_walk(w, ctx.graph->dim(), ctx.dir / "walk.csv");
  ctx.report.add("walk.jumps", static_cast<std::uint64_t>(w.times.size() - 1));
  ctx.report.add("walk.final_x", w.unwrapped.back().x);
  if (ctx.graph->dim() == 2) ctx.report.add("walk.final_y", w.unwrapped.back().y);
  if (c.n_walks > 0) {
    const auto msd = msd_diagnostic(*ctx.deformed, c.n_walks, c.walk_t, c.seed);
    ctx.report.add("msd.slope", msd.slope);
    ctx.report.add("msd.r2", msd.r2);
    ctx.report.add("msd.mean_x", msd.mean_x.back().mean);
    ctx.report.add("msd.mean_x_stderr", msd.mean_x.back().std_error);
    if (ctx.graph->dim() == 2) {
      ctx.report.add("msd.mean_y", msd.mean_y.back().mean);
      ctx.report.add("msd.mean_y_stderr", msd.mean_y.back().std_error);
    }
  }
}

void diagnostics(Context& ctx) {
  const auto& c = ctx.cfg;
  const auto& g = *ctx.graph;
  const auto a = assumption_diagnostics(g, c.beta, c.moment_r);
  ctx.report.add("assumptions.exp_degree", a.exp_degree.mean);
  ctx.report.add("assumptions.exp_degree_stderr", a.exp_degree.std_error);
  ctx.report.add("assumptions.perimeter_sq", a.perimeter_sq.mean);
  ctx.report.add("assumptions.perimeter_sq_stderr", a.perimeter_sq.std_error);
  ctx.report.add("assumptions.displacement_r", a.displacement_r.mean);
  ctx.report.add("assumptions.displacement_r_stderr", a.displacement_r.std_error);

  const auto& h = ctx.solution->h;
  if (g.has_facets()) {
    double sum = 0;
    for (int k = 0; k < c.tilt_lines; ++k) {
      const double offset = (k + 0.5) * g.points().box / c.tilt_lines;
      sum += tilt_I_pointwise(h, 0, offset, g.points().box).value;
    }
    ctx.report.add("tilt.pointwise_u1", sum / c.tilt_lines);
    ctx.report.add("tilt.J_u1", tilt_J(h, 0));
    const Surface periodic(ctx.graph, {}, h.psi);
    ctx.report.add("identity.integration_by_parts", integration_by_parts_check(periodic, omega_field(ctx.graph, 0)).residual());
  }
  if (g.dim() == 2 && g.periodic()) {
    const TriangleOrientation orient(ctx.graph);
    const Surface gamma = initial_surface(ctx);
    const auto zeta = zeta_pm(gamma, orient);
    ctx.report.add("identity.row", row_identity_residual(gamma, zeta));
    ctx.report.add("identity.mass_transport", mass_transport_check(zeta.plus));
  }

  std::vector<double> degree(g.vertex_count());
  for (std::size_t v = 0; v < degree.size(); ++v) degree[v] = g.degree(static_cast<int>(v));
  const auto env = environment_check(g, degree, c.env_steps, c.seed);
  ctx.report.add("environment.time_average", env.time_average);
  ctx.report.add("environment.spatial_average", env.spatial_average);
  ctx.report.add("environment.std_error", env.std_error);

  const Surface gamma(ctx.graph, tilt_of(c));
  for (const auto& row : moment_check(gamma, 2, c.moment_times, c.moment_walks, c.seed)) {
    const std::string key = "moment.t_" + format_double(row.t);
    ctx.report.add(key + ".value", row.moment.mean);
    ctx.report.add(key + ".stderr", row.moment.std_error);
    ctx.report.add(key + ".bound", row.bound);
    ctx.report.add(key + ".ratio_sq", row.ratio_sq);
    ctx.report.add(key + ".within", row.within());
  }
}

void write_svg(Context& ctx, const std::string& name, const render::Svg& svg) {
  std::ofstream out(ctx.dir / name);
  out << svg.text;
  if (!out) throw IoError("cannot write " + (ctx.dir / name).string());
  const std::string stem = "render." + name.substr(0, name.find('.'));
  ctx.report.add(stem + ".lines", static_cast<std::uint64_t>(svg.lines));
  ctx.report.add(stem + ".markers", static_cast<std::uint64_t>(svg.markers));
}

void render_all(Context& ctx) {
  const auto& c = ctx.cfg;
  render::Style style;
  style.width_px = c.width_px;
  const std::optional<int> star = ctx.points.palm ? std::optional<int>(0) : std::nullopt;
  for (const auto& kind : c.render_kinds) {
    if (ctx.graph->dim() == 1 && kind != "triangulation" && kind != "deformed") {
      ctx.report.add("render." + kind, std::string("skipped in d=1"));
      continue;
    }
    if (kind == "triangulation") {
      write_svg(ctx, "triangulation.svg", render::triangulation(render::view_of(*ctx.graph), star, style));
    } else if (kind == "deformed") {
      write_svg(ctx, "deformed.svg", render::triangulation(render::view_of(*ctx.deformed), star, style));
    } else if (kind == "voronoi") {
      write_svg(ctx, "voronoi.svg", render::voronoi(*ctx.graph, style));
    } else if (kind == "level-curves") {
      // gamma - h with gamma = tilt . s is minus the periodic part of h.
      std::vector<double> values(ctx.solution->h.psi);
      for (auto& v : values) v = -v;
      const auto levels = c.levels.empty() ? render::default_levels(values, c.level_count) : c.levels;
      const auto svg = render::level_curves(*ctx.graph, values, levels, style);
      write_svg(ctx, "level_curves.svg", svg);
      ctx.report.add("render.level_curves.zero_segments", static_cast<std::uint64_t>(svg.zero_segments));
    } else if (kind == "overlay") {
      const auto ov = compare_with_delaunay(*ctx.deformed);
      const auto svg = render::overlay(*ctx.deformed, ov, style);
      write_svg(ctx, "overlay.svg", svg);
      ctx.report.add("render.overlay.non_shared", static_cast<std::uint64_t>(svg.non_shared));
    }
  }
}

bool needs(const RunConfig& c, const char* kind) {
  return std::find(c.render_kinds.begin(), c.render_kinds.end(), kind) != c.render_kinds.end();
}

void render_cmd(Context& ctx) {
  const auto& c = ctx.cfg;
  const fs::path in = c.render_input;
  ctx.points = load_points(in / "points.csv");
  save_points(ctx.points, ctx.dir / "points.csv");
  ctx.graph = build_delaunay(ctx.points);
  if (needs(c, "level-curves")) {
    auto psi = io::read_surface_psi(in / "surface.csv");
    if (psi.size() != ctx.graph->vertex_count()) throw IoError("surface.csv does not match points.csv");
    ctx.solution = HarmonicSolution{Surface(ctx.graph, tilt_of(c), std::move(psi)), {}};
  }
  if (needs(c, "deformed") || needs(c, "overlay")) {
    DeformedGraph d;
    d.graph = ctx.graph;
    io::read_deformed(d, in / "deformed.csv");
    ctx.deformed = std::move(d);
  }
  render_all(ctx);
}

void dispatch(Context& ctx) {
  const std::string& cmd = ctx.cfg.command;
  if (cmd == "render") return render_cmd(ctx);
  load_or_sample(ctx);
  if (cmd == "sample") return;
  triangulate(ctx);
  if (cmd == "triangulate") return;
  if (cmd == "harness") return harness(ctx, "surface.csv");
  if (cmd == "solve") return solve(ctx);
  if (cmd == "deform") return deform(ctx);
  if (cmd == "walk") {
    deform(ctx);
    return walk_cmd(ctx);
  }
  if (cmd == "diagnostics") {
    solve(ctx);
    return diagnostics(ctx);
  }
  // pipeline
  solve(ctx);
  if (ctx.cfg.harness) harness(ctx, "harness_surface.csv");
  deform(ctx);
  render_all(ctx);
}

fs::path staging_path(const fs::path& out) {
  fs::path p = out;
  p += ".partial-" + std::to_string(::getpid());
  return p;
}

}  // namespace

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["command"] = c.command;
  j["output"] = c.output;
  j["overwrite"] = c.overwrite;
  j["points"] = {{"file", c.points_file}, {"dim", c.dim},   {"L", c.L},
                 {"lambda", c.lambda},    {"seed", c.seed}, {"palm", c.palm}};
  j["tilt"] = c.tilt;
  j["solver"] = {{"method", c.method}, {"tol", c.tol}, {"max_iter", c.max_iter}};
  j["harness"] = {{"enabled", c.harness},
                  {"t_max", c.t_max},
                  {"trace_every", c.trace_every},
                  {"recompute_every", c.recompute_every},
                  {"stop_tol", c.stop_tol},
                  {"initial_noise", c.initial_noise}};
  j["walk"] = {{"start", c.walk_start}, {"t_max", c.walk_t}, {"clock", c.clock}, {"n_walks", c.n_walks}};
  j["diagnostics"] = {{"beta", c.beta},
                      {"r", c.moment_r},
                      {"environment_steps", c.env_steps},
                      {"moment_walks", c.moment_walks},
                      {"moment_times", c.moment_times},
                      {"tilt_lines", c.tilt_lines}};
  j["render"] = {{"input", c.render_input},
                 {"kinds", c.render_kinds},
                 {"levels", c.levels},
                 {"level_count", c.level_count},
                 {"width_px", c.width_px}};
  return j;
}

RunConfig from_json(const json& j, RunConfig c) {
  Section top(j, "");
  top.get("command", c.command);
  top.get("output", c.output);
  top.get("overwrite", c.overwrite);
  if (auto s = top.sub("points")) {
    s->get("file", c.points_file);
    s->get("dim", c.dim);
    s->get("L", c.L);
    s->get("lambda", c.lambda);
    s->get("seed", c.seed);
    s->get("palm", c.palm);
    s->finish();
  }
  std::vector<double> t;
  top.get("tilt", t);
  if (j.contains("tilt")) {
    require(t.size() == 1 || t.size() == 2, "config field 'tilt' must have one or two entries");
    c.tilt = {t[0], t.size() == 2 ? t[1] : 0.0};
  }
  if (auto s = top.sub("solver")) {
    s->get("method", c.method);
    s->get("tol", c.tol);
    s->get("max_iter", c.max_iter);
    s->finish();
  }
  if (auto s = top.sub("harness")) {
    s->get("enabled", c.harness);
    s->get("t_max", c.t_max);
    s->get("trace_every", c.trace_every);
    s->get("recompute_every", c.recompute_every);
    s->get("stop_tol", c.stop_tol);
    s->get("initial_noise", c.initial_noise);
    s->finish();
  }
  if (auto s = top.sub("walk")) {
    s->get("start", c.walk_start);
    s->get("t_max", c.walk_t);
    s->get("clock", c.clock);
    s->get("n_walks", c.n_walks);
    s->finish();
  }
  if (auto s = top.sub("diagnostics")) {
    s->get("beta", c.beta);
    s->get("r", c.moment_r);
    s->get("environment_steps", c.env_steps);
    s->get("moment_walks", c.moment_walks);
    s->get("moment_times", c.moment_times);
    s->get("tilt_lines", c.tilt_lines);
    s->finish();
  }
  if (auto s = top.sub("render")) {
    s->get("input", c.render_input);
    s->get("kinds", c.render_kinds);
    s->get("levels", c.levels);
    s->get("level_count", c.level_count);
    s->get("width_px", c.width_px);
    s->finish();
  }
  top.finish();
  return c;
}

RunConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return from_json(j);
}

void validate(const RunConfig& c) {
  require(kCommands.count(c.command) == 1, "unknown command '" + c.command + "'");
  require(!c.output.empty(), "output must not be empty");
  require(c.dim == 1 || c.dim == 2, "points.dim must be 1 or 2");
  require(std::isfinite(c.L) && c.L > 0, "points.L must be positive");
  require(std::isfinite(c.lambda) && c.lambda > 0, "points.lambda must be positive");
  require(std::isfinite(c.tilt[0]) && std::isfinite(c.tilt[1]), "tilt must be finite");
  parse_method(c.method);
  require(c.tol > 0, "solver.tol must be positive");
  require(c.max_iter > 0, "solver.max_iter must be positive");
  require(c.t_max >= 0, "harness.t_max must be non-negative");
  require(c.recompute_every > 0, "harness.recompute_every must be positive");
  require(c.stop_tol >= 0, "harness.stop_tol must be non-negative");
  require(c.initial_noise >= 0, "harness.initial_noise must be non-negative");
  require(c.walk_t >= 0, "walk.t_max must be non-negative");
  parse_clock(c.clock);
  require(c.moment_r > 0, "diagnostics.r must be positive");
  require(c.env_steps > 0, "diagnostics.environment_steps must be positive");
  require(c.moment_walks > 1, "diagnostics.moment_walks must be at least 2");
  require(c.tilt_lines > 0, "diagnostics.tilt_lines must be positive");
  for (double t : c.moment_times) require(t > 0, "diagnostics.moment_times must be positive");
  for (const auto& k : c.render_kinds) require(kRenderKinds.count(k) == 1, "unknown render kind '" + k + "'");
  require(c.level_count >= 0, "render.level_count must be non-negative");
  require(c.width_px > 0, "render.width_px must be positive");
  require(c.command != "render" || !c.render_input.empty(), "render.input is required for the render command");
}

void run(const RunConfig& cfg) {
  validate(cfg);
  RunConfig c = cfg;
  if (!c.points_file.empty()) c.points_file = fs::absolute(c.points_file).string();
  if (!c.render_input.empty()) c.render_input = fs::absolute(c.render_input).string();

  const fs::path out = c.output;
  if (fs::exists(out) && !c.overwrite)
    throw IoError("output " + out.string() + " exists; set overwrite to replace it");
  const fs::path staging = staging_path(out);
  std::error_code ec;
  fs::remove_all(staging, ec);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  if (!fs::create_directory(staging, ec) || ec) throw IoError("cannot create " + staging.string());

  try {
    Context ctx{c, staging, {}, {}, {}, {}, {}};
    ctx.report.add("command", c.command);
    dispatch(ctx);
    std::ofstream sidecar(staging / "run.json");
    sidecar << to_json(c).dump(2) << '\n';
    if (!sidecar) throw IoError("cannot write run.json");
    sidecar.close();
    ctx.report.write_text(staging / "report.txt");
    ctx.report.write_json(staging / "report.json");
    if (fs::exists(out)) fs::remove_all(out);
    fs::rename(staging, out);
  } catch (const fs::filesystem_error& e) {
    fs::remove_all(staging, ec);
    throw IoError(e.what());
  } catch (...) {
    fs::remove_all(staging, ec);
    throw;
  }
}

int main(int argc, char** argv) {
  CLI::App cli{"Harmonic deformation of Delaunay triangulations"};
  cli.require_subcommand(0, 1);

  std::string config_path;
  std::optional<std::string> output, points_file, method, clock, render_input;
  std::optional<int> dim, walk_start, level_count;
  std::optional<double> L, lambda, tol, t_max, stop_tol, walk_t, noise;
  std::optional<std::uint64_t> seed, max_iter, trace_every, n_walks;
  std::vector<double> tilt, levels;
  std::vector<std::string> kinds;
  bool overwrite = false, no_harness = false, planar_palm_off = false;

  cli.add_option("-c,--config", config_path, "JSON config (a run.json sidecar replays a run)");
  cli.add_option("-o,--output", output, "output directory");
  cli.add_flag("--overwrite", overwrite, "replace an existing output directory");
  cli.add_option("--points", points_file, "load points from CSV instead of sampling");
  cli.add_option("--dim", dim, "dimension (1 or 2)");
  cli.add_option("--L", L, "box side");
  cli.add_option("--lambda", lambda, "intensity");
  cli.add_option("--seed", seed, "master seed");
  cli.add_flag("--no-palm", planar_palm_off, "do not place a point at the origin");
  cli.add_option("--tilt", tilt, "tilt vector")->expected(1, 2);
  cli.add_option("--method", method, "solver method: cg or gauss-seidel");
  cli.add_option("--tol", tol, "solver tolerance on the max Laplacian");
  cli.add_option("--max-iter", max_iter, "solver iteration cap");
  cli.add_option("--t-max", t_max, "harness time horizon");
  cli.add_option("--trace-every", trace_every, "events between trace rows");
  cli.add_option("--stop-tol", stop_tol, "harness convergence-stop tolerance");
  cli.add_option("--initial-noise", noise, "amplitude of uniform noise on the initial surface");
  cli.add_flag("--no-harness", no_harness, "skip the harness in the pipeline");
  cli.add_option("--walk-start", walk_start, "walk start vertex");
  cli.add_option("--walk-t", walk_t, "walk duration");
  cli.add_option("--clock", clock, "walk clock: jump-rate or uniformized");
  cli.add_option("--n-walks", n_walks, "walks for the MSD diagnostic");
  cli.add_option("--input", render_input, "render input directory");
  cli.add_option("--kind", kinds, "render kinds");
  cli.add_option("--levels", levels, "level-curve levels");
  cli.add_option("--level-count", level_count, "number of automatic levels");

  for (const auto& name : kCommands) cli.add_subcommand(name, "run the " + name + " command")->fallthrough();

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return e.get_exit_code() == 0 ? cli.exit(e) : (cli.exit(e), 2);
  }

  try {
    RunConfig c = config_path.empty() ? RunConfig{} : load_config(config_path);
    const auto subs = cli.get_subcommands();
    if (!subs.empty()) c.command = subs.front()->get_name();
    else if (config_path.empty()) throw ConfigError("a command or a config with a command is required");
    if (output) c.output = *output;
    if (overwrite) c.overwrite = true;
    if (points_file) c.points_file = *points_file;
    if (dim) c.dim = *dim;
    if (L) c.L = *L;
    if (lambda) c.lambda = *lambda;
    if (seed) c.seed = *seed;
    if (planar_palm_off) c.palm = false;
    if (!tilt.empty()) c.tilt = {tilt[0], tilt.size() > 1 ? tilt[1] : 0.0};
    if (method) c.method = *method;
    if (tol) c.tol = *tol;
    if (max_iter) c.max_iter = *max_iter;
    if (t_max) c.t_max = *t_max;
    if (trace_every) c.trace_every = *trace_every;
    if (stop_tol) c.stop_tol = *stop_tol;
    if (noise) c.initial_noise = *noise;
    if (no_harness) c.harness = false;
    if (walk_start) c.walk_start = *walk_start;
    if (walk_t) c.walk_t = *walk_t;
    if (clock) c.clock = *clock;
    if (n_walks) c.n_walks = *n_walks;
    if (render_input) c.render_input = *render_input;
    if (!kinds.empty()) c.render_kinds = kinds;
    if (!levels.empty()) c.levels = levels;
    if (level_count) c.level_count = *level_count;
    run(c);
    std::cout << "wrote " << c.output << '\n';
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const GeometryError& e) {
    std::cerr << "geometry error: " << e.what() << '\n';
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "not converged: " << e.what() << '\n';
    return 3;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace hdt::app
