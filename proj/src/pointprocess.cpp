#include "hdt/pointprocess.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "hdt/error.hpp"
#include "hdt/rng.hpp"

namespace hdt {

namespace {

constexpr double kPalmOriginTol = 1e-12;

bool lex_less(Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

double parse_number(const std::string& field, const std::string& where) {
  const std::string t = trim(field);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v))
    throw IoError("malformed number '" + field + "' at " + where);
  return v;
}

double clamp_into_box(double v, double box) {
  // u * box can round up to box itself for u close to 1.
  return v < box ? v : std::nextafter(box, 0.0);
}

Vec2 draw_point(Rng& rng, int dim, double box) {
  Vec2 p;
  p.x = clamp_into_box(rng.uniform() * box, box);
  if (dim == 2) p.y = clamp_into_box(rng.uniform() * box, box);
  return p;
}

// Returns indices of points that coincide with an earlier point.
std::vector<std::size_t> find_duplicates(const std::vector<Vec2>& pts) {
  std::vector<std::size_t> order(pts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (pts[a] == pts[b]) return a < b;
    return lex_less(pts[a], pts[b]);
  });
  std::vector<std::size_t> dups;
  for (std::size_t k = 1; k < order.size(); ++k)
    if (pts[order[k]] == pts[order[k - 1]]) dups.push_back(order[k]);
  return dups;
}

std::map<std::string, std::string> read_meta(const std::filesystem::path& path) {
  std::map<std::string, std::string> kv;
  std::ifstream in(path);
  if (!in) return kv;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw IoError("malformed metadata line '" + line + "' in " + path.string());
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

}  // namespace

std::string to_string(Mode mode) { return mode == Mode::periodic ? "periodic" : "planar"; }

Mode parse_mode(const std::string& text) {
  if (text == "periodic") return Mode::periodic;
  if (text == "planar") return Mode::planar;
  throw ConfigError("mode must be 'periodic' or 'planar', got '" + text + "'");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Vec2 wrap_delta(const PointSet& ps, Vec2 from, Vec2 to) noexcept {
  Vec2 d = to - from;
  if (ps.mode == Mode::periodic) {
    d.x -= ps.box * std::nearbyint(d.x / ps.box);
    if (ps.dim == 2) d.y -= ps.box * std::nearbyint(d.y / ps.box);
  }
  return d;
}

Vec2 wrap_point(const PointSet& ps, Vec2 p) noexcept {
  if (ps.mode != Mode::periodic) return p;
  auto wrap = [&](double v) {
    v = std::fmod(v, ps.box);
    if (v < 0) v += ps.box;
    return clamp_into_box(v, ps.box);
  };
  p.x = wrap(p.x);
  if (ps.dim == 2) p.y = wrap(p.y);
  return p;
}

void validate(const PointSet& ps) {
  if (ps.dim != 1 && ps.dim != 2) throw ConfigError("unsupported dimension " + std::to_string(ps.dim));
  if (ps.mode == Mode::periodic && !(ps.box > 0)) throw ConfigError("box side must be positive");
  for (std::size_t i = 0; i < ps.points.size(); ++i) {
    const Vec2 p = ps.points[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw ConfigError("non-finite coordinate at point " + std::to_string(i));
    if (ps.dim == 1 && p.y != 0.0) throw ConfigError("one-dimensional point with nonzero y at " + std::to_string(i));
    if (ps.mode == Mode::periodic) {
      const bool out = p.x < 0 || p.x >= ps.box || (ps.dim == 2 && (p.y < 0 || p.y >= ps.box));
      if (out) throw ConfigError("coordinate out of box at point " + std::to_string(i));
    }
  }
  if (!find_duplicates(ps.points).empty()) throw GeometryError("duplicate points");
  if (ps.palm) {
    if (ps.points.empty()) throw ConfigError("Palm configuration must contain the origin");
    if (norm(ps.points.front()) > kPalmOriginTol)
      throw ConfigError("Palm configuration must have the origin at index 0");
  }
}

PointSet sample_poisson(int dim, double box, double intensity, std::uint64_t seed, bool palm) {
  if (dim != 1 && dim != 2) throw ConfigError("unsupported dimension " + std::to_string(dim));
  if (!(box > 0) || !std::isfinite(box)) throw ConfigError("box side L must be positive");
  if (!(intensity > 0) || !std::isfinite(intensity)) throw ConfigError("intensity lambda must be positive");

  PointSet ps;
  ps.dim = dim;
  ps.box = box;
  ps.intensity = intensity;
  ps.seed = seed;
  ps.mode = Mode::periodic;
  ps.palm = palm;

  Rng rng(seed, Stream::sampling);
  const double mean = intensity * ps.volume();
  std::size_t count = 0;
  for (double arrival = rng.exponential(); arrival < mean; arrival += rng.exponential()) ++count;

  if (palm) ps.points.push_back({0.0, 0.0});
  ps.points.reserve(ps.points.size() + count);
  for (std::size_t i = 0; i < count; ++i) ps.points.push_back(draw_point(rng, dim, box));

  // Float collisions are resampled from a sub-stream keyed by index and attempt;
  // the Palm origin is never the one moved.
  for (std::uint64_t attempt = 0;; ++attempt) {
    auto dups = find_duplicates(ps.points);
    if (dups.empty()) break;
    for (std::size_t idx : dups) {
      if (palm && idx == 0) continue;
      Rng fix(derive_seed(seed, Stream::duplicate_fix, idx), Stream::duplicate_fix, attempt);
      ps.points[idx] = draw_point(fix, dim, box);
    }
  }
  return ps;
}

PointSet lattice(int dim, int side, double jitter, std::uint64_t seed) {
  if (dim != 1 && dim != 2) throw ConfigError("unsupported dimension " + std::to_string(dim));
  if (side < 1) throw ConfigError("lattice side must be positive");
  PointSet ps;
  ps.dim = dim;
  ps.box = side;
  ps.intensity = 1.0;
  ps.seed = seed;
  ps.mode = Mode::periodic;
  Rng rng(seed, Stream::perturbation);
  auto jit = [&](double v) {
    if (jitter == 0.0) return v;
    return std::fmod(v + jitter * (2.0 * rng.uniform() - 1.0) + side, static_cast<double>(side));
  };
  const int rows = dim == 2 ? side : 1;
  for (int j = 0; j < rows; ++j)
    for (int i = 0; i < side; ++i) {
      Vec2 p{jit(i), 0.0};
      if (dim == 2) p.y = jit(j);
      ps.points.push_back(p);
    }
  return ps;
}

std::filesystem::path meta_path(const std::filesystem::path& csv) {
  auto p = csv;
  p.replace_extension(".meta");
  return p;
}

void save_points(const PointSet& ps, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << (ps.dim == 1 ? "x\n" : "x,y\n");
  for (const auto& p : ps.points) {
    out << format_double(p.x);
    if (ps.dim == 2) out << ',' << format_double(p.y);
    out << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());

  std::ofstream meta(meta_path(path));
  if (!meta) throw IoError("cannot write " + meta_path(path).string());
  meta << "dim=" << ps.dim << '\n'
       << "box=" << format_double(ps.box) << '\n'
       << "intensity=" << format_double(ps.intensity) << '\n'
       << "seed=" << ps.seed << '\n'
       << "mode=" << to_string(ps.mode) << '\n'
       << "palm=" << (ps.palm ? "true" : "false") << '\n'
       << "generator=" << kGeneratorId << '\n';
}

PointSet load_points(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());

  const auto meta = read_meta(meta_path(path));
  auto meta_get = [&](const char* key) -> std::optional<std::string> {
    auto it = meta.find(key);
    if (it == meta.end()) return std::nullopt;
    return it->second;
  };

  PointSet ps;
  ps.mode = Mode::planar;
  if (auto v = meta_get("dim")) ps.dim = std::stoi(*v);
  if (auto v = meta_get("box")) ps.box = parse_number(*v, "metadata box");
  if (auto v = meta_get("intensity")) ps.intensity = parse_number(*v, "metadata intensity");
  if (auto v = meta_get("seed")) ps.seed = std::stoull(*v);
  if (auto v = meta_get("mode")) ps.mode = parse_mode(*v);
  if (auto v = meta_get("palm")) ps.palm = (*v == "true" || *v == "1");

  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  int columns = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      if (line == "x") {
        columns = 1;
        continue;
      }
      if (line == "x,y") {
        columns = 2;
        continue;
      }
      throw IoError("expected header 'x' or 'x,y' in " + path.string());
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    const std::string where = path.filename().string() + ":" + std::to_string(lineno);
    if (static_cast<int>(fields.size()) != columns) throw IoError("malformed row at " + where);
    Vec2 p{parse_number(fields[0], where), 0.0};
    if (columns == 2) p.y = parse_number(fields[1], where);
    ps.points.push_back(p);
  }
  if (columns != 0 && !meta_get("dim")) ps.dim = columns;
  if (columns != 0 && columns != ps.dim) throw IoError("column count does not match dimension in " + path.string());

  if (options.dim) ps.dim = *options.dim;
  if (options.box) ps.box = *options.box;
  if (options.mode) ps.mode = *options.mode;
  if (options.palm) ps.palm = *options.palm;

  validate(ps);
  return ps;
}

}  // namespace hdt
