#include "hdt/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hdt/error.hpp"

namespace hdt::io {

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

std::string f(double v) { return format_double(v); }

std::vector<std::vector<std::string>> read_rows(const fs::path& path, const std::string& header_start) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::string line;
  std::vector<std::vector<std::string>> rows;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line.rfind(header_start, 0) != 0) throw IoError("unexpected header in " + path.string());
      header = true;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    rows.push_back(std::move(fields));
  }
  if (!header) throw IoError("missing header in " + path.string());
  return rows;
}

double parse(const std::string& s, const fs::path& path) {
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw IoError("malformed number '" + s + "' in " + path.string());
  return v;
}

}  // namespace

void write_edges(const DelaunayGraph& g, const fs::path& path) {
  auto out = open_out(path);
  const bool two = g.dim() == 2, facets = g.has_facets();
  out << "i,j,dx" << (two ? ",dy" : "") << (facets ? (two ? ",facet,facet_u1,facet_u2" : ",facet,facet_u1") : "")
      << '\n';
  for (const auto& e : g.edges()) {
    out << e.i << ',' << e.j << ',' << f(e.delta.x);
    if (two) out << ',' << f(e.delta.y);
    if (facets) {
      out << ',' << f(e.facet) << ',' << f(e.facet_proj[0]);
      if (two) out << ',' << f(e.facet_proj[1]);
    }
    out << '\n';
  }
  finish(out, path);
}

void write_cells(const DelaunayGraph& g, const fs::path& path) {
  auto out = open_out(path);
  out << "vertex,volume,perimeter,polygon\n";
  const auto cells = g.cells();
  for (std::size_t v = 0; v < cells.size(); ++v) {
    out << v << ',' << f(cells[v].volume) << ',' << f(cells[v].perimeter) << ',';
    for (std::size_t k = 0; k < cells[v].polygon.size(); ++k) {
      if (k) out << ';';
      out << f(cells[v].polygon[k].x) << ' ' << f(cells[v].polygon[k].y);
    }
    out << '\n';
  }
  finish(out, path);
}

void write_surface(const Surface& s, const fs::path& path) {
  auto out = open_out(path);
  out << "vertex,psi,height\n";
  for (std::size_t v = 0; v < s.size(); ++v) out << v << ',' << f(s.psi[v]) << ',' << f(s.height(static_cast<int>(v))) << '\n';
  finish(out, path);
}

void write_field(const EdgeField& field, const fs::path& path) {
  auto out = open_out(path);
  out << "# value of the flux from i to j with i < j; the reverse direction is its negative\n";
  out << "i,j,value\n";
  const auto edges = field.graph->edges();
  for (std::size_t e = 0; e < edges.size(); ++e) out << edges[e].i << ',' << edges[e].j << ',' << f(field.values[e]) << '\n';
  finish(out, path);
}

void write_trace(const std::vector<TracePoint>& trace, int dim, const fs::path& path) {
  auto out = open_out(path);
  out << "event,t,energy,max_laplacian_abs,tilt_u1" << (dim == 2 ? ",tilt_u2" : "") << '\n';
  for (const auto& p : trace) {
    out << p.event << ',' << f(p.t) << ',' << f(p.energy) << ',' << f(p.max_laplacian) << ',' << f(p.tilt[0]);
    if (dim == 2) out << ',' << f(p.tilt[1]);
    out << '\n';
  }
  finish(out, path);
}

void write_walk(const WalkTrace& w, int dim, const fs::path& path) {
  auto out = open_out(path);
  out << "t,vertex,x_unwrapped" << (dim == 2 ? ",y_unwrapped" : "") << '\n';
  for (std::size_t k = 0; k < w.times.size(); ++k) {
    out << f(w.times[k]) << ',' << w.vertices[k] << ',' << f(w.unwrapped[k].x);
    if (dim == 2) out << ',' << f(w.unwrapped[k].y);
    out << '\n';
  }
  finish(out, path);
}

void write_deformed(const DeformedGraph& d, const fs::path& path) {
  auto out = open_out(path);
  out << "vertex,x,y,Hx,Hy,chix,chiy\n";
  for (std::size_t v = 0; v < d.image.size(); ++v) {
    const Vec2 p = d.graph->position(static_cast<int>(v));
    out << v << ',' << f(p.x) << ',' << f(p.y) << ',' << f(d.image[v].x) << ',' << f(d.image[v].y) << ','
        << f(d.chi[v].x) << ',' << f(d.chi[v].y) << '\n';
  }
  finish(out, path);
}

std::vector<double> read_surface_psi(const fs::path& path) {
  std::vector<double> psi;
  for (const auto& row : read_rows(path, "vertex,psi")) {
    if (row.size() < 2) throw IoError("malformed row in " + path.string());
    if (parse(row[0], path) != static_cast<double>(psi.size())) throw IoError("vertices out of order in " + path.string());
    psi.push_back(parse(row[1], path));
  }
  return psi;
}

void read_deformed(DeformedGraph& d, const fs::path& path) {
  const auto rows = read_rows(path, "vertex,x,y,Hx,Hy,chix,chiy");
  const std::size_t n = d.graph->vertex_count();
  if (rows.size() != n) throw IoError("deformed points do not match the graph in " + path.string());
  d.chi.assign(n, Vec2{});
  d.image.assign(n, Vec2{});
  for (std::size_t v = 0; v < n; ++v) {
    if (rows[v].size() != 7) throw IoError("malformed row in " + path.string());
    d.chi[v] = {parse(rows[v][5], path), parse(rows[v][6], path)};
    d.image[v] = d.graph->position(static_cast<int>(v)) + d.chi[v];
  }
}

void Report::add(const std::string& key, const std::string& value) { entries_.emplace_back(key, value); }
void Report::add(const std::string& key, double value) { entries_.emplace_back(key, format_double(value)); }
void Report::add(const std::string& key, std::uint64_t value) { entries_.emplace_back(key, std::to_string(value)); }
void Report::merge(const Report& other) { entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end()); }

void Report::write_text(const fs::path& path) const {
  auto out = open_out(path);
  for (const auto& [k, v] : entries_) out << k << '=' << v << '\n';
  finish(out, path);
}

void Report::write_json(const fs::path& path) const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : entries_) {
    double num = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), num);
    if (v == "true" || v == "false") j[k] = v == "true";
    else if (res.ec == std::errc() && res.ptr == v.data() + v.size() && std::isfinite(num)) j[k] = num;
    else j[k] = v;
  }
  auto out = open_out(path);
  out << j.dump(2) << '\n';
  finish(out, path);
}

Report solver_report(const SolverReport& r, const std::string& prefix) {
  Report rep;
  rep.add(prefix + "method", to_string(r.method));
  rep.add(prefix + "iterations", r.iterations);
  rep.add(prefix + "residual_inf", r.residual_inf);
  rep.add(prefix + "residual_l2", r.residual_l2);
  rep.add(prefix + "energy", r.energy);
  rep.add(prefix + "wall_seconds", r.wall_seconds);
  return rep;
}

}  // namespace hdt::io
