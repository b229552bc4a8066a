#include "hdt/render.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hdt/error.hpp"

namespace hdt::render {

namespace {

struct Frame {
  double x0 = 0, y0 = 0, x1 = 1, y1 = 1;
  double scale = 1;
  double margin = 0;
  bool clip = false;
};

Frame frame_for(const GraphView& v, double width_px) {
  Frame f;
  if (v.periodic) {
    f.x1 = v.box;
    f.y1 = v.dim == 2 ? v.box : 0.0;
    f.clip = true;
  } else {
    f.x0 = f.y0 = INFINITY;
    f.x1 = f.y1 = -INFINITY;
    for (Vec2 p : v.pos) {
      f.x0 = std::min(f.x0, p.x), f.x1 = std::max(f.x1, p.x);
      f.y0 = std::min(f.y0, p.y), f.y1 = std::max(f.y1, p.y);
    }
    if (v.pos.empty()) f.x0 = f.y0 = f.x1 = f.y1 = 0;
  }
  f.margin = 0.05 * std::max({f.x1 - f.x0, f.y1 - f.y0, 1.0});
  f.x0 -= f.margin, f.y0 -= f.margin, f.x1 += f.margin, f.y1 += f.margin;
  f.scale = width_px / (f.x1 - f.x0);
  return f;
}

class Writer {
 public:
  Writer(const Frame& f, const std::string& title) : f_(f) {
    const double w = (f.x1 - f.x0) * f.scale, h = (f.y1 - f.y0) * f.scale;
    out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h)
         << "\" viewBox=\"0 0 " << num(w) << ' ' << num(h) << "\">\n"
         << "<title>" << title << "</title>\n"
         << "<rect class=\"background\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (f.clip) {
      const double m = f.margin;
      out_ << "<defs><clipPath id=\"box\"><rect x=\"" << num(X(f.x0 + m)) << "\" y=\"" << num(Y(f.y1 - m))
           << "\" width=\"" << num((f.x1 - f.x0 - 2 * m) * f.scale) << "\" height=\""
           << num((f.y1 - f.y0 - 2 * m) * f.scale) << "\"/></clipPath></defs>\n"
           << "<g clip-path=\"url(#box)\">\n";
    } else {
      out_ << "<g>\n";
    }
  }

  void line(Vec2 a, Vec2 b, const std::string& cls, const std::string& color, double width,
            const char* dash = nullptr) {
    out_ << "<line class=\"" << cls << "\" x1=\"" << num(X(a.x)) << "\" y1=\"" << num(Y(a.y)) << "\" x2=\""
         << num(X(b.x)) << "\" y2=\"" << num(Y(b.y)) << "\" stroke=\"" << color << "\" stroke-width=\""
         << num(width * f_.scale) << '"';
    if (dash) out_ << " stroke-dasharray=\"" << dash << '"';
    out_ << "/>\n";
    ++svg_.lines;
  }

  void circle(Vec2 c, double r, const std::string& color) {
    out_ << "<circle class=\"point\" cx=\"" << num(X(c.x)) << "\" cy=\"" << num(Y(c.y)) << "\" r=\""
         << num(r * f_.scale) << "\" fill=\"" << color << "\"/>\n";
    ++svg_.markers;
  }

  void polygon(const std::vector<Vec2>& pts, const std::string& cls, const std::string& fill,
               const std::string& stroke, double width) {
    out_ << "<polygon class=\"" << cls << "\" points=\"";
    for (std::size_t k = 0; k < pts.size(); ++k) out_ << (k ? " " : "") << num(X(pts[k].x)) << ',' << num(Y(pts[k].y));
    out_ << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width * f_.scale)
         << "\"/>\n";
    ++svg_.polygons;
  }

  void star(Vec2 c, double r, const std::string& color) {
    out_ << "</g>\n<g>\n";  // the marker stays whole at the box corner
    std::vector<Vec2> pts;
    for (int k = 0; k < 10; ++k) {
      const double a = M_PI / 2 + k * M_PI / 5, rr = k % 2 ? 0.4 * r : r;
      pts.push_back({c.x + rr * std::cos(a), c.y + rr * std::sin(a)});
    }
    polygon(pts, "star", color, color, 0.0);
  }

  /// Text goes outside the clipped group.
  Svg finish(const std::string& caption = {}) {
    out_ << "</g>\n";
    if (!caption.empty())
      out_ << "<text class=\"caption\" x=\"4\" y=\"14\" font-family=\"sans-serif\" font-size=\"12\">" << caption
           << "</text>\n";
    out_ << "</svg>\n";
    svg_.text = out_.str();
    return std::move(svg_);
  }

  Svg& counts() { return svg_; }

 private:
  double X(double x) const { return (x - f_.x0) * f_.scale; }
  double Y(double y) const { return (f_.y1 - y) * f_.scale; }
  static std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
  }

  Frame f_;
  std::ostringstream out_;
  Svg svg_;
};

bool inside_box(Vec2 p, const GraphView& v) {
  return p.x >= 0 && p.x <= v.box && (v.dim == 1 || (p.y >= 0 && p.y <= v.box));
}

void draw_edges(Writer& w, const GraphView& v, const std::string& cls, const std::string& color, double width,
                const char* dash = nullptr) {
  for (std::size_t k = 0; k < v.edges.size(); ++k) {
    const auto [i, j] = v.edges[k];
    const Vec2 a = v.pos[static_cast<std::size_t>(i)], b = a + v.deltas[k];
    w.line(a, b, cls, color, width, dash);
    if (v.periodic && !inside_box(b, v)) {
      const Vec2 c = v.pos[static_cast<std::size_t>(j)];
      w.line(c, c - v.deltas[k], cls, color, width, dash);
    }
  }
}

}  // namespace

GraphView view_of(const DelaunayGraph& g) {
  GraphView v;
  v.dim = g.dim();
  v.periodic = g.periodic();
  v.box = g.points().box;
  v.pos = g.points().points;
  for (const auto& e : g.edges()) {
    v.edges.emplace_back(e.i, e.j);
    v.deltas.push_back(e.delta);
  }
  return v;
}

GraphView view_of(const DeformedGraph& d) {
  GraphView v = view_of(*d.graph);
  for (std::size_t s = 0; s < v.pos.size(); ++s) v.pos[s] = wrap_point(d.graph->points(), d.image[s]);
  for (std::size_t k = 0; k < v.edges.size(); ++k) {
    const auto [i, j] = v.edges[k];
    v.deltas[k] = v.deltas[k] + d.chi[static_cast<std::size_t>(j)] - d.chi[static_cast<std::size_t>(i)];
  }
  return v;
}

Svg triangulation(const GraphView& view, std::optional<int> star, const Style& style) {
  Writer w(frame_for(view, style.width_px), "triangulation");
  draw_edges(w, view, "edge", style.edge_color, style.edge_width);
  for (Vec2 p : view.pos) w.circle(p, style.point_radius, style.point_color);
  if (star) {
    if (*star < 0 || static_cast<std::size_t>(*star) >= view.pos.size()) throw ConfigError("star vertex out of range");
    w.star(view.pos[static_cast<std::size_t>(*star)], 4 * style.point_radius, style.star_color);
  }
  return w.finish();
}

Svg voronoi(const DelaunayGraph& g, const Style& style) {
  if (g.dim() != 2 || !g.periodic()) throw GeometryError("voronoi rendering requires a periodic d=2 graph");
  GraphView v = view_of(g);
  Writer w(frame_for(v, style.width_px), "voronoi");
  const double L = g.points().box;
  for (const auto& cell : g.cells()) {
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (Vec2 p : cell.polygon) x0 = std::min(x0, p.x), x1 = std::max(x1, p.x), y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
    // Cells straddling the boundary are drawn once per overlapping translate.
    for (int a = -1; a <= 1; ++a)
      for (int b = -1; b <= 1; ++b) {
        if (x1 + a * L < 0 || x0 + a * L > L || y1 + b * L < 0 || y0 + b * L > L) continue;
        std::vector<Vec2> pts;
        for (Vec2 p : cell.polygon) pts.push_back({p.x + a * L, p.y + b * L});
        w.polygon(pts, "cell", "none", style.cell_color, style.edge_width);
      }
  }
  for (Vec2 p : v.pos) w.circle(p, style.point_radius, style.point_color);
  return w.finish();
}

std::vector<double> default_levels(const std::vector<double>& values, int count) {
  std::vector<double> levels{0.0};
  if (values.empty() || count <= 0) return levels;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double step = (*hi - *lo) / (count + 1);
  if (!(step > 0)) return levels;
  // Multiples of one step, so the zero level sits inside the family.
  for (long k = static_cast<long>(std::ceil(*lo / step)); k * step < *hi; ++k)
    if (k != 0 && k * step > *lo) levels.push_back(k * step);
  std::sort(levels.begin(), levels.end());
  return levels;
}

Svg level_curves(const DelaunayGraph& g, const std::vector<double>& values, const std::vector<double>& levels,
                 const Style& style) {
  if (g.dim() != 2) throw GeometryError("level curves require d=2");
  if (values.size() != g.vertex_count()) throw ConfigError("level-curve scalar has the wrong length");
  GraphView v = view_of(g);
  Writer w(frame_for(v, style.width_px), "level curves");
  const double L = g.points().box;
  for (double level : levels) {
    const bool zero = level == 0.0;
    for (const auto& face : g.faces()) {
      const Vec2 p[3] = {g.position(face.v[0]), g.position(face.v[0]) + face.d1, g.position(face.v[0]) + face.d2};
      double f[3];
      bool above[3];
      for (int k = 0; k < 3; ++k) {
        f[k] = values[static_cast<std::size_t>(face.v[k])] - level;
        above[k] = f[k] > 0;
      }
      std::vector<Vec2> cut;
      for (int k = 0; k < 3; ++k) {
        const int m = (k + 1) % 3;
        if (above[k] == above[m]) continue;
        const double s = f[k] / (f[k] - f[m]);
        cut.push_back(p[k] + s * (p[m] - p[k]));
      }
      if (cut.size() != 2) continue;
      const char* cls = zero ? "level-zero" : "level";
      const std::string& color = zero ? style.zero_level_color : style.level_color;
      const double width = zero ? 2.5 * style.edge_width : style.edge_width;
      ++w.counts().iso_segments;
      if (zero) ++w.counts().zero_segments;
      // Faces anchored near the boundary stick out of the box; their
      // translates fill in the other side.
      const int reach = g.periodic() ? 1 : 0;
      for (int a = -reach; a <= reach; ++a)
        for (int b = -reach; b <= reach; ++b) {
          const Vec2 c0 = cut[0] + Vec2{a * L, b * L}, c1 = cut[1] + Vec2{a * L, b * L};
          const bool meets = std::max(c0.x, c1.x) >= 0 && std::min(c0.x, c1.x) <= L &&
                             std::max(c0.y, c1.y) >= 0 && std::min(c0.y, c1.y) <= L;
          if ((a || b) && !meets) continue;
          w.line(c0, c1, cls, color, width);
        }
    }
  }
  for (Vec2 q : v.pos) w.circle(q, 0.5 * style.point_radius, style.point_color);
  return w.finish();
}

Svg overlay(const DeformedGraph& d, const OverlayReport& report, const Style& style) {
  GraphView harmonic = view_of(d);
  const GraphView del = view_of(*report.delaunay);
  Writer w(frame_for(harmonic, style.width_px), "overlay");
  draw_edges(w, harmonic, "harmonic", style.harmonic_color, 3 * style.edge_width);
  draw_edges(w, del, "delaunay", style.delaunay_color, 1.5 * style.edge_width, "6,4");
  for (Vec2 p : harmonic.pos) w.circle(p, 0.5 * style.point_radius, style.point_color);
  w.counts().non_shared = report.harmonic_only + report.delaunay_only;
  return w.finish("non-shared edges: " + std::to_string(report.harmonic_only + report.delaunay_only) +
                  " (harmonic only " + std::to_string(report.harmonic_only) + ", Delaunay only " +
                  std::to_string(report.delaunay_only) + ")");
}

}  // namespace hdt::render
