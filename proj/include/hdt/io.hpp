#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "hdt/fields.hpp"
#include "hdt/harness.hpp"
#include "hdt/randomwalk.hpp"
#include "hdt/solver.hpp"

namespace hdt::io {

namespace fs = std::filesystem;

/// `i,j,dx[,dy],facet,facet_u1[,facet_u2]`; facet columns only with facets.
void write_edges(const DelaunayGraph& g, const fs::path& path);
/// `vertex,volume,perimeter,polygon` with the polygon as `x y;x y;...`.
void write_cells(const DelaunayGraph& g, const fs::path& path);
/// `vertex,psi,height`.
void write_surface(const Surface& s, const fs::path& path);
/// `i,j,value`, the value read from i to j (i < j).
void write_field(const EdgeField& f, const fs::path& path);
/// `event,t,energy,max_laplacian_abs,tilt_u1[,tilt_u2]`.
void write_trace(const std::vector<TracePoint>& trace, int dim, const fs::path& path);
/// `t,vertex,x_unwrapped[,y_unwrapped]`.
void write_walk(const WalkTrace& w, int dim, const fs::path& path);
/// `vertex,x,y,Hx,Hy,chix,chiy`.
void write_deformed(const DeformedGraph& d, const fs::path& path);

/// Reads the psi column of a surface CSV.
std::vector<double> read_surface_psi(const fs::path& path);
/// Reads chi from a deformed-points CSV into `d` (graph must be set).
void read_deformed(DeformedGraph& d, const fs::path& path);

/// Ordered key=value report.
class Report {
 public:
  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, double value);
  void add(const std::string& key, std::uint64_t value);
  void add(const std::string& key, int value) { add(key, static_cast<std::uint64_t>(value)); }
  void add(const std::string& key, bool value) { add(key, std::string(value ? "true" : "false")); }
  void merge(const Report& other);
  const std::vector<std::pair<std::string, std::string>>& entries() const noexcept { return entries_; }

  /// `key=value` lines.
  void write_text(const fs::path& path) const;
  /// Flat JSON object; numeric values are written as numbers.
  void write_json(const fs::path& path) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

Report solver_report(const SolverReport& r, const std::string& prefix);

}  // namespace hdt::io
