#pragma once

#include <memory>
#include <vector>

namespace hdt {

class DelaunayGraph;
struct HalfEdge;
using GraphPtr = std::shared_ptr<const DelaunayGraph>;

/// Antisymmetric field (flux) on the edges of a graph. One value per
/// undirected edge, read as +value from edge.i to edge.j and -value backwards,
/// so antisymmetry holds exactly by construction.
struct EdgeField {
  GraphPtr graph;
  std::vector<double> values;

  EdgeField() = default;
  explicit EdgeField(GraphPtr g);
  EdgeField(GraphPtr g, std::vector<double> v);

  double at(const HalfEdge& h) const;
};

/// General field on directed edges (no symmetry assumed).
struct DirectedField {
  GraphPtr graph;
  std::vector<double> forward;   // value on (edge.i, edge.j)
  std::vector<double> backward;  // value on (edge.j, edge.i)

  DirectedField() = default;
  explicit DirectedField(GraphPtr g);

  double at(const HalfEdge& h) const;
  void set(const HalfEdge& h, double value);
};

}  // namespace hdt
