#include "hdt/edge_field.hpp"

#include "hdt/geometry.hpp"

namespace hdt {

EdgeField::EdgeField(GraphPtr g) : graph(std::move(g)), values(graph->edges().size(), 0.0) {}

EdgeField::EdgeField(GraphPtr g, std::vector<double> v) : graph(std::move(g)), values(std::move(v)) {}

double EdgeField::at(const HalfEdge& h) const { return h.sign * values[static_cast<std::size_t>(h.edge)]; }

DirectedField::DirectedField(GraphPtr g)
    : graph(std::move(g)), forward(graph->edges().size(), 0.0), backward(graph->edges().size(), 0.0) {}

double DirectedField::at(const HalfEdge& h) const {
  const auto e = static_cast<std::size_t>(h.edge);
  return h.sign > 0 ? forward[e] : backward[e];
}

void DirectedField::set(const HalfEdge& h, double value) {
  const auto e = static_cast<std::size_t>(h.edge);
  (h.sign > 0 ? forward[e] : backward[e]) = value;
}

}  // namespace hdt
