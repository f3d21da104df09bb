#include "localgraph/generator.hpp"

#include <algorithm>

namespace localgraph {

const char* query_name(QueryKind kind) {
  switch (kind) {
    case QueryKind::NextNeighbor: return "next-neighbor";
    case QueryKind::RandomNeighbor: return "random-neighbor";
    case QueryKind::VertexPair: return "vertex-pair";
    case QueryKind::AllNeighbors: return "all-neighbors";
  }
  return "unknown";
}

std::optional<Vertex> LocalGenerator::random_neighbor(Vertex) {
  unsupported(QueryKind::RandomNeighbor);
}

void LocalGenerator::check_vertex(Vertex v) const {
  if (v < 1 || v > vertex_count()) {
    throw Fault("vertex " + std::to_string(v) + " outside [1, " + std::to_string(vertex_count()) + "]");
  }
}

void LocalGenerator::unsupported(QueryKind kind) const {
  throw Unsupported(std::string("unsupported query for generator: ") + query_name(kind) +
                    " on " + name());
}

Vertex NoSelfLoops::next_neighbor(Vertex v) {
  Vertex u = inner_->next_neighbor(v);
  if (u == v) u = inner_->next_neighbor(v);
  return u;
}

std::optional<Vertex> NoSelfLoops::random_neighbor(Vertex v) {
  for (;;) {
    std::optional<Vertex> u = inner_->random_neighbor(v);
    if (!u || *u != v) return u;
    // v has a self-loop; stop if it is the only neighbor.
    const std::vector<Vertex> all = inner_->all_neighbors(v);
    if (all.size() == 1) return std::nullopt;
  }
}

bool NoSelfLoops::vertex_pair(Vertex u, Vertex v) {
  if (u == v) {
    check_vertex(v);
    return false;
  }
  return inner_->vertex_pair(u, v);
}

std::vector<Vertex> NoSelfLoops::all_neighbors(Vertex v) {
  std::vector<Vertex> out = inner_->all_neighbors(v);
  out.erase(std::remove(out.begin(), out.end(), v), out.end());
  return out;
}

}  // namespace localgraph
