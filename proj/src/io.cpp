#include "localgraph/io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "localgraph/small_world.hpp"

namespace localgraph {

SbmSpec parse_sbm(std::istream& in) {
  SbmSpec spec;
  int r = 0;
  if (!(in >> r) || r < 1) throw Fault("block-model file: expected a positive community count");
  spec.weights.resize(static_cast<std::size_t>(r));
  for (double& w : spec.weights) {
    if (!(in >> w)) throw Fault("block-model file: expected " + std::to_string(r) + " weights");
  }
  spec.prob.assign(static_cast<std::size_t>(r), std::vector<double>(static_cast<std::size_t>(r)));
  for (auto& row : spec.prob) {
    for (double& x : row) {
      if (!(in >> x)) throw Fault("block-model file: probability matrix is incomplete");
    }
  }
  std::string extra;
  if (in >> extra) throw Fault("block-model file: trailing content '" + extra + "'");
  spec.validate();
  return spec;
}

std::vector<FuzzQuery> parse_query_script(std::istream& in, Vertex n) {
  std::vector<FuzzQuery> out;
  std::string line;
  int line_no = 0;
  auto vertex = [&](std::istringstream& is) {
    Vertex v = 0;
    if (!(is >> v) || v < 1 || v > n) {
      throw Fault("query script line " + std::to_string(line_no) + ": expected a vertex in [1, " +
                  std::to_string(n) + "]");
    }
    return v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream is(line);
    std::string op;
    if (!(is >> op)) continue;
    FuzzQuery q{QueryKind::NextNeighbor};
    if (op == "NN") {
      q.kind = QueryKind::NextNeighbor;
    } else if (op == "RN") {
      q.kind = QueryKind::RandomNeighbor;
    } else if (op == "VP") {
      q.kind = QueryKind::VertexPair;
    } else if (op == "AN") {
      q.kind = QueryKind::AllNeighbors;
    } else {
      throw Fault("query script line " + std::to_string(line_no) + ": unknown command '" + op + "'");
    }
    q.a = vertex(is);
    if (q.kind == QueryKind::VertexPair) q.b = vertex(is);
    std::string extra;
    if (is >> extra) throw Fault("query script line " + std::to_string(line_no) + ": trailing '" + extra + "'");
    out.push_back(q);
  }
  return out;
}

std::string answer_query(LocalGenerator& gen, const FuzzQuery& q) {
  if (!gen.supports(q.kind)) {
    throw Unsupported(std::string("unsupported query for generator: ") + query_name(q.kind) + " on " + gen.name());
  }
  switch (q.kind) {
    case QueryKind::NextNeighbor: {
      const Vertex u = gen.next_neighbor(q.a);
      return u > gen.vertex_count() ? "NONE" : std::to_string(u);
    }
    case QueryKind::RandomNeighbor: {
      const auto u = gen.random_neighbor(q.a);
      return u ? std::to_string(*u) : "NONE";
    }
    case QueryKind::VertexPair: return gen.vertex_pair(q.a, q.b) ? "1" : "0";
    case QueryKind::AllNeighbors: {
      std::string line;
      for (Vertex u : gen.all_neighbors(q.a)) {
        if (!line.empty()) line += ' ';
        line += std::to_string(u);
      }
      return line;
    }
  }
  return {};
}

std::uint64_t write_full_graph(LocalGenerator& gen, std::ostream& out, const FullGraphOptions& options) {
  const Vertex n = gen.vertex_count();
  std::uint64_t lines = 0;
  std::string buffer;
  auto flush = [&] {
    out << buffer;
    buffer.clear();
  };
  if (options.directed) {
    auto* sw = dynamic_cast<SmallWorldGenerator*>(&gen);
    for (Vertex v = 1; v <= n; ++v) {
      std::vector<Vertex> targets;
      if (sw != nullptr) {
        for (const OutEdge& e : sw->out_edges(v)) targets.push_back(e.target);
      } else {
        targets = gen.all_neighbors(v);
      }
      for (Vertex u : targets) {
        if (options.coords && sw != nullptr) {
          const GridVertex a = sw->coords(v);
          const GridVertex b = sw->coords(u);
          buffer += std::to_string(a.x) + ' ' + std::to_string(a.y) + ' ' + std::to_string(b.x) + ' ' +
                    std::to_string(b.y) + '\n';
        } else {
          buffer += std::to_string(v) + ' ' + std::to_string(u) + '\n';
        }
        ++lines;
      }
      if (buffer.size() > (1u << 16)) flush();
    }
  } else {
    for (Vertex v = 1; v <= n; ++v) {
      for (Vertex u : gen.all_neighbors(v)) {
        if (u > v) break;
        buffer += std::to_string(u) + ' ' + std::to_string(v) + '\n';
        ++lines;
      }
      if (buffer.size() > (1u << 16)) flush();
    }
  }
  flush();
  return lines;
}

}  // namespace localgraph
