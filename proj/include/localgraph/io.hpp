#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "localgraph/edge_model.hpp"
#include "localgraph/generator.hpp"
#include "localgraph/oracle.hpp"

namespace localgraph {

// Block-model file: r, then r weights, then an r x r symmetric matrix.
SbmSpec parse_sbm(std::istream& in);

// One query per line: NN v | RN v | VP u v | AN v. Blank lines and text after
// '#' are ignored. Throws Fault with the line number on malformed input.
std::vector<FuzzQuery> parse_query_script(std::istream& in, Vertex n);

// Answer line for one query; the n+1 sentinel and a missing random neighbor
// print as NONE.
std::string answer_query(LocalGenerator& gen, const FuzzQuery& q);

struct FullGraphOptions {
  bool directed = false;   // small world: one "v u" line per out-edge
  bool coords = false;     // small world: "x1 y1 x2 y2"
};

// Writes every edge once: undirected edges as "u v" with u <= v, ordered by v
// then u; directed edges by source. Returns the number of lines written.
std::uint64_t write_full_graph(LocalGenerator& gen, std::ostream& out, const FullGraphOptions& options);

}  // namespace localgraph
