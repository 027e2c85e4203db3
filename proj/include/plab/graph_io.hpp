#pragma once

#include <iosfwd>
#include <string>

#include "plab/graph.hpp"

namespace plab {

// JSON schema:
//   {"vertices":[{"id":"a","mu":1.0,"label":{...}}, ...],
//    "edges":[["a","b"], ...]}
// "mu" defaults to 1, "label" is optional and kept verbatim. Rejects
// duplicate ids, duplicate edges, loops, unknown endpoints, negative mu.
WeightedGraph read_graph(std::istream& in);
WeightedGraph read_graph_file(const std::string& path);
WeightedGraph read_graph_string(const std::string& text);

std::string write_graph_string(const WeightedGraph& g);
void write_graph_file(const WeightedGraph& g, const std::string& path);

}  // namespace plab
