#include "plab/graph_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace plab {

using nlohmann::json;

WeightedGraph read_graph(std::istream& in) {
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(std::string("graph parse error: ") + e.what());
  }
  require(j.is_object() && j.contains("vertices") && j.contains("edges"),
          "graph json must have vertices and edges");
  WeightedGraph g;
  for (const auto& v : j.at("vertices")) {
    require(v.contains("id") && v.at("id").is_string(),
            "vertex entry missing string id");
    std::string id = v.at("id").get<std::string>();
    double mu = 1.0;
    std::optional<ExactRat> exact;
    if (v.contains("mu")) {
      require(v.at("mu").is_number(), "mu must be a number");
      mu = v.at("mu").get<double>();
      require(mu >= 0, "negative mu for vertex " + id);
      if (v.at("mu").is_number_integer())
        exact = ExactRat{v.at("mu").get<long long>(), 1};
    }
    std::string label;
    if (v.contains("label")) label = v.at("label").dump();
    g.add_vertex(id, mu, exact, label);
  }
  for (const auto& e : j.at("edges")) {
    require(e.is_array() && e.size() == 2, "edge must be a 2-element array");
    g.add_edge(e.at(0).get<std::string>(), e.at(1).get<std::string>());
  }
  g.finalize();
  return g;
}

WeightedGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open graph file: " + path);
  return read_graph(in);
}

WeightedGraph read_graph_string(const std::string& text) {
  std::istringstream in(text);
  return read_graph(in);
}

std::string write_graph_string(const WeightedGraph& g) {
  require(g.finalized(), "write_graph: graph not finalized");
  json verts = json::array();
  for (int v = 0; v < g.n(); ++v) {
    json jv;
    jv["id"] = g.id(v);
    if (g.mu(v) != 1.0) jv["mu"] = g.mu(v);
    if (!g.label(v).empty()) jv["label"] = json::parse(g.label(v));
    verts.push_back(std::move(jv));
  }
  json edges = json::array();
  for (auto& [a, b] : g.edges())
    edges.push_back(json::array({g.id(a), g.id(b)}));
  json out;
  out["vertices"] = std::move(verts);
  out["edges"] = std::move(edges);
  return out.dump(1) + "\n";
}

void write_graph_file(const WeightedGraph& g, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), "cannot open output file: " + path);
  out << write_graph_string(g);
  require(out.good(), "write failed: " + path);
}

}  // namespace plab
