#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plab/util.hpp"

namespace plab {

// Exact rational attached to a vertex measure when the input supplied one
// (JSON string "p/q" or an integer). Doubles are dyadic rationals, so exact
// mode can always fall back to the exact value of the double.
struct ExactRat {
  long long num = 1;
  long long den = 1;
};

// Finite weighted graph. Vertices are indexed 0..n-1 in lexicographic id
// order (canonicalized on construction); all deterministic tie-breaks use
// this index order.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  // Builder interface: add vertices/edges, then call finalize() exactly once.
  int add_vertex(std::string id, double mu = 1.0,
                 std::optional<ExactRat> exact = std::nullopt,
                 std::string label = "");
  void add_edge(const std::string& a, const std::string& b);
  void add_edge_idx(int a, int b);
  void finalize();

  bool finalized() const { return finalized_; }
  int n() const { return int(ids_.size()); }
  long long m() const { return edge_count_; }
  const std::string& id(int v) const { return ids_[v]; }
  const std::string& label(int v) const { return labels_[v]; }
  double mu(int v) const { return mu_[v]; }
  const std::optional<ExactRat>& mu_exact(int v) const { return mu_exact_[v]; }
  double total_mu() const { return total_mu_; }
  const std::vector<int>& nbrs(int v) const { return adj_[v]; }
  int degree(int v) const { return int(adj_[v].size()); }
  int max_degree() const;
  int index_of(const std::string& id) const;          // -1 if absent
  bool has_edge(int a, int b) const;

  // Edges as (a,b) with a < b, sorted.
  std::vector<std::pair<int, int>> edges() const;

  bool is_connected() const;
  std::vector<int> bfs_dist(int src) const;           // -1 = unreachable
  std::vector<int> bfs_dist_multi(const std::vector<int>& srcs) const;

  // Counting measure copy / uniform reweight.
  WeightedGraph with_uniform_mu(double w) const;

 private:
  std::vector<std::string> ids_;
  std::vector<std::string> labels_;
  std::vector<double> mu_;
  std::vector<std::optional<ExactRat>> mu_exact_;
  std::vector<std::vector<int>> adj_;
  long long edge_count_ = 0;
  double total_mu_ = 0;
  bool finalized_ = false;
  std::vector<std::pair<std::string, std::string>> pending_edges_;
};

// Cartesian product: vertices (g,h), edges move one coordinate along an edge.
// Ids are "gid|hid"; measure is the product measure.
WeightedGraph product(const WeightedGraph& G, const WeightedGraph& H);

// Subgraph induced on the given vertex indices (measure and labels kept).
WeightedGraph induced_subgraph(const WeightedGraph& G,
                               const std::vector<int>& verts);

}  // namespace plab
