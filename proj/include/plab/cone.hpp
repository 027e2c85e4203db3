#pragma once

#include <string>
#include <vector>

#include "plab/graph.hpp"

namespace plab {

// Compact metric space rescaled to diameter 1/2. Points are coordinate rows;
// the row layout depends on kind (interval/circle/cantor: 1 column, square
// and point_cloud: 2).
struct ModelSpace {
  std::string kind;
  double Q = 1.0;
  int cloud_n = 0;
  std::vector<std::vector<double>> cloud;  // point_cloud only

  double rho(const std::vector<double>& a, const std::vector<double>& b) const;
  // Deterministic sample in lexicographic coordinate order. Guaranteed
  // density (max distance from any space point to the sample) is
  // sample_density(budget).
  std::vector<std::vector<double>> sample(int budget) const;
  double sample_density(int budget) const;
  int budget_for_density(double eps) const;
};

ModelSpace make_model_space(const std::string& kind, int cloud_n = 0);

struct ConeGraph {
  WeightedGraph graph;
  std::vector<int> level;                          // per vertex index
  std::vector<std::vector<double>> center;         // per vertex index
  int basepoint = 0;                               // unique level-0 vertex
  ModelSpace space;
};

// Maximal e^{-t}-separated net over a deterministic sample, greedy in
// lexicographic order. Refuses if the sample cannot be e^{-t}/4 dense.
std::vector<std::vector<double>> make_net(const ModelSpace& space, int t,
                                          int sample_budget);

// Levels 0..T; edge iff |t-u| <= 1 and rho <= e^{-t}+e^{-u}. sample_budget
// caps the per-level sample when positive (refusing if insufficient);
// 0 sizes each level automatically.
ConeGraph make_cone(const ModelSpace& space, int T, int sample_budget = 0);

double gromov_product(const WeightedGraph& g, int p, int x, int y);

double estimate_delta(const WeightedGraph& g, long long sample_quadruples,
                      uint64_t seed);

struct BoundaryReport {
  double min_ratio = 0, max_ratio = 0, spread = 0;
  int pairs_used = 0;
};

BoundaryReport boundary_metric_check(const ConeGraph& cone, int pairs,
                                     uint64_t seed);

}  // namespace plab
