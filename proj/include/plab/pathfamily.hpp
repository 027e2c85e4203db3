#pragma once

#include <string>
#include <vector>

#include "plab/graph.hpp"

namespace plab {

// A system of paths connecting vertex pairs, plus the per-edge congestion it
// induces. kappa is indexed like g.edges(); each unordered pair {v,w} with
// v < w appears at most once and contributes weight 1/|paths| per path.
struct PathFamily {
  struct PairPaths {
    int v = 0, w = 0;                     // v < w
    std::vector<std::vector<int>> paths;  // vertex sequences from v to w
  };
  std::vector<PairPaths> pairs;
  std::vector<double> kappa;
};

// One shortest path per pair, chosen by BFS with smallest-index predecessors.
// Materializes O(n^2 * diam) vertices; refuse beyond n = 400.
PathFamily all_pairs_geodesic_family(const WeightedGraph& g);

// Recompute kappa from the listed paths. Errors if a path is not a valid walk
// from v to w or uses a non-edge.
void recount_kappa(const WeightedGraph& g, PathFamily& fam);

// n / (kappa_max * d_max). Valid lower bound for h^1 whenever the family
// covers every vertex pair; errors if it does not.
double congestion_lower_bound(const WeightedGraph& g, const PathFamily& fam);

// kappa_max of all_pairs_geodesic_family without materializing paths: per
// source, edge loads are subtree sizes of the BFS predecessor tree. O(n * E).
double geodesic_kappa_max(const WeightedGraph& g);

// n / (geodesic_kappa_max * d_max) for a connected graph.
double congestion_lower_bound_auto(const WeightedGraph& g);

}  // namespace plab
