#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plab/graph.hpp"
#include "plab/treeaddr.hpp"

namespace plab {

// Upper half-plane point.
struct HPoint {
  double x = 0, y = 1;
};

double h2_distance(const HPoint& a, const HPoint& b);
double h2_busemann(const HPoint& a);  // Busemann function at infinity: log y

// (m+1)-regular tree on a height window, embedded in H^2 by t-adic
// coordinates: the vertex at height h whose digit word is s maps to
// (xnum * t^h, t^h) where xnum is the integer the digits spell.
struct TreeEmbedding {
  int m = 2;
  long long t = 3;
  int depth = 4;
  WeightedGraph graph;
  std::vector<TreeVertex> addr;  // per graph index
  std::vector<HPoint> image;
  std::vector<long long> xnum;
};
TreeEmbedding bc_tree_embedding(int m, long long t, int depth);

struct BusemannReport {
  bool pass = false;
  long long checked = 0;
  std::string counterexample;
  std::string to_json() const;
};
// Height recovery: log_t of the image's y must round to the address height,
// exactly as an integer.
BusemannReport busemann_height_check(const TreeEmbedding& emb);

struct DistortionReport {
  double min_ratio = 0, max_ratio = 0, L = 0;  // L = max/min
  long long pairs = 0;
  bool exhaustive = true;
  std::string to_json() const;
};
// d_{H^2}(images) / d_tree over vertex pairs; exhaustive when the pair count
// fits the budget, otherwise a seeded sample.
DistortionReport tree_embedding_distortion(const TreeEmbedding& emb,
                                           long long max_pairs,
                                           std::uint64_t seed);

struct DLInclusionReport {
  bool pass = false;
  int core_radius = 0;
  int ball_radius = 0;  // core + 2*core: geodesics between core pairs stay in
  long long pairs = 0;
  double min_ratio = 0, max_ratio = 0;  // (dx + dy) / d_DL
  long long formula_mismatches = 0;     // d_DL != dx + dy - |dh|
  std::string to_json() const;
};
// The identity inclusion DL(q,q) -> T_{q+1} x T_{q+1} on a ball core. BFS
// distances are exact there: a geodesic between core points stays within
// triple the core radius. Checks d_DL = dx + dy - |dh| on every pair, so
// (dx+dy)/d_DL lies in [1,2] with both ends attained: same-height pairs give
// 1, vertical pairs give 2.
DLInclusionReport dl_inclusion_check(int q, int core_radius);

struct HorocyclicReport {
  bool heights_exact = false;
  long long checked = 0;
  long long pairs = 0;
  double min_ratio = 0, max_ratio = 0, L = 0;
  std::string to_json() const;
};
// DL(q,q) into H^2 x H^2 coordinate-wise by the t-adic map with t = q.
// Verifies the height identity b(p1) + b(p2) = 0 on every vertex (integer
// exact via addresses) and measures (d_{H^2} + d_{H^2}) / d_DL over core
// pairs, d_DL taken from the verified address formula.
HorocyclicReport horocyclic_embed_dl(int q, int core_radius,
                                     long long max_pairs, std::uint64_t seed);

}  // namespace plab
