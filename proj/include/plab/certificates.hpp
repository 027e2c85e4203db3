#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plab/capacity.hpp"
#include "plab/graph.hpp"
#include "plab/pathfamily.hpp"
#include "plab/poincare.hpp"

namespace plab {

// ---- path system on the horocyclic slab graphs ----

struct GammaKFamily {
  int k = 0;
  WeightedGraph graph;
  std::vector<int> level_of;  // per vertex
};

// The slab graph with its level decomposition. k <= 8.
GammaKFamily build_gamma_k_family(int k);

struct GammaClaimsReport {
  bool pass = false;
  int k = 0;
  long long size = 0;         // |V|
  long long total_paths = 0;
  double kappa_max = 0;       // pair-averaged congestion of the path system
  int d_max = 0;
  double h1_lower = 0;        // |V| / (kappa_max * d_max)
  double scaled_lower = 0;    // k * h1_lower; bounded away from 0
  std::string counterexample;
  std::string to_json() const;
};

// Checks the path system between every vertex pair of the slab graph without
// materializing it: per-pair path counts match 2^{k-t+s}, every step is an
// edge, per-edge incidences within each level pair (t,s) stay below
// 2^{2k-t+s}, and the induced congestion bound k*h1_lower is above 0.02.
// tamper in {"", "reroute", "inflate", "drop"} perturbs one path; a tampered
// run must fail with a counterexample.
GammaClaimsReport verify_gamma_claims(int k, const std::string& tamper = "");

// Materialized paths for cross-checking against recount_kappa; k <= 3.
PathFamily gamma_k_explicit_paths(const GammaKFamily& fam);

// ---- products ----

struct RatioReport {
  double ratio = 0;       // lower(product) / min(upper(A), upper(B))
  double h_product_lo = 0;
  double h_a_up = 0, h_b_up = 0;
  std::string to_json() const;
};

// Empirical constant in h^p(A x B) >= c * min(h^p(A), h^p(B)), from the safe
// sides of the three intervals.
RatioReport product_lower_check(const WeightedGraph& a, const WeightedGraph& b,
                                double p, const HpConfig& hcfg = {});

// Image of a product subgraph under the coordinate projection, with the
// pushforward vertex measure. Vertex ids must be "xid|yid" with a '|'-free
// x part; coord 0 keeps x, coord 1 keeps y.
WeightedGraph projection_pushforward(const WeightedGraph& prod_subgraph,
                                     int coord);

// ---- box colorings and the product capacity candidate ----

struct ANColoring {
  int d = 0, R = 0, B = 0;  // separation scale R, cell side B = max(1, R/2)
  int nclasses = 0;         // 2^d block parities
  std::vector<int> cell_of;        // box vertex -> cell
  std::vector<int> class_of_cell;  // cell -> parity class
  std::vector<std::vector<int>> cell_members;
};

// Axis-aligned cube cells of side B colored by block parity: distinct
// same-class cells sit at graph distance >= B+1 and each cell has diameter
// <= d*(B-1). Requires the box's vertex ids to encode coordinates.
ANColoring an_grid_coloring(const WeightedGraph& box, int d, int R);

struct ProductUpperResult {
  bool admissible = false;  // both level sets hold alpha/2 of the mass
  std::string case_tag;     // "cell" or "split"
  double bound = 0;         // mu(G)^{-1/p} ||grad F||_{mu,p}, sound iff admissible
  double alpha_out = 0;     // level certified by the runtime count
  int k_used = 0;
  int kappa_k = 0;
  std::vector<double> F;
  std::string diag;
  std::string to_json() const;
};

// Capacity witness for a subgraph of ambX x ambY (ambY a d-dimensional box),
// built from the inverse growth scale kappa(k) of ambY: either a heavy cell
// feeds a projected capacity problem on X, or the cell classes split into two
// separated halves. The reported bound is an exact evaluation of the
// constructed F; admissibility is counted at level alpha/2, never assumed.
ProductUpperResult product_upper_candidate(const WeightedGraph& gamma,
                                           const WeightedGraph& ambX,
                                           const WeightedGraph& ambY, int d,
                                           double p, double alpha, int k,
                                           const CapacityConfig& ccfg = {});

// ---- trees ----

struct TreeMedianResult {
  double upper = 0;  // (mu(v) + mu(v'))^{1/p} / mu(G)^{1/p}
  int median = -1;
  std::vector<double> f;  // component indicator, admissible at alpha <= 1/4
};

// Median-vertex capacity certificate for a subtree with no atom above a
// quarter of the total mass.
TreeMedianResult tree_median_capacity(const WeightedGraph& tree, double p,
                                      double alpha);

}  // namespace plab
