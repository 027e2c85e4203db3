#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plab/graph.hpp"
#include "plab/poincare.hpp"

namespace plab {

struct CapacityConfig {
  int exact_threshold = 10;  // minimal-pair enumeration when n <= this
  int restarts = 12;         // heuristic seed pairs to optimize
  int iters = 600;
  std::uint64_t seed = 0;
  long long max_exact_subproblems = 20000;
  // extra pinned pairs (vertex indices) tried ahead of the built-in seeds;
  // callers pass level sets of witnesses they already hold
  std::vector<std::pair<std::vector<int>, std::vector<int>>> seed_pairs;
};

struct CapacityResult {
  BoundInterval bounds;
  std::vector<double> f;  // best admissible witness, values in [0,1]
};

// C^{p,alpha}(G, mu): inf of mu(G)^{-1/p} ||grad f||_{mu,p} over f with
// mu{f<=0} and mu{f>=1} both >= alpha*mu(G). Requires 0 < alpha < 1/4 and an
// admissible pair to exist. Vertex measure is G's mu.
//
// Exact mode (n <= exact_threshold): enumerate inclusion-minimal admissible
// (S0, S1); any admissible f clips to a feasible point of the subproblem for
// its own minimal pair, and every subproblem point is admissible, so the min
// over minimal pairs is C exactly. p = 1 subproblems are LPs; p > 1 uses the
// smoothed convex solver and is reported exact=false with a small guard.
//
// Heuristic mode: seed pairs from sweep orderings and balls, optimize each;
// upper endpoint only.
CapacityResult capacity_solve(const WeightedGraph& g, double p, double alpha,
                              const CapacityConfig& cfg = {});

BoundInterval capacity_bounds(const WeightedGraph& g, double p, double alpha,
                              const CapacityConfig& cfg = {});

// Minimizes the p-Dirichlet objective sum_x mu_x grad(f)(x)^p with f = 0 on
// s0, f = 1 on s1, f in [0,1] elsewhere; returns the exact objective of the
// final iterate and the iterate itself. Deterministic for a fixed config.
double dirichlet_pinned(const WeightedGraph& g, double p,
                        const std::vector<int>& s0, const std::vector<int>& s1,
                        const CapacityConfig& cfg, std::vector<double>& f);

struct CapVsPoincareReport {
  bool pass = false;
  double h_lower = 0;   // certified lower endpoint for h^p
  double cap_upper = 0; // upper endpoint for C^{p,alpha}
  double rhs = 0;       // (2 / alpha^{1/p}) * cap_upper
  std::string to_json() const;
};

// Checks h^p <= (2 / alpha^{1/p}) C^{p,alpha} using the safe sides of both
// intervals.
CapVsPoincareReport check_cap_vs_poincare(const WeightedGraph& g, double p,
                                          double alpha,
                                          const HpConfig& hcfg = {},
                                          const CapacityConfig& ccfg = {});

}  // namespace plab
