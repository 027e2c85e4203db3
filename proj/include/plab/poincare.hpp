#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plab/graph.hpp"

namespace plab {

// |grad f|(x) = max over neighbors y of |f(x)-f(y)|; 0 on isolated vertices.
std::vector<double> gradient(const WeightedGraph& g,
                             const std::vector<double>& f);

// ||grad f||_p / ||f||_p in the counting measure. Rejects f with nonzero mean
// or f identically zero.
double hp_upper_from_witness(const WeightedGraph& g, double p,
                             const std::vector<double>& f);

struct Endpoint {
  double value = 0;
  std::string method;
  std::string witness;  // JSON payload; re-evaluates to the claimed value
};

struct BoundInterval {
  Endpoint lower, upper;
  bool exact = false;
  std::string to_json() const;
};

struct HpConfig {
  int exact_threshold = 8;   // exact enumeration when p=1 and n <= this
  int restarts = 60;         // multistart count
  int iters = 240;           // gradient steps per restart
  int multistart_max_n = 25000;  // beyond 600 the restart budget tapers
  std::uint64_t seed = 0;
};

// Certified interval for h^p. Lower endpoint: exact enumeration (p=1, small),
// else all-pairs geodesic congestion certificate (p=1), else multistart
// agreement (p>1, high-confidence, exact=false). Upper endpoint: best witness
// among sweep cuts, ramps, the Fiedler vector and multistart refinement.
BoundInterval hp_bounds(const WeightedGraph& g, double p,
                        const HpConfig& cfg = {});

// Exact h^1 by sign-pattern enumeration: for each sign pattern s the optimal
// f with sign(f) = s solves an LP in u = |f| (normalize ||f||_1 = 1; the
// gradient epigraph and both balance constraints are linear). Minimizing over
// the 2^{n-1} patterns is exact because every f induces some pattern and each
// LP relaxes nothing else.
double exact_h1(const WeightedGraph& g, std::vector<double>* witness = nullptr);

// Independent slow oracle: enumerate vertex orderings and zero-crossing
// positions; per (ordering, crossing) the ratio minimizes via an LP over
// nonnegative level increments. n <= 7.
double exact_h1_ordering_oracle(const WeightedGraph& g);

// Smallest positive eigenvalue of the edge-difference Laplacian, 1e-8
// relative: dense solve for small n, Lanczos with full reorthogonalization on
// the complement of constants otherwise. Errors on disconnected input.
double h2_spectral(const WeightedGraph& g);

// Eigenvector for h2_spectral's eigenvalue (sign fixed: first nonzero > 0).
std::vector<double> fiedler_vector(const WeightedGraph& g);

}  // namespace plab
