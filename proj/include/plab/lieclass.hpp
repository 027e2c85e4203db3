#pragma once

#include <map>
#include <string>
#include <vector>

#include "plab/graph.hpp"

namespace plab {

// Root data of a group R^d x| R^k: one rational weight vector in Q^k per
// invariant line of the action, listed with multiplicity (d entries).
struct WeightData {
  int k = 1;
  std::vector<std::vector<ExactRat>> weights;
};

// Rank of the span of the weight vectors, computed exactly.
int weight_span_rank(const WeightData& w);

// True when the nonzero weights lie strictly on one side of a hyperplane
// through 0, i.e. 0 is outside their convex hull. Decided exactly by
// enumerating subsets of size <= k+1 and solving the barycentric systems
// over the rationals.
bool is_nc(const WeightData& w);

// Asymptotic shape of a profile r -> value.
struct ProfileForm {
  std::string kind;  // "constant","power","power_log","n_over_log","power_band"
  double a = 0;      // power exponent
  double b = 0;      // log exponent, power_log only
  double lo = 0, hi = 0;  // exponent band, power_band only
  std::string to_string() const;
  std::string to_json() const;
};

ProfileForm form_constant();
ProfileForm form_power(double a);
ProfileForm form_power_log(double a, double b);
ProfileForm form_n_over_log();
ProfileForm form_power_band(double lo, double hi);

struct Classification {
  std::string kind;          // "polynomial", "thin", "thick"
  double growth_degree = 0;  // polynomial case: d + k
  double Q = 0;              // thin: weight mass after normalizing min = 1
  int n_w = 0;               // thin: number of nonzero weights
  int flat = 0;              // thin: zero weights + (k - 1) flat directions
  bool equal_weights = false;  // thin: all nonzero weights equal
  std::string to_json() const;
};

// Trichotomy: no nonzero weights -> polynomial; nonzero weights one-sided
// -> thin (requires the nonzero weights to span a line); otherwise thick.
Classification classify(const WeightData& w);

// Predicted Poincare profile of |V| * h^p over balls.
// polynomial: r^{1-1/D}. thick: r / log r. thin with mass Q and flat rank d:
// p < Q gives r^{1-1/(Q+d)}, p = Q adds log^{1/(Q+d)}, p > Q gives
// r^{1-1/(p+d)}; unequal weights widen the p < n_w case to a band
// [1-1/(n_w+d), 1-1/(Q+d)].
ProfileForm predicted_profile(const Classification& c, double p);

// Weights of R^d x|_A R from the real parts of the eigenvalues of A,
// snapped to rationals (tolerance 1e-8, denominators up to 1e6).
WeightData weights_from_matrix(const std::vector<std::vector<double>>& A);

// Solvable Baumslag-Solitar profile: |m|=|n|=1 gives r^{1/2}; |m|=|n|>=2
// gives r^{1-1/(p+1)}; |m| != |n| gives r / log r.
ProfileForm bs_profile(long long m, long long n, double p);

// p = 1 profile of the eight Thurston-type model geometries.
ProfileForm thurston_profile(const std::string& geometry, double p);

struct CatalogEntry {
  std::string name;
  std::string description;
  std::string verdict;     // classification summary
  ProfileForm predicted;   // at p = 1
  std::string graph_family;  // finite model family, empty when none is built
  std::map<std::string, double> graph_params;
  std::string to_json() const;
};

// Worked examples: r3, nil, sol, h3, h2xr, heintze_1_2, osc, bs_2_3.
std::vector<CatalogEntry> group_catalog();

}  // namespace plab
