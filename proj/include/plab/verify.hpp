#pragma once

#include <cstdint>
#include <string>

namespace plab {

// Randomized cross-checks of the inequalities the estimators rely on, run on
// seeded graphs small enough for the exact solvers. Each sample exercises:
//   - h^p <= (2/alpha^{1/p}) C^{p,alpha} for p in {1,2}, alpha in {1/8,1/16}
//   - positivity of the product lower/upper ratio against a partner graph
//   - capacity monotonicity under coordinate projection of product subgraphs
//   - the congestion lower bound against exact h^1
//   - invariance of C^{p,alpha} under scaling the measure
struct CorpusBatteryResult {
  long long samples = 0;
  long long checks = 0;
  long long violations = 0;
  double min_product_ratio = 0;  // empirical constant in the product bound
  std::string first_violation;
  std::string to_json() const;
};

CorpusBatteryResult corpus_battery(int samples, std::uint64_t seed);

// Stress the product capacity candidate on seeded connected subgraphs of
// (3-regular tree ball) x (square box). Soundness is the candidate's own
// admissibility count; tightness compares against an independently computed
// heuristic capacity at the certified level.
struct ProductBatteryResult {
  long long cases = 0;
  long long admissible = 0;
  long long within_factor = 0;  // bound <= factor * independent estimate
  double factor = 30.0;
  double worst_ratio = 0;
  std::string first_failure;
  std::string to_json() const;
};

ProductBatteryResult product_battery(int cases, double alpha,
                                     std::uint64_t seed, double factor = 30.0);

}  // namespace plab
