#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "plab/capacity.hpp"
#include "plab/graph.hpp"
#include "plab/lieclass.hpp"
#include "plab/poincare.hpp"

namespace plab {

struct ProfilePoint {
  double r = 0;     // profile argument (|V|, or total mass for capacity runs)
  long long n = 0;  // |V|
  double mu_total = 0;
  double lo = 0, hi = 0;  // bounds on the profile value at r
  bool flagged = false;   // no certified lower bound, or gap wider than 4x
  std::string strategy;
  std::string desc;
  std::string witness_digest;
};

struct ProfileOptions {
  double p = 1.0;
  long long max_n = 200000;
  int max_points = 12;
  HpConfig hp;
};

// Points of |V| * h^p along a one-parameter family. Families: "tree"
// (params degree), "zd_box" (params d), "heisenberg", "sol", "dl",
// "gamma_k", "tree_x_path" (path length balanced as n_tree^{1/p}),
// "cone_interval", "cone_circle", "cone_cantor", "cone_square",
// "cone_cloud" (params levels, cloud_n).
std::vector<ProfilePoint> poincare_profile(
    const std::string& family, const std::map<std::string, double>& params,
    const ProfileOptions& opt);

struct XiOptions {
  double p = 1.0;
  double alpha = 1.0 / 8;
  std::string k_rule = "const:2";  // "const:N" or "sqrt"
  long long max_n = 4000;
  CapacityConfig cap;
};

// Points of mu(Gamma) * C^{p,alpha} over balls of the family carrying
// mu = k * counting, k from the rule; r is the total mass.
std::vector<ProfilePoint> xi_profile(const std::string& family,
                                     const std::map<std::string, double>& params,
                                     const XiOptions& opt);

struct FitResult {
  std::string model;           // "power", "power_log", "n_over_log"
  double a = 0, b = 0, c = 0;  // ln v ~ c + a ln r (+ b ln ln r)
  double a_power = 0;          // exponent of the pure power fit, always set
  double rms_power = 0, rms_power_log = 0, rms_n_over_log = 0;
  std::string basis;  // "certified" (geometric midpoints) or
                      // "uncertified_upper" (upper endpoints only)
  int used_points = 0;
  std::string to_json() const;
};

// Log-log least squares over the three model shapes. Needs at least 4 points
// spanning 1.5 decades; the smallest 20% are dropped. Certified basis only
// when every used point has a positive lower bound within 4x of the upper.
// Model choice: power unless an alternative wins by 0.02 log-RMS;
// n_over_log preferred over power_log unless the latter wins by 0.02.
FitResult fit_growth(const std::vector<ProfilePoint>& pts);

struct PredictionCheck {
  bool match = false;
  std::string notes;
  std::string to_json() const;
};
PredictionCheck compare_with_prediction(const FitResult& fit,
                                        const ProfileForm& predicted);

// Frozen column set:
// family,p,alpha,k_rule,r,n,value_lo,value_hi,strategy,witness_digest
std::string profile_csv(const std::vector<ProfilePoint>& pts,
                        const std::string& family, double p, double alpha,
                        const std::string& k_rule,
                        const std::string& run_header);
std::vector<ProfilePoint> profile_from_csv(const std::string& text);

}  // namespace plab
