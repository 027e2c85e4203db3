#include "plab/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "plab/lp.hpp"
#include "plab/util.hpp"

namespace plab {

namespace {

using nlohmann::json;

// vertex states for a Dirichlet subproblem
enum : char { kFree = 0, kZero = 1, kOne = 2 };

double grad_p_sum(const WeightedGraph& g, double p,
                  const std::vector<double>& f) {
  double s = 0;
  for (int x = 0; x < g.n(); ++x) {
    double m = 0;
    for (int y : g.nbrs(x)) m = std::max(m, std::fabs(f[x] - f[y]));
    s += g.mu(x) * std::pow(m, p);
  }
  return s;
}

void harmonic_init(const WeightedGraph& g, const std::vector<char>& state,
                   std::vector<double>& f) {
  std::vector<int> s0, s1;
  for (int i = 0; i < g.n(); ++i) {
    if (state[i] == kZero) s0.push_back(i);
    if (state[i] == kOne) s1.push_back(i);
  }
  auto d0 = g.bfs_dist_multi(s0), d1 = g.bfs_dist_multi(s1);
  f.assign(g.n(), 0.5);
  for (int i = 0; i < g.n(); ++i) {
    if (state[i] == kZero)
      f[i] = 0;
    else if (state[i] == kOne)
      f[i] = 1;
    else if (d0[i] >= 0 && d1[i] >= 0)
      f[i] = double(d0[i]) / double(d0[i] + d1[i]);
    else if (d0[i] >= 0)
      f[i] = 0;
    else if (d1[i] >= 0)
      f[i] = 1;
  }
}

// Projected descent on sum_x mu_x w_x^p with w a softmax smoothing of the
// neighborhood gradient; returns the true (unsmoothed) objective of the final
// iterate.
double dirichlet_smoothed(const WeightedGraph& g, double p,
                          const std::vector<char>& state, int iters,
                          std::vector<double>& f) {
  int n = g.n();
  harmonic_init(g, state, f);
  std::vector<double> grad(n);
  int rounds = 3, per = std::max(1, iters / 3);
  for (int round = 0; round < rounds; ++round) {
    double beta = 4.0 * std::pow(4.0, round);
    double eps2 = 1.0 / (beta * beta);
    for (int it = 0; it < per; ++it) {
      std::vector<double> w(n, 0.0);
      for (int x = 0; x < n; ++x) {
        double m = 0;
        for (int y : g.nbrs(x)) {
          double d = f[x] - f[y];
          m = std::max(m, std::sqrt(d * d + eps2));
        }
        double s = 0;
        for (int y : g.nbrs(x)) {
          double d = f[x] - f[y];
          s += std::exp(beta * (std::sqrt(d * d + eps2) - m));
        }
        w[x] = g.degree(x) ? m + std::log(s) / beta : 0.0;
      }
      std::fill(grad.begin(), grad.end(), 0.0);
      for (int x = 0; x < n; ++x) {
        if (!g.degree(x)) continue;
        double coef0 = p * g.mu(x) * std::pow(w[x], p - 1.0);
        for (int y : g.nbrs(x)) {
          double d = f[x] - f[y];
          double phi = std::sqrt(d * d + eps2);
          double c = coef0 * std::exp(beta * (phi - w[x])) * (d / phi);
          grad[x] += c;
          grad[y] -= c;
        }
      }
      double gn = 0;
      for (int i = 0; i < n; ++i)
        if (state[i] == kFree) gn += grad[i] * grad[i];
      gn = std::sqrt(gn);
      if (gn < 1e-14) break;
      double step = 0.25 / (1.0 + 3.0 * double(it) / double(per));
      for (int i = 0; i < n; ++i) {
        if (state[i] != kFree) continue;
        f[i] = std::clamp(f[i] - step * grad[i] / gn, 0.0, 1.0);
      }
    }
  }
  return grad_p_sum(g, p, f);
}

// Exact p = 1 subproblem: minimize sum mu_x g_x with g_x >= |f_x - f_y|,
// f in [0,1], f pinned on the two sides.
double dirichlet_lp1(const WeightedGraph& g, const std::vector<char>& state,
                     std::vector<double>& f) {
  int n = g.n();
  LinearProgram lp;
  for (int i = 0; i < n; ++i) lp.add_var(0.0);
  for (int i = 0; i < n; ++i) lp.add_var(g.mu(i));
  for (int x = 0; x < n; ++x) {
    for (int y : g.nbrs(x)) {
      lp.add_row({{n + x, 1.0}, {x, -1.0}, {y, 1.0}}, '>', 0.0);
      lp.add_row({{n + x, 1.0}, {x, 1.0}, {y, -1.0}}, '>', 0.0);
    }
    if (state[x] == kZero)
      lp.add_row({{x, 1.0}}, '=', 0.0);
    else if (state[x] == kOne)
      lp.add_row({{x, 1.0}}, '=', 1.0);
    else
      lp.add_row({{x, 1.0}}, '<', 1.0);
  }
  LPResult res = solve_lp(lp);
  require(res.feasible, "capacity subproblem LP infeasible");
  f.assign(n, 0.0);
  for (int i = 0; i < n; ++i) f[i] = res.x[i];
  return res.value;
}

double solve_pair(const WeightedGraph& g, double p,
                  const std::vector<char>& state, const CapacityConfig& cfg,
                  std::vector<double>& f) {
  if (p == 1.0 && g.n() <= 48) return dirichlet_lp1(g, state, f);
  return dirichlet_smoothed(g, p, state, cfg.iters, f);
}

std::string cap_witness(const std::string& method,
                        const std::vector<double>& f, int s0, int s1) {
  json j;
  j["method"] = method;
  j["S0_size"] = s0;
  j["S1_size"] = s1;
  if (!f.empty()) {
    if (f.size() <= 4096) j["f"] = f;
    std::string blob;
    for (double x : f) {
      blob += fmt_double(x);
      blob += ',';
    }
    j["f_digest"] = fnv1a_hex(blob);
  }
  return j.dump();
}

// zero-gradient split across components, if one reaches alpha on both sides
bool component_split(const WeightedGraph& g, double alpha,
                     std::vector<double>& f) {
  int n = g.n();
  std::vector<int> comp(n, -1);
  int nc = 0;
  for (int i = 0; i < n; ++i)
    if (comp[i] < 0) {
      auto d = g.bfs_dist(i);
      for (int j = 0; j < n; ++j)
        if (d[j] >= 0) comp[j] = nc;
      ++nc;
    }
  if (nc < 2) return false;
  std::vector<double> cmu(nc, 0.0);
  for (int i = 0; i < n; ++i) cmu[comp[i]] += g.mu(i);
  double M = g.total_mu(), need = alpha * M - 1e-12 * M;
  std::vector<int> chosen;
  if (nc <= 20) {
    for (long long mask = 1; mask + 1 < (1LL << nc); ++mask) {
      double a = 0;
      for (int c = 0; c < nc; ++c)
        if ((mask >> c) & 1) a += cmu[c];
      if (a >= need && M - a >= need) {
        for (int c = 0; c < nc; ++c)
          if ((mask >> c) & 1) chosen.push_back(c);
        break;
      }
    }
  } else {
    std::vector<int> order(nc);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return cmu[a] > cmu[b]; });
    double a = 0;
    for (int c : order) {
      if (a >= need) break;
      chosen.push_back(c);
      a += cmu[c];
    }
    if (a < need || M - a < need) chosen.clear();
  }
  if (chosen.empty()) return false;
  std::vector<char> in(nc, 0);
  for (int c : chosen) in[c] = 1;
  f.assign(n, 0.0);
  for (int i = 0; i < n; ++i) f[i] = in[comp[i]] ? 1.0 : 0.0;
  return true;
}

}  // namespace

double dirichlet_pinned(const WeightedGraph& g, double p,
                        const std::vector<int>& s0, const std::vector<int>& s1,
                        const CapacityConfig& cfg, std::vector<double>& f) {
  require(g.finalized(), "dirichlet: graph not finalized");
  require(p >= 1.0, "dirichlet: p must be >= 1");
  require(!s0.empty() && !s1.empty(), "dirichlet: a side is empty");
  std::vector<char> state(g.n(), kFree);
  for (int v : s0) {
    require(v >= 0 && v < g.n(), "dirichlet: vertex out of range");
    state[v] = kZero;
  }
  for (int v : s1) {
    require(v >= 0 && v < g.n(), "dirichlet: vertex out of range");
    require(state[v] != kZero, "dirichlet: sides overlap");
    state[v] = kOne;
  }
  return solve_pair(g, p, state, cfg, f);
}

CapacityResult capacity_solve(const WeightedGraph& g, double p, double alpha,
                              const CapacityConfig& cfg) {
  require(g.finalized(), "capacity: graph not finalized");
  require(p >= 1.0, "capacity: p must be >= 1");
  require(alpha > 0 && alpha < 0.25, "capacity: alpha must be in (0, 1/4)");
  int n = g.n();
  double M = g.total_mu();
  require(M > 0, "capacity: measure is zero");
  double need = alpha * M - 1e-12 * M;

  CapacityResult out;
  {
    std::vector<double> f;
    if (component_split(g, alpha, f)) {
      out.bounds.exact = true;
      out.bounds.lower = {0.0, "component_split", ""};
      int s1 = int(std::count(f.begin(), f.end(), 1.0));
      out.bounds.upper = {0.0, "component_split",
                          cap_witness("component_split", f, n - s1, s1)};
      out.f = f;
      return out;
    }
  }

  if (n <= cfg.exact_threshold) {
    require(n <= 16, "capacity: exact threshold too large");
    // inclusion-minimal admissible sets; every admissible f clips onto the
    // minimal pair inside its own level sets, so these pairs suffice
    std::vector<long long> minimal;
    for (long long mask = 1; mask < (1LL << n); ++mask) {
      double s = 0;
      for (int i = 0; i < n; ++i)
        if ((mask >> i) & 1) s += g.mu(i);
      if (s < need) continue;
      bool min = true;
      for (int i = 0; i < n && min; ++i)
        if (((mask >> i) & 1) && s - g.mu(i) >= need) min = false;
      if (min) minimal.push_back(mask);
    }
    long long pairs = 0;
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> bestf;
    int bs0 = 0, bs1 = 0;
    for (size_t a = 0; a < minimal.size(); ++a)
      for (size_t b = 0; b < minimal.size(); ++b) {
        if (a == b || (minimal[a] & minimal[b])) continue;
        require(++pairs <= cfg.max_exact_subproblems,
                "capacity: too many exact subproblems");
        std::vector<char> state(n, kFree);
        for (int i = 0; i < n; ++i) {
          if ((minimal[a] >> i) & 1) state[i] = kZero;
          if ((minimal[b] >> i) & 1) state[i] = kOne;
        }
        std::vector<double> f;
        double val = solve_pair(g, p, state, cfg, f);
        if (val < best) {
          best = val;
          bestf = std::move(f);
          bs0 = __builtin_popcountll((unsigned long long)minimal[a]);
          bs1 = __builtin_popcountll((unsigned long long)minimal[b]);
        }
      }
    require(pairs > 0, "capacity: no admissible pair of level sets");
    double c = std::pow(best / M, 1.0 / p);
    out.f = bestf;
    if (p == 1.0) {
      out.bounds.exact = true;
      out.bounds.lower = {c, "exact_enum", ""};
      out.bounds.upper = {c, "exact_enum",
                          cap_witness("exact_enum", bestf, bs0, bs1)};
    } else {
      out.bounds.exact = false;
      out.bounds.lower = {std::max(0.0, c - 1e-6), "enumeration_highconf", ""};
      out.bounds.upper = {c, "enumeration_highconf",
                          cap_witness("enumeration_highconf", bestf, bs0, bs1)};
    }
    return out;
  }

  // heuristic: seed pairs from sweep orderings and balls
  std::vector<std::pair<std::vector<int>, std::vector<int>>> seeds;
  std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
  auto push_seed = [&](std::vector<int> s0, std::vector<int> s1) {
    if (s0.empty() || s1.empty()) return;
    std::sort(s0.begin(), s0.end());
    std::sort(s1.begin(), s1.end());
    std::vector<int> inter;
    std::set_intersection(s0.begin(), s0.end(), s1.begin(), s1.end(),
                          std::back_inserter(inter));
    if (!inter.empty()) return;
    if (seen.insert({s0, s1}).second) seeds.push_back({s0, s1});
  };
  auto prefix_to_alpha = [&](const std::vector<int>& order, bool rev) {
    std::vector<int> s;
    double acc = 0;
    int len = int(order.size());
    for (int i = 0; i < len; ++i) {
      int v = order[rev ? len - 1 - i : i];
      s.push_back(v);
      acc += g.mu(v);
      if (acc >= need) break;
    }
    if (acc < need) s.clear();
    return s;
  };
  auto add_order = [&](const std::vector<int>& order) {
    push_seed(prefix_to_alpha(order, false), prefix_to_alpha(order, true));
  };
  // caller-supplied pairs go first so a tight restart budget keeps them
  for (const auto& pr : cfg.seed_pairs) {
    bool ok = true;
    double m0 = 0.0, m1 = 0.0;
    for (int v : pr.first) {
      if (v < 0 || v >= n) ok = false;
      else m0 += g.mu(v);
    }
    for (int v : pr.second) {
      if (v < 0 || v >= n) ok = false;
      else m1 += g.mu(v);
    }
    if (!ok || m0 < need - 1e-9 * M || m1 < need - 1e-9 * M) continue;
    push_seed(pr.first, pr.second);
  }
  {
    std::vector<int> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    add_order(ids);
  }
  auto order_by_dist = [&](const std::vector<int>& dist) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      long long da = dist[a] < 0 ? (1LL << 40) : dist[a];
      long long db = dist[b] < 0 ? (1LL << 40) : dist[b];
      if (da != db) return da < db;
      return a < b;
    });
    return order;
  };
  auto d0 = g.bfs_dist(0);
  int far_v = int(std::max_element(d0.begin(), d0.end()) - d0.begin());
  auto dfar = g.bfs_dist(far_v);
  add_order(order_by_dist(d0));
  add_order(order_by_dist(dfar));
  int far2 = int(std::max_element(dfar.begin(), dfar.end()) - dfar.begin());
  push_seed(prefix_to_alpha(order_by_dist(dfar), false),
            prefix_to_alpha(order_by_dist(g.bfs_dist(far2)), false));
  if (n <= 20000 && g.is_connected()) {
    auto fv = fiedler_vector(g);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      if (fv[a] != fv[b]) return fv[a] < fv[b];
      return a < b;
    });
    add_order(order);
  }
  require(!seeds.empty(), "capacity: no admissible pair found");
  if ((int)seeds.size() > cfg.restarts) seeds.resize(cfg.restarts);

  double best = std::numeric_limits<double>::infinity();
  std::vector<double> bestf;
  int bs0 = 0, bs1 = 0;
  for (const auto& [s0, s1] : seeds) {
    std::vector<char> state(n, kFree);
    for (int v : s0) state[v] = kZero;
    for (int v : s1) state[v] = kOne;
    std::vector<double> f;
    double val = solve_pair(g, p, state, cfg, f);
    if (val < best) {
      best = val;
      bestf = std::move(f);
      bs0 = int(s0.size());
      bs1 = int(s1.size());
    }
  }
  double c = std::pow(best / M, 1.0 / p);
  out.f = bestf;
  out.bounds.exact = false;
  out.bounds.lower = {0.0, "none", ""};
  out.bounds.upper = {c, "seeded_dirichlet",
                      cap_witness("seeded_dirichlet", bestf, bs0, bs1)};
  return out;
}

BoundInterval capacity_bounds(const WeightedGraph& g, double p, double alpha,
                              const CapacityConfig& cfg) {
  return capacity_solve(g, p, alpha, cfg).bounds;
}

std::string CapVsPoincareReport::to_json() const {
  json j;
  j["pass"] = pass;
  j["h_lower"] = h_lower;
  j["cap_upper"] = cap_upper;
  j["rhs"] = rhs;
  return j.dump();
}

CapVsPoincareReport check_cap_vs_poincare(const WeightedGraph& g, double p,
                                          double alpha, const HpConfig& hcfg,
                                          const CapacityConfig& ccfg) {
  CapVsPoincareReport rep;
  auto hp = hp_bounds(g, p, hcfg);
  auto cap = capacity_bounds(g, p, alpha, ccfg);
  // use the best h estimate available: an overestimate can only flag more
  rep.h_lower = hp.exact ? hp.lower.value : hp.upper.value;
  rep.cap_upper = cap.upper.value;
  rep.rhs = 2.0 / std::pow(alpha, 1.0 / p) * rep.cap_upper;
  rep.pass = rep.h_lower <= rep.rhs + 1e-9;
  return rep;
}

}  // namespace plab
