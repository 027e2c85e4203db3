#include "plab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "plab/capacity.hpp"
#include "plab/certificates.hpp"
#include "plab/families.hpp"
#include "plab/graph.hpp"
#include "plab/pathfamily.hpp"
#include "plab/poincare.hpp"
#include "plab/util.hpp"

namespace plab {

namespace {

WeightedGraph random_small_graph(Rng& rng) {
  int n = 2 + rng_int(rng, 7);  // 2..8
  bool weighted = rng_int(rng, 2) == 1;
  WeightedGraph g;
  std::vector<std::string> ids(n);
  for (int v = 0; v < n; ++v) {
    ids[v] = "v" + std::to_string(v);
    double mu = weighted ? double(1 + rng_int(rng, 4)) : 1.0;
    g.add_vertex(ids[v], mu);
  }
  std::set<std::pair<int, int>> have;
  for (int v = 1; v < n; ++v) {
    int u = rng_int(rng, v);
    have.insert({u, v});
  }
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!have.count({u, v}) && rng_unit(rng) < 0.3) have.insert({u, v});
  for (const auto& e : have) g.add_edge(ids[e.first], ids[e.second]);
  g.finalize();
  return g;
}

WeightedGraph scale_mu(const WeightedGraph& g, long long k) {
  WeightedGraph out;
  for (int v = 0; v < g.n(); ++v) {
    std::optional<ExactRat> ex = g.mu_exact(v);
    if (ex) ex->num *= k;
    out.add_vertex(g.id(v), g.mu(v) * double(k), ex, g.label(v));
  }
  for (const auto& e : g.edges()) out.add_edge(g.id(e.first), g.id(e.second));
  out.finalize();
  return out;
}

// Can the mass be split into two sides each holding alpha of the total?
// Exact over bipartitions; only meaningful for small n.
bool exists_admissible_pair(const WeightedGraph& g, double alpha) {
  int n = g.n();
  if (n < 2) return false;
  if (n > 16) return true;
  double total = g.total_mu();
  double need = alpha * total - 1e-12 * total;
  double best = -1;
  for (std::uint64_t mask = 1; mask + 1 < (1ULL << n); ++mask) {
    double s = 0;
    for (int v = 0; v < n; ++v)
      if ((mask >> v) & 1) s += g.mu(v);
    best = std::max(best, std::min(s, total - s));
  }
  return best >= need;
}

// Connected induced subgraph grown by seeded frontier expansion.
WeightedGraph grow_subgraph(const WeightedGraph& g, int target, Rng& rng) {
  int n = g.n();
  std::vector<char> in(size_t(n), 0), infr(size_t(n), 0);
  std::vector<int> verts, frontier;
  int start = rng_int(rng, n);
  verts.push_back(start);
  in[size_t(start)] = 1;
  for (int w : g.nbrs(start)) {
    frontier.push_back(w);
    infr[size_t(w)] = 1;
  }
  while (int(verts.size()) < target && !frontier.empty()) {
    int pick = rng_int(rng, int(frontier.size()));
    int v = frontier[size_t(pick)];
    frontier[size_t(pick)] = frontier.back();
    frontier.pop_back();
    infr[size_t(v)] = 0;
    verts.push_back(v);
    in[size_t(v)] = 1;
    for (int w : g.nbrs(v))
      if (!in[size_t(w)] && !infr[size_t(w)]) {
        frontier.push_back(w);
        infr[size_t(w)] = 1;
      }
  }
  std::sort(verts.begin(), verts.end());
  return induced_subgraph(g, verts);
}

}  // namespace

std::string CorpusBatteryResult::to_json() const {
  nlohmann::ordered_json j;
  j["samples"] = samples;
  j["checks"] = checks;
  j["violations"] = violations;
  j["min_product_ratio"] = min_product_ratio;
  if (!first_violation.empty()) j["first_violation"] = first_violation;
  return j.dump();
}

CorpusBatteryResult corpus_battery(int samples, std::uint64_t seed) {
  CorpusBatteryResult out;
  out.min_product_ratio = 1e300;
  Rng rng(derive_seed(seed, 0xC09095ULL));
  WeightedGraph partner = make_path(3);

  auto flag = [&](int i, const std::string& what) {
    ++out.violations;
    if (out.first_violation.empty())
      out.first_violation = "sample " + std::to_string(i) + ": " + what;
  };

  for (int i = 0; i < samples; ++i) {
    WeightedGraph g = random_small_graph(rng);
    ++out.samples;

    // Poincare vs capacity comparison.
    for (double p : {1.0, 2.0})
      for (double alpha : {0.125, 0.0625}) {
        ++out.checks;
        CapVsPoincareReport rep = check_cap_vs_poincare(g, p, alpha);
        if (!rep.pass)
          flag(i, "h^p vs capacity at p=" + fmt_double(p) +
                      " alpha=" + fmt_double(alpha) + ": " + rep.to_json());
      }

    // Product lower bound ratio against the previous sample.
    {
      ++out.checks;
      RatioReport rr = product_lower_check(partner, g, 1.0);
      if (!(rr.ratio > 0))
        flag(i, "product ratio not positive: " + fmt_double(rr.ratio));
      out.min_product_ratio = std::min(out.min_product_ratio, rr.ratio);
    }

    // Projection monotonicity on a random product subgraph.
    {
      WeightedGraph prod = product(partner, g);
      int target = 6 + rng_int(rng, 5);  // 6..10
      WeightedGraph sub = grow_subgraph(prod, target, rng);
      int coord = rng_int(rng, 2);
      WeightedGraph proj = projection_pushforward(sub, coord);
      double alpha = 0.125;
      if (exists_admissible_pair(sub, alpha) &&
          exists_admissible_pair(proj, alpha)) {
        ++out.checks;
        double c_sub = capacity_bounds(sub, 1.0, alpha).upper.value;
        double c_proj = capacity_bounds(proj, 1.0, alpha).upper.value;
        if (c_sub > c_proj * (1 + 1e-7) + 1e-9)
          flag(i, "projection monotonicity: C(sub)=" + fmt_double(c_sub) +
                      " > C(proj)=" + fmt_double(c_proj));
      }
    }

    // Congestion certificate against exact h^1.
    {
      ++out.checks;
      double lo = congestion_lower_bound_auto(g);
      double h1 = exact_h1(g);
      if (lo > h1 + 1e-9)
        flag(i, "congestion " + fmt_double(lo) + " exceeds exact h1 " +
                    fmt_double(h1));
    }

    // Capacity is invariant under scaling the measure.
    {
      ++out.checks;
      double c1 = capacity_bounds(g, 1.0, 0.125).upper.value;
      double c3 = capacity_bounds(scale_mu(g, 3), 1.0, 0.125).upper.value;
      if (std::abs(c1 - c3) > 1e-7 * std::max(1.0, c1))
        flag(i, "scale invariance: " + fmt_double(c1) + " vs " +
                    fmt_double(c3));
    }

    partner = g;
  }
  if (out.min_product_ratio == 1e300) out.min_product_ratio = 0;
  return out;
}

std::string ProductBatteryResult::to_json() const {
  nlohmann::ordered_json j;
  j["cases"] = cases;
  j["admissible"] = admissible;
  j["within_factor"] = within_factor;
  j["factor"] = factor;
  j["worst_ratio"] = worst_ratio;
  if (!first_failure.empty()) j["first_failure"] = first_failure;
  return j.dump();
}

ProductBatteryResult product_battery(int cases, double alpha,
                                     std::uint64_t seed, double factor) {
  ProductBatteryResult out;
  out.factor = factor;
  WeightedGraph ambX = make_regular_tree(3, 4);
  WeightedGraph ambY = make_zd_box(2, 9);
  WeightedGraph prod = product(ambX, ambY);
  Rng rng(derive_seed(seed, 0x9B0D7CULL));

  for (int i = 0; i < cases; ++i) {
    ++out.cases;
    int k = 1 + (i % 2);
    int target = 150 + rng_int(rng, 251);  // 150..400
    WeightedGraph gamma = grow_subgraph(prod, target, rng);
    ProductUpperResult cand;
    try {
      cand = product_upper_candidate(gamma, ambX, ambY, 2, 1.0, alpha, k);
    } catch (const std::exception& e) {
      if (out.first_failure.empty())
        out.first_failure =
            "case " + std::to_string(i) + " threw: " + std::string(e.what());
      continue;
    }
    if (!cand.admissible) {
      if (out.first_failure.empty())
        out.first_failure = "case " + std::to_string(i) +
                            " inadmissible: " + cand.to_json();
      continue;
    }
    ++out.admissible;

    CapacityConfig ccfg;
    ccfg.seed = derive_seed(seed, 0xE57ULL + std::uint64_t(i));
    double level = cand.alpha_out > 0 ? cand.alpha_out : alpha / 2;
    double est = capacity_bounds(gamma, 1.0, level, ccfg).upper.value;
    double ratio = cand.bound / std::max(est, 1e-300);
    out.worst_ratio = std::max(out.worst_ratio, ratio);
    if (ratio <= factor) {
      ++out.within_factor;
    } else if (out.first_failure.empty()) {
      out.first_failure = "case " + std::to_string(i) + " ratio " +
                          fmt_double(ratio) + " bound " +
                          fmt_double(cand.bound) + " est " + fmt_double(est);
    }
  }
  return out;
}

}  // namespace plab
