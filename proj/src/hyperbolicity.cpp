#include <algorithm>
#include <cmath>
#include <numeric>

#include "plab/cone.hpp"
#include "plab/util.hpp"

namespace plab {

namespace {

// doubled Gromov product (stays integral) from a distance table
inline long long gp2(const std::vector<std::vector<int>>& D, int p, int a,
                     int b) {
  return (long long)D[p][a] + D[p][b] - D[a][b];
}

}  // namespace

double gromov_product(const WeightedGraph& g, int p, int x, int y) {
  auto dp = g.bfs_dist(p);
  auto dx = g.bfs_dist(x);
  require(dp[x] >= 0 && dp[y] >= 0 && dx[y] >= 0,
          "gromov_product: vertices not in one component");
  return 0.5 * double((long long)dp[x] + dp[y] - dx[y]);
}

double estimate_delta(const WeightedGraph& g, long long sample_quadruples,
                      std::uint64_t seed) {
  require(g.finalized(), "estimate_delta: graph not finalized");
  require(g.is_connected(), "estimate_delta: graph is disconnected");
  require(sample_quadruples >= 16, "estimate_delta: budget too small");
  int n = g.n();
  // exhaustive over a support set: all vertices when n^4 fits the budget,
  // otherwise a seeded subset. Monotone: larger budgets only add quadruples.
  std::vector<int> support;
  long long n4 = (long long)n * n * n * n;
  if ((double)n * n * n * n <= (double)sample_quadruples && n4 > 0) {
    support.resize(n);
    std::iota(support.begin(), support.end(), 0);
  } else {
    int s = 2;
    while ((long long)(s + 1) * (s + 1) * (s + 1) * (s + 1) <=
               sample_quadruples &&
           s + 1 <= n)
      ++s;
    std::vector<int> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    Rng rng(derive_seed(seed, 0xDE17AULL));
    for (int i = 0; i < s; ++i) {
      int j = i + rng_int(rng, n - i);
      std::swap(ids[i], ids[j]);
    }
    support.assign(ids.begin(), ids.begin() + s);
    std::sort(support.begin(), support.end());
  }
  int s = (int)support.size();
  std::vector<std::vector<int>> D(s, std::vector<int>(s, 0));
  for (int i = 0; i < s; ++i) {
    auto d = g.bfs_dist(support[i]);
    for (int j = 0; j < s; ++j) D[i][j] = d[support[j]];
  }
  long long best2 = 0;
  for (int p = 0; p < s; ++p)
    for (int x = 0; x < s; ++x)
      for (int y = 0; y < s; ++y) {
        long long gxy = gp2(D, p, x, y);
        for (int z = 0; z < s; ++z) {
          long long m = std::min(gxy, gp2(D, p, y, z)) - gp2(D, p, x, z);
          best2 = std::max(best2, m);
        }
      }
  return 0.5 * double(best2);
}

BoundaryReport boundary_metric_check(const ConeGraph& cone, int pairs,
                                     std::uint64_t seed) {
  const WeightedGraph& g = cone.graph;
  require(g.finalized() && g.n() >= 2, "boundary check: graph too small");
  require(pairs >= 1, "boundary check: need a positive pair budget");
  int T = *std::max_element(cone.level.begin(), cone.level.end());
  std::vector<int> top;
  for (int v = 0; v < g.n(); ++v)
    if (cone.level[v] == T) top.push_back(v);
  require(top.size() >= 2, "boundary check: top level too small");
  int o = cone.basepoint;
  auto do_dist = g.bfs_dist(o);

  BoundaryReport rep;
  rep.min_ratio = 1e300;
  rep.max_ratio = 0;
  auto account = [&](int x, int y, const std::vector<int>& dx) {
    double r = cone.space.rho(cone.center[x], cone.center[y]);
    if (r == 0) return;  // same center at the top level cannot be compared
    require(dx[y] >= 0 && do_dist[x] >= 0 && do_dist[y] >= 0,
            "boundary check: cone is disconnected");
    double prod = 0.5 * double((long long)do_dist[x] + do_dist[y] - dx[y]);
    double ratio = r * std::exp(prod);
    rep.min_ratio = std::min(rep.min_ratio, ratio);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    rep.pairs_used += 1;
  };

  long long all = (long long)top.size() * (long long)(top.size() - 1) / 2;
  if (all <= pairs) {
    for (size_t i = 0; i < top.size(); ++i) {
      auto dx = g.bfs_dist(top[i]);
      for (size_t j = i + 1; j < top.size(); ++j) account(top[i], top[j], dx);
    }
  } else {
    Rng rng(derive_seed(seed, 0xB0D7ULL));
    int sources = std::min<int>((int)top.size(), std::max(2, pairs / 64));
    int per = std::max(1, pairs / sources);
    for (int i = 0; i < sources; ++i) {
      int x = top[rng_int(rng, (int)top.size())];
      auto dx = g.bfs_dist(x);
      for (int k = 0; k < per; ++k) {
        int y = top[rng_int(rng, (int)top.size())];
        if (y != x) account(x, y, dx);
      }
    }
  }
  require(rep.pairs_used > 0, "boundary check: no usable pairs");
  rep.spread = rep.max_ratio / rep.min_ratio;
  return rep;
}

}  // namespace plab
