#include "plab/pathfamily.hpp"

#include <algorithm>
#include <queue>

#include "plab/util.hpp"

namespace plab {

namespace {

// adjacency annotated with edge ids into g.edges()
std::vector<std::vector<std::pair<int, int>>> adjacency_with_ids(
    const WeightedGraph& g) {
  std::vector<std::vector<std::pair<int, int>>> adj(g.n());
  const auto& es = g.edges();
  for (int e = 0; e < (int)es.size(); ++e) {
    adj[es[e].first].push_back({es[e].second, e});
    adj[es[e].second].push_back({es[e].first, e});
  }
  return adj;
}

int edge_id(const WeightedGraph& g, int a, int b) {
  if (a > b) std::swap(a, b);
  const auto& es = g.edges();
  auto it = std::lower_bound(es.begin(), es.end(), std::make_pair(a, b));
  require(it != es.end() && it->first == a && it->second == b,
          "path uses a non-edge");
  return int(it - es.begin());
}

void bfs_with_pred(const WeightedGraph& g, int src, std::vector<int>& dist,
                   std::vector<int>& pred, std::vector<int>& order) {
  int n = g.n();
  dist.assign(n, -1);
  pred.assign(n, -1);
  order.clear();
  order.reserve(n);
  std::queue<int> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    order.push_back(x);
    for (int y : g.nbrs(x))
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        q.push(y);
      }
  }
  // smallest-index predecessor, independent of queue insertion order
  for (int w : order) {
    if (w == src) continue;
    for (int y : g.nbrs(w))
      if (dist[y] == dist[w] - 1) {
        pred[w] = y;
        break;  // nbrs are sorted by index
      }
  }
}

}  // namespace

PathFamily all_pairs_geodesic_family(const WeightedGraph& g) {
  require(g.finalized(), "path family: graph not finalized");
  require(g.n() <= 400, "path family: too large to materialize");
  PathFamily fam;
  std::vector<int> dist, pred, order;
  for (int v = 0; v < g.n(); ++v) {
    bfs_with_pred(g, v, dist, pred, order);
    for (int w = v + 1; w < g.n(); ++w) {
      if (dist[w] < 0) continue;
      std::vector<int> path;
      for (int u = w; u != -1; u = u == v ? -1 : pred[u]) path.push_back(u);
      std::reverse(path.begin(), path.end());
      fam.pairs.push_back({v, w, {std::move(path)}});
    }
  }
  recount_kappa(g, fam);
  return fam;
}

void recount_kappa(const WeightedGraph& g, PathFamily& fam) {
  fam.kappa.assign(g.m(), 0.0);
  for (const auto& pp : fam.pairs) {
    require(pp.v < pp.w, "path family: pair not ordered");
    require(!pp.paths.empty(), "path family: pair with no paths");
    double wgt = 1.0 / double(pp.paths.size());
    for (const auto& path : pp.paths) {
      require(!path.empty() && path.front() == pp.v && path.back() == pp.w,
              "path endpoints do not match the pair");
      for (size_t i = 0; i + 1 < path.size(); ++i)
        fam.kappa[edge_id(g, path[i], path[i + 1])] += wgt;
    }
  }
}

double congestion_lower_bound(const WeightedGraph& g, const PathFamily& fam) {
  long long want = (long long)g.n() * (g.n() - 1) / 2;
  require((long long)fam.pairs.size() == want,
          "congestion bound needs every vertex pair connected");
  PathFamily copy = fam;
  recount_kappa(g, copy);
  double kmax = 0;
  for (double k : copy.kappa) kmax = std::max(kmax, k);
  require(kmax > 0, "congestion bound: empty graph");
  return double(g.n()) / (kmax * double(g.max_degree()));
}

double geodesic_kappa_max(const WeightedGraph& g) {
  require(g.finalized() && g.is_connected() && g.n() >= 2,
          "geodesic congestion needs a connected graph");
  auto adj = adjacency_with_ids(g);
  int n = g.n();
  std::vector<long long> load(g.m(), 0);
  std::vector<int> dist, pred, order;
  std::vector<long long> acc(n);
  std::vector<int> pred_eid(n);
  for (int v = 0; v < n; ++v) {
    bfs_with_pred(g, v, dist, pred, order);
    std::fill(acc.begin(), acc.end(), 0);
    for (int u : order) {
      if (u == v) continue;
      pred_eid[u] = -1;
      for (auto [y, e] : adj[u])
        if (y == pred[u]) {
          pred_eid[u] = e;
          break;
        }
    }
    for (int i = n - 1; i > 0; --i) {
      int u = order[i];
      // load on (u, pred(u)) from source v = targets w > v whose geodesic
      // passes u = subtree count in the predecessor tree
      if (u > v) acc[u] += 1;
      load[pred_eid[u]] += acc[u];
      acc[pred[u]] += acc[u];
    }
  }
  long long kmax = 0;
  for (long long l : load) kmax = std::max(kmax, l);
  return double(kmax);
}

double congestion_lower_bound_auto(const WeightedGraph& g) {
  double kmax = geodesic_kappa_max(g);
  return double(g.n()) / (kmax * double(g.max_degree()));
}

}  // namespace plab
