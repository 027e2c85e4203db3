#include "plab/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace plab {

int WeightedGraph::add_vertex(std::string id, double mu,
                              std::optional<ExactRat> exact,
                              std::string label) {
  require(!finalized_, "add_vertex after finalize");
  require(!(mu < 0), "vertex measure must be >= 0: " + id);
  ids_.push_back(std::move(id));
  mu_.push_back(mu);
  mu_exact_.push_back(exact);
  labels_.push_back(std::move(label));
  return int(ids_.size()) - 1;
}

void WeightedGraph::add_edge(const std::string& a, const std::string& b) {
  require(!finalized_, "add_edge after finalize");
  pending_edges_.emplace_back(a, b);
}

void WeightedGraph::add_edge_idx(int a, int b) {
  add_edge(ids_.at(a), ids_.at(b));
}

void WeightedGraph::finalize() {
  require(!finalized_, "finalize called twice");
  int n = int(ids_.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return ids_[a] < ids_[b]; });
  for (int i = 0; i + 1 < n; ++i)
    require(ids_[order[i]] != ids_[order[i + 1]],
            "duplicate vertex id: " + ids_[order[i]]);

  std::vector<std::string> ids(n), labels(n);
  std::vector<double> mu(n);
  std::vector<std::optional<ExactRat>> mex(n);
  std::map<std::string, int> pos;
  for (int i = 0; i < n; ++i) {
    ids[i] = ids_[order[i]];
    labels[i] = labels_[order[i]];
    mu[i] = mu_[order[i]];
    mex[i] = mu_exact_[order[i]];
    pos[ids[i]] = i;
  }
  ids_ = std::move(ids);
  labels_ = std::move(labels);
  mu_ = std::move(mu);
  mu_exact_ = std::move(mex);

  adj_.assign(n, {});
  std::set<std::pair<int, int>> seen;
  for (auto& [sa, sb] : pending_edges_) {
    auto ia = pos.find(sa), ib = pos.find(sb);
    require(ia != pos.end(), "edge endpoint not a vertex: " + sa);
    require(ib != pos.end(), "edge endpoint not a vertex: " + sb);
    int a = ia->second, b = ib->second;
    require(a != b, "loop edge at " + sa);
    if (a > b) std::swap(a, b);
    require(seen.insert({a, b}).second, "duplicate edge " + sa + "-" + sb);
  }
  for (auto& [a, b] : seen) {
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  }
  for (auto& l : adj_) std::sort(l.begin(), l.end());
  edge_count_ = (long long)seen.size();
  pending_edges_.clear();
  total_mu_ = 0;
  for (double w : mu_) total_mu_ += w;
  finalized_ = true;
}

int WeightedGraph::max_degree() const {
  int d = 0;
  for (auto& l : adj_) d = std::max(d, int(l.size()));
  return d;
}

int WeightedGraph::index_of(const std::string& id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return -1;
  return int(it - ids_.begin());
}

bool WeightedGraph::has_edge(int a, int b) const {
  const auto& l = adj_[a];
  return std::binary_search(l.begin(), l.end(), b);
}

std::vector<std::pair<int, int>> WeightedGraph::edges() const {
  std::vector<std::pair<int, int>> e;
  e.reserve(size_t(edge_count_));
  for (int v = 0; v < n(); ++v)
    for (int w : adj_[v])
      if (v < w) e.emplace_back(v, w);
  return e;
}

std::vector<int> WeightedGraph::bfs_dist(int src) const {
  return bfs_dist_multi({src});
}

std::vector<int> WeightedGraph::bfs_dist_multi(
    const std::vector<int>& srcs) const {
  std::vector<int> dist(n(), -1);
  std::queue<int> q;
  for (int s : srcs)
    if (dist[s] == -1) {
      dist[s] = 0;
      q.push(s);
    }
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : adj_[v])
      if (dist[w] == -1) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
  }
  return dist;
}

bool WeightedGraph::is_connected() const {
  if (n() == 0) return true;
  auto d = bfs_dist(0);
  for (int v = 0; v < n(); ++v)
    if (d[v] < 0) return false;
  return true;
}

WeightedGraph WeightedGraph::with_uniform_mu(double w) const {
  WeightedGraph g;
  for (int v = 0; v < n(); ++v) g.add_vertex(ids_[v], w, std::nullopt, labels_[v]);
  for (auto [a, b] : edges()) g.add_edge(ids_[a], ids_[b]);
  g.finalize();
  return g;
}

WeightedGraph product(const WeightedGraph& G, const WeightedGraph& H) {
  require(G.finalized() && H.finalized(), "product of unfinalized graphs");
  WeightedGraph P;
  for (int g = 0; g < G.n(); ++g)
    for (int h = 0; h < H.n(); ++h)
      P.add_vertex(G.id(g) + "|" + H.id(h), G.mu(g) * H.mu(h));
  auto pid = [&](int g, int h) { return G.id(g) + "|" + H.id(h); };
  for (auto [a, b] : G.edges())
    for (int h = 0; h < H.n(); ++h) P.add_edge(pid(a, h), pid(b, h));
  for (auto [a, b] : H.edges())
    for (int g = 0; g < G.n(); ++g) P.add_edge(pid(g, a), pid(g, b));
  P.finalize();
  return P;
}

WeightedGraph induced_subgraph(const WeightedGraph& G,
                               const std::vector<int>& verts) {
  std::set<int> keep(verts.begin(), verts.end());
  require(keep.size() == verts.size(), "induced_subgraph: repeated vertex");
  WeightedGraph S;
  for (int v : keep) S.add_vertex(G.id(v), G.mu(v), G.mu_exact(v), G.label(v));
  for (int v : keep)
    for (int w : G.nbrs(v))
      if (v < w && keep.count(w)) S.add_edge(G.id(v), G.id(w));
  S.finalize();
  return S;
}

}  // namespace plab
