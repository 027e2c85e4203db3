#include "plab/embed.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

#include <nlohmann/json.hpp>

#include "plab/families.hpp"
#include "plab/util.hpp"

namespace plab {

namespace {

using nlohmann::json;

struct DLAddr {
  TreeVertex x, y;
};

// Addresses come from the labels make_dl_ball attaches.
std::vector<DLAddr> dl_addresses(const WeightedGraph& g) {
  std::vector<DLAddr> out(g.n());
  for (int v = 0; v < g.n(); ++v) {
    json lab = json::parse(g.label(v));
    out[v].x = TreeVertex{lab.at("hx").get<long long>(),
                          lab.at("sx").get<std::string>()};
    out[v].y = TreeVertex{lab.at("hy").get<long long>(),
                          lab.at("sy").get<std::string>()};
  }
  return out;
}

long long dl_formula_dist(const DLAddr& a, const DLAddr& b) {
  long long dx = tree_dist(a.x, b.x);
  long long dy = tree_dist(a.y, b.y);
  long long dh = std::llabs(a.x.h - b.x.h);
  return dx + dy - dh;
}

HPoint tadic_point(long long xnum, long long t, long long h) {
  return {double(xnum) * std::pow(double(t), double(h)),
          std::pow(double(t), double(h))};
}

long long digits_value(const TreeVertex& v, long long t) {
  // implicit leading zeros along the reference ray contribute nothing, so
  // the digit word alone determines the horocyclic coordinate
  long long num = 0;
  for (char c : v.s) num = num * t + (c - '0');
  return num;
}

}  // namespace

double h2_distance(const HPoint& a, const HPoint& b) {
  double dx = a.x - b.x, dy = a.y - b.y;
  double arg = 1.0 + (dx * dx + dy * dy) / (2.0 * a.y * b.y);
  return std::acosh(std::max(1.0, arg));
}

double h2_busemann(const HPoint& a) {
  require(a.y > 0, "not an upper half-plane point");
  return std::log(a.y);
}

TreeEmbedding bc_tree_embedding(int m, long long t, int depth) {
  require(m >= 1 && m <= 8, "tree embedding: m in 1..8");
  require(t >= 2, "tree embedding: t >= 2");
  require(depth >= 1 && depth <= 8, "tree embedding: depth in 1..8");
  TreeEmbedding emb;
  emb.m = m;
  emb.t = t;
  emb.depth = depth;

  // all descendants of the window top (depth, "") down to height -depth
  struct Item {
    TreeVertex v;
    long long num;
  };
  std::vector<Item> items;
  std::queue<Item> q;
  q.push({TreeVertex{depth, ""}, 0});
  while (!q.empty()) {
    Item it = q.front();
    q.pop();
    items.push_back(it);
    if (it.v.h > -depth)
      for (int d = 0; d < m; ++d)
        q.push({tree_child(it.v, d), it.num * t + d});
  }
  WeightedGraph g;
  for (const Item& it : items) g.add_vertex(tree_id(it.v), 1.0);
  for (const Item& it : items)
    if (it.v.h < depth) g.add_edge(tree_id(it.v), tree_id(tree_parent(it.v)));
  g.finalize();

  emb.addr.resize(g.n());
  emb.xnum.assign(g.n(), 0);
  emb.image.resize(g.n());
  for (const Item& it : items) {
    int v = g.index_of(tree_id(it.v));
    require(v >= 0, "tree embedding: id lookup failed");
    emb.addr[v] = it.v;
    emb.xnum[v] = it.num;
    emb.image[v] = tadic_point(it.num, t, it.v.h);
  }
  emb.graph = std::move(g);
  return emb;
}

std::string BusemannReport::to_json() const {
  json j;
  j["pass"] = pass;
  j["checked"] = checked;
  if (!counterexample.empty()) j["counterexample"] = counterexample;
  return j.dump();
}

BusemannReport busemann_height_check(const TreeEmbedding& emb) {
  BusemannReport rep;
  double logt = std::log(double(emb.t));
  for (int v = 0; v < emb.graph.n(); ++v) {
    ++rep.checked;
    double b = h2_busemann(emb.image[v]) / logt;
    long long r = std::llround(b);
    if (r != emb.addr[v].h || std::fabs(b - double(r)) > 1e-9) {
      rep.counterexample = emb.graph.id(v);
      rep.pass = false;
      return rep;
    }
  }
  rep.pass = true;
  return rep;
}

std::string DistortionReport::to_json() const {
  json j;
  j["min_ratio"] = min_ratio;
  j["max_ratio"] = max_ratio;
  j["L"] = L;
  j["pairs"] = pairs;
  j["exhaustive"] = exhaustive;
  return j.dump();
}

DistortionReport tree_embedding_distortion(const TreeEmbedding& emb,
                                           long long max_pairs,
                                           std::uint64_t seed) {
  DistortionReport rep;
  long long n = emb.graph.n();
  require(n >= 2, "distortion: need at least two vertices");
  require(max_pairs >= 1, "distortion: pair budget must be positive");
  rep.min_ratio = 1e300;
  auto feed = [&](int u, int v) {
    double dt = double(tree_dist(emb.addr[u], emb.addr[v]));
    if (dt <= 0) return;
    double dh = h2_distance(emb.image[u], emb.image[v]);
    double r = dh / dt;
    rep.min_ratio = std::min(rep.min_ratio, r);
    rep.max_ratio = std::max(rep.max_ratio, r);
    ++rep.pairs;
  };
  if (n * (n - 1) / 2 <= max_pairs) {
    rep.exhaustive = true;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) feed(u, v);
  } else {
    rep.exhaustive = false;
    Rng rng(derive_seed(seed, 0xE3BEDULL));
    for (long long i = 0; i < max_pairs; ++i) {
      int u = rng_int(rng, int(n));
      int v = rng_int(rng, int(n) - 1);
      if (v >= u) ++v;
      feed(u, v);
    }
  }
  require(rep.pairs > 0, "distortion: no usable pairs");
  rep.L = rep.max_ratio / rep.min_ratio;
  return rep;
}

std::string DLInclusionReport::to_json() const {
  json j;
  j["pass"] = pass;
  j["core_radius"] = core_radius;
  j["ball_radius"] = ball_radius;
  j["pairs"] = pairs;
  j["min_ratio"] = min_ratio;
  j["max_ratio"] = max_ratio;
  j["formula_mismatches"] = formula_mismatches;
  return j.dump();
}

DLInclusionReport dl_inclusion_check(int q, int core_radius) {
  require(q >= 2 && q <= 4, "dl inclusion: q in 2..4");
  require(core_radius >= 2 && core_radius <= 4,
          "dl inclusion: core radius in 2..4");
  DLInclusionReport rep;
  rep.core_radius = core_radius;
  rep.ball_radius = 3 * core_radius;
  // any geodesic between two core vertices stays within 3*core of the base
  WeightedGraph ball = make_dl_ball(q, q, rep.ball_radius);
  auto addr = dl_addresses(ball);
  int base = ball.index_of(dl_id(DLVertex{{0, ""}, {0, ""}}));
  require(base >= 0, "dl inclusion: base vertex missing");
  auto dbase = ball.bfs_dist(base);
  std::vector<int> core;
  for (int v = 0; v < ball.n(); ++v)
    if (dbase[v] >= 0 && dbase[v] <= core_radius) core.push_back(v);

  rep.min_ratio = 1e300;
  bool ok = true;
  for (int u : core) {
    auto dist = ball.bfs_dist(u);
    for (int v : core) {
      if (v <= u) continue;
      long long ddl = dist[v];
      long long dx = tree_dist(addr[u].x, addr[v].x);
      long long dy = tree_dist(addr[u].y, addr[v].y);
      if (ddl != dl_formula_dist(addr[u], addr[v])) ++rep.formula_mismatches;
      double r = double(dx + dy) / double(ddl);
      rep.min_ratio = std::min(rep.min_ratio, r);
      rep.max_ratio = std::max(rep.max_ratio, r);
      ++rep.pairs;
      if (r < 1.0 - 1e-12 || r > 2.0 + 1e-12) ok = false;
    }
  }
  rep.pass = ok && rep.formula_mismatches == 0 && rep.pairs > 0 &&
             rep.min_ratio == 1.0 && rep.max_ratio == 2.0;
  return rep;
}

std::string HorocyclicReport::to_json() const {
  json j;
  j["heights_exact"] = heights_exact;
  j["checked"] = checked;
  j["pairs"] = pairs;
  j["min_ratio"] = min_ratio;
  j["max_ratio"] = max_ratio;
  j["L"] = L;
  return j.dump();
}

HorocyclicReport horocyclic_embed_dl(int q, int core_radius,
                                     long long max_pairs, std::uint64_t seed) {
  require(q >= 2 && q <= 4, "horocyclic: q in 2..4");
  require(core_radius >= 2 && core_radius <= 6, "horocyclic: core in 2..6");
  require(max_pairs >= 1, "horocyclic: pair budget must be positive");
  HorocyclicReport rep;
  WeightedGraph core = make_dl_ball(q, q, core_radius);
  auto addr = dl_addresses(core);
  int n = core.n();

  // images: both coordinates by the t-adic map with t = q
  std::vector<HPoint> im1(n), im2(n);
  rep.heights_exact = true;
  double logq = std::log(double(q));
  for (int v = 0; v < n; ++v) {
    im1[v] = tadic_point(digits_value(addr[v].x, q), q, addr[v].x.h);
    im2[v] = tadic_point(digits_value(addr[v].y, q), q, addr[v].y.h);
    ++rep.checked;
    if (addr[v].x.h + addr[v].y.h != 0) rep.heights_exact = false;
    long long b1 = std::llround(h2_busemann(im1[v]) / logq);
    long long b2 = std::llround(h2_busemann(im2[v]) / logq);
    if (b1 != addr[v].x.h || b2 != addr[v].y.h) rep.heights_exact = false;
  }

  rep.min_ratio = 1e300;
  auto feed = [&](int u, int v) {
    long long ddl = dl_formula_dist(addr[u], addr[v]);
    if (ddl <= 0) return;
    double dt = h2_distance(im1[u], im1[v]) + h2_distance(im2[u], im2[v]);
    double r = dt / double(ddl);
    rep.min_ratio = std::min(rep.min_ratio, r);
    rep.max_ratio = std::max(rep.max_ratio, r);
    ++rep.pairs;
  };
  if ((long long)n * (n - 1) / 2 <= max_pairs) {
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) feed(u, v);
  } else {
    Rng rng(derive_seed(seed, 0x40F0ULL));
    for (long long i = 0; i < max_pairs; ++i) {
      int u = rng_int(rng, n);
      int v = rng_int(rng, n - 1);
      if (v >= u) ++v;
      feed(u, v);
    }
  }
  require(rep.pairs > 0, "horocyclic: no usable pairs");
  rep.L = rep.max_ratio / rep.min_ratio;
  return rep;
}

}  // namespace plab
