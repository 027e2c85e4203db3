#include "plab/families.hpp"

#include <array>
#include <cstdio>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "plab/cone.hpp"

namespace plab {

namespace {

std::string pad_int(long long v, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%0*lld", v < 0 ? 'm' : 'p', width,
                v < 0 ? -v : v);
  return buf;
}

}  // namespace

WeightedGraph make_regular_tree(int degree, int depth) {
  require(degree >= 3, "make_regular_tree: degree must be >= 3");
  require(depth >= 0, "make_regular_tree: depth must be >= 0");
  WeightedGraph g;
  // Vertex ids are the root-to-vertex digit paths ("r", "r0", "r01", ...),
  // so id order groups subtrees together.
  struct Item {
    std::string id;
    int depth;
  };
  g.add_vertex("r", 1.0, std::nullopt, "{\"depth\":0}");
  std::queue<Item> q;
  q.push({"r", 0});
  while (!q.empty()) {
    auto [id, dep] = q.front();
    q.pop();
    if (dep == depth) continue;
    int nchild = (dep == 0) ? degree : degree - 1;
    for (int c = 0; c < nchild; ++c) {
      std::string cid = id + char('0' + c);
      g.add_vertex(cid, 1.0, std::nullopt,
                   "{\"depth\":" + std::to_string(dep + 1) + "}");
      g.add_edge(id, cid);
      q.push({cid, dep + 1});
    }
  }
  g.finalize();
  return g;
}

WeightedGraph make_path(int n) {
  require(n >= 1, "make_path: n >= 1");
  WeightedGraph g;
  for (int i = 0; i < n; ++i) g.add_vertex("v" + pad_int(i, 4));
  for (int i = 0; i + 1 < n; ++i)
    g.add_edge("v" + pad_int(i, 4), "v" + pad_int(i + 1, 4));
  g.finalize();
  return g;
}

WeightedGraph make_cycle(int n) {
  require(n >= 3, "make_cycle: n >= 3");
  WeightedGraph g;
  for (int i = 0; i < n; ++i) g.add_vertex("v" + pad_int(i, 4));
  for (int i = 0; i < n; ++i)
    g.add_edge("v" + pad_int(i, 4), "v" + pad_int((i + 1) % n, 4));
  g.finalize();
  return g;
}

WeightedGraph make_zd_box(int d, int side) {
  require(d >= 1 && d <= 4, "make_zd_box: 1 <= d <= 4");
  require(side >= 1, "make_zd_box: side >= 1");
  double total = 1;
  for (int i = 0; i < d; ++i) {
    total *= side;
    require(total <= 4e6, "make_zd_box: too many vertices");
  }
  WeightedGraph g;
  std::vector<int> c(d, 0);
  auto id_of = [&](const std::vector<int>& v) {
    std::string s;
    for (int i = 0; i < d; ++i) {
      if (i) s += '_';
      s += pad_int(v[i], 3);
    }
    return s;
  };
  long long n = 1;
  for (int i = 0; i < d; ++i) n *= side;
  for (long long idx = 0; idx < n; ++idx) {
    long long t = idx;
    for (int i = d - 1; i >= 0; --i) {
      c[i] = int(t % side);
      t /= side;
    }
    std::ostringstream lab;
    lab << "{\"coord\":[";
    for (int i = 0; i < d; ++i) lab << (i ? "," : "") << c[i];
    lab << "]}";
    g.add_vertex(id_of(c), 1.0, std::nullopt, lab.str());
    for (int i = 0; i < d; ++i)
      if (c[i] > 0) {
        auto c2 = c;
        c2[i]--;
        g.add_edge(id_of(c), id_of(c2));
      }
  }
  g.finalize();
  return g;
}

namespace {

struct H3 {
  long long a, b, c;
  bool operator<(const H3& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return c < o.c;
  }
};

std::string h3_id(const H3& v) {
  return pad_int(v.a, 3) + "_" + pad_int(v.b, 3) + "_" + pad_int(v.c, 5);
}

}  // namespace

WeightedGraph make_heisenberg_ball(int radius) {
  require(radius >= 0 && radius <= 24, "make_heisenberg_ball: radius 0..24");
  // Right multiplication by x^{±1}, y^{±1} in (a,b,c) coordinates.
  auto nbrs = [](const H3& v) {
    return std::array<H3, 4>{H3{v.a + 1, v.b, v.c}, H3{v.a - 1, v.b, v.c},
                             H3{v.a, v.b + 1, v.c + v.a},
                             H3{v.a, v.b - 1, v.c - v.a}};
  };
  std::map<H3, int> dist;
  std::queue<H3> q;
  dist[{0, 0, 0}] = 0;
  q.push({0, 0, 0});
  while (!q.empty()) {
    H3 v = q.front();
    q.pop();
    int dv = dist[v];
    if (dv == radius) continue;
    for (const H3& w : nbrs(v))
      if (!dist.count(w)) {
        dist[w] = dv + 1;
        q.push(w);
      }
  }
  WeightedGraph g;
  for (auto& [v, dv] : dist) {
    std::ostringstream lab;
    lab << "{\"a\":" << v.a << ",\"b\":" << v.b << ",\"c\":" << v.c
        << ",\"r\":" << dv << "}";
    g.add_vertex(h3_id(v), 1.0, std::nullopt, lab.str());
  }
  for (auto& [v, dv] : dist)
    for (const H3& w : nbrs(v))
      if (dist.count(w) && v < w) g.add_edge(h3_id(v), h3_id(w));
  g.finalize();
  return g;
}

namespace {

struct SolV {
  long long u, v, t;
  bool operator<(const SolV& o) const {
    if (u != o.u) return u < o.u;
    if (v != o.v) return v < o.v;
    return t < o.t;
  }
};

std::string sol_id(const SolV& x) {
  return pad_int(x.u, 7) + "_" + pad_int(x.v, 7) + "_" + pad_int(x.t, 3);
}

// Columns of A^t for A=[[2,1],[1,1]]; exact in int64 for |t| <= 40.
void sol_pow(long long t, long long M[2][2]) {
  long long R[2][2] = {{1, 0}, {0, 1}};
  long long A[2][2];
  if (t >= 0) {
    A[0][0] = 2, A[0][1] = 1, A[1][0] = 1, A[1][1] = 1;
  } else {
    A[0][0] = 1, A[0][1] = -1, A[1][0] = -1, A[1][1] = 2;
    t = -t;
  }
  while (t--) {
    long long N[2][2];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        N[i][j] = R[i][0] * A[0][j] + R[i][1] * A[1][j];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) R[i][j] = N[i][j];
  }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) M[i][j] = R[i][j];
}

}  // namespace

WeightedGraph make_sol_lattice_ball(int radius) {
  require(radius >= 0 && radius <= 14, "make_sol_lattice_ball: radius 0..14");
  auto nbrs = [](const SolV& x) {
    long long M[2][2];
    sol_pow(x.t, M);
    // (v,t)·e1^{±1} = (v ± A^t e1, t), etc.; t^{±1} shifts the last entry.
    return std::array<SolV, 6>{
        SolV{x.u + M[0][0], x.v + M[1][0], x.t},
        SolV{x.u - M[0][0], x.v - M[1][0], x.t},
        SolV{x.u + M[0][1], x.v + M[1][1], x.t},
        SolV{x.u - M[0][1], x.v - M[1][1], x.t},
        SolV{x.u, x.v, x.t + 1},
        SolV{x.u, x.v, x.t - 1}};
  };
  std::map<SolV, int> dist;
  std::queue<SolV> q;
  dist[{0, 0, 0}] = 0;
  q.push({0, 0, 0});
  while (!q.empty()) {
    SolV v = q.front();
    q.pop();
    int dv = dist[v];
    if (dv == radius) continue;
    for (const SolV& w : nbrs(v))
      if (!dist.count(w)) {
        dist[w] = dv + 1;
        q.push(w);
      }
  }
  WeightedGraph g;
  for (auto& [v, dv] : dist) {
    std::ostringstream lab;
    lab << "{\"u\":" << v.u << ",\"v\":" << v.v << ",\"t\":" << v.t
        << ",\"r\":" << dv << "}";
    g.add_vertex(sol_id(v), 1.0, std::nullopt, lab.str());
  }
  for (auto& [v, dv] : dist)
    for (const SolV& w : nbrs(v))
      if (dist.count(w) && v < w) g.add_edge(sol_id(v), sol_id(w));
  g.finalize();
  return g;
}

std::string dl_id(const DLVertex& v) {
  return tree_id(v.x) + "|" + tree_id(v.y);
}

namespace {

std::string dl_label(const DLVertex& v) {
  std::ostringstream lab;
  lab << "{\"hx\":" << v.x.h << ",\"sx\":\"" << v.x.s << "\",\"hy\":" << v.y.h
      << ",\"sy\":\"" << v.y.s << "\"}";
  return lab.str();
}

// DL neighbors: one coordinate toward xi (parent), the other away (child).
std::vector<DLVertex> dl_nbrs(const DLVertex& v, int q1, int q2) {
  std::vector<DLVertex> out;
  for (int d = 0; d < q2; ++d)
    out.push_back({tree_parent(v.x), tree_child(v.y, d)});
  for (int d = 0; d < q1; ++d)
    out.push_back({tree_child(v.x, d), tree_parent(v.y)});
  return out;
}

}  // namespace

WeightedGraph make_dl_ball(int q1, int q2, int radius) {
  require(q1 >= 2 && q2 >= 2, "make_dl_ball: q1,q2 >= 2");
  require(radius >= 0 && radius <= 14, "make_dl_ball: radius 0..14");
  std::map<DLVertex, int> dist;
  DLVertex base{{0, ""}, {0, ""}};
  std::queue<DLVertex> q;
  dist[base] = 0;
  q.push(base);
  while (!q.empty()) {
    DLVertex v = q.front();
    q.pop();
    int dv = dist[v];
    if (dv == radius) continue;
    for (const DLVertex& w : dl_nbrs(v, q1, q2))
      if (!dist.count(w)) {
        dist[w] = dv + 1;
        q.push(w);
      }
  }
  WeightedGraph g;
  for (auto& [v, dv] : dist)
    g.add_vertex(dl_id(v), 1.0, std::nullopt, dl_label(v));
  for (auto& [v, dv] : dist)
    for (const DLVertex& w : dl_nbrs(v, q1, q2))
      if (dist.count(w) && v < w) g.add_edge(dl_id(v), dl_id(w));
  g.finalize();
  return g;
}

std::vector<std::vector<DLVertex>> gamma_k_levels(int k) {
  require(k >= 1 && k <= 12, "gamma_k: k in 1..12");
  std::vector<std::vector<DLVertex>> levels(k + 1);
  for (int t = 0; t <= k; ++t) {
    // x: descendants of o1=(k,"") at height t, one per digit path of length
    // k-t; y: descendants of o2=(0,"") at height -t.
    std::vector<TreeVertex> xs, ys;
    int nx = k - t, ny = t;
    for (long long mask = 0; mask < (1LL << nx); ++mask) {
      TreeVertex v{k, ""};
      for (int i = nx - 1; i >= 0; --i) v = tree_child(v, int((mask >> i) & 1));
      xs.push_back(v);
    }
    for (long long mask = 0; mask < (1LL << ny); ++mask) {
      TreeVertex v{0, ""};
      for (int i = ny - 1; i >= 0; --i) v = tree_child(v, int((mask >> i) & 1));
      ys.push_back(v);
    }
    for (auto& x : xs)
      for (auto& y : ys) levels[t].push_back({x, y});
    std::sort(levels[t].begin(), levels[t].end());
  }
  return levels;
}

WeightedGraph make_dl_gamma_k(int k) {
  auto levels = gamma_k_levels(k);
  WeightedGraph g;
  std::set<DLVertex> vset;
  for (int t = 0; t <= k; ++t)
    for (auto& v : levels[t]) {
      std::string lab = dl_label(v);
      lab.back() = ',';
      lab += "\"t\":" + std::to_string(t) + "}";
      g.add_vertex(dl_id(v), 1.0, std::nullopt, lab);
      vset.insert(v);
    }
  for (int t = 0; t <= k; ++t)
    for (auto& v : levels[t])
      for (const DLVertex& w : dl_nbrs(v, 2, 2))
        if (vset.count(w) && v < w) g.add_edge(dl_id(v), dl_id(w));
  g.finalize();
  return g;
}

std::string FamilySpec::serialize() const {
  std::ostringstream os;
  os << "{\"family\":\"" << family << "\"";
  if (!space.empty()) os << ",\"space\":\"" << space << "\"";
  for (auto& [key, val] : num) os << ",\"" << key << "\":" << fmt_double(val);
  os << "}";
  return os.str();
}

FamilySpec FamilySpec::parse_kv(const std::string& family,
                                const std::map<std::string, std::string>& kv) {
  FamilySpec s;
  s.family = family;
  for (auto& [k, v] : kv) {
    if (k == "space")
      s.space = v;
    else
      s.num[k] = std::stod(v);
  }
  return s;
}

WeightedGraph make_family(const FamilySpec& spec) {
  const std::string& f = spec.family;
  if (f == "tree")
    return make_regular_tree(spec.geti("degree", 3), spec.geti("depth", 4));
  if (f == "path") return make_path(spec.geti("n", 8));
  if (f == "cycle") return make_cycle(spec.geti("n", 8));
  if (f == "zd_box")
    return make_zd_box(spec.geti("d", 2), spec.geti("side", 8));
  if (f == "heisenberg_ball")
    return make_heisenberg_ball(spec.geti("radius", 6));
  if (f == "sol_lattice_ball")
    return make_sol_lattice_ball(spec.geti("radius", 5));
  if (f == "dl")
    return make_dl_ball(spec.geti("q1", 2), spec.geti("q2", 2),
                        spec.geti("radius", 4));
  if (f == "dl_gamma_k") return make_dl_gamma_k(spec.geti("k", 3));
  if (f == "tree_x_path")
    return product(make_regular_tree(spec.geti("degree", 3),
                                     spec.geti("depth", 3)),
                   make_path(spec.geti("path_n", 4)));
  if (f == "cone") {
    ModelSpace space = make_model_space(
        spec.space.empty() ? "interval" : spec.space, spec.geti("cloud_n", 0));
    return make_cone(space, spec.geti("levels", 3),
                     spec.geti("sample_budget", 0))
        .graph;
  }
  fail("unknown family: " + f);
}

}  // namespace plab
