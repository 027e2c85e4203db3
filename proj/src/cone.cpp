#include "plab/cone.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "plab/util.hpp"

namespace plab {

namespace {

constexpr double kSquareSide = 0.35355339059327373;  // 1/(2 sqrt 2)

// spatial hash over cells of a given size, with optional wrap for the circle
struct GridIndex {
  double cell;
  bool twod, wrap;
  int ncell;  // wrap only
  std::unordered_map<long long, std::vector<int>> cells;

  GridIndex(double c, bool two, bool wr)
      : cell(c), twod(two), wrap(wr),
        ncell(std::max(1, (int)std::floor(1.0 / c))) {}

  long long key1(double x) const {
    if (!wrap) return (long long)std::floor(x / cell);
    long long k = (long long)std::floor(x / cell);
    return ((k % ncell) + ncell) % ncell;
  }
  long long key(const std::vector<double>& p) const {
    if (!twod) return key1(p[0]);
    long long kx = (long long)std::floor(p[0] / cell);
    long long ky = (long long)std::floor(p[1] / cell);
    return kx * (1LL << 21) + ky;
  }
  void insert(const std::vector<double>& p, int idx) {
    cells[key(p)].push_back(idx);
  }
  template <class F>
  void for_near(const std::vector<double>& p, F&& f) const {
    if (!twod) {
      long long k = wrap ? key1(p[0]) : (long long)std::floor(p[0] / cell);
      long long ks[3];
      int nk = 0;
      for (int d = -1; d <= 1; ++d) {
        long long kk = k + d;
        if (wrap) kk = ((kk % ncell) + ncell) % ncell;
        bool dup = false;
        for (int i = 0; i < nk; ++i) dup = dup || ks[i] == kk;
        if (!dup) ks[nk++] = kk;  // tiny wrap counts: cells coincide
      }
      for (int i = 0; i < nk; ++i) {
        auto it = cells.find(ks[i]);
        if (it != cells.end())
          for (int idx : it->second) f(idx);
      }
    } else {
      long long kx = (long long)std::floor(p[0] / cell);
      long long ky = (long long)std::floor(p[1] / cell);
      for (long long dx = -1; dx <= 1; ++dx)
        for (long long dy = -1; dy <= 1; ++dy) {
          auto it = cells.find((kx + dx) * (1LL << 21) + (ky + dy));
          if (it != cells.end())
            for (int idx : it->second) f(idx);
        }
    }
  }
};

bool is_2d(const std::string& kind) {
  return kind == "square" || kind == "point_cloud";
}

}  // namespace

double ModelSpace::rho(const std::vector<double>& a,
                       const std::vector<double>& b) const {
  if (kind == "circle") {
    double d = std::fabs(a[0] - b[0]);
    return std::min(d, 1.0 - d);
  }
  if (kind == "interval" || kind == "cantor_middle_thirds")
    return std::fabs(a[0] - b[0]);
  double dx = a[0] - b[0], dy = a[1] - b[1];
  return std::sqrt(dx * dx + dy * dy);
}

std::vector<std::vector<double>> ModelSpace::sample(int budget) const {
  std::vector<std::vector<double>> pts;
  if (kind == "interval") {
    int k = std::max(2, budget);
    for (int i = 0; i < k; ++i) pts.push_back({0.5 * double(i) / double(k - 1)});
  } else if (kind == "circle") {
    int k = std::max(2, budget);
    for (int i = 0; i < k; ++i) pts.push_back({double(i) / double(k)});
  } else if (kind == "cantor_middle_thirds") {
    int d = 0;
    while ((1LL << (d + 1)) <= budget && d < 30) ++d;
    long long three = 1;
    for (int i = 0; i < d; ++i) three *= 3;
    for (long long mask = 0; mask < (1LL << d); ++mask) {
      // bit i (from the top) set means ternary digit 2 at place i+1
      long long num = 0, place = three;
      for (int i = 0; i < d; ++i) {
        place /= 3;
        if ((mask >> (d - 1 - i)) & 1) num += 2 * place;
      }
      pts.push_back({0.5 * double(num) / double(three)});
    }
    std::sort(pts.begin(), pts.end());
  } else if (kind == "square") {
    int m = std::max(2, (int)std::floor(std::sqrt(double(budget))));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        pts.push_back({kSquareSide * double(i) / double(m - 1),
                       kSquareSide * double(j) / double(m - 1)});
  } else if (kind == "point_cloud") {
    pts = cloud;
  } else {
    fail("unknown model space kind: " + kind);
  }
  return pts;
}

double ModelSpace::sample_density(int budget) const {
  if (kind == "interval") return 0.25 / double(std::max(2, budget) - 1);
  if (kind == "circle") return 0.5 / double(std::max(2, budget));
  if (kind == "cantor_middle_thirds") {
    int d = 0;
    while ((1LL << (d + 1)) <= budget && d < 30) ++d;
    return 0.5 * std::pow(3.0, -d);
  }
  if (kind == "square") {
    int m = std::max(2, (int)std::floor(std::sqrt(double(budget))));
    return kSquareSide / double(m - 1) * std::sqrt(0.5);
  }
  if (kind == "point_cloud") return 0.0;
  fail("unknown model space kind: " + kind);
}

int ModelSpace::budget_for_density(double eps) const {
  require(eps > 0, "budget_for_density: eps must be positive");
  if (kind == "interval") return 2 + (int)std::ceil(0.25 / eps);
  if (kind == "circle") return 2 + (int)std::ceil(0.5 / eps);
  if (kind == "cantor_middle_thirds") {
    int d = 0;
    while (0.5 * std::pow(3.0, -d) > eps) ++d;
    require(d <= 30, "budget_for_density: cantor depth too large");
    return (int)(1LL << d);
  }
  if (kind == "square") {
    int m = 2 + (int)std::ceil(kSquareSide * std::sqrt(0.5) / eps);
    require(m <= 4000, "budget_for_density: grid too large");
    return m * m;
  }
  if (kind == "point_cloud") return std::max(1, cloud_n);
  fail("unknown model space kind: " + kind);
}

ModelSpace make_model_space(const std::string& kind, int cloud_n) {
  ModelSpace s;
  s.kind = kind;
  if (kind == "interval" || kind == "circle") {
    s.Q = 1.0;
  } else if (kind == "cantor_middle_thirds") {
    s.Q = std::log(2.0) / std::log(3.0);
  } else if (kind == "square") {
    s.Q = 2.0;
  } else if (kind == "point_cloud") {
    require(cloud_n >= 2 && cloud_n <= 20000, "point cloud size out of range");
    s.Q = 2.0;
    s.cloud_n = cloud_n;
    Rng rng(derive_seed(0xC10DULL, (std::uint64_t)cloud_n));
    for (int i = 0; i < cloud_n; ++i)
      s.cloud.push_back({rng_unit(rng), rng_unit(rng)});
    double diam = 0;
    for (int i = 0; i < cloud_n; ++i)
      for (int j = i + 1; j < cloud_n; ++j)
        diam = std::max(diam, s.rho(s.cloud[i], s.cloud[j]));
    require(diam > 0, "point cloud is degenerate");
    for (auto& p : s.cloud)
      for (double& c : p) c *= 0.5 / diam;
    std::sort(s.cloud.begin(), s.cloud.end());
  } else {
    fail("unknown model space kind: " + kind);
  }
  return s;
}

std::vector<std::vector<double>> make_net(const ModelSpace& space, int t,
                                          int sample_budget) {
  require(t >= 0 && t <= 14, "make_net: level out of range");
  double sep = std::exp(-double(t));
  double eps_need = sep / 4.0;
  int budget = sample_budget > 0 ? sample_budget
                                 : space.budget_for_density(eps_need);
  require(space.sample_density(budget) <= eps_need + 1e-15,
          "make_net: sample budget too small for level " + std::to_string(t) +
              "; need at least " +
              std::to_string(space.budget_for_density(eps_need)));
  auto pts = space.sample(budget);
  std::vector<std::vector<double>> net;
  GridIndex idx(sep, is_2d(space.kind), space.kind == "circle");
  for (const auto& p : pts) {
    bool ok = true;
    idx.for_near(p, [&](int j) {
      if (ok && space.rho(p, net[j]) < sep) ok = false;
    });
    if (ok) {
      idx.insert(p, (int)net.size());
      net.push_back(p);
    }
  }
  return net;
}

ConeGraph make_cone(const ModelSpace& space, int T, int sample_budget) {
  require(T >= 0 && T <= 12, "make_cone: level count out of range");
  std::vector<std::vector<std::vector<double>>> nets;
  for (int t = 0; t <= T; ++t) nets.push_back(make_net(space, t, sample_budget));
  require(nets[0].size() == 1, "make_cone: level 0 is not a single point");

  WeightedGraph g;
  char idbuf[32];
  auto vid = [&](int t, int i) {
    std::snprintf(idbuf, sizeof idbuf, "L%02d_N%04d", t, i);
    return std::string(idbuf);
  };
  for (int t = 0; t <= T; ++t) {
    require(nets[t].size() <= 9999, "make_cone: net too large at level " +
                                        std::to_string(t));
    for (int i = 0; i < (int)nets[t].size(); ++i) {
      std::string label = "{\"center\":[";
      for (size_t c = 0; c < nets[t][i].size(); ++c) {
        if (c) label += ",";
        label += fmt_double(nets[t][i][c]);
      }
      label += "],\"level\":" + std::to_string(t) + "}";
      g.add_vertex(vid(t, i), 1.0, {}, label);
    }
  }
  for (int t = 0; t <= T; ++t) {
    double same_thr = 2.0 * std::exp(-double(t));
    GridIndex idx(same_thr, is_2d(space.kind), space.kind == "circle");
    for (int i = 0; i < (int)nets[t].size(); ++i) {
      idx.for_near(nets[t][i], [&](int j) {
        if (space.rho(nets[t][i], nets[t][j]) <= same_thr)
          g.add_edge(vid(t, j), vid(t, i));
      });
      idx.insert(nets[t][i], i);
    }
    if (t < T) {
      double cross_thr = std::exp(-double(t)) + std::exp(-double(t + 1));
      GridIndex cidx(cross_thr, is_2d(space.kind), space.kind == "circle");
      for (int i = 0; i < (int)nets[t].size(); ++i) cidx.insert(nets[t][i], i);
      for (int j = 0; j < (int)nets[t + 1].size(); ++j) {
        cidx.for_near(nets[t + 1][j], [&](int i) {
          if (space.rho(nets[t][i], nets[t + 1][j]) <= cross_thr)
            g.add_edge(vid(t, i), vid(t + 1, j));
        });
      }
    }
  }
  g.finalize();

  ConeGraph cone;
  cone.space = space;
  cone.level.assign(g.n(), 0);
  cone.center.assign(g.n(), {});
  for (int t = 0; t <= T; ++t)
    for (int i = 0; i < (int)nets[t].size(); ++i) {
      int v = g.index_of(vid(t, i));
      require(v >= 0, "make_cone: vertex lookup failed");
      cone.level[v] = t;
      cone.center[v] = nets[t][i];
    }
  cone.basepoint = g.index_of(vid(0, 0));
  cone.graph = std::move(g);
  return cone;
}

}  // namespace plab
