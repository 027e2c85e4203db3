#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "plab/cone.hpp"
#include "plab/families.hpp"
#include "plab/graph.hpp"
#include "plab/treeaddr.hpp"
#include "plab/util.hpp"

using namespace plab;

TEST_CASE("paths cycles trees boxes have the right shape") {
  CHECK(make_path(4).n() == 4);
  CHECK(make_path(4).m() == 3);
  CHECK(make_cycle(5).n() == 5);
  CHECK(make_cycle(5).m() == 5);
  for (int v = 0; v < 5; ++v) CHECK(make_cycle(5).degree(v) == 2);

  WeightedGraph t = make_regular_tree(3, 2);
  CHECK(t.n() == 10);
  CHECK(t.m() == 9);
  CHECK(t.max_degree() == 3);
  CHECK(t.is_connected());

  WeightedGraph box = make_zd_box(2, 3);
  CHECK(box.n() == 9);
  CHECK(box.m() == 12);
  WeightedGraph cube = make_zd_box(3, 2);
  CHECK(cube.n() == 8);
  CHECK(cube.m() == 12);
}

namespace {

// Heisenberg multiplication written out independently of the library:
// (a,b,c) * (a',b',c') = (a+a', b+b', c+c'+a*b').
long long heis_ball_count(int radius) {
  using T = std::array<long long, 3>;
  auto mul = [](const T& x, const T& y) {
    return T{x[0] + y[0], x[1] + y[1], x[2] + y[2] + x[0] * y[1]};
  };
  std::vector<T> gens = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}};
  std::set<T> seen = {{0, 0, 0}};
  std::queue<std::pair<T, int>> q;
  q.push({{0, 0, 0}, 0});
  while (!q.empty()) {
    auto [v, d] = q.front();
    q.pop();
    if (d == radius) continue;
    for (const auto& s : gens) {
      T w = mul(v, s);
      if (seen.insert(w).second) q.push({w, d + 1});
    }
  }
  return (long long)seen.size();
}

// Z^2 x| Z with the hyperbolic matrix [[2,1],[1,1]] acting on the fibre.
long long sol_ball_count(int radius) {
  using T = std::array<long long, 3>;  // (v1, v2, h)
  auto act = [](long long h, std::array<long long, 2> v) {
    // apply A^h to v, A = [[2,1],[1,1]], A^{-1} = [[1,-1],[-1,2]]
    while (h > 0) {
      v = {2 * v[0] + v[1], v[0] + v[1]};
      --h;
    }
    while (h < 0) {
      v = {v[0] - v[1], -v[0] + 2 * v[1]};
      ++h;
    }
    return v;
  };
  auto mul = [&](const T& x, const T& y) {
    auto moved = act(x[2], {y[0], y[1]});
    return T{x[0] + moved[0], x[1] + moved[1], x[2] + y[2]};
  };
  std::vector<T> gens = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0},
                         {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  std::set<T> seen = {{0, 0, 0}};
  std::queue<std::pair<T, int>> q;
  q.push({{0, 0, 0}, 0});
  while (!q.empty()) {
    auto [v, d] = q.front();
    q.pop();
    if (d == radius) continue;
    for (const auto& s : gens) {
      T w = mul(v, s);
      if (seen.insert(w).second) q.push({w, d + 1});
    }
  }
  return (long long)seen.size();
}

}  // namespace

TEST_CASE("heisenberg balls match the independent count") {
  CHECK(heis_ball_count(1) == 5);
  CHECK(heis_ball_count(2) == 17);
  for (int r = 1; r <= 3; ++r)
    CHECK(make_heisenberg_ball(r).n() == heis_ball_count(r));
  CHECK(make_heisenberg_ball(2).is_connected());
}

TEST_CASE("sol lattice balls match the independent count") {
  CHECK(sol_ball_count(1) == 7);
  for (int r = 1; r <= 3; ++r)
    CHECK(make_sol_lattice_ball(r).n() == sol_ball_count(r));
}

TEST_CASE("dl balls: valence and smallest cases") {
  WeightedGraph b1 = make_dl_ball(2, 2, 1);
  CHECK(b1.n() == 5);
  DLVertex base;
  base.x = TreeVertex{0, ""};
  base.y = TreeVertex{0, ""};
  int bi = b1.index_of(dl_id(base));
  REQUIRE(bi >= 0);
  CHECK(b1.degree(bi) == 4);

  WeightedGraph b2 = make_dl_ball(2, 2, 2);
  CHECK(b2.is_connected());
  for (int v = 0; v < b2.n(); ++v) CHECK(b2.degree(v) <= 4);

  WeightedGraph t1 = make_dl_ball(3, 3, 1);
  CHECK(t1.n() == 7);
}

TEST_CASE("slab graphs have the advertised size and levels") {
  for (int k = 1; k <= 4; ++k) {
    WeightedGraph g = make_dl_gamma_k(k);
    CHECK(g.n() == (long long)(k + 1) * (1LL << k));
    CHECK(g.m() == (long long)k * (1LL << (k + 1)));
    CHECK(g.is_connected());
    auto levels = gamma_k_levels(k);
    REQUIRE(int(levels.size()) == k + 1);
    for (const auto& lv : levels) CHECK(int(lv.size()) == (1 << k));
    // level lists address exactly the graph's vertices
    for (const auto& lv : levels)
      for (const auto& v : lv) CHECK(g.index_of(dl_id(v)) >= 0);
  }
}

TEST_CASE("tree addresses: parent, child, join, distance") {
  TreeVertex root{0, ""};
  TreeVertex c1 = tree_child(root, 1);
  CHECK(c1.h == -1);
  CHECK(c1.s == "1");
  // the 0-child of a spine vertex stays on the implicit spine
  TreeVertex c0 = tree_child(root, 0);
  CHECK(c0.h == -1);
  CHECK(c0.s == "");
  CHECK(tree_parent(c1) == root);
  CHECK(tree_parent(c0) == root);
  CHECK(tree_dist(root, root) == 0);
  CHECK(tree_dist(root, c1) == 1);
  TreeVertex sib = tree_child(root, 0);
  CHECK(tree_dist(c1, sib) == 2);
  TreeVertex deep = tree_child(tree_child(c1, 1), 0);
  CHECK(tree_dist(root, deep) == 3);
  CHECK(tree_join_height(c1, sib) == 0);
}

TEST_CASE("family spec round trips through make_family") {
  FamilySpec spec = FamilySpec::parse_kv(
      "zd_box", {{"d", "2"}, {"side", "4"}});
  WeightedGraph g = make_family(spec);
  CHECK(g.n() == 16);
  CHECK_THROWS(make_family(FamilySpec::parse_kv("nosuch", {})));
  CHECK(spec.serialize().find("zd_box") != std::string::npos);
}

TEST_CASE("model spaces: metric sanity and net sizes") {
  ModelSpace iv = make_model_space("interval");
  CHECK(iv.rho({0.0}, {0.5}) == doctest::Approx(0.5));
  CHECK(iv.rho({0.1}, {0.1}) == 0.0);
  auto net = make_net(iv, 2, 0);
  CHECK(net.size() >= 3);
  CHECK(net.size() <= 4);
  // pairwise separation at scale e^{-2}
  for (size_t i = 0; i < net.size(); ++i)
    for (size_t j = i + 1; j < net.size(); ++j)
      CHECK(iv.rho(net[i], net[j]) >= std::exp(-2.0) - 1e-12);

  ModelSpace sq = make_model_space("square");
  CHECK(sq.rho({0.0, 0.0}, {0.3, 0.4}) == doctest::Approx(0.5));

  ModelSpace cc = make_model_space("circle");
  // antipodal points on a circumference-1 circle scaled to diameter 1/2
  CHECK(cc.rho({0.0}, {0.5}) <= 0.5 + 1e-9);

  ModelSpace ct = make_model_space("cantor_middle_thirds");
  CHECK(ct.rho({0.0}, {1.0 / 3}) > 0);

  ModelSpace pc = make_model_space("point_cloud", 12);
  CHECK(pc.cloud_n == 12);
  CHECK(pc.sample(0).size() == 12);
}

TEST_CASE("cone graphs: levels, basepoint, edge discipline") {
  ModelSpace iv = make_model_space("interval");
  ConeGraph cone = make_cone(iv, 3, 0);
  CHECK(cone.graph.is_connected());
  int zero_levels = 0;
  for (int v = 0; v < cone.graph.n(); ++v)
    if (cone.level[size_t(v)] == 0) ++zero_levels;
  CHECK(zero_levels == 1);
  CHECK(cone.level[size_t(cone.basepoint)] == 0);
  for (auto [a, b] : cone.graph.edges())
    CHECK(std::abs(cone.level[size_t(a)] - cone.level[size_t(b)]) <= 1);
}

TEST_CASE("four point delta: cycles and trees") {
  CHECK(estimate_delta(make_cycle(4), 4000, 1) == doctest::Approx(1.0));
  CHECK(estimate_delta(make_regular_tree(3, 3), 4000, 1) ==
        doctest::Approx(0.0));
}

TEST_CASE("gromov products by hand") {
  WeightedGraph p5 = make_path(5);
  auto idx = [&](int i) { return i; };  // ids are in path order
  CHECK(gromov_product(p5, idx(2), idx(0), idx(4)) == doctest::Approx(0.0));
  CHECK(gromov_product(p5, idx(4), idx(0), idx(1)) == doctest::Approx(3.0));

  // tripod with legs 2, 3, 4: (a|b) from two steps down the third leg is 2
  WeightedGraph trip;
  trip.add_vertex("c");
  auto leg = [&](char name, int len) {
    std::string prev = "c";
    for (int i = 1; i <= len; ++i) {
      std::string id = std::string(1, name) + std::to_string(i);
      trip.add_vertex(id);
      trip.add_edge(prev, id);
      prev = id;
    }
  };
  leg('a', 2);
  leg('b', 3);
  leg('d', 4);
  trip.finalize();
  CHECK(gromov_product(trip, trip.index_of("d2"), trip.index_of("a2"),
                       trip.index_of("b3")) == doctest::Approx(2.0));
}

TEST_CASE("boundary metric check runs on a small cone") {
  ModelSpace iv = make_model_space("interval");
  ConeGraph cone = make_cone(iv, 4, 0);
  BoundaryReport rep = boundary_metric_check(cone, 60, 5);
  CHECK(rep.pairs_used > 0);
  CHECK(rep.min_ratio > 0);
  CHECK(rep.max_ratio >= rep.min_ratio);
  CHECK(rep.spread == doctest::Approx(rep.max_ratio / rep.min_ratio));
}
