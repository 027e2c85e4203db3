#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "plab/embed.hpp"
#include "plab/graph.hpp"
#include "plab/lieclass.hpp"
#include "plab/treeaddr.hpp"
#include "plab/util.hpp"

using namespace plab;

namespace {

WeightData wd(int k, std::vector<std::vector<long long>> rows) {
  WeightData w;
  w.k = k;
  for (auto& r : rows) {
    std::vector<ExactRat> row;
    for (long long x : r) row.push_back(ExactRat{x, 1});
    w.weights.push_back(row);
  }
  return w;
}

}  // namespace

TEST_CASE("weight span rank over the rationals") {
  CHECK(weight_span_rank(wd(2, {{1, 0}, {0, 1}})) == 2);
  CHECK(weight_span_rank(wd(2, {{1, 1}, {2, 2}})) == 1);
  CHECK(weight_span_rank(wd(2, {{0, 0}})) == 0);
  CHECK(weight_span_rank(wd(1, {{3}, {-2}})) == 1);
}

TEST_CASE("one-sidedness is decided exactly") {
  CHECK(is_nc(wd(1, {{1}, {2}})));
  CHECK(!is_nc(wd(1, {{1}, {-1}})));
  CHECK(is_nc(wd(2, {{1, 0}, {1, 1}, {2, 1}})));
  // 0 in the hull needs three vectors here
  CHECK(!is_nc(wd(2, {{1, 0}, {-1, 1}, {-1, -1}})));
  // zero weights are ignored by the hull test
  CHECK(is_nc(wd(1, {{0}, {1}})));
}

TEST_CASE("one-sidedness is invariant under permutations") {
  std::vector<std::vector<long long>> rows = {
      {1, 0}, {-1, 1}, {2, 1}, {0, 1}};
  std::sort(rows.begin(), rows.end());
  bool ref = is_nc(wd(2, rows));
  do {
    CHECK(is_nc(wd(2, rows)) == ref);
  } while (std::next_permutation(rows.begin(), rows.end()));
}

TEST_CASE("classification trichotomy on the standard examples") {
  // abelian/nilpotent: no nonzero weights
  Classification ab = classify(wd(1, {{0}, {0}, {0}}));
  CHECK(ab.kind == "polynomial");
  CHECK(ab.growth_degree == doctest::Approx(4.0));  // 3 weights + k

  // real hyperbolic 3-space as R^2 x| R, weights {1,1}
  Classification h3 = classify(wd(1, {{1}, {1}}));
  CHECK(h3.kind == "thin");
  CHECK(h3.Q == doctest::Approx(2.0));
  CHECK(h3.n_w == 2);
  CHECK(h3.flat == 0);
  CHECK(h3.equal_weights);

  // H^2 x R: weights {1, 0}
  Classification h2r = classify(wd(1, {{1}, {0}}));
  CHECK(h2r.kind == "thin");
  CHECK(h2r.Q == doctest::Approx(1.0));
  CHECK(h2r.n_w == 1);
  CHECK(h2r.flat == 1);

  // Heintze group with weights {1, 2}
  Classification hz = classify(wd(1, {{1}, {2}}));
  CHECK(hz.kind == "thin");
  CHECK(hz.Q == doctest::Approx(3.0));
  CHECK(!hz.equal_weights);

  // sol: weights {1, -1} are two-sided
  Classification sol = classify(wd(1, {{1}, {-1}}));
  CHECK(sol.kind == "thick");
}

TEST_CASE("predicted profiles follow the frozen trichotomy rules") {
  Classification h3 = classify(wd(1, {{1}, {1}}));
  ProfileForm f1 = predicted_profile(h3, 1.0);
  CHECK(f1.kind == "power");
  CHECK(f1.a == doctest::Approx(0.5));
  ProfileForm f2 = predicted_profile(h3, 2.0);  // p == Q adds the log factor
  CHECK(f2.kind == "power_log");
  CHECK(f2.a == doctest::Approx(0.5));
  CHECK(f2.b == doctest::Approx(0.5));
  ProfileForm f3 = predicted_profile(h3, 4.0);  // p > Q
  CHECK(f3.kind == "power");
  CHECK(f3.a == doctest::Approx(0.75));

  Classification h2r = classify(wd(1, {{1}, {0}}));
  ProfileForm g1 = predicted_profile(h2r, 1.0);  // p == Q == 1
  CHECK(g1.kind == "power_log");
  CHECK(g1.a == doctest::Approx(0.5));
  CHECK(g1.b == doctest::Approx(0.5));

  Classification hz = classify(wd(1, {{1}, {2}}));
  ProfileForm b1 = predicted_profile(hz, 1.0);
  CHECK(b1.kind == "power_band");
  CHECK(b1.lo == doctest::Approx(0.5));
  CHECK(b1.hi == doctest::Approx(2.0 / 3));

  Classification sol = classify(wd(1, {{1}, {-1}}));
  CHECK(predicted_profile(sol, 1.0).kind == "n_over_log");

  Classification flat = classify(wd(1, {{0}, {0}}));
  CHECK(flat.growth_degree == doctest::Approx(3.0));
  ProfileForm pf = predicted_profile(flat, 1.0);
  CHECK(pf.kind == "power");
  CHECK(pf.a == doctest::Approx(2.0 / 3));

  CHECK_THROWS(classify(wd(1, {})));
  // degree-1 growth collapses the power to a constant
  Classification line;
  line.kind = "polynomial";
  line.growth_degree = 1;
  CHECK(predicted_profile(line, 1.0).kind == "constant");
}

TEST_CASE("matrix eigenvalues feed the classifier") {
  // identity derivation: H^3
  WeightData w = weights_from_matrix({{1.0, 0.0}, {0.0, 1.0}});
  Classification c = classify(w);
  CHECK(c.kind == "thin");
  CHECK(c.Q == doctest::Approx(2.0));

  // sol-like derivation: opposite weights
  WeightData ws = weights_from_matrix({{0.9624, 0.0}, {0.0, -0.9624}});
  CHECK(classify(ws).kind == "thick");

  // rotation block: real parts vanish, polynomial growth
  WeightData wr = weights_from_matrix({{0.0, 1.0}, {-1.0, 0.0}});
  CHECK(classify(wr).kind == "polynomial");
}

TEST_CASE("solvable BS profiles by parameter") {
  ProfileForm a = bs_profile(1, 1, 1.0);
  CHECK(a.kind == "power");
  CHECK(a.a == doctest::Approx(0.5));
  ProfileForm b = bs_profile(2, 2, 1.0);
  CHECK(b.kind == "power");
  CHECK(b.a == doctest::Approx(0.5));
  ProfileForm b2 = bs_profile(2, 2, 2.0);
  CHECK(b2.a == doctest::Approx(2.0 / 3));
  CHECK(bs_profile(2, 3, 1.0).kind == "n_over_log");
  CHECK(bs_profile(-2, 2, 1.0).kind == "power");
}

TEST_CASE("model geometry profiles at p = 1") {
  CHECK(thurston_profile("s3", 1.0).kind == "constant");
  CHECK(thurston_profile("s2xr", 1.0).kind == "constant");
  ProfileForm r3 = thurston_profile("r3", 1.0);
  CHECK(r3.kind == "power");
  CHECK(r3.a == doctest::Approx(2.0 / 3));
  CHECK(thurston_profile("nil", 1.0).a == doctest::Approx(0.75));
  CHECK(thurston_profile("h3", 1.0).a == doctest::Approx(0.5));
  ProfileForm h2xr = thurston_profile("h2xr", 1.0);
  CHECK(h2xr.kind == "power_log");
  CHECK(h2xr.a == doctest::Approx(0.5));
  CHECK(h2xr.b == doctest::Approx(0.5));
  CHECK(thurston_profile("psl2r", 1.0).kind == "power_log");
  CHECK(thurston_profile("sol", 1.0).kind == "n_over_log");
  CHECK_THROWS(thurston_profile("h3", 2.0));
  CHECK_THROWS(thurston_profile("nosuch", 1.0));
}

TEST_CASE("catalog is frozen: eight entries with verdicts and shapes") {
  auto cat = group_catalog();
  REQUIRE(cat.size() == 8);
  std::map<std::string, const CatalogEntry*> by;
  for (const auto& e : cat) by[e.name] = &e;
  REQUIRE(by.count("r3"));
  REQUIRE(by.count("nil"));
  REQUIRE(by.count("sol"));
  REQUIRE(by.count("h3"));
  REQUIRE(by.count("h2xr"));
  REQUIRE(by.count("heintze_1_2"));
  REQUIRE(by.count("osc"));
  REQUIRE(by.count("bs_2_3"));

  CHECK(by["r3"]->predicted.kind == "power");
  CHECK(by["r3"]->predicted.a == doctest::Approx(2.0 / 3));
  CHECK(by["r3"]->graph_family == "zd_box");
  CHECK(by["nil"]->predicted.a == doctest::Approx(0.75));
  CHECK(by["nil"]->graph_family == "heisenberg_ball");
  CHECK(by["sol"]->predicted.kind == "n_over_log");
  CHECK(by["sol"]->graph_family == "sol_lattice_ball");
  CHECK(by["h3"]->predicted.kind == "power");
  CHECK(by["h3"]->predicted.a == doctest::Approx(0.5));
  CHECK(by["h2xr"]->predicted.kind == "power_log");
  CHECK(by["heintze_1_2"]->predicted.kind == "power_band");
  CHECK(by["heintze_1_2"]->predicted.lo == doctest::Approx(0.5));
  CHECK(by["heintze_1_2"]->predicted.hi == doctest::Approx(2.0 / 3));
  CHECK(by["osc"]->predicted.kind == "power");
  CHECK(by["osc"]->predicted.a == doctest::Approx(0.8));
  CHECK(by["bs_2_3"]->predicted.kind == "n_over_log");
  CHECK(by["bs_2_3"]->graph_family == "dl_gamma_k");
  for (const auto& e : cat) CHECK(!e.verdict.empty());
}

TEST_CASE("halfplane distance and height function by hand") {
  // vertical geodesic: d((0,1),(0,e)) = 1
  CHECK(h2_distance({0, 1}, {0, std::exp(1.0)}) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(h2_distance({3, 2}, {3, 2}) == doctest::Approx(0.0));
  // symmetric and positive
  HPoint a{0.3, 1.7}, b{-1.1, 0.4};
  CHECK(h2_distance(a, b) == doctest::Approx(h2_distance(b, a)));
  CHECK(h2_distance(a, b) > 0);
  CHECK(h2_busemann({5.0, std::exp(2.0)}) == doctest::Approx(2.0));
}

TEST_CASE("tree embedding: shape and exact height recovery") {
  for (int depth = 1; depth <= 4; ++depth) {
    TreeEmbedding e = bc_tree_embedding(2, 3, depth);
    // binary tree across heights depth .. -depth
    CHECK(e.graph.n() == (1LL << (2 * depth + 1)) - 1);
    CHECK(e.graph.is_connected());
    BusemannReport rep = busemann_height_check(e);
    CHECK(rep.pass);
    CHECK(rep.checked == e.graph.n());
  }
  // wider branching with a different base
  TreeEmbedding e3 = bc_tree_embedding(3, 5, 3);
  CHECK(busemann_height_check(e3).pass);
}

TEST_CASE("tree embedding distortion is finite and exhaustive when small") {
  TreeEmbedding e = bc_tree_embedding(2, 3, 4);
  DistortionReport rep = tree_embedding_distortion(e, 1 << 20, 0);
  CHECK(rep.exhaustive);
  long long n = e.graph.n();
  CHECK(rep.pairs == n * (n - 1) / 2);
  CHECK(rep.min_ratio > 0);
  CHECK(rep.max_ratio >= rep.min_ratio);
  CHECK(rep.L == doctest::Approx(rep.max_ratio / rep.min_ratio));
  // sampled run agrees on the seed and stays within the exhaustive range
  DistortionReport sub = tree_embedding_distortion(e, 40, 11);
  CHECK(!sub.exhaustive);
  CHECK(sub.min_ratio >= rep.min_ratio - 1e-12);
  CHECK(sub.max_ratio <= rep.max_ratio + 1e-12);
}

TEST_CASE("lamplighter pair inclusion: formula and sharp constants") {
  DLInclusionReport rep = dl_inclusion_check(2, 2);
  CHECK(rep.pass);
  CHECK(rep.formula_mismatches == 0);
  CHECK(rep.min_ratio == 1.0);
  CHECK(rep.max_ratio == 2.0);
  CHECK(rep.pairs > 0);
  CHECK(rep.ball_radius == 6);

  DLInclusionReport rep3 = dl_inclusion_check(3, 2);
  CHECK(rep3.pass);
}

TEST_CASE("horocyclic pair embedding: exact heights, stable ratios") {
  HorocyclicReport rep = horocyclic_embed_dl(2, 3, 200000, 0);
  CHECK(rep.heights_exact);
  CHECK(rep.pairs > 0);
  CHECK(rep.min_ratio > 0);
  CHECK(rep.L >= 1.0);
}
