#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "plab/profiles.hpp"
#include "plab/runconfig.hpp"
#include "plab/util.hpp"

using namespace plab;

namespace {

// synthetic certified points v(r) on a geometric ladder
std::vector<ProfilePoint> synth(double r0, double ratio, int m,
                                double (*v)(double)) {
  std::vector<ProfilePoint> pts;
  double r = r0;
  for (int i = 0; i < m; ++i, r *= ratio) {
    ProfilePoint pt;
    pt.r = r;
    pt.n = (long long)r;
    pt.mu_total = r;
    pt.lo = v(r);
    pt.hi = v(r);
    pt.strategy = "synthetic";
    pt.witness_digest = "0";
    pts.push_back(pt);
  }
  return pts;
}

}  // namespace

TEST_CASE("pure power data is recovered exactly") {
  auto pts =
      synth(10, 2.0, 12, +[](double r) { return 3.0 * std::pow(r, 0.7); });
  FitResult fit = fit_growth(pts);
  CHECK(fit.model == "power");
  CHECK(fit.a == doctest::Approx(0.7).epsilon(1e-9));
  CHECK(fit.a_power == doctest::Approx(0.7).epsilon(1e-9));
  CHECK(fit.basis == "certified");
  CHECK(fit.used_points == 12 - 12 / 5);
  CHECK(fit.rms_power == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("r over log r data picks the logarithmic model") {
  auto pts = synth(10, 2.0, 14, +[](double r) { return r / std::log(r); });
  FitResult fit = fit_growth(pts);
  CHECK(fit.model == "n_over_log");
  // the pure power fit needs a slope visibly below 1 to explain the data
  CHECK(fit.a_power < 1.0);
  CHECK(fit.rms_n_over_log == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("power times log power picks the combined model") {
  auto pts = synth(10, std::sqrt(10.0), 9, +[](double r) {
    return std::pow(r, 0.5) * std::pow(std::log(r), 0.5);
  });
  FitResult fit = fit_growth(pts);
  CHECK(fit.model == "power_log");
  CHECK(fit.a == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(fit.b == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("mild multiplicative noise keeps the power verdict") {
  auto pts = synth(10, 2.0, 12, +[](double r) { return std::pow(r, 0.7); });
  for (size_t i = 0; i < pts.size(); ++i) {
    double w = (i % 2 == 0) ? 1.05 : 0.95;
    pts[i].lo *= w;
    pts[i].hi *= w;
  }
  FitResult fit = fit_growth(pts);
  CHECK(fit.model == "power");
  CHECK(fit.a == doctest::Approx(0.7).epsilon(0.08));
}

TEST_CASE("fit refuses degenerate inputs") {
  auto ok = synth(10, 10.0, 4, +[](double r) { return r; });
  CHECK_NOTHROW(fit_growth(ok));
  auto few = synth(10, 10.0, 3, +[](double r) { return r; });
  CHECK_THROWS(fit_growth(few));
  auto narrow = synth(10, 1.5, 5, +[](double r) { return r; });
  CHECK_THROWS(fit_growth(narrow));  // 10 .. 50 is only 0.7 decades
  auto tiny = synth(2, 4.0, 6, +[](double r) { return r; });
  CHECK_THROWS(fit_growth(tiny));  // front point below r = 3
}

TEST_CASE("uncertified points push the fit onto upper endpoints") {
  auto pts = synth(10, 2.0, 10, +[](double r) { return std::pow(r, 0.5); });
  // kill the lower bound on the largest point; it survives the 20% drop
  pts.back().lo = 0.0;
  pts.back().flagged = true;
  FitResult fit = fit_growth(pts);
  CHECK(fit.basis == "uncertified_upper");
  CHECK(fit.model == "power");
  CHECK(fit.a == doctest::Approx(0.5).epsilon(1e-9));

  // a wide certified gap also demotes the basis
  auto pts2 = synth(10, 2.0, 10, +[](double r) { return std::pow(r, 0.5); });
  pts2.back().lo = pts2.back().hi / 5.0;
  pts2.back().flagged = true;
  CHECK(fit_growth(pts2).basis == "uncertified_upper");

  // dropped points do not poison the basis
  auto pts3 = synth(10, 2.0, 10, +[](double r) { return std::pow(r, 0.5); });
  pts3.front().lo = 0.0;
  pts3.front().flagged = true;
  CHECK(fit_growth(pts3).basis == "certified");
}

TEST_CASE("csv round trip preserves every column") {
  auto pts = synth(9, 3.0, 5, +[](double r) { return 2.0 * r; });
  pts[2].strategy = "boxes:cut_sweep";
  pts[2].witness_digest = "deadbeef01234567";
  std::string csv =
      profile_csv(pts, "zd_box", 2.0, 0.125, "const:2", "# run: {}");
  CHECK(csv.rfind("# run: {}\n", 0) == 0);
  auto back = profile_from_csv(csv);
  REQUIRE(back.size() == pts.size());
  for (size_t i = 0; i < pts.size(); ++i) {
    CHECK(back[i].r == doctest::Approx(pts[i].r));
    CHECK(back[i].n == pts[i].n);
    CHECK(back[i].lo == doctest::Approx(pts[i].lo));
    CHECK(back[i].hi == doctest::Approx(pts[i].hi));
    CHECK(back[i].strategy == pts[i].strategy);
    CHECK(back[i].witness_digest == pts[i].witness_digest);
  }
  // fitting the parsed points matches fitting the originals
  CHECK(fit_growth(back).a == doctest::Approx(fit_growth(pts).a));

  // no header line when the caller passes none
  std::string bare = profile_csv(pts, "zd_box", 2.0, 0.125, "const:2", "");
  CHECK(bare.rfind("family,", 0) == 0);
}

TEST_CASE("tree profile walks depth and certifies small balls") {
  ProfileOptions opt;
  opt.max_n = 50;
  auto pts = poincare_profile("tree", {{"degree", 3}}, opt);
  REQUIRE(pts.size() == 4);  // n = 4, 10, 22, 46
  long long expect[] = {4, 10, 22, 46};
  for (size_t i = 0; i < pts.size(); ++i) {
    CHECK(pts[i].n == expect[i]);
    CHECK(pts[i].r == doctest::Approx(double(pts[i].n)));
    CHECK(pts[i].lo <= pts[i].hi + 1e-12);
    CHECK(pts[i].lo > 0);
    CHECK(!pts[i].strategy.empty());
    CHECK(!pts[i].witness_digest.empty());
  }
}

TEST_CASE("box profile walks the side ladder") {
  ProfileOptions opt;
  opt.max_n = 100;
  auto pts = poincare_profile("zd_box", {{"d", 2}}, opt);
  REQUIRE(pts.size() == 5);  // sides 3,4,5,7,9
  CHECK(pts[0].n == 9);
  CHECK(pts[4].n == 81);
  for (const auto& pt : pts) {
    CHECK(pt.lo > 0);  // congestion keeps a positive floor at p = 1
    CHECK(pt.lo <= pt.hi + 1e-12);
  }
}

TEST_CASE("profile rejects unknown families and empty runs") {
  ProfileOptions opt;
  CHECK_THROWS(poincare_profile("nosuch", {}, opt));
  opt.max_n = 2;
  CHECK_THROWS(poincare_profile("tree", {}, opt));
}

TEST_CASE("capacity profile scales mass by the k rule") {
  XiOptions opt;
  opt.alpha = 0.125;
  opt.max_n = 50;
  opt.k_rule = "const:2";
  auto pts = xi_profile("tree", {{"degree", 3}}, opt);
  REQUIRE(pts.size() >= 3);
  for (const auto& pt : pts) {
    CHECK(pt.r == doctest::Approx(2.0 * double(pt.n)));
    CHECK(pt.mu_total == doctest::Approx(pt.r));
    CHECK(pt.lo <= pt.hi + 1e-12);
    CHECK(pt.hi > 0);
    if (pt.n <= opt.cap.exact_threshold) {
      CHECK(pt.lo > 0);  // enumeration certifies small balls
    } else {
      CHECK(pt.flagged);  // heuristic upper only
    }
  }

  XiOptions bad = opt;
  bad.alpha = 0.25;
  CHECK_THROWS(xi_profile("tree", {}, bad));
  bad.alpha = 0.125;
  bad.k_rule = "weird";
  CHECK_THROWS(xi_profile("tree", {}, bad));
  CHECK_THROWS(xi_profile("dl", {}, opt));
}

TEST_CASE("prediction comparison by model class and exponent") {
  FitResult fit;
  fit.model = "power";
  fit.a = 0.72;
  CHECK(compare_with_prediction(fit, form_power(0.75)).match);
  CHECK(!compare_with_prediction(fit, form_power(0.5)).match);
  CHECK(!compare_with_prediction(fit, form_n_over_log()).match);
  CHECK(compare_with_prediction(fit, form_power_band(0.5, 0.7)).match);
  CHECK(!compare_with_prediction(fit, form_power_band(0.85, 0.9)).match);

  FitResult flat;
  flat.model = "power";
  flat.a = 0.04;
  CHECK(compare_with_prediction(flat, form_constant()).match);

  FitResult nl;
  nl.model = "n_over_log";
  nl.a = 1;
  CHECK(compare_with_prediction(nl, form_n_over_log()).match);
  CHECK(!compare_with_prediction(nl, form_power(1.0)).match);

  FitResult pl;
  pl.model = "power_log";
  pl.a = 0.52;
  pl.b = 0.5;
  CHECK(compare_with_prediction(pl, form_power_log(0.5, 0.5)).match);
  CHECK(!compare_with_prediction(pl, form_power(0.5)).match);
  CHECK(!compare_with_prediction(pl, form_power_log(0.8, 0.5)).match);
}

TEST_CASE("run headers are deterministic and carry no clock") {
  RunConfig rc;
  rc.command = "profile";
  rc.seed = 42;
  rc.args["family"] = "tree";
  rc.args["p"] = "1";
  std::string h1 = rc.header_line();
  RunConfig rc2;
  rc2.command = "profile";
  rc2.seed = 42;
  rc2.args["p"] = "1";  // insertion order must not matter
  rc2.args["family"] = "tree";
  CHECK(h1 == rc2.header_line());
  CHECK(h1.rfind("# run: ", 0) == 0);
  CHECK(h1.find("poincarelab") != std::string::npos);
  CHECK(h1.find("\"seed\":42") != std::string::npos);
}
