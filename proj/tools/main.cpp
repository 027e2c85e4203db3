#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "plab/capacity.hpp"
#include "plab/certificates.hpp"
#include "plab/cone.hpp"
#include "plab/embed.hpp"
#include "plab/families.hpp"
#include "plab/graph_io.hpp"
#include "plab/lieclass.hpp"
#include "plab/poincare.hpp"
#include "plab/profiles.hpp"
#include "plab/runconfig.hpp"
#include "plab/util.hpp"
#include "plab/verify.hpp"

namespace {

using nlohmann::ordered_json;

// Exit discipline: 0 success, 1 a verification or prediction check failed,
// 2 usage or configuration errors.
struct CheckFailed {};

std::uint64_t env_seed() {
  const char* s = std::getenv("POINCARELAB_SEED");
  if (!s || !*s) return 0;
  return std::strtoull(s, nullptr, 10);
}

std::map<std::string, std::string> split_kv(
    const std::vector<std::string>& items) {
  std::map<std::string, std::string> kv;
  for (const auto& it : items) {
    auto pos = it.find('=');
    plab::require(pos != std::string::npos && pos > 0,
                  "expected key=value, got '" + it + "'");
    kv[it.substr(0, pos)] = it.substr(pos + 1);
  }
  return kv;
}

std::map<std::string, double> numeric_params(
    const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& [k, v] : split_kv(items)) out[k] = std::stod(v);
  return out;
}

struct GraphInput {
  std::string in_path, family, space;
  std::vector<std::string> params;

  void attach(CLI::App* cmd) {
    cmd->add_option("--in", in_path, "read graph JSON from a file");
    cmd->add_option("--family", family,
                    "family name: tree path cycle zd_box heisenberg_ball "
                    "sol_lattice_ball dl dl_gamma_k product cone");
    cmd->add_option("--param", params, "family parameter key=value");
    cmd->add_option("--space", space,
                    "cone space: interval circle cantor_middle_thirds "
                    "square point_cloud");
  }

  plab::FamilySpec spec() const {
    auto kv = split_kv(params);
    if (!space.empty()) kv["space"] = space;
    return plab::FamilySpec::parse_kv(family, kv);
  }

  plab::WeightedGraph build() const {
    if (!in_path.empty()) return plab::read_graph_file(in_path);
    plab::require(!family.empty(), "need --in or --family");
    return plab::make_family(spec());
  }

  void describe(plab::RunConfig& rc) const {
    if (!in_path.empty())
      rc.args["in"] = in_path;
    else
      rc.args["spec"] = spec().serialize();
  }
};

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  plab::require(bool(f), "cannot open output file " + out_path);
  f << text;
  if (text.empty() || text.back() != '\n') f << "\n";
}

void emit_json(plab::RunConfig& rc, ordered_json body,
               const std::string& out_path) {
  ordered_json j;
  j["run"] = ordered_json::parse(rc.to_json());
  for (auto& [k, v] : body.items()) j[k] = v;
  emit(j.dump(2), out_path);
}

plab::ExactRat parse_rat(const std::string& s) {
  auto pos = s.find('/');
  plab::ExactRat r;
  if (pos == std::string::npos) {
    r.num = std::stoll(s);
    r.den = 1;
  } else {
    r.num = std::stoll(s.substr(0, pos));
    r.den = std::stoll(s.substr(pos + 1));
    plab::require(r.den > 0, "weight denominator must be positive: " + s);
  }
  return r;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

plab::ProfileForm parse_form(const std::string& text) {
  auto parts = split_on(text, ':');
  const std::string& kind = parts[0];
  if (kind == "constant") return plab::form_constant();
  if (kind == "n_over_log") return plab::form_n_over_log();
  if (kind == "power") {
    plab::require(parts.size() == 2, "power needs one exponent: power:a");
    return plab::form_power(std::stod(parts[1]));
  }
  if (kind == "power_log") {
    plab::require(parts.size() == 3, "power_log needs power_log:a:b");
    return plab::form_power_log(std::stod(parts[1]), std::stod(parts[2]));
  }
  if (kind == "band") {
    plab::require(parts.size() == 3, "band needs band:lo:hi");
    return plab::form_power_band(std::stod(parts[1]), std::stod(parts[2]));
  }
  plab::fail("unknown profile form '" + kind + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  plab::require(bool(f), "cannot open " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "poincarelab: certified bounds on Poincare constants, capacities and "
      "their growth profiles for graph families"};
  app.require_subcommand(1);

  std::uint64_t seed = env_seed();
  int jobs = 1;
  app.add_option("--seed", seed,
                 "base RNG seed (default: POINCARELAB_SEED or 0)");
  app.add_option("--jobs", jobs, "accepted for interface stability; runs are "
                                 "sequential so results never depend on it")
      ->check(CLI::PositiveNumber);

  std::string out_path;

  // ---- gen ----
  GraphInput gen_in;
  auto* gen = app.add_subcommand("gen", "build a family graph, print JSON");
  gen_in.attach(gen);
  gen->add_option("--out", out_path, "output file (default stdout)");
  gen->callback([&] {
    plab::WeightedGraph g = gen_in.in_path.empty()
                                ? plab::make_family(gen_in.spec())
                                : plab::read_graph_file(gen_in.in_path);
    emit(plab::write_graph_string(g), out_path);
  });

  // ---- hp ----
  GraphInput hp_in;
  double hp_p = 1.0;
  plab::HpConfig hp_cfg;
  auto* hp = app.add_subcommand("hp", "certified interval for h^p");
  hp_in.attach(hp);
  hp->add_option("--p", hp_p, "exponent p >= 1")->check(CLI::Range(1.0, 64.0));
  hp->add_option("--exact-threshold", hp_cfg.exact_threshold,
                 "exact enumeration cutoff (p = 1)");
  hp->add_option("--restarts", hp_cfg.restarts, "multistart restarts");
  hp->add_option("--iters", hp_cfg.iters, "iterations per restart");
  hp->add_option("--multistart-max-n", hp_cfg.multistart_max_n,
                 "skip multistart above this size");
  hp->add_option("--out", out_path, "output file (default stdout)");
  hp->callback([&] {
    hp_cfg.seed = seed;
    plab::WeightedGraph g = hp_in.build();
    plab::BoundInterval b = plab::hp_bounds(g, hp_p, hp_cfg);
    plab::RunConfig rc{"hp", seed, {}};
    hp_in.describe(rc);
    rc.args["p"] = plab::fmt_double(hp_p);
    ordered_json body;
    body["n"] = g.n();
    body["m"] = g.m();
    body["bounds"] = ordered_json::parse(b.to_json());
    emit_json(rc, body, out_path);
  });

  // ---- capacity ----
  GraphInput cap_in;
  double cap_p = 1.0, cap_alpha = 0.125;
  plab::CapacityConfig cap_cfg;
  auto* cap = app.add_subcommand(
      "capacity", "certified interval for the capacity C^{p,alpha}");
  cap_in.attach(cap);
  cap->add_option("--p", cap_p, "exponent p >= 1")
      ->check(CLI::Range(1.0, 64.0));
  cap->add_option("--alpha", cap_alpha, "mass fraction, 0 < alpha < 1/4")
      ->required();
  cap->add_option("--exact-threshold", cap_cfg.exact_threshold,
                  "minimal-pair enumeration cutoff");
  cap->add_option("--restarts", cap_cfg.restarts, "heuristic seed pairs");
  cap->add_option("--iters", cap_cfg.iters, "iterations per seed pair");
  cap->add_option("--out", out_path, "output file (default stdout)");
  cap->callback([&] {
    cap_cfg.seed = seed;
    plab::WeightedGraph g = cap_in.build();
    plab::BoundInterval b = plab::capacity_bounds(g, cap_p, cap_alpha, cap_cfg);
    plab::RunConfig rc{"capacity", seed, {}};
    cap_in.describe(rc);
    rc.args["p"] = plab::fmt_double(cap_p);
    rc.args["alpha"] = plab::fmt_double(cap_alpha);
    ordered_json body;
    body["n"] = g.n();
    body["mu_total"] = g.total_mu();
    body["bounds"] = ordered_json::parse(b.to_json());
    emit_json(rc, body, out_path);
  });

  // ---- profile ----
  std::string prof_family;
  std::vector<std::string> prof_params;
  plab::ProfileOptions prof_opt;
  auto* prof = app.add_subcommand(
      "profile", "points of |V| * h^p along a growing family, as CSV");
  prof->add_option("--family", prof_family,
                   "tree zd_box heisenberg sol dl gamma_k tree_x_path "
                   "cone_interval cone_circle cone_cantor cone_square "
                   "cone_cloud")
      ->required();
  prof->add_option("--param", prof_params, "family parameter key=value");
  prof->add_option("--p", prof_opt.p, "exponent p >= 1")
      ->check(CLI::Range(1.0, 64.0));
  prof->add_option("--max-n", prof_opt.max_n, "largest graph size");
  prof->add_option("--max-points", prof_opt.max_points, "point budget");
  prof->add_option("--out", out_path, "output file (default stdout)");
  prof->callback([&] {
    prof_opt.hp.seed = seed;
    auto pts = plab::poincare_profile(prof_family, numeric_params(prof_params),
                                      prof_opt);
    plab::RunConfig rc{"profile", seed, {}};
    rc.args["family"] = prof_family;
    for (const auto& [k, v] : split_kv(prof_params)) rc.args["param." + k] = v;
    rc.args["p"] = plab::fmt_double(prof_opt.p);
    rc.args["max_n"] = std::to_string(prof_opt.max_n);
    rc.args["max_points"] = std::to_string(prof_opt.max_points);
    emit(plab::profile_csv(pts, prof_family, prof_opt.p, 0.0, "",
                           rc.header_line()),
         out_path);
  });

  // ---- xi ----
  std::string xi_family;
  std::vector<std::string> xi_params;
  plab::XiOptions xi_opt;
  auto* xi = app.add_subcommand(
      "xi", "points of mu * C^{p,alpha} over weighted balls, as CSV");
  xi->add_option("--family", xi_family, "tree or zd_box")->required();
  xi->add_option("--param", xi_params, "family parameter key=value");
  xi->add_option("--p", xi_opt.p, "exponent p >= 1")
      ->check(CLI::Range(1.0, 64.0));
  xi->add_option("--alpha", xi_opt.alpha, "mass fraction, 0 < alpha < 1/4");
  xi->add_option("--k-rule", xi_opt.k_rule, "atom weight rule: const:N or sqrt");
  xi->add_option("--max-n", xi_opt.max_n, "largest graph size");
  xi->add_option("--out", out_path, "output file (default stdout)");
  xi->callback([&] {
    xi_opt.cap.seed = seed;
    auto pts =
        plab::xi_profile(xi_family, numeric_params(xi_params), xi_opt);
    plab::RunConfig rc{"xi", seed, {}};
    rc.args["family"] = xi_family;
    for (const auto& [k, v] : split_kv(xi_params)) rc.args["param." + k] = v;
    rc.args["p"] = plab::fmt_double(xi_opt.p);
    rc.args["alpha"] = plab::fmt_double(xi_opt.alpha);
    rc.args["k_rule"] = xi_opt.k_rule;
    rc.args["max_n"] = std::to_string(xi_opt.max_n);
    emit(plab::profile_csv(pts, xi_family, xi_opt.p, xi_opt.alpha,
                           xi_opt.k_rule, rc.header_line()),
         out_path);
  });

  // ---- fit ----
  std::string fit_in, fit_predict;
  auto* fit = app.add_subcommand(
      "fit", "fit a growth model to a profile CSV; optional prediction check");
  fit->add_option("--in", fit_in, "profile CSV file")->required();
  fit->add_option("--predict", fit_predict,
                  "expected form: constant | power:a | power_log:a:b | "
                  "n_over_log | band:lo:hi");
  fit->add_option("--out", out_path, "output file (default stdout)");
  fit->callback([&] {
    auto pts = plab::profile_from_csv(read_text_file(fit_in));
    plab::FitResult fr = plab::fit_growth(pts);
    plab::RunConfig rc{"fit", seed, {}};
    rc.args["in"] = fit_in;
    if (!fit_predict.empty()) rc.args["predict"] = fit_predict;
    ordered_json body;
    body["points"] = pts.size();
    body["fit"] = ordered_json::parse(fr.to_json());
    bool ok = true;
    if (!fit_predict.empty()) {
      plab::PredictionCheck pc =
          plab::compare_with_prediction(fr, parse_form(fit_predict));
      body["prediction"] = ordered_json::parse(pc.to_json());
      ok = pc.match;
    }
    emit_json(rc, body, out_path);
    if (!ok) throw CheckFailed{};
  });

  // ---- verify ----
  auto* ver = app.add_subcommand("verify", "run a built-in verification");
  ver->require_subcommand(1);

  int vg_k = 4;
  std::string vg_tamper;
  auto* vg = ver->add_subcommand(
      "gamma", "check the slab path-system claims without materializing it");
  vg->add_option("--k", vg_k, "slab parameter, 1..8")->check(CLI::Range(1, 8));
  vg->add_option("--tamper", vg_tamper,
                 "perturb one path: reroute | inflate | drop (must fail)");
  vg->callback([&] {
    plab::GammaClaimsReport rep = plab::verify_gamma_claims(vg_k, vg_tamper);
    plab::RunConfig rc{"verify gamma", seed, {}};
    rc.args["k"] = std::to_string(vg_k);
    if (!vg_tamper.empty()) rc.args["tamper"] = vg_tamper;
    ordered_json body;
    body["report"] = ordered_json::parse(rep.to_json());
    emit_json(rc, body, out_path);
    if (!rep.pass) throw CheckFailed{};
  });

  int vc_samples = 200;
  auto* vc = ver->add_subcommand(
      "corpus", "randomized inequality battery on small exact instances");
  vc->add_option("--samples", vc_samples, "sample count")
      ->check(CLI::PositiveNumber);
  vc->callback([&] {
    plab::CorpusBatteryResult res = plab::corpus_battery(vc_samples, seed);
    plab::RunConfig rc{"verify corpus", seed, {}};
    rc.args["samples"] = std::to_string(vc_samples);
    ordered_json body;
    body["report"] = ordered_json::parse(res.to_json());
    emit_json(rc, body, out_path);
    if (res.violations > 0) throw CheckFailed{};
  });

  int vp_cases = 50;
  double vp_alpha = 1.0 / 150, vp_factor = 30.0, vp_quorum = 0.9;
  auto* vp = ver->add_subcommand(
      "product", "stress the product capacity candidate on seeded subgraphs");
  vp->add_option("--cases", vp_cases, "subgraph count")
      ->check(CLI::PositiveNumber);
  vp->add_option("--alpha", vp_alpha, "capacity level");
  vp->add_option("--factor", vp_factor, "tightness factor vs heuristic");
  vp->add_option("--quorum", vp_quorum,
                 "fraction of cases that must be within the factor");
  vp->callback([&] {
    plab::ProductBatteryResult res =
        plab::product_battery(vp_cases, vp_alpha, seed, vp_factor);
    plab::RunConfig rc{"verify product", seed, {}};
    rc.args["cases"] = std::to_string(vp_cases);
    rc.args["alpha"] = plab::fmt_double(vp_alpha);
    rc.args["factor"] = plab::fmt_double(vp_factor);
    ordered_json body;
    body["report"] = ordered_json::parse(res.to_json());
    emit_json(rc, body, out_path);
    bool ok = res.admissible == res.cases &&
              double(res.within_factor) >= vp_quorum * double(res.cases);
    if (!ok) throw CheckFailed{};
  });

  // ---- classify ----
  std::vector<std::string> cl_weights;
  int cl_k = 1;
  std::string cl_matrix, cl_bs, cl_geometry;
  bool cl_catalog = false;
  double cl_p = 1.0;
  auto* cl = app.add_subcommand(
      "classify", "thin/thick trichotomy and predicted profile shape");
  cl->add_option("--weight", cl_weights,
                 "one weight vector, comma-separated rationals (repeatable)");
  cl->add_option("--k", cl_k, "weight vector dimension");
  cl->add_option("--matrix", cl_matrix,
                 "square matrix rows 'a,b;c,d': weights from eigenvalues");
  cl->add_option("--bs", cl_bs, "solvable Baumslag-Solitar pair 'm,n'");
  cl->add_option("--geometry", cl_geometry,
                 "model geometry: s3 s2xr r3 nil h3 h2xr psl2r sol");
  cl->add_flag("--catalog", cl_catalog, "print the worked example catalog");
  cl->add_option("--p", cl_p, "exponent p >= 1")->check(CLI::Range(1.0, 64.0));
  cl->add_option("--out", out_path, "output file (default stdout)");
  cl->callback([&] {
    plab::RunConfig rc{"classify", seed, {}};
    rc.args["p"] = plab::fmt_double(cl_p);
    ordered_json body;
    int modes = int(!cl_weights.empty()) + int(!cl_matrix.empty()) +
                int(!cl_bs.empty()) + int(!cl_geometry.empty()) +
                int(cl_catalog);
    plab::require(modes == 1,
                  "pick exactly one of --weight/--matrix/--bs/--geometry/"
                  "--catalog");
    if (cl_catalog) {
      rc.args["mode"] = "catalog";
      ordered_json arr = ordered_json::array();
      for (const auto& e : plab::group_catalog())
        arr.push_back(ordered_json::parse(e.to_json()));
      body["catalog"] = arr;
    } else if (!cl_geometry.empty()) {
      rc.args["mode"] = "geometry";
      rc.args["geometry"] = cl_geometry;
      body["profile"] = ordered_json::parse(
          plab::thurston_profile(cl_geometry, cl_p).to_json());
    } else if (!cl_bs.empty()) {
      rc.args["mode"] = "bs";
      rc.args["bs"] = cl_bs;
      auto parts = split_on(cl_bs, ',');
      plab::require(parts.size() == 2, "--bs needs 'm,n'");
      body["profile"] = ordered_json::parse(
          plab::bs_profile(std::stoll(parts[0]), std::stoll(parts[1]), cl_p)
              .to_json());
    } else {
      plab::WeightData wd;
      if (!cl_matrix.empty()) {
        rc.args["mode"] = "matrix";
        rc.args["matrix"] = cl_matrix;
        std::vector<std::vector<double>> A;
        for (const auto& row : split_on(cl_matrix, ';')) {
          A.emplace_back();
          for (const auto& x : split_on(row, ','))
            A.back().push_back(std::stod(x));
        }
        wd = plab::weights_from_matrix(A);
      } else {
        rc.args["mode"] = "weights";
        wd.k = cl_k;
        for (const auto& w : cl_weights) {
          std::vector<plab::ExactRat> row;
          for (const auto& x : split_on(w, ',')) row.push_back(parse_rat(x));
          plab::require(int(row.size()) == cl_k,
                        "weight '" + w + "' must have k entries");
          wd.weights.push_back(row);
        }
      }
      plab::Classification c = plab::classify(wd);
      body["classification"] = ordered_json::parse(c.to_json());
      body["predicted"] =
          ordered_json::parse(plab::predicted_profile(c, cl_p).to_json());
    }
    emit_json(rc, body, out_path);
  });

  // ---- embed ----
  auto* emb = app.add_subcommand("embed", "embedding certificates");
  emb->require_subcommand(1);

  int eb_m = 2, eb_depth = 4;
  long long eb_t = 3;
  auto* ebb = emb->add_subcommand(
      "busemann", "tree-to-halfplane map: exact height recovery");
  ebb->add_option("--m", eb_m, "tree branching (m+1 regular)")
      ->check(CLI::Range(1, 8));
  ebb->add_option("--t", eb_t, "digit base of the map");
  ebb->add_option("--depth", eb_depth, "window depth")->check(CLI::Range(1, 8));
  ebb->callback([&] {
    plab::TreeEmbedding e = plab::bc_tree_embedding(eb_m, eb_t, eb_depth);
    plab::BusemannReport rep = plab::busemann_height_check(e);
    plab::RunConfig rc{"embed busemann", seed, {}};
    rc.args["m"] = std::to_string(eb_m);
    rc.args["t"] = std::to_string(eb_t);
    rc.args["depth"] = std::to_string(eb_depth);
    ordered_json body;
    body["n"] = e.graph.n();
    body["report"] = ordered_json::parse(rep.to_json());
    emit_json(rc, body, out_path);
    if (!rep.pass) throw CheckFailed{};
  });

  int ed_m = 2, ed_depth = 4;
  long long ed_t = 3, ed_pairs = 20000;
  auto* ebd = emb->add_subcommand(
      "distortion", "bilipschitz ratios of the tree-to-halfplane map");
  ebd->add_option("--m", ed_m, "tree branching")->check(CLI::Range(1, 8));
  ebd->add_option("--t", ed_t, "digit base");
  ebd->add_option("--depth", ed_depth, "window depth")
      ->check(CLI::Range(1, 8));
  ebd->add_option("--max-pairs", ed_pairs, "pair budget");
  ebd->callback([&] {
    plab::TreeEmbedding e = plab::bc_tree_embedding(ed_m, ed_t, ed_depth);
    plab::DistortionReport rep =
        plab::tree_embedding_distortion(e, ed_pairs, seed);
    plab::RunConfig rc{"embed distortion", seed, {}};
    rc.args["m"] = std::to_string(ed_m);
    rc.args["t"] = std::to_string(ed_t);
    rc.args["depth"] = std::to_string(ed_depth);
    rc.args["max_pairs"] = std::to_string(ed_pairs);
    ordered_json body;
    body["n"] = e.graph.n();
    body["report"] = ordered_json::parse(rep.to_json());
    emit_json(rc, body, out_path);
  });

  int edl_q = 2, edl_core = 2;
  auto* ebdl = emb->add_subcommand(
      "dl", "lamplighter-type graph into a tree pair: exact distance ratios");
  ebdl->add_option("--q", edl_q, "valence parameter")->check(CLI::Range(2, 4));
  ebdl->add_option("--core", edl_core, "core radius")->check(CLI::Range(2, 4));
  ebdl->callback([&] {
    plab::DLInclusionReport rep = plab::dl_inclusion_check(edl_q, edl_core);
    plab::RunConfig rc{"embed dl", seed, {}};
    rc.args["q"] = std::to_string(edl_q);
    rc.args["core"] = std::to_string(edl_core);
    ordered_json body;
    body["report"] = ordered_json::parse(rep.to_json());
    emit_json(rc, body, out_path);
    if (!rep.pass) throw CheckFailed{};
  });

  int eh_q = 2, eh_core = 4;
  long long eh_pairs = 20000;
  auto* ebh = emb->add_subcommand(
      "horocyclic", "lamplighter-type graph into a halfplane pair");
  ebh->add_option("--q", eh_q, "valence parameter")->check(CLI::Range(2, 4));
  ebh->add_option("--core", eh_core, "core radius")->check(CLI::Range(2, 6));
  ebh->add_option("--max-pairs", eh_pairs, "pair budget");
  ebh->callback([&] {
    plab::HorocyclicReport rep =
        plab::horocyclic_embed_dl(eh_q, eh_core, eh_pairs, seed);
    plab::RunConfig rc{"embed horocyclic", seed, {}};
    rc.args["q"] = std::to_string(eh_q);
    rc.args["core"] = std::to_string(eh_core);
    rc.args["max_pairs"] = std::to_string(eh_pairs);
    ordered_json body;
    body["report"] = ordered_json::parse(rep.to_json());
    emit_json(rc, body, out_path);
    if (!rep.heights_exact) throw CheckFailed{};
  });

  // ---- delta ----
  GraphInput dl_in;
  long long dl_quads = 20000;
  int dl_boundary_pairs = 0;
  auto* del = app.add_subcommand(
      "delta", "four-point hyperbolicity estimate; boundary check for cones");
  dl_in.attach(del);
  del->add_option("--quadruples", dl_quads, "sampled quadruples");
  del->add_option("--boundary-pairs", dl_boundary_pairs,
                  "also check the level-T boundary metric (cone family only)");
  del->add_option("--out", out_path, "output file (default stdout)");
  del->callback([&] {
    plab::RunConfig rc{"delta", seed, {}};
    dl_in.describe(rc);
    rc.args["quadruples"] = std::to_string(dl_quads);
    ordered_json body;
    if (dl_boundary_pairs > 0) {
      plab::require(dl_in.family == "cone",
                    "--boundary-pairs needs --family cone");
      plab::FamilySpec spec = dl_in.spec();
      plab::ModelSpace space = plab::make_model_space(
          spec.space.empty() ? "interval" : spec.space,
          spec.geti("cloud_n", 0));
      plab::ConeGraph cone = plab::make_cone(space, spec.geti("levels", 4),
                                             spec.geti("sample_budget", 0));
      rc.args["boundary_pairs"] = std::to_string(dl_boundary_pairs);
      body["n"] = cone.graph.n();
      body["delta"] = plab::estimate_delta(cone.graph, dl_quads, seed);
      plab::BoundaryReport br =
          plab::boundary_metric_check(cone, dl_boundary_pairs, seed);
      ordered_json bj;
      bj["min_ratio"] = br.min_ratio;
      bj["max_ratio"] = br.max_ratio;
      bj["spread"] = br.spread;
      bj["pairs_used"] = br.pairs_used;
      body["boundary"] = bj;
    } else {
      plab::WeightedGraph g = dl_in.build();
      body["n"] = g.n();
      body["delta"] = plab::estimate_delta(g, dl_quads, seed);
    }
    emit_json(rc, body, out_path);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const CheckFailed&) {
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
