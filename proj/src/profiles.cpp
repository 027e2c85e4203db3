#include "plab/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "plab/certificates.hpp"
#include "plab/families.hpp"
#include "plab/util.hpp"

namespace plab {

namespace {

using nlohmann::json;

std::vector<double> centered(std::vector<double> f) {
  double mean = 0;
  for (double v : f) mean += v;
  mean /= double(f.size());
  for (double& v : f) v -= mean;
  return f;
}

std::string vec_digest_local(const std::vector<double>& f) {
  std::string s;
  for (double v : f) {
    s += fmt_double(v);
    s += ',';
  }
  return fnv1a_hex(s);
}

using Extra = std::pair<std::string, std::vector<double>>;

ProfilePoint eval_point(const WeightedGraph& g, double r,
                        const ProfileOptions& opt,
                        const std::vector<Extra>& extras,
                        const std::string& strategy, const std::string& desc) {
  ProfilePoint pt;
  pt.r = r;
  pt.n = g.n();
  pt.mu_total = g.total_mu();
  pt.desc = desc;
  BoundInterval b = hp_bounds(g, opt.p, opt.hp);
  double hi = b.upper.value;
  pt.strategy = strategy + ":" + b.upper.method;
  pt.witness_digest = fnv1a_hex(b.upper.witness);
  for (const auto& [name, f] : extras) {
    double v = hp_upper_from_witness(g, opt.p, f);
    if (v < hi) {
      hi = v;
      pt.strategy = strategy + ":" + name;
      pt.witness_digest = vec_digest_local(f);
    }
  }
  pt.lo = double(g.n()) * b.lower.value;
  pt.hi = double(g.n()) * hi;
  pt.flagged = !(pt.lo > 0) || pt.hi > 4.0 * pt.lo;
  return pt;
}

double getp(const std::map<std::string, double>& params,
            const std::string& key, double dflt) {
  auto it = params.find(key);
  return it == params.end() ? dflt : it->second;
}

// path length balancing the tree factor so the product profile follows
// r^{1-1/(p+1)}
long long balanced_path_len(long long ntree, double p) {
  return std::max<long long>(2, llround(std::pow(double(ntree), 1.0 / p)));
}

}  // namespace

std::vector<ProfilePoint> poincare_profile(
    const std::string& family, const std::map<std::string, double>& params,
    const ProfileOptions& opt) {
  require(opt.p >= 1.0, "profile: p >= 1");
  std::vector<ProfilePoint> out;
  auto done = [&] {
    return (int)out.size() >= opt.max_points;
  };

  if (family == "tree") {
    int degree = (int)getp(params, "degree", 3);
    for (int depth = 1; depth <= 12 && !done(); ++depth) {
      WeightedGraph g = make_regular_tree(degree, depth);
      if (g.n() > opt.max_n) break;
      out.push_back(eval_point(g, double(g.n()), opt, {}, "balls",
                               "depth=" + std::to_string(depth)));
    }
  } else if (family == "zd_box") {
    int d = (int)getp(params, "d", 2);
    static const int kSides[] = {3,  4,  5,  7,  9,   12,  16,  21,
                                 28, 38, 50, 66, 88,  117, 156, 208};
    for (int side : kSides) {
      if (done()) break;
      double nd = std::pow(double(side), double(d));
      if (nd > double(opt.max_n)) break;
      WeightedGraph g = make_zd_box(d, side);
      out.push_back(eval_point(g, double(g.n()), opt, {}, "boxes",
                               "side=" + std::to_string(side)));
    }
  } else if (family == "heisenberg" || family == "sol" || family == "dl") {
    int rmax = family == "heisenberg" ? 14 : (family == "sol" ? 9 : 11);
    // radius-1 balls are stars; the ladder starts where the geometry does
    for (int radius = 2; radius <= rmax && !done(); ++radius) {
      WeightedGraph g =
          family == "heisenberg" ? make_heisenberg_ball(radius)
          : family == "sol"      ? make_sol_lattice_ball(radius)
                                 : make_dl_ball(2, 2, radius);
      if (g.n() > opt.max_n) break;
      out.push_back(eval_point(g, double(g.n()), opt, {}, "balls",
                               "radius=" + std::to_string(radius)));
    }
  } else if (family == "gamma_k") {
    for (int k = 1; k <= 8 && !done(); ++k) {
      GammaKFamily fam = build_gamma_k_family(k);
      if (fam.graph.n() > opt.max_n) break;
      std::vector<double> ramp(fam.graph.n());
      for (int v = 0; v < fam.graph.n(); ++v) ramp[v] = double(fam.level_of[v]);
      out.push_back(eval_point(fam.graph, double(fam.graph.n()), opt,
                               {{"level_ramp", centered(ramp)}}, "gamma_k",
                               "k=" + std::to_string(k)));
    }
  } else if (family == "tree_x_path") {
    int degree = (int)getp(params, "degree", 3);
    for (int depth = 1; depth <= 10 && !done(); ++depth) {
      WeightedGraph tree = make_regular_tree(degree, depth);
      long long len = balanced_path_len(tree.n(), opt.p);
      if ((long long)tree.n() * len > opt.max_n) break;
      WeightedGraph path = make_path(len);
      WeightedGraph g = product(tree, path);
      // ramp along the path coordinate; ids are "treeid|pathid"
      std::vector<double> ramp(g.n());
      for (int v = 0; v < g.n(); ++v) {
        const std::string& id = g.id(v);
        size_t pos = id.find('|');
        require(pos != std::string::npos, "profile: product id lost its bar");
        int c = path.index_of(id.substr(pos + 1));
        require(c >= 0, "profile: path coordinate lookup failed");
        ramp[v] = double(c);
      }
      out.push_back(eval_point(
          g, double(g.n()), opt, {{"path_ramp", centered(ramp)}}, "product",
          "depth=" + std::to_string(depth) + ",len=" + std::to_string(len)));
    }
  } else if (family.rfind("cone_", 0) == 0) {
    std::string space = family.substr(5);
    if (space == "cantor") space = "cantor_middle_thirds";
    if (space == "cloud") space = "point_cloud";
    int levels = (int)getp(params, "levels", 5);
    for (int t = 1; t <= levels && !done(); ++t) {
      FamilySpec spec;
      spec.family = "cone";
      spec.space = space;
      spec.num["levels"] = double(t);
      spec.num["cloud_n"] = getp(params, "cloud_n", 0);
      WeightedGraph g = make_family(spec);
      if (g.n() > opt.max_n) break;
      out.push_back(eval_point(g, double(g.n()), opt, {}, "cone",
                               "levels=" + std::to_string(t)));
    }
  } else {
    fail("profile: unknown family " + family);
  }
  require(!out.empty(), "profile: no points within the size limit");
  return out;
}

std::vector<ProfilePoint> xi_profile(
    const std::string& family, const std::map<std::string, double>& params,
    const XiOptions& opt) {
  require(opt.p >= 1.0, "xi profile: p >= 1");
  require(opt.alpha > 0 && opt.alpha < 0.25, "xi profile: alpha in (0, 1/4)");
  auto k_of = [&](long long n) -> double {
    if (opt.k_rule == "sqrt") return std::ceil(std::sqrt(double(n)));
    require(opt.k_rule.rfind("const:", 0) == 0,
            "xi profile: k rule is const:N or sqrt");
    double k = std::stod(opt.k_rule.substr(6));
    require(k >= 1, "xi profile: k >= 1");
    return k;
  };
  std::vector<ProfilePoint> out;
  require(family == "tree" || family == "zd_box",
          "xi profile: families tree and zd_box");
  for (int step = 1; step <= 12; ++step) {
    WeightedGraph base;
    std::string desc;
    if (family == "tree") {
      base = make_regular_tree((int)getp(params, "degree", 3), step);
      desc = "depth=" + std::to_string(step);
    } else {
      int side = 2 * step + 1;
      base = make_zd_box((int)getp(params, "d", 2), side);
      desc = "side=" + std::to_string(side);
    }
    if (base.n() > opt.max_n) break;
    double k = k_of(base.n());
    WeightedGraph g = base.with_uniform_mu(k);
    double mass = g.total_mu();
    CapacityResult cap = capacity_solve(g, opt.p, opt.alpha, opt.cap);
    ProfilePoint pt;
    pt.r = mass;
    pt.n = g.n();
    pt.mu_total = mass;
    pt.desc = desc + ",k=" + fmt_double(k);
    pt.lo = mass * cap.bounds.lower.value;
    double hi = cap.bounds.upper.value;
    pt.strategy = "mu_balls:" + cap.bounds.upper.method;
    pt.witness_digest = fnv1a_hex(cap.bounds.upper.witness);
    if (family == "tree") {
      TreeMedianResult med = tree_median_capacity(g, opt.p, opt.alpha);
      if (med.upper < hi) {
        hi = med.upper;
        pt.strategy = "mu_balls:median";
        pt.witness_digest = vec_digest_local(med.f);
      }
    }
    pt.hi = mass * hi;
    pt.flagged = !(pt.lo > 0) || pt.hi > 4.0 * pt.lo;
    out.push_back(std::move(pt));
  }
  require(!out.empty(), "xi profile: no points within the size limit");
  return out;
}

std::string FitResult::to_json() const {
  json j;
  j["model"] = model;
  j["a"] = a;
  j["b"] = b;
  j["c"] = c;
  j["a_power"] = a_power;
  j["rms_power"] = rms_power;
  j["rms_power_log"] = rms_power_log;
  j["rms_n_over_log"] = rms_n_over_log;
  j["basis"] = basis;
  j["used_points"] = used_points;
  return j.dump();
}

FitResult fit_growth(const std::vector<ProfilePoint>& pts_in) {
  std::vector<ProfilePoint> pts = pts_in;
  std::sort(pts.begin(), pts.end(),
            [](const ProfilePoint& a, const ProfilePoint& b) {
              return a.r < b.r;
            });
  require(pts.size() >= 4, "fit: need at least 4 points");
  require(pts.front().r >= 3, "fit: points too small to take log log");
  require(pts.back().r >= pts.front().r * std::pow(10.0, 1.5),
          "fit: points span less than 1.5 decades");
  size_t drop = pts.size() / 5;
  pts.erase(pts.begin(), pts.begin() + drop);

  FitResult fit;
  bool certified = true;
  for (const auto& pt : pts) {
    require(pt.hi > 0, "fit: nonpositive upper value");
    if (pt.flagged || !(pt.lo > 0)) certified = false;
  }
  fit.basis = certified ? "certified" : "uncertified_upper";
  fit.used_points = (int)pts.size();

  int m = (int)pts.size();
  std::vector<double> x(m), y(m), z(m);
  for (int i = 0; i < m; ++i) {
    x[i] = std::log(pts[i].r);
    z[i] = std::log(x[i]);
    y[i] = certified ? 0.5 * (std::log(pts[i].lo) + std::log(pts[i].hi))
                     : std::log(pts[i].hi);
  }
  auto rms_of = [&](auto pred) {
    double s = 0;
    for (int i = 0; i < m; ++i) {
      double e = y[i] - pred(i);
      s += e * e;
    }
    return std::sqrt(s / double(m));
  };

  // power: y = c + a x
  {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < m; ++i) {
      sx += x[i];
      sy += y[i];
      sxx += x[i] * x[i];
      sxy += x[i] * y[i];
    }
    double den = double(m) * sxx - sx * sx;
    require(std::fabs(den) > 1e-12, "fit: degenerate abscissas");
    double a = (double(m) * sxy - sx * sy) / den;
    double c = (sy - a * sx) / double(m);
    fit.a_power = a;
    fit.rms_power = rms_of([&](int i) { return c + a * x[i]; });
    fit.model = "power";
    fit.a = a;
    fit.b = 0;
    fit.c = c;
  }

  // power_log: y = c + a x + b log x
  double apl = 0, bpl = 0, cpl = 0;
  {
    Eigen::Matrix3d M = Eigen::Matrix3d::Zero();
    Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
    for (int i = 0; i < m; ++i) {
      Eigen::Vector3d v(1.0, x[i], z[i]);
      M += v * v.transpose();
      rhs += y[i] * v;
    }
    Eigen::Vector3d sol = M.fullPivLu().solve(rhs);
    cpl = sol[0];
    apl = sol[1];
    bpl = sol[2];
    fit.rms_power_log = rms_of([&](int i) { return cpl + apl * x[i] + bpl * z[i]; });
  }

  // n_over_log: y = c + (x - log x)
  double cnl = 0;
  {
    for (int i = 0; i < m; ++i) cnl += y[i] - (x[i] - z[i]);
    cnl /= double(m);
    fit.rms_n_over_log = rms_of([&](int i) { return cnl + x[i] - z[i]; });
  }

  const double kEdge = 0.02;
  bool pl_wins = fit.rms_power_log <= fit.rms_power - kEdge;
  bool nl_wins = fit.rms_n_over_log <= fit.rms_power - kEdge;
  if (pl_wins || nl_wins) {
    if (nl_wins && !(pl_wins && fit.rms_power_log <= fit.rms_n_over_log - kEdge)) {
      fit.model = "n_over_log";
      fit.a = 1;
      fit.b = -1;
      fit.c = cnl;
    } else {
      fit.model = "power_log";
      fit.a = apl;
      fit.b = bpl;
      fit.c = cpl;
    }
  }
  return fit;
}

std::string PredictionCheck::to_json() const {
  json j;
  j["match"] = match;
  j["notes"] = notes;
  return j.dump();
}

PredictionCheck compare_with_prediction(const FitResult& fit,
                                        const ProfileForm& predicted) {
  PredictionCheck out;
  std::ostringstream os;
  const double tol = 0.1;
  if (predicted.kind == "power") {
    out.match = fit.model == "power" && std::fabs(fit.a - predicted.a) <= tol;
    os << "fit " << fit.model << " a=" << fmt_double(fit.a) << " vs r^"
       << fmt_double(predicted.a);
  } else if (predicted.kind == "constant") {
    out.match = fit.model == "power" && std::fabs(fit.a) <= 0.15;
    os << "fit " << fit.model << " a=" << fmt_double(fit.a) << " vs constant";
  } else if (predicted.kind == "n_over_log") {
    out.match = fit.model == "n_over_log";
    os << "fit " << fit.model << " vs r/log r";
  } else if (predicted.kind == "power_log") {
    out.match = fit.model == "power_log" &&
                std::fabs(fit.a - predicted.a) <= tol;
    os << "fit " << fit.model << " a=" << fmt_double(fit.a) << " vs r^"
       << fmt_double(predicted.a) << " log^" << fmt_double(predicted.b);
  } else if (predicted.kind == "power_band") {
    out.match = fit.model == "power" && fit.a >= predicted.lo - tol &&
                fit.a <= predicted.hi + tol;
    os << "fit " << fit.model << " a=" << fmt_double(fit.a) << " vs band ["
       << fmt_double(predicted.lo) << ", " << fmt_double(predicted.hi) << "]";
  } else {
    fail("compare: unknown predicted kind " + predicted.kind);
  }
  out.notes = os.str();
  return out;
}

std::string profile_csv(const std::vector<ProfilePoint>& pts,
                        const std::string& family, double p, double alpha,
                        const std::string& k_rule,
                        const std::string& run_header) {
  std::ostringstream os;
  if (!run_header.empty()) os << run_header << "\n";
  os << "family,p,alpha,k_rule,r,n,value_lo,value_hi,strategy,witness_digest\n";
  for (const auto& pt : pts) {
    os << family << ',' << fmt_double(p) << ',' << fmt_double(alpha) << ','
       << k_rule << ',' << fmt_double(pt.r) << ',' << pt.n << ','
       << fmt_double(pt.lo) << ',' << fmt_double(pt.hi) << ',' << pt.strategy
       << ',' << pt.witness_digest << "\n";
  }
  return os.str();
}

std::vector<ProfilePoint> profile_from_csv(const std::string& text) {
  std::vector<ProfilePoint> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("family,", 0) == 0)
      continue;
    std::vector<std::string> f;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.push_back("");
    require(f.size() == 10, "csv: expected 10 columns");
    ProfilePoint pt;
    pt.r = std::stod(f[4]);
    pt.n = std::stoll(f[5]);
    pt.lo = std::stod(f[6]);
    pt.hi = std::stod(f[7]);
    pt.strategy = f[8];
    pt.witness_digest = f[9];
    pt.mu_total = pt.r;
    pt.flagged = !(pt.lo > 0) || pt.hi > 4.0 * pt.lo;
    out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace plab
