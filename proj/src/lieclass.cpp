#include "plab/lieclass.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "plab/util.hpp"

namespace plab {

namespace {

using Rat = boost::multiprecision::cpp_rational;
using nlohmann::json;

Rat to_rat(const ExactRat& r) {
  require(r.den != 0, "weight with zero denominator");
  return Rat(r.num, r.den);
}

std::vector<std::vector<Rat>> weight_matrix(const WeightData& w) {
  std::vector<std::vector<Rat>> out;
  for (const auto& vec : w.weights) {
    require((int)vec.size() == w.k, "weight arity does not match k");
    std::vector<Rat> row;
    for (const auto& c : vec) row.push_back(to_rat(c));
    out.push_back(std::move(row));
  }
  return out;
}

bool is_zero(const std::vector<Rat>& v) {
  for (const auto& c : v)
    if (c != 0) return false;
  return true;
}

int rat_rank(std::vector<std::vector<Rat>> rows, int cols) {
  int rank = 0;
  for (int c = 0; c < cols && rank < (int)rows.size(); ++c) {
    int piv = -1;
    for (int r = rank; r < (int)rows.size(); ++r)
      if (rows[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    for (int r = 0; r < (int)rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      Rat f = rows[r][c] / rows[rank][c];
      for (int cc = c; cc < cols; ++cc) rows[r][cc] -= f * rows[rank][cc];
    }
    ++rank;
  }
  return rank;
}

// Unique solution of an (k+1) x m barycentric system for a size-m subset:
// sum lambda_i w_i = 0, sum lambda_i = 1. Returns false when the subset is
// affinely dependent or the system is inconsistent.
bool barycentric_nonneg(const std::vector<std::vector<Rat>>& pts, int k) {
  int m = (int)pts.size();
  int rows = k + 1;
  // augmented [A | b], columns are the lambdas
  std::vector<std::vector<Rat>> a(rows, std::vector<Rat>(m + 1, 0));
  for (int i = 0; i < m; ++i) {
    for (int c = 0; c < k; ++c) a[c][i] = pts[i][c];
    a[k][i] = 1;
  }
  a[k][m] = 1;
  int rank = 0;
  std::vector<int> piv_col;
  for (int c = 0; c < m && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (a[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[rank], a[piv]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      Rat f = a[r][c] / a[rank][c];
      for (int cc = c; cc <= m; ++cc) a[r][cc] -= f * a[rank][cc];
    }
    piv_col.push_back(c);
    ++rank;
  }
  if (rank < m) return false;  // affinely dependent, smaller subsets cover it
  for (int r = rank; r < rows; ++r)
    if (a[r][m] != 0) return false;  // inconsistent
  for (int i = 0; i < m; ++i) {
    Rat lam = a[i][m] / a[i][piv_col[i]];
    if (lam < 0) return false;
  }
  return true;
}

double rat_to_double(const Rat& r) {
  return r.convert_to<double>();
}

}  // namespace

int weight_span_rank(const WeightData& w) {
  auto rows = weight_matrix(w);
  return rat_rank(rows, w.k);
}

bool is_nc(const WeightData& w) {
  auto rows = weight_matrix(w);
  std::vector<std::vector<Rat>> nz;
  for (auto& r : rows)
    if (!is_zero(r)) nz.push_back(std::move(r));
  if (nz.empty()) return true;
  int n = (int)nz.size();
  int cap = std::min(n, w.k + 1);
  std::vector<int> pick;
  // subsets of size 1..k+1; 0 is in the hull iff some affinely independent
  // subset carries it with nonnegative barycentric coordinates
  std::vector<std::vector<Rat>> sub;
  std::function<bool(int, int)> rec = [&](int start, int need) {
    if (need == 0) {
      sub.clear();
      for (int i : pick) sub.push_back(nz[i]);
      return barycentric_nonneg(sub, w.k);
    }
    for (int i = start; i + need <= n; ++i) {
      pick.push_back(i);
      if (rec(i + 1, need - 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  for (int sz = 1; sz <= cap; ++sz) {
    pick.clear();
    if (rec(0, sz)) return false;
  }
  return true;
}

ProfileForm form_constant() { return {"constant", 0, 0, 0, 0}; }
ProfileForm form_power(double a) { return {"power", a, 0, 0, 0}; }
ProfileForm form_power_log(double a, double b) {
  return {"power_log", a, b, 0, 0};
}
ProfileForm form_n_over_log() { return {"n_over_log", 1.0, -1.0, 0, 0}; }
ProfileForm form_power_band(double lo, double hi) {
  return {"power_band", 0, 0, lo, hi};
}

std::string ProfileForm::to_string() const {
  std::ostringstream os;
  if (kind == "constant") os << "~ 1";
  else if (kind == "power") os << "~ r^" << fmt_double(a);
  else if (kind == "power_log")
    os << "~ r^" << fmt_double(a) << " log(r)^" << fmt_double(b);
  else if (kind == "n_over_log") os << "~ r / log r";
  else if (kind == "power_band")
    os << "between r^" << fmt_double(lo) << " and r^" << fmt_double(hi);
  else os << "?";
  return os.str();
}

std::string ProfileForm::to_json() const {
  json j;
  j["kind"] = kind;
  if (kind == "power" || kind == "power_log") j["a"] = a;
  if (kind == "power_log") j["b"] = b;
  if (kind == "power_band") {
    j["lo"] = lo;
    j["hi"] = hi;
  }
  j["text"] = to_string();
  return j.dump();
}

std::string Classification::to_json() const {
  json j;
  j["kind"] = kind;
  if (kind == "polynomial") j["growth_degree"] = growth_degree;
  if (kind == "thin") {
    j["Q"] = Q;
    j["n_w"] = n_w;
    j["flat"] = flat;
    j["equal_weights"] = equal_weights;
  }
  return j.dump();
}

Classification classify(const WeightData& w) {
  require(w.k >= 1, "classify: k must be positive");
  require(!w.weights.empty(), "classify: no weights given");
  auto rows = weight_matrix(w);
  std::vector<std::vector<Rat>> nz;
  int zeros = 0;
  for (auto& r : rows) {
    if (is_zero(r)) ++zeros;
    else nz.push_back(std::move(r));
  }
  Classification c;
  if (nz.empty()) {
    c.kind = "polynomial";
    c.growth_degree = double(w.weights.size()) + double(w.k);
    return c;
  }
  WeightData nzd;
  nzd.k = w.k;
  for (const auto& r : nz) {
    std::vector<ExactRat> vec;
    for (const auto& q : r)
      vec.push_back(ExactRat{numerator(q).convert_to<long long>(),
                             denominator(q).convert_to<long long>()});
    nzd.weights.push_back(vec);
  }
  if (!is_nc(nzd)) {
    c.kind = "thick";
    return c;
  }
  c.kind = "thin";
  int r = weight_span_rank(nzd);
  require(r == 1,
          "classify: one-sided weights of rank >= 2 are not modeled");
  // all weights are positive multiples of one direction; extract the scalars
  int ref = 0;
  while (ref < w.k && nz[0][ref] == 0) ++ref;
  std::vector<Rat> scal;
  for (const auto& row : nz) scal.push_back(row[ref] / nz[0][ref]);
  Rat mn = scal[0];
  for (const auto& s : scal) {
    require(s > 0, "classify: one-sided weights with mixed sign scalars");
    mn = std::min(mn, s);
  }
  Rat q = 0;
  bool equal = true;
  for (const auto& s : scal) {
    q += s / mn;
    if (s != scal[0]) equal = false;
  }
  c.Q = rat_to_double(q);
  c.n_w = (int)nz.size();
  c.flat = zeros + (w.k - 1);
  c.equal_weights = equal;
  return c;
}

ProfileForm predicted_profile(const Classification& c, double p) {
  require(p >= 1, "predicted profile: p >= 1");
  if (c.kind == "polynomial") {
    double d = c.growth_degree;
    require(d >= 1, "predicted profile: degenerate growth degree");
    if (d == 1) return form_constant();
    return form_power(1.0 - 1.0 / d);
  }
  if (c.kind == "thick") return form_n_over_log();
  require(c.kind == "thin", "predicted profile: unknown kind");
  double d = double(c.flat);
  if (c.Q <= 0) return form_power(1.0 - 1.0 / (p + d));
  if (!c.equal_weights) {
    double lo = 1.0 - 1.0 / (double(c.n_w) + d);
    double hi = 1.0 - 1.0 / (c.Q + d);
    if (p < double(c.n_w)) return form_power_band(lo, hi);
    return form_power_band(1.0 - 1.0 / (p + d), hi);
  }
  if (p < c.Q) return form_power(1.0 - 1.0 / (c.Q + d));
  if (p == c.Q)
    return form_power_log(1.0 - 1.0 / (c.Q + d), 1.0 / (c.Q + d));
  return form_power(1.0 - 1.0 / (p + d));
}

WeightData weights_from_matrix(const std::vector<std::vector<double>>& A) {
  int d = (int)A.size();
  require(d >= 1, "weights: empty matrix");
  Eigen::MatrixXd M(d, d);
  for (int i = 0; i < d; ++i) {
    require((int)A[i].size() == d, "weights: matrix not square");
    for (int j = 0; j < d; ++j) M(i, j) = A[i][j];
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(M);
  require(es.info() == Eigen::Success, "weights: eigensolver failed");
  WeightData w;
  w.k = 1;
  std::vector<double> re;
  for (int i = 0; i < d; ++i) re.push_back(es.eigenvalues()[i].real());
  std::sort(re.begin(), re.end());
  for (double x : re) {
    // continued-fraction snap to a nearby rational
    long long bestn = 0, bestd = 1;
    bool found = false;
    double ax = std::fabs(x);
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = ax;
    for (int it = 0; it < 40 && !found; ++it) {
      long long a = (long long)std::floor(frac);
      long long p2 = a * p1 + p0, q2 = a * q1 + q0;
      if (q2 > 1000000 || q2 <= 0) break;
      if (std::fabs(ax - double(p2) / double(q2)) <= 1e-8) {
        bestn = p2;
        bestd = q2;
        found = true;
        break;
      }
      p0 = p1;
      q0 = q1;
      p1 = p2;
      q1 = q2;
      double rem = frac - double(a);
      if (rem < 1e-15) break;
      frac = 1.0 / rem;
    }
    require(found, "weights: eigenvalue real part is not a small rational");
    w.weights.push_back({ExactRat{x < 0 ? -bestn : bestn, bestd}});
  }
  return w;
}

ProfileForm bs_profile(long long m, long long n, double p) {
  require(m != 0 && n != 0, "bs profile: m, n nonzero");
  require(p >= 1, "bs profile: p >= 1");
  long long am = std::llabs(m), an = std::llabs(n);
  if (am == 1 && an == 1) return form_power(0.5);
  if (am == an) return form_power(1.0 - 1.0 / (p + 1.0));
  return form_n_over_log();
}

ProfileForm thurston_profile(const std::string& geometry, double p) {
  require(p == 1.0, "thurston profile: only the p = 1 row is tabulated");
  if (geometry == "s3") return form_constant();
  if (geometry == "s2xr") return form_constant();
  if (geometry == "r3") return form_power(2.0 / 3.0);
  if (geometry == "nil") return form_power(3.0 / 4.0);
  if (geometry == "h3") return form_power(1.0 / 2.0);
  if (geometry == "h2xr" || geometry == "psl2r")
    return form_power_log(1.0 / 2.0, 1.0 / 2.0);
  if (geometry == "sol") return form_n_over_log();
  fail("thurston profile: unknown geometry " + geometry);
}

std::string CatalogEntry::to_json() const {
  json j;
  j["name"] = name;
  j["description"] = description;
  j["verdict"] = verdict;
  j["predicted"] = json::parse(predicted.to_json());
  if (!graph_family.empty()) {
    j["graph_family"] = graph_family;
    json p;
    for (const auto& [key, v] : graph_params) p[key] = v;
    j["graph_params"] = p;
  }
  return j.dump();
}

std::vector<CatalogEntry> group_catalog() {
  std::vector<CatalogEntry> out;
  auto add = [&](CatalogEntry e) { out.push_back(std::move(e)); };

  add({"r3", "abelian R^3", "polynomial growth, degree 3",
       form_power(2.0 / 3.0), "zd_box", {{"d", 3}}});
  add({"nil", "Heisenberg group", "polynomial growth, degree 4",
       form_power(3.0 / 4.0), "heisenberg_ball", {}});
  add({"sol", "SOL = R^2 x| R, weights {1,-1}",
       "thick: 0 inside the weight hull", form_n_over_log(),
       "sol_lattice_ball", {}});
  add({"h3", "H^3 = R^2 x| R, weights {1,1}", "thin: Q = 2",
       form_power(1.0 / 2.0), "", {}});
  add({"h2xr", "H^2 x R, weights {1,0}", "thin: Q = 1 with one flat direction",
       form_power_log(1.0 / 2.0, 1.0 / 2.0), "", {}});
  add({"heintze_1_2", "R^2 x| R, weights {1,2}",
       "thin: unequal weights, exponent between the endpoints",
       form_power_band(1.0 / 2.0, 2.0 / 3.0), "", {}});
  add({"osc", "oscillator group: R acting on Heisenberg by rotation",
       "polynomial growth, degree 5 (compact displacement action)",
       form_power(4.0 / 5.0), "", {}});
  add({"bs_2_3", "BS(2,3)", "nonunimodular |m| != |n|: r / log r",
       form_n_over_log(), "dl_gamma_k", {}});
  return out;
}

}  // namespace plab
