#include "plab/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "plab/families.hpp"
#include "plab/treeaddr.hpp"
#include "plab/util.hpp"

namespace plab {

namespace {

using nlohmann::json;

std::string binstr(long long code, int bits) {
  std::string s;
  bool started = false;
  for (int i = bits - 1; i >= 0; --i) {
    int b = int((code >> i) & 1);
    if (b) started = true;
    if (started) s += char('0' + b);
  }
  return s;  // leading zeros run along the spine and stay implicit
}

std::string slab_vertex_id(int k, int t, long long xc, long long yc) {
  TreeVertex x{(long long)t, binstr(xc, k - t)};
  TreeVertex y{(long long)(-t), binstr(yc, t)};
  return dl_id(DLVertex{x, y});
}

// Enumerates the full path system. Each path visits (level, xcode, ycode)
// triples; Sink::path(t, s, steps, len, weight) is called once per generated
// path; counts per pair are returned for the caller to compare.
struct PathStep {
  int u;
  long long xc, yc;
};

}  // namespace

GammaKFamily build_gamma_k_family(int k) {
  require(k >= 1 && k <= 8, "slab family: k out of range");
  GammaKFamily fam;
  fam.k = k;
  FamilySpec spec;
  spec.family = "dl_gamma_k";
  spec.num["k"] = double(k);
  fam.graph = make_family(spec);
  require(fam.graph.n() == (long long)(k + 1) << k,
          "slab family: unexpected vertex count");
  require(fam.graph.m() == (long long)k << (k + 1),
          "slab family: unexpected edge count");
  fam.level_of.assign(fam.graph.n(), -1);
  for (int t = 0; t <= k; ++t)
    for (long long xc = 0; xc < (1LL << (k - t)); ++xc)
      for (long long yc = 0; yc < (1LL << t); ++yc) {
        int v = fam.graph.index_of(slab_vertex_id(k, t, xc, yc));
        require(v >= 0, "slab family: vertex id mismatch");
        fam.level_of[v] = t;
      }
  return fam;
}

std::string GammaClaimsReport::to_json() const {
  json j;
  j["pass"] = pass;
  j["k"] = k;
  j["size"] = size;
  j["total_paths"] = total_paths;
  j["kappa_max"] = kappa_max;
  j["d_max"] = d_max;
  j["h1_lower"] = h1_lower;
  j["scaled_lower"] = scaled_lower;
  if (!counterexample.empty()) j["counterexample"] = counterexample;
  return j.dump();
}

GammaClaimsReport verify_gamma_claims(int k, const std::string& tamper) {
  require(k >= 1 && k <= 8, "verify claims: k out of range");
  require(tamper.empty() || tamper == "reroute" || tamper == "inflate" ||
              tamper == "drop",
          "verify claims: unknown tamper mode");
  GammaKFamily fam = build_gamma_k_family(k);
  GammaClaimsReport rep;
  rep.k = k;
  rep.size = fam.graph.n();
  rep.d_max = fam.graph.max_degree();

  const int TS = (k + 1) * (k + 2) / 2;
  const long long ecount = 1LL << (k + 1);
  std::vector<std::vector<long long>> incid(
      k, std::vector<long long>((size_t)(TS * ecount), 0));
  std::vector<std::vector<double>> kap(k,
                                       std::vector<double>((size_t)ecount, 0));

  long long pathno = 0;
  const long long tamper_at = 5;
  PathStep steps[40];
  auto fail_claim = [&](const std::string& msg) {
    if (rep.counterexample.empty()) rep.counterexample = msg;
  };

  for (int t = 0; t <= k && rep.counterexample.empty(); ++t)
    for (int s = 0; s <= t && rep.counterexample.empty(); ++s) {
      int ts = t * (t + 1) / 2 + s;
      const long long expect = 1LL << (k - t + s);
      const double w = 1.0 / double(expect);
      for (long long xc = 0; xc < (1LL << (k - t)); ++xc)
        for (long long yc = 0; yc < (1LL << t); ++yc)
          for (long long xpc = 0; xpc < (1LL << (k - s)); ++xpc)
            for (long long ypc = 0; ypc < (1LL << s); ++ypc) {
              if (t == s) {
                long long vcode = xc * (1LL << t) + yc;
                long long wcode = xpc * (1LL << s) + ypc;
                if (vcode >= wcode) continue;  // one orientation per pair
              }
              long long got = 0;
              for (long long suf1 = 0; suf1 < (1LL << (k - t)); ++suf1) {
                long long zp = (yc << (k - t)) | suf1;
                for (long long suf2 = 0; suf2 < (1LL << s); ++suf2) {
                  long long z = (xpc << s) | suf2;
                  ++pathno;
                  int len = 0;
                  for (int u = t; u <= k; ++u)
                    steps[len++] = {u, xc >> (u - t), zp >> (k - u)};
                  for (int u = k - 1; u >= 0; --u)
                    steps[len++] = {u, z >> u, zp >> (k - u)};
                  for (int u = 1; u <= s; ++u)
                    steps[len++] = {u, z >> u, ypc >> (s - u)};
                  if (!tamper.empty() && pathno == tamper_at) {
                    if (tamper == "drop") continue;
                    if (tamper == "reroute") std::swap(steps[1], steps[2]);
                  }
                  int times =
                      (tamper == "inflate" && pathno == tamper_at) ? 2 : 1;
                  for (int rep_i = 0; rep_i < times; ++rep_i) {
                    ++got;
                    if (steps[0].u != t || steps[0].xc != xc ||
                        steps[0].yc != yc || steps[len - 1].u != s ||
                        steps[len - 1].xc != xpc || steps[len - 1].yc != ypc) {
                      fail_claim("path endpoints do not match its pair");
                      break;
                    }
                    for (int i = 0; i + 1 < len; ++i) {
                      const PathStep *lo = &steps[i], *hi = &steps[i + 1];
                      if (lo->u == hi->u + 1) std::swap(lo, hi);
                      if (hi->u != lo->u + 1 || hi->xc != (lo->xc >> 1) ||
                          lo->yc != (hi->yc >> 1)) {
                        fail_claim("invalid step in path " +
                                   std::to_string(pathno));
                        break;
                      }
                      long long e = (lo->xc << (hi->u)) | hi->yc;
                      incid[lo->u][(size_t)(ts * ecount + e)] += 1;
                      kap[lo->u][(size_t)e] += w;
                    }
                  }
                }
              }
              if (!rep.counterexample.empty()) break;
              if (got != expect) {
                fail_claim("pair at levels (" + std::to_string(t) + "," +
                           std::to_string(s) + ") has " + std::to_string(got) +
                           " paths, expected " + std::to_string(expect));
                break;
              }
            }
    }
  rep.total_paths = pathno;

  if (rep.counterexample.empty()) {
    for (int t = 0; t <= k; ++t)
      for (int s = 0; s <= t; ++s) {
        int ts = t * (t + 1) / 2 + s;
        long long bound = 1LL << (2 * k - t + s);
        for (int u = 0; u < k && rep.counterexample.empty(); ++u)
          for (long long e = 0; e < ecount; ++e)
            if (incid[u][(size_t)(ts * ecount + e)] > bound) {
              fail_claim(
                  "edge incidence bound exceeded at levels (" +
                  std::to_string(t) + "," + std::to_string(s) + "): " +
                  std::to_string(incid[u][(size_t)(ts * ecount + e)]) + " > " +
                  std::to_string(bound));
              break;
            }
      }
  }

  double kmax = 0;
  for (int u = 0; u < k; ++u)
    for (long long e = 0; e < ecount; ++e) kmax = std::max(kmax, kap[u][e]);
  rep.kappa_max = kmax;
  if (kmax > 0) {
    rep.h1_lower = double(rep.size) / (kmax * double(rep.d_max));
    rep.scaled_lower = double(k) * rep.h1_lower;
  }
  if (rep.counterexample.empty() && rep.scaled_lower < 0.02)
    fail_claim("congestion bound too weak: k*h1_lower = " +
               std::to_string(rep.scaled_lower));
  rep.pass = rep.counterexample.empty();
  return rep;
}

PathFamily gamma_k_explicit_paths(const GammaKFamily& fam) {
  int k = fam.k;
  require(k <= 3, "explicit paths: k too large to materialize");
  const WeightedGraph& g = fam.graph;
  auto vidx = [&](int t, long long xc, long long yc) {
    int v = g.index_of(slab_vertex_id(k, t, xc, yc));
    require(v >= 0, "explicit paths: missing vertex");
    return v;
  };
  // pair key (v, w) with v < w by graph index
  std::map<std::pair<int, int>, std::vector<std::vector<int>>> acc;
  for (int t = 0; t <= k; ++t)
    for (int s = 0; s <= t; ++s)
      for (long long xc = 0; xc < (1LL << (k - t)); ++xc)
        for (long long yc = 0; yc < (1LL << t); ++yc)
          for (long long xpc = 0; xpc < (1LL << (k - s)); ++xpc)
            for (long long ypc = 0; ypc < (1LL << s); ++ypc) {
              if (t == s) {
                long long vcode = xc * (1LL << t) + yc;
                long long wcode = xpc * (1LL << s) + ypc;
                if (vcode >= wcode) continue;
              }
              int v = vidx(t, xc, yc), w = vidx(s, xpc, ypc);
              for (long long suf1 = 0; suf1 < (1LL << (k - t)); ++suf1) {
                long long zp = (yc << (k - t)) | suf1;
                for (long long suf2 = 0; suf2 < (1LL << s); ++suf2) {
                  long long z = (xpc << s) | suf2;
                  std::vector<int> path;
                  for (int u = t; u <= k; ++u)
                    path.push_back(vidx(u, xc >> (u - t), zp >> (k - u)));
                  for (int u = k - 1; u >= 0; --u)
                    path.push_back(vidx(u, z >> u, zp >> (k - u)));
                  for (int u = 1; u <= s; ++u)
                    path.push_back(vidx(u, z >> u, ypc >> (s - u)));
                  if (w < v) std::reverse(path.begin(), path.end());
                  acc[{std::min(v, w), std::max(v, w)}].push_back(
                      std::move(path));
                }
              }
            }
  PathFamily out;
  for (auto& [key, paths] : acc)
    out.pairs.push_back({key.first, key.second, std::move(paths)});
  recount_kappa(g, out);
  return out;
}

// ---- products ----

std::string RatioReport::to_json() const {
  json j;
  j["ratio"] = ratio;
  j["h_product_lo"] = h_product_lo;
  j["h_a_up"] = h_a_up;
  j["h_b_up"] = h_b_up;
  return j.dump();
}

RatioReport product_lower_check(const WeightedGraph& a, const WeightedGraph& b,
                                double p, const HpConfig& hcfg) {
  RatioReport rep;
  auto ha = hp_bounds(a, p, hcfg);
  auto hb = hp_bounds(b, p, hcfg);
  auto hp = hp_bounds(product(a, b), p, hcfg);
  rep.h_a_up = ha.upper.value;
  rep.h_b_up = hb.upper.value;
  rep.h_product_lo = hp.lower.value;
  double den = std::min(rep.h_a_up, rep.h_b_up);
  require(den > 0, "product check: degenerate factor");
  rep.ratio = rep.h_product_lo / den;
  return rep;
}

WeightedGraph projection_pushforward(const WeightedGraph& g, int coord) {
  require(g.finalized(), "projection: graph not finalized");
  require(coord == 0 || coord == 1, "projection: coord must be 0 or 1");
  std::map<std::string, double> mass;
  auto part = [&](int v) {
    const std::string& id = g.id(v);
    size_t pos = id.find('|');
    require(pos != std::string::npos, "projection: id has no separator");
    return coord == 0 ? id.substr(0, pos) : id.substr(pos + 1);
  };
  for (int v = 0; v < g.n(); ++v) mass[part(v)] += g.mu(v);
  std::set<std::pair<std::string, std::string>> edges;
  for (const auto& [a, b] : g.edges()) {
    std::string pa = part(a), pb = part(b);
    if (pa == pb) continue;
    if (pb < pa) std::swap(pa, pb);
    edges.insert({pa, pb});
  }
  WeightedGraph out;
  for (const auto& [id, mu] : mass) out.add_vertex(id, mu);
  for (const auto& [a, b] : edges) out.add_edge(a, b);
  out.finalize();
  return out;
}

// ---- box coloring ----

namespace {

std::vector<long long> parse_box_coords(const std::string& id) {
  std::vector<long long> out;
  size_t i = 0;
  while (i < id.size()) {
    require(id[i] == 'p' || id[i] == 'm', "box id not coordinate-encoded");
    bool neg = id[i] == 'm';
    ++i;
    long long v = 0;
    bool any = false;
    while (i < id.size() && id[i] >= '0' && id[i] <= '9') {
      v = v * 10 + (id[i] - '0');
      ++i;
      any = true;
    }
    require(any, "box id not coordinate-encoded");
    out.push_back(neg ? -v : v);
    if (i < id.size()) {
      require(id[i] == '_', "box id not coordinate-encoded");
      ++i;
    }
  }
  return out;
}

}  // namespace

ANColoring an_grid_coloring(const WeightedGraph& box, int d, int R) {
  require(box.finalized(), "coloring: graph not finalized");
  require(d >= 1 && d <= 4, "coloring: dimension out of range");
  require(R >= 2, "coloring: scale too small");
  ANColoring col;
  col.d = d;
  col.R = R;
  col.B = std::max(1, R / 2);
  col.nclasses = 1 << d;
  int n = box.n();
  std::vector<std::vector<long long>> coords(n);
  std::vector<long long> mins(d, 0);
  for (int v = 0; v < n; ++v) {
    coords[v] = parse_box_coords(box.id(v));
    require((int)coords[v].size() == d, "coloring: coordinate arity mismatch");
    for (int i = 0; i < d; ++i)
      mins[i] = v == 0 ? coords[v][i] : std::min(mins[i], coords[v][i]);
  }
  std::map<std::vector<long long>, int> cell_ids;
  col.cell_of.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    std::vector<long long> block(d);
    for (int i = 0; i < d; ++i)
      block[i] = (coords[v][i] - mins[i]) / col.B;
    auto [it, fresh] = cell_ids.insert({block, (int)cell_ids.size()});
    col.cell_of[v] = it->second;
  }
  col.class_of_cell.assign(cell_ids.size(), 0);
  col.cell_members.assign(cell_ids.size(), {});
  for (const auto& [block, id] : cell_ids) {
    int cls = 0;
    for (int i = 0; i < d; ++i) cls |= int(block[i] & 1) << i;
    col.class_of_cell[id] = cls;
  }
  for (int v = 0; v < n; ++v) col.cell_members[col.cell_of[v]].push_back(v);
  return col;
}

// ---- product capacity candidate ----

namespace {

int kappa_scale(const WeightedGraph& ambY, int k) {
  require(k >= 1, "kappa scale: k must be positive");
  require(ambY.n() <= 5000, "kappa scale: factor too large");
  const int tmax = 12;
  std::vector<long long> maxcnt(tmax + 1, 0);
  for (int y = 0; y < ambY.n(); ++y) {
    auto dist = ambY.bfs_dist(y);
    std::vector<long long> cnt(tmax + 1, 0);
    for (int v = 0; v < ambY.n(); ++v)
      if (dist[v] >= 0 && dist[v] <= tmax) ++cnt[dist[v]];
    long long run = 0;
    for (int t = 0; t <= tmax; ++t) {
      run += cnt[t];
      maxcnt[t] = std::max(maxcnt[t], run);
    }
  }
  for (int t = 1; t <= tmax; ++t)
    if (maxcnt[t] > k) return t;
  fail("kappa scale: growth never exceeds k within radius 12");
}

}  // namespace

std::string ProductUpperResult::to_json() const {
  json j;
  j["admissible"] = admissible;
  j["case"] = case_tag;
  j["bound"] = bound;
  j["alpha_out"] = alpha_out;
  j["k_used"] = k_used;
  j["kappa_k"] = kappa_k;
  j["diag"] = json::parse(diag.empty() ? "{}" : diag);
  if (F.size() <= 4096 && !F.empty()) j["F"] = F;
  return j.dump();
}

ProductUpperResult product_upper_candidate(const WeightedGraph& gamma,
                                           const WeightedGraph& ambX,
                                           const WeightedGraph& ambY, int d,
                                           double p, double alpha, int k,
                                           const CapacityConfig& ccfg) {
  require(gamma.finalized() && ambX.finalized() && ambY.finalized(),
          "product candidate: graphs not finalized");
  require(p >= 1.0, "product candidate: p must be >= 1");
  require(k >= 1, "product candidate: k must be >= 1");
  require(gamma.n() >= 2, "product candidate: subgraph too small");
  int m = gamma.n();
  double mmass = gamma.total_mu();

  // split ids into the two factors
  std::vector<int> px(m), py(m);
  for (int z = 0; z < m; ++z) {
    const std::string& id = gamma.id(z);
    size_t pos = id.find('|');
    require(pos != std::string::npos, "product candidate: bad vertex id");
    px[z] = ambX.index_of(id.substr(0, pos));
    py[z] = ambY.index_of(id.substr(pos + 1));
    require(px[z] >= 0 && py[z] >= 0,
            "product candidate: vertex not in the ambient product");
  }

  int kappa = kappa_scale(ambY, k);
  int R = std::max(2, kappa / std::max(1, d));
  ANColoring col = an_grid_coloring(ambY, d, R);
  int c2 = col.nclasses;
  double tau = mmass / (4.0 * double(c2));
  double alphastar = 1.0 / (4.0 * double(c2));
  require(alpha > 0 && alpha <= 0.24 * alphastar,
          "product candidate: alpha too large for this construction");
  double alpha_g = alpha / alphastar;

  std::vector<double> cellw(col.cell_members.size(), 0.0);
  for (int z = 0; z < m; ++z) cellw[col.cell_of[py[z]]] += gamma.mu(z);
  int heavy_cell = int(std::max_element(cellw.begin(), cellw.end()) -
                       cellw.begin());

  ProductUpperResult res;
  res.k_used = k;
  res.kappa_k = kappa;
  json diag;
  diag["R"] = R;
  diag["B"] = col.B;
  diag["tau"] = tau;

  std::vector<double> F(m, 0.0);

  if (cellw[heavy_cell] >= tau) {
    res.case_tag = "cell";
    diag["cell_weight"] = cellw[heavy_cell];
    auto dY = ambY.bfs_dist_multi(col.cell_members[heavy_cell]);
    // shrink the cutoff scale until every x-fibre holds at most k of the mass
    std::vector<double> nu(m, 0.0);
    double fibre_max = 0;
    int s_used = 0;
    for (int s = col.B + 1; s >= 1; --s) {
      for (int z = 0; z < m; ++z) {
        double dv = dY[py[z]] < 0 ? 1e18 : double(dY[py[z]]);
        nu[z] = std::max(0.0, 1.0 - dv / double(s));
      }
      std::map<int, double> mux;
      for (int z = 0; z < m; ++z)
        if (nu[z] > 0) mux[px[z]] += nu[z] * gamma.mu(z);
      fibre_max = 0;
      for (const auto& [x, v] : mux) fibre_max = std::max(fibre_max, v);
      s_used = s;
      if (fibre_max <= double(k) + 1e-9) break;
    }
    diag["s_used"] = s_used;
    diag["fibre_max"] = fibre_max;

    // projected graph weighted by the cutoff mass
    std::map<int, double> mux;
    double MX = 0;
    for (int z = 0; z < m; ++z)
      if (nu[z] > 0) {
        mux[px[z]] += nu[z] * gamma.mu(z);
        MX += nu[z] * gamma.mu(z);
      }
    std::set<std::pair<std::string, std::string>> xedges;
    for (const auto& [a, b] : gamma.edges()) {
      if (nu[a] <= 0 || nu[b] <= 0 || px[a] == px[b]) continue;
      std::string ia = ambX.id(px[a]), ib = ambX.id(px[b]);
      if (ib < ia) std::swap(ia, ib);
      xedges.insert({ia, ib});
    }
    WeightedGraph gx;
    for (const auto& [x, mass] : mux) gx.add_vertex(ambX.id(x), mass);
    for (const auto& [a, b] : xedges) gx.add_edge(a, b);
    gx.finalize();

    std::vector<double> gval;
    bool fallback = false;
    try {
      CapacityResult cap = capacity_solve(gx, p, alpha_g, ccfg);
      gval = cap.f;
      diag["cap_upper"] = cap.bounds.upper.value;
    } catch (const std::exception& e) {
      fallback = true;
      gval.assign(gx.n(), 1.0);
      diag["fallback_g"] = std::string(e.what());
    }
    (void)fallback;

    double theta = alpha_g * MX / (2.0 * mmass);
    double q = 1.0 + 1.0 / p;
    for (int z = 0; z < m; ++z) {
      if (nu[z] <= 0) continue;
      int xi = gx.index_of(ambX.id(px[z]));
      require(xi >= 0, "product candidate: projection lookup failed");
      double cut = std::pow(std::min(1.0, nu[z] / theta), q);
      F[z] = std::clamp(gval[xi] * cut, 0.0, 1.0);
    }
  } else {
    res.case_tag = "split";
    // heaviest parity class, split into two separated groups of cells
    std::vector<double> clsw(c2, 0.0);
    for (size_t c = 0; c < cellw.size(); ++c)
      clsw[col.class_of_cell[c]] += cellw[c];
    int heavy_cls = int(std::max_element(clsw.begin(), clsw.end()) -
                        clsw.begin());
    double W = clsw[heavy_cls];
    diag["class_weight"] = W;
    std::vector<int> v0a, v0b;
    double acc = 0;
    bool crossed = false;
    for (size_t c = 0; c < cellw.size(); ++c) {
      if (col.class_of_cell[c] != heavy_cls) continue;
      if (!crossed) {
        for (int y : col.cell_members[c]) v0a.push_back(y);
        acc += cellw[c];
        if (acc >= (W - tau) / 2.0) crossed = true;
      } else {
        for (int y : col.cell_members[c]) v0b.push_back(y);
      }
    }
    diag["split_masses"] = {acc, W - acc};
    require(!v0a.empty() && !v0b.empty(),
            "product candidate: class split degenerate");
    auto dY = ambY.bfs_dist_multi(v0a);
    for (int y : v0b)
      require(dY[y] < 0 || dY[y] >= col.B + 1,
              "product candidate: separation violated");
    for (int z = 0; z < m; ++z) {
      double dv = dY[py[z]] < 0 ? 1e18 : double(dY[py[z]]);
      F[z] = std::min(1.0, dv / double(col.B + 1));
    }
  }

  // exact evaluation; soundness rests on this block alone
  double gp = 0;
  for (int z = 0; z < m; ++z) {
    double g = 0;
    for (int y : gamma.nbrs(z)) g = std::max(g, std::fabs(F[z] - F[y]));
    gp += gamma.mu(z) * std::pow(g, p);
  }
  res.bound = std::pow(gp / mmass, 1.0 / p);
  double lo_mass = 0, hi_mass = 0;
  for (int z = 0; z < m; ++z) {
    if (F[z] <= 1e-9) lo_mass += gamma.mu(z);
    if (F[z] >= 1.0 - 1e-9) hi_mass += gamma.mu(z);
  }
  double half = alpha / 2.0;
  res.admissible = lo_mass >= half * mmass - 1e-9 * mmass &&
                   hi_mass >= half * mmass - 1e-9 * mmass;
  res.alpha_out = res.admissible ? half : 0.0;
  diag["lo_mass"] = lo_mass;
  diag["hi_mass"] = hi_mass;
  res.F = std::move(F);
  res.diag = diag.dump();
  return res;
}

// ---- trees ----

TreeMedianResult tree_median_capacity(const WeightedGraph& g, double p,
                                      double alpha) {
  require(g.finalized(), "median certificate: graph not finalized");
  int n = g.n();
  require(n >= 2, "median certificate: need at least two vertices");
  require(g.is_connected() && g.m() == n - 1,
          "median certificate: input is not a tree");
  require(alpha > 0 && alpha <= 0.25, "median certificate: alpha out of range");
  double M = g.total_mu();
  for (int v = 0; v < n; ++v)
    require(g.mu(v) <= M / 4.0 + 1e-12 * M,
            "median certificate: an atom exceeds a quarter of the mass");

  // median vertex: minimize the heaviest branch
  auto branch_masses = [&](int v) {
    std::vector<double> out;
    std::vector<int> comp(n, -1);
    comp[v] = -2;
    for (int y : g.nbrs(v)) {
      if (comp[y] != -1) continue;
      double mass = 0;
      std::vector<int> stack{y};
      comp[y] = (int)out.size();
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        mass += g.mu(x);
        for (int z : g.nbrs(x))
          if (comp[z] == -1) {
            comp[z] = (int)out.size();
            stack.push_back(z);
          }
      }
      out.push_back(mass);
    }
    return out;
  };
  int median = 0;
  double best_max = 1e300;
  for (int v = 0; v < n; ++v) {
    auto bm = branch_masses(v);
    double mx = bm.empty() ? 0 : *std::max_element(bm.begin(), bm.end());
    if (mx < best_max - 1e-15) {
      best_max = mx;
      median = v;
    }
  }
  require(best_max <= M / 2.0 + 1e-9 * M,
          "median certificate: no vertex halves the mass");

  // take the heaviest branch at the median; it carries at least M/4 when the
  // degree is at most 3
  std::vector<int> owner(n, -1);
  owner[median] = -2;
  std::vector<double> mass;
  std::vector<int> gate;  // branch root adjacent to the median
  for (int y : g.nbrs(median)) {
    if (owner[y] != -1) continue;
    double acc = 0;
    std::vector<int> stack{y};
    owner[y] = (int)mass.size();
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      acc += g.mu(x);
      for (int z : g.nbrs(x))
        if (owner[z] == -1) {
          owner[z] = (int)mass.size();
          stack.push_back(z);
        }
    }
    mass.push_back(acc);
    gate.push_back(y);
  }
  int ci = int(std::max_element(mass.begin(), mass.end()) - mass.begin());
  require(mass[ci] >= M / 4.0 - 1e-9 * M,
          "median certificate: heaviest branch below a quarter");
  require(mass[ci] >= alpha * M - 1e-9 * M &&
              M - mass[ci] >= alpha * M - 1e-9 * M,
          "median certificate: sides not admissible at alpha");

  TreeMedianResult out;
  out.median = median;
  out.f.assign(n, 0.0);
  for (int v = 0; v < n; ++v)
    if (owner[v] == ci) out.f[v] = 1.0;
  double claimed = g.mu(median) + g.mu(gate[ci]);
  double gp = 0;
  for (int x = 0; x < n; ++x) {
    double gr = 0;
    for (int y : g.nbrs(x)) gr = std::max(gr, std::fabs(out.f[x] - out.f[y]));
    gp += g.mu(x) * std::pow(gr, p);
  }
  require(std::fabs(gp - claimed) <= 1e-9 * std::max(1.0, claimed),
          "median certificate: gradient mass mismatch");
  out.upper = std::pow(claimed / M, 1.0 / p);
  return out;
}

}  // namespace plab
