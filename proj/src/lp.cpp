#include "plab/lp.hpp"

#include <cmath>
#include <vector>

#include "plab/util.hpp"

namespace plab {

namespace {

constexpr double kTol = 1e-9;

struct Tableau {
  int m, ncols;
  std::vector<std::vector<double>> a;  // m rows
  std::vector<double> b;               // m
  std::vector<double> z;               // ncols objective row
  double zval = 0;
  std::vector<int> basis;

  void pivot(int r, int col) {
    double piv = a[r][col];
    for (int j = 0; j < ncols; ++j) a[r][j] /= piv;
    b[r] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == r) continue;
      double f = a[i][col];
      if (std::fabs(f) < 1e-14) continue;
      for (int j = 0; j < ncols; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    double f = z[col];
    if (std::fabs(f) > 1e-14) {
      for (int j = 0; j < ncols; ++j) z[j] -= f * a[r][j];
      zval -= f * b[r];
    }
    basis[r] = col;
  }

  // Bland's rule: smallest eligible entering column, smallest basis index on
  // ratio ties. allowed(j) gates entering columns.
  // Returns 0 done, 1 unbounded.
  template <class Allowed>
  int run(const Allowed& allowed) {
    for (long long iter = 0; iter < 200000; ++iter) {
      int col = -1;
      for (int j = 0; j < ncols; ++j)
        if (allowed(j) && z[j] < -kTol) {
          col = j;
          break;
        }
      if (col < 0) return 0;
      int row = -1;
      double best = 0;
      for (int i = 0; i < m; ++i) {
        if (a[i][col] <= kTol) continue;
        double ratio = b[i] / a[i][col];
        if (row < 0 || ratio < best - kTol ||
            (ratio < best + kTol && basis[i] < basis[row])) {
          row = i;
          best = ratio;
        }
      }
      if (row < 0) return 1;
      pivot(row, col);
    }
    fail("simplex iteration limit");
  }
};

}  // namespace

LPResult solve_lp(const LinearProgram& lp) {
  int m = (int)lp.rows.size();
  int n = lp.nvars;
  // Columns: structural | slack/surplus (one per inequality) | artificial.
  int nslack = 0;
  for (auto& r : lp.rows)
    if (r.rel != '=') nslack++;
  Tableau t;
  t.m = m;
  t.ncols = n + nslack + m;
  t.a.assign(m, std::vector<double>(t.ncols, 0.0));
  t.b.resize(m);
  t.basis.assign(m, -1);
  int art0 = n + nslack;
  int si = 0;
  for (int i = 0; i < m; ++i) {
    const auto& row = lp.rows[i];
    double sgn = row.b < 0 ? -1.0 : 1.0;
    for (auto& [j, v] : row.a) {
      require(j >= 0 && j < n, "lp row references unknown var");
      t.a[i][j] += sgn * v;
    }
    t.b[i] = sgn * row.b;
    if (row.rel != '=') {
      double s = (row.rel == '<') ? 1.0 : -1.0;
      t.a[i][n + si] = sgn * s;
      si++;
    }
    t.a[i][art0 + i] = 1.0;
    t.basis[i] = art0 + i;
  }

  // Phase 1: minimize sum of artificials.
  t.z.assign(t.ncols, 0.0);
  t.zval = 0;
  for (int i = 0; i < m; ++i) t.z[art0 + i] = 1.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < t.ncols; ++j) t.z[j] -= t.a[i][j];
    t.zval -= t.b[i];
  }
  t.run([](int) { return true; });
  LPResult res;
  if (-t.zval > 1e-7) {
    res.feasible = false;
    return res;
  }
  // Drive remaining artificials out of the basis; drop redundant rows by
  // leaving their (zero-valued) artificial basic but barred from re-entry.
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < art0) continue;
    for (int j = 0; j < art0; ++j)
      if (std::fabs(t.a[i][j]) > 1e-7) {
        t.pivot(i, j);
        break;
      }
  }

  // Phase 2.
  t.z.assign(t.ncols, 0.0);
  t.zval = 0;
  for (int j = 0; j < n; ++j) t.z[j] = lp.c[j];
  for (int i = 0; i < m; ++i) {
    int bj = t.basis[i];
    double cb = (bj < n) ? lp.c[bj] : 0.0;
    if (cb == 0.0) continue;
    for (int j = 0; j < t.ncols; ++j) t.z[j] -= cb * t.a[i][j];
    t.zval -= cb * t.b[i];
  }
  int rc = t.run([&](int j) { return j < art0; });
  res.feasible = true;
  if (rc == 1) {
    res.bounded = false;
    return res;
  }
  res.x.assign(n, 0.0);
  for (int i = 0; i < m; ++i)
    if (t.basis[i] < n) res.x[t.basis[i]] = t.b[i];
  res.value = -t.zval;
  return res;
}

}  // namespace plab
