#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "plab/poincare.hpp"
#include "plab/util.hpp"

namespace plab {

namespace {

struct SpectralPair {
  double lambda1 = 0;
  std::vector<double> vec;
};

SpectralPair dense_pair(const WeightedGraph& g) {
  int n = g.n();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    L(x, x) = double(g.degree(x));
    for (int y : g.nbrs(x)) L(x, y) = -1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
  require(es.info() == Eigen::Success, "eigensolver failed");
  SpectralPair out;
  out.lambda1 = es.eigenvalues()(1);  // eigenvalue 0 has multiplicity 1 here
  out.vec.resize(n);
  for (int i = 0; i < n; ++i) out.vec[i] = es.eigenvectors()(i, 1);
  return out;
}

// Lanczos with full reorthogonalization for the top eigenpair of
// B = cI - L restricted to the complement of constants.
SpectralPair lanczos_pair(const WeightedGraph& g, int maxit, double tol,
                          bool strict) {
  int n = g.n();
  double c = 2.0 * double(g.max_degree()) + 1.0;
  auto matvec = [&](const std::vector<double>& v, std::vector<double>& out) {
    for (int x = 0; x < n; ++x) {
      double s = (c - double(g.degree(x))) * v[x];
      for (int y : g.nbrs(x)) s += v[y];
      out[x] = s;
    }
  };
  auto deflate = [&](std::vector<double>& v) {
    double mean = 0;
    for (double x : v) mean += x;
    mean /= double(n);
    for (double& x : v) x -= mean;
  };
  std::vector<std::vector<double>> V;
  std::vector<double> alpha, beta;
  std::vector<double> w(n), q(n);
  Rng rng(0x5eedULL);
  for (int i = 0; i < n; ++i) q[i] = rng_unit(rng) - 0.5;
  deflate(q);
  double nrm = 0;
  for (double x : q) nrm += x * x;
  nrm = std::sqrt(nrm);
  for (double& x : q) x /= nrm;

  double theta = 0, resid = 1e300;
  Eigen::VectorXd top;
  int k = 0;
  for (int it = 0; it < maxit; ++it) {
    V.push_back(q);
    matvec(q, w);
    deflate(w);
    double a = 0;
    for (int i = 0; i < n; ++i) a += w[i] * q[i];
    alpha.push_back(a);
    // two passes of full reorthogonalization
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& v : V) {
        double d = 0;
        for (int i = 0; i < n; ++i) d += w[i] * v[i];
        for (int i = 0; i < n; ++i) w[i] -= d * v[i];
      }
    double b = 0;
    for (double x : w) b += x * x;
    b = std::sqrt(b);
    k = int(alpha.size());
    if (it % 8 == 7 || it + 1 == maxit || b < 1e-13) {
      Eigen::VectorXd diag(k), sub(std::max(k - 1, 0));
      for (int i = 0; i < k; ++i) diag(i) = alpha[i];
      for (int i = 0; i + 1 < k; ++i) sub(i) = beta[i];
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
      es.computeFromTridiagonal(diag, sub);
      theta = es.eigenvalues()(k - 1);
      top = es.eigenvectors().col(k - 1);
      resid = std::fabs(b * top(k - 1));
      if (resid <= tol * std::max(1.0, std::fabs(theta))) break;
    }
    if (b < 1e-13) break;  // invariant subspace reached
    beta.push_back(b);
    for (int i = 0; i < n; ++i) q[i] = w[i] / b;
  }
  require(!strict || resid <= tol * std::max(1.0, std::fabs(theta)) * 10,
          "lanczos did not converge");
  SpectralPair out;
  out.lambda1 = c - theta;
  out.vec.assign(n, 0.0);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n; ++i) out.vec[i] += top(j) * V[j][i];
  return out;
}

SpectralPair spectral_pair(const WeightedGraph& g, bool strict) {
  require(g.finalized(), "spectral: graph not finalized");
  require(g.n() >= 2, "spectral: need at least two vertices");
  require(g.is_connected(), "spectral: graph is disconnected");
  SpectralPair out = g.n() <= 800
                         ? dense_pair(g)
                         : lanczos_pair(g, std::min(g.n() - 1, 320),
                                        strict ? 1e-9 : 1e-6, strict);
  // fix the sign so results do not depend on solver internals
  for (double v : out.vec) {
    if (std::fabs(v) > 1e-12) {
      if (v < 0)
        for (double& x : out.vec) x = -x;
      break;
    }
  }
  return out;
}

}  // namespace

double h2_spectral(const WeightedGraph& g) {
  return spectral_pair(g, true).lambda1;
}

std::vector<double> fiedler_vector(const WeightedGraph& g) {
  return spectral_pair(g, false).vec;
}

}  // namespace plab
