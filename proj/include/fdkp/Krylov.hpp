#pragma once

#include <Eigen/Dense>
#include <functional>
#include <random>

namespace fdkp {

using LinearMap = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct MinresResult {
  Eigen::VectorXd x;
  int iterations = 0;
  double relResidual = 0.0;
  bool converged = false;
};

/// Preconditioned MINRES for symmetric (possibly indefinite) A with an SPD
/// preconditioner P ~ A^-1. Solves A x = b to ||r||_P <= tol ||b||_P.
inline MinresResult minres(const LinearMap& A, const Eigen::VectorXd& b, const LinearMap& P,
                           double tol = 1e-10, int maxIter = 500) {
  using Eigen::VectorXd;
  const auto n = b.size();
  MinresResult res;
  res.x = VectorXd::Zero(n);

  VectorXd v = b;  // unpreconditioned residual
  VectorXd z = P(v);
  double beta = std::sqrt(v.dot(z));
  if (!(beta > 0)) {
    res.converged = true;
    return res;
  }
  const double beta1 = beta;
  v /= beta;
  z /= beta;
  VectorXd vOld = VectorXd::Zero(n), zOld = VectorXd::Zero(n);
  VectorXd w = VectorXd::Zero(n), wOld = VectorXd::Zero(n);
  double etaBar = beta;
  double cOld = 1.0, c = 1.0, sOld = 0.0, s = 0.0;

  for (int it = 1; it <= maxIter; ++it) {
    VectorXd Az = A(z);
    const double alpha = z.dot(Az);
    VectorXd vNew = Az - alpha * v - beta * vOld;
    VectorXd zNew = P(vNew);
    double betaNew = std::sqrt(std::max(0.0, vNew.dot(zNew)));

    // Givens rotation on the tridiagonal column [beta, alpha, betaNew].
    const double delta = c * alpha - cOld * s * beta;
    const double rho1 = std::hypot(delta, betaNew);
    const double rho2 = s * alpha + cOld * c * beta;
    const double rho3 = sOld * beta;
    const double cNew = rho1 > 0 ? delta / rho1 : 1.0;
    const double sNew = rho1 > 0 ? betaNew / rho1 : 0.0;

    VectorXd wNew = (z - rho3 * wOld - rho2 * w) / rho1;
    res.x += (cNew * etaBar) * wNew;
    etaBar = -sNew * etaBar;

    res.iterations = it;
    res.relResidual = std::abs(etaBar) / beta1;
    if (res.relResidual <= tol) {
      res.converged = true;
      break;
    }
    if (betaNew == 0.0) {
      res.converged = true;
      break;
    }

    vOld.swap(v);
    v = vNew / betaNew;
    z = zNew / betaNew;
    wOld.swap(w);
    w.swap(wNew);
    cOld = c;
    c = cNew;
    sOld = s;
    s = sNew;
    beta = betaNew;
  }
  return res;
}

struct LanczosResult {
  Eigen::VectorXd ritzValues;   // eigenvalue estimates of the operator, all computed
  Eigen::VectorXd residuals;    // Ritz residual bounds, same order
  int iterations = 0;
  bool converged = false;
};

/// Symmetric Lanczos with full reorthogonalization; returns the Ritz values of
/// A sorted by decreasing magnitude. Convergence is judged on the `wanted`
/// leading magnitudes via the classical beta * |last component| bound.
inline LanczosResult lanczosSpectrum(const LinearMap& A, Eigen::Index n, int wanted, int maxIter,
                                     double tol = 1e-8, unsigned seed = 12345,
                                     const Eigen::VectorXd* start = nullptr) {
  using Eigen::MatrixXd;
  using Eigen::VectorXd;
  LanczosResult out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  VectorXd v(n);
  if (start) {
    v = *start;
  } else {
    for (Eigen::Index i = 0; i < n; ++i) v[i] = gauss(rng);
  }
  v.normalize();

  MatrixXd V(n, maxIter);
  VectorXd alphas(maxIter), betas(maxIter);
  int m = 0;
  VectorXd w;
  double betaPrev = 0.0;
  VectorXd vPrev = VectorXd::Zero(n);

  for (int j = 0; j < maxIter; ++j) {
    V.col(j) = v;
    w = A(v);
    const double alpha = v.dot(w);
    w -= alpha * v + betaPrev * vPrev;
    // full reorthogonalization, twice
    for (int pass = 0; pass < 2; ++pass)
      w -= V.leftCols(j + 1) * (V.leftCols(j + 1).transpose() * w);
    const double beta = w.norm();
    alphas[j] = alpha;
    betas[j] = beta;
    m = j + 1;

    if (m >= wanted + 2 || beta < 1e-14) {
      // Ritz values of the current tridiagonal.
      MatrixXd T = MatrixXd::Zero(m, m);
      for (int i = 0; i < m; ++i) {
        T(i, i) = alphas[i];
        if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = betas[i];
      }
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(T);
      VectorXd theta = es.eigenvalues();
      MatrixXd S = es.eigenvectors();
      std::vector<int> order(m);
      for (int i = 0; i < m; ++i) order[i] = i;
      std::sort(order.begin(), order.end(),
                [&](int a, int b) { return std::abs(theta[a]) > std::abs(theta[b]); });
      out.ritzValues.resize(m);
      out.residuals.resize(m);
      for (int i = 0; i < m; ++i) {
        out.ritzValues[i] = theta[order[i]];
        out.residuals[i] = beta * std::abs(S(m - 1, order[i]));
      }
      out.iterations = m;
      bool ok = m >= wanted;
      for (int i = 0; i < std::min(wanted, m) && ok; ++i)
        ok = out.residuals[i] <= tol * std::max(1.0, std::abs(out.ritzValues[i]));
      if (ok || beta < 1e-14) {
        out.converged = ok || beta < 1e-14;
        return out;
      }
    }
    if (beta < 1e-14) break;
    vPrev = v;
    v = w / beta;
    betaPrev = beta;
  }
  out.iterations = m;
  return out;
}

}  // namespace fdkp
