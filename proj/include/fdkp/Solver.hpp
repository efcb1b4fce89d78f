#pragma once

#include "fdkp/Lumps.hpp"

namespace fdkp {

struct SolverConfig {
  enum class Method { Petviashvili, NewtonKrylov };
  enum class Symmetry { Even, Full };

  Method method = Method::NewtonKrylov;
  int maxIter = 40;
  double tolResidual = 1e-9;   // L2 (= Y_0) norm of the reduced residual
  double krylovTol = 1e-8;
  int krylovMaxIter = 600;
  double petviashviliGamma = 2.0;
  double theta = 0.75;         // norm exponent for the reported Y_{1+theta} distance
  Symmetry symmetry = Symmetry::Even;
  int petviashviliWarmup = 20; // NewtonKrylov globalizer steps before Newton
};

struct SolveResult {
  RealField2d zeta;
  double residualNorm = 0;
  int iterations = 0;
  bool converged = false;
  double distanceY1 = std::numeric_limits<double>::quiet_NaN();
  double distanceY1Theta = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> residualHistory;
  std::string message;
};

struct ContinuationResult {
  std::vector<double> epsValues;
  std::vector<SolveResult> results;
  double fittedExponent = std::numeric_limits<double>::quiet_NaN();
  bool partial = false;  // some member solve failed
};

/// The full-dispersion reduced model on one grid: the scaled symbol
/// eps^-2 g_eps + 2, the chi_eps band, and the truncated quadratic term
///   eps^-2 g_eps(D) zeta + 2 zeta + d_alpha chi_eps(D) zeta^2.
/// The k1 = 0 lattice modes (mean included) carry no equation here and are
/// projected out throughout; at eps = 0 the model is the divided-form
/// stationary KP equation L_alpha zeta + d_alpha zeta^2.
class ReducedModel {
 public:
  ReducedModel(const Grid2d& grid, const PhysicalParams& params)
      : grid_(grid), params_(params), mask_(grid.nx(), grid.ny()), symbol_(grid.nx(), grid.ny()) {
    if (params.eps > 0) {
      const double cut = params.delta / params.eps;
      const double feasible = 0.8 * grid.nyquist1();
      if (cut > feasible) {
        const Index nSuggest = Index(std::ceil(cut / 0.8 * grid.Lx() / pi)) * 2;
        throw std::invalid_argument(
            "ReducedModel: delta/eps = " + std::to_string(cut) + " exceeds 0.8 x Nyquist = " +
            std::to_string(feasible) + "; increase nx to about " + std::to_string(nSuggest));
      }
    }
    const Multiplierd chi = cutoffChiEps(grid, params.delta, params.eps);
    for (Index j = 0; j < grid.ny(); ++j)
      for (Index i = 0; i < grid.nx(); ++i) {
        const double k1 = grid.k1(i), k2 = grid.k2(j);
        const bool keep = k1 != 0.0 && chi.symbol()(i, j).real() != 0.0;
        mask_(i, j) = keep ? 1.0 : 0.0;
        symbol_(i, j) = keep ? gEpsSymbol(k1, k2, params) : 0.0;
      }
  }

  const Grid2d& grid() const { return grid_; }
  const PhysicalParams& params() const { return params_; }
  const Eigen::ArrayXXd& bandMask() const { return mask_; }

  /// Band projection (chi_eps with the k1 = 0 modes removed).
  RealField2d project(const RealField2d& f, SolverConfig::Symmetry sym = SolverConfig::Symmetry::Full) const {
    SpectralField2d c = transform(f);
    c.coeffs() *= mask_;
    RealField2d out = inverseTransform(c);
    if (sym == SolverConfig::Symmetry::Even) out = symmetrize(out);
    return out;
  }

  /// eps^-2 g_eps(D) zeta + 2 zeta + d_alpha chi_eps(D) zeta^2.
  RealField2d residual(const RealField2d& zeta) const {
    SpectralField2d zh = transform(zeta);
    zh.coeffs() *= mask_;
    SpectralField2d sq = transform(dealiasedSquare(inverseTransform(zh)));
    SpectralField2d r(grid_);
    r.coeffs() = (symbol_ + 2.0) * zh.coeffs() + params_.dAlpha() * mask_ * sq.coeffs();
    r.coeffs() *= mask_;
    return inverseTransform(r);
  }

  /// -(eps^-2 g_eps + 2)^{-1} d_alpha chi_eps zeta^2; fixed points solve the model.
  RealField2d fixedPointMap(const RealField2d& zeta) const {
    SpectralField2d sq = transform(dealiasedSquare(zeta));
    SpectralField2d r(grid_);
    r.coeffs() = -params_.dAlpha() * mask_ * sq.coeffs() / (symbol_ + 2.0);
    return inverseTransform(r);
  }

  /// Linearization at zeta: (eps^-2 g_eps + 2) v + 2 d_alpha chi_eps (zeta v).
  RealField2d applyJacobian(const RealField2d& zeta, const RealField2d& v) const {
    SpectralField2d vh = transform(v);
    vh.coeffs() *= mask_;
    SpectralField2d pv = transform(dealiasedProduct(zeta, inverseTransform(vh)));
    SpectralField2d r(grid_);
    r.coeffs() = (symbol_ + 2.0) * vh.coeffs() + 2.0 * params_.dAlpha() * mask_ * pv.coeffs();
    r.coeffs() *= mask_;
    return inverseTransform(r);
  }

  /// (eps^-2 g_eps + 2)^{-1}, the SPD Krylov preconditioner on the band.
  RealField2d applyPreconditioner(const RealField2d& v) const {
    SpectralField2d vh = transform(v);
    vh.coeffs() *= mask_ / (symbol_ + 2.0);
    return inverseTransform(vh);
  }

 private:
  Grid2d grid_;
  PhysicalParams params_;
  Eigen::ArrayXXd mask_;
  Eigen::ArrayXXd symbol_;
};

namespace detail {

// Equation M zeta = N(zeta) with M = eps^-2 g_eps + 2, N(zeta) = -d_alpha chi zeta^2.
// Update: zeta <- S^gamma M^-1 N(zeta), S = <M zeta, zeta> / <N(zeta), zeta>.
inline void petviashviliStep(const ReducedModel& model, RealField2d& zeta, double gamma,
                             SolverConfig::Symmetry sym) {
  RealField2d nTerm(model.grid());
  {
    SpectralField2d sq = transform(dealiasedSquare(zeta));
    sq.coeffs() *= -model.params().dAlpha() * model.bandMask();
    nTerm = inverseTransform(sq);
  }
  RealField2d mz = model.residual(zeta);
  mz.values() += nTerm.values();  // residual = M zeta - N, so M zeta = residual + N
  const double num = innerProduct(mz, zeta);
  const double den = innerProduct(nTerm, zeta);
  const double stab = std::abs(den) > 1e-300 ? num / den : 1.0;
  RealField2d w = model.applyPreconditioner(nTerm);  // exact M^-1 on the band
  zeta.values() = std::pow(stab, gamma) * w.values();
  if (sym == SolverConfig::Symmetry::Even) zeta = symmetrize(zeta);
}

}  // namespace detail

/// Petviashvili globalizer followed (in the NewtonKrylov method) by a
/// preconditioned MINRES Newton finisher; divergence over 10 successive
/// iterations aborts with diagnostics.
inline SolveResult solve(const RealField2d& zeta0, const ReducedModel& model, const SolverConfig& cfg) {
  requireSameGrid(zeta0.grid(), model.grid(), "solve");
  SolveResult out;
  RealField2d zeta = model.project(zeta0, cfg.symmetry);

  auto record = [&](double r) { out.residualHistory.push_back(r); };
  double res = l2Norm(model.residual(zeta));
  record(res);

  int growth = 0;
  double best = res;
  int it = 0;

  const int warmup = cfg.method == SolverConfig::Method::Petviashvili
                         ? cfg.maxIter
                         : std::min(cfg.petviashviliWarmup, cfg.maxIter);
  for (; it < warmup && res > cfg.tolResidual; ++it) {
    detail::petviashviliStep(model, zeta, cfg.petviashviliGamma, cfg.symmetry);
    res = l2Norm(model.residual(zeta));
    record(res);
    if (res > best) {
      if (++growth >= 10) {
        out.zeta = zeta;
        out.residualNorm = res;
        out.iterations = it + 1;
        out.message = "petviashvili diverged: residual grew over 10 successive iterations";
        return out;
      }
    } else {
      growth = 0;
      best = res;
    }
  }

  if (cfg.method == SolverConfig::Method::NewtonKrylov) {
    growth = 0;
    auto toVec = [](const RealField2d& f) {
      return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(f.values().data(), f.values().size()));
    };
    auto toField = [&](const Eigen::VectorXd& v) {
      RealField2d f(model.grid());
      f.values() = Eigen::Map<const Eigen::ArrayXXd>(v.data(), model.grid().nx(), model.grid().ny());
      return f;
    };
    for (; it < cfg.maxIter && res > cfg.tolResidual; ++it) {
      LinearMap A = [&](const Eigen::VectorXd& v) {
        return toVec(model.applyJacobian(zeta, toField(v)));
      };
      LinearMap P = [&](const Eigen::VectorXd& v) {
        return toVec(model.applyPreconditioner(toField(v)));
      };
      RealField2d r = model.residual(zeta);
      // Inexact Newton forcing: loose solves far from the solution.
      const double forcing = std::max(cfg.krylovTol, std::min(0.1, 0.1 * res));
      MinresResult lin = minres(A, toVec(RealField2d(model.grid(), -r.values())), P, forcing,
                                cfg.krylovMaxIter);
      zeta.values() += toField(lin.x).values();
      zeta = model.project(zeta, cfg.symmetry);
      res = l2Norm(model.residual(zeta));
      record(res);
      if (res > best) {
        if (++growth >= 10) {
          out.zeta = zeta;
          out.residualNorm = res;
          out.iterations = it + 1;
          out.message = "newton diverged: residual grew over 10 successive iterations";
          return out;
        }
      } else {
        growth = 0;
        best = res;
      }
    }
  }

  out.zeta = zeta;
  out.iterations = it;
  // Re-evaluate the residual independently of the iteration bookkeeping.
  out.residualNorm = l2Norm(model.residual(out.zeta));
  out.converged = out.residualNorm <= cfg.tolResidual;
  if (!out.converged && out.message.empty())
    out.message = "iteration budget exhausted before reaching the residual tolerance";
  return out;
}

/// Y_1 and Y_{1+theta} distances to the mapped lump, on the k1 != 0 subspace.
inline void recordLumpDistance(SolveResult& r, const RealField2d& lump, double theta) {
  SpectralField2d d = transform(RealField2d(r.zeta.grid(), r.zeta.values() - lump.values()));
  d = projectOffAxis(d);
  r.distanceY1 = yNorm(d, 1.0);
  r.distanceY1Theta = yNorm(d, 1.0 + theta);
}

/// Warm-started continuation in decreasing eps toward the KP lump.
inline ContinuationResult continuationInEps(int k, const std::vector<double>& epsList,
                                            const PhysicalParams& base, const Grid2d& grid,
                                            const SolverConfig& cfg) {
  for (size_t i = 1; i < epsList.size(); ++i)
    if (!(epsList[i] < epsList[i - 1]))
      throw std::invalid_argument("continuationInEps: eps values must be strictly decreasing");
  ContinuationResult out;
  const RealField2d lump = mappedLumpField(grid, k, base);
  RealField2d guess = lump;
  for (double eps : epsList) {
    const PhysicalParams p = base.withEps(eps);
    ReducedModel model(grid, p);
    SolveResult r = solve(guess, model, cfg);
    recordLumpDistance(r, lump, cfg.theta);
    if (r.converged) guess = r.zeta;
    else out.partial = true;
    out.epsValues.push_back(eps);
    out.results.push_back(std::move(r));
  }
  // Fit ||zeta_eps - lump||_{Y1} ~ C eps^p over the converged entries.
  std::vector<double> xs, ys;
  for (size_t i = 0; i < out.results.size(); ++i)
    if (out.results[i].converged && out.results[i].distanceY1 > 0) {
      xs.push_back(out.epsValues[i]);
      ys.push_back(out.results[i].distanceY1);
    }
  if (xs.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
      const double lx = std::log(xs[i]), ly = std::log(ys[i]);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    out.fittedExponent = (double(xs.size()) * sxy - sx * sy) / (double(xs.size()) * sxx - sx * sx);
  }
  return out;
}

/// Scan of the symbol comparison behind replacing the nonlocal inverse with
/// the KP operator: max over the band of |difference| / envelope with
/// envelope = eps^(1-theta) (1 + k1^2 + m^2)^{-(1+theta)/2}.
struct ReplaceGReport {
  double eps = 0, theta = 0, maxRatio = 0, argK1 = 0, argM = 0;
};

inline ReplaceGReport replaceGWithLCheck(const PhysicalParams& p, double theta, Index nScan = 400) {
  if (!(p.eps > 0)) throw std::invalid_argument("replaceGWithLCheck: eps must be positive");
  if (theta < 0 || theta > 1) throw std::invalid_argument("replaceGWithLCheck: theta in [0,1]");
  ReplaceGReport rep;
  rep.eps = p.eps;
  rep.theta = theta;
  const double lim = p.delta / p.eps;
  const Eigen::Vector2d c0 = p.c0Vec();
  const double b0 = p.beta0(), sec2 = p.secHalfSquared();
  for (Index i = 0; i <= nScan; ++i) {
    const double k1 = lim * double(i) / double(nScan);
    for (Index j = 0; j <= nScan; ++j) {
      const double m = lim * (2.0 * double(j) / double(nScan) - 1.0);
      const double gt = gTilde(p.eps * k1, p.eps * m, c0, p.alpha, p.beta);
      const double lhs = p.eps * p.eps / (2.0 * p.eps * p.eps + gt) -
                         1.0 / (2.0 + (p.beta - b0) * k1 * k1 + sec2 * m * m);
      const double env = std::pow(p.eps, 1.0 - theta) /
                         std::pow(1.0 + k1 * k1 + m * m, 0.5 * (1.0 + theta));
      const double ratio = std::abs(lhs) / env;
      if (ratio > rep.maxRatio) {
        rep.maxRatio = ratio;
        rep.argK1 = k1;
        rep.argM = m;
      }
    }
  }
  return rep;
}

}  // namespace fdkp
