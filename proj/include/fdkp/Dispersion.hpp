#pragma once

#include <iostream>
#include <vector>

#include "fdkp/Spectral.hpp"

namespace fdkp {

namespace detail {

// Series switch radius for the removable joint at mu = alpha^2 and for the
// alpha -> 0 limits of the derived constants.
inline constexpr double kSeriesRadius = 1e-4;

// sqrt(z) cot sqrt(z) as an analytic function of z (valid on both branches).
inline double sqrtCotSeries(double z) {
  return 1.0 - z / 3.0 - z * z / 45.0 - 2.0 * z * z * z / 945.0 - z * z * z * z / 4725.0;
}

// tan(sqrt(z)) / sqrt(z) as an analytic function of z.
inline double tanSqrtSeries(double z) {
  return 1.0 + z / 3.0 + 2.0 * z * z / 15.0 + 17.0 * z * z * z / 315.0 + 62.0 * z * z * z * z / 2835.0;
}

inline double alphaCotAlpha(double alpha) {
  const double a2 = alpha * alpha;
  if (std::abs(alpha) < kSeriesRadius) return 1.0 - a2 / 3.0 - a2 * a2 / 45.0;
  return alpha / std::tan(alpha);
}

inline double alphaCosecAlpha(double alpha) {
  const double a2 = alpha * alpha;
  if (std::abs(alpha) < kSeriesRadius) return 1.0 + a2 / 6.0 + 7.0 * a2 * a2 / 360.0;
  return alpha / std::sin(alpha);
}

}  // namespace detail

/// The symbol c(mu): sqrt(alpha^2-mu) cot sqrt(alpha^2-mu) for mu < alpha^2,
/// sqrt(mu-alpha^2) coth sqrt(mu-alpha^2) for mu >= alpha^2. Smooth across the
/// joint; requires |alpha| < pi/2 and mu >= 0 so the cot branch has no pole.
inline double cFun(double mu, double alpha) {
  const double z = alpha * alpha - mu;
  if (std::abs(z) < detail::kSeriesRadius) return detail::sqrtCotSeries(z);
  if (z > 0) {
    const double w = std::sqrt(z);
    return w / std::tan(w);
  }
  const double w = std::sqrt(-z);
  return w / std::tanh(w);
}

/// The symbol t(mu): tan/tanh branches; t(mu) c(mu) = 1.
inline double tFun(double mu, double alpha) {
  const double z = alpha * alpha - mu;
  if (std::abs(z) < detail::kSeriesRadius) return detail::tanSqrtSeries(z);
  if (z > 0) {
    const double w = std::sqrt(z);
    return std::tan(w) / w;
  }
  const double w = std::sqrt(-z);
  return std::tanh(w) / w;
}

/// c0^2 = (2/alpha) tan(alpha/2); the limit value is 1 at alpha = 0.
inline double c0Squared(double alpha) {
  const double a2 = alpha * alpha;
  if (std::abs(alpha) < detail::kSeriesRadius) return 1.0 + a2 / 12.0 + a2 * a2 / 120.0;
  return 2.0 * std::tan(alpha / 2.0) / alpha;
}

/// beta0 = (1/(2 alpha^2)) (-cos(alpha) + alpha cosec(alpha)); limit 1/3.
inline double beta0(double alpha) {
  const double a2 = alpha * alpha;
  if (std::abs(alpha) < detail::kSeriesRadius) return 1.0 / 3.0 - a2 / 90.0 + 13.0 * a2 * a2 / 7560.0;
  return (-std::cos(alpha) + detail::alphaCosecAlpha(alpha)) / (2.0 * a2);
}

/// beta_star = (1/alpha)(-(1/alpha) cot(alpha) + cosec^2(alpha)) tan(alpha/2); limit 1/3.
inline double betaStar(double alpha) {
  const double a2 = alpha * alpha;
  if (std::abs(alpha) < detail::kSeriesRadius)
    return 1.0 / 3.0 + 13.0 * a2 / 180.0 + 97.0 * a2 * a2 / 7560.0;
  const double s = std::sin(alpha);
  return (-std::cos(alpha) / (alpha * s) + 1.0 / (s * s)) * std::tan(alpha / 2.0) / alpha;
}

/// d_alpha = alpha cosec(alpha) + (1/2) alpha cot(alpha); limit 3/2.
inline double dAlpha(double alpha) {
  const double a2 = alpha * alpha;
  if (std::abs(alpha) < detail::kSeriesRadius) return 1.5 + a2 * a2 / 120.0;
  return detail::alphaCosecAlpha(alpha) + 0.5 * detail::alphaCotAlpha(alpha);
}

/// Model constants alpha (Beltrami), beta (Bond), eps (amplitude), delta
/// (cutoff half-width) with the derived wave-speed constants.
struct PhysicalParams {
  double alpha = 0.0;
  double beta = 1.0;
  double eps = 0.0;
  double delta = 0.4;

  PhysicalParams() = default;
  PhysicalParams(double alpha_, double beta_, double eps_ = 0.0, double delta_ = 0.4)
      : alpha(alpha_), beta(beta_), eps(eps_), delta(delta_) {
    if (!(std::abs(alpha) < pi / 2)) throw std::invalid_argument("PhysicalParams: need |alpha| < pi/2");
    if (!(beta > 0)) throw std::invalid_argument("PhysicalParams: need beta > 0");
    if (eps < 0) throw std::invalid_argument("PhysicalParams: need eps >= 0");
    if (!(delta > 0)) throw std::invalid_argument("PhysicalParams: need delta > 0");
    if (beta <= fdkp::betaStar(alpha))
      std::cerr << "warning: beta = " << beta << " <= beta_star(" << alpha
                << ") = " << fdkp::betaStar(alpha) << "; outside the no-extra-roots regime\n";
  }

  double c0() const { return std::sqrt(c0Squared(alpha)); }
  Eigen::Vector2d c0Vec() const {
    const double c = c0();
    return {c * std::cos(alpha / 2.0), -c * std::sin(alpha / 2.0)};
  }
  /// Wave velocity c = (1 - eps^2) c0.
  Eigen::Vector2d cVec() const { return (1.0 - eps * eps) * c0Vec(); }
  double beta0() const { return fdkp::beta0(alpha); }
  double betaStar() const { return fdkp::betaStar(alpha); }
  double dAlpha() const { return fdkp::dAlpha(alpha); }
  double secHalfSquared() const {
    const double c = std::cos(alpha / 2.0);
    return 1.0 / (c * c);
  }
  bool inNoRootsRegime() const { return beta > betaStar(); }

  PhysicalParams withEps(double e) const { return PhysicalParams(alpha, beta, e, delta); }
};

/// g as a function of k1 and m = k2/k1; analytic on the whole (k1, m) plane.
inline double gTilde(double k1, double m, const Eigen::Vector2d& c, double alpha, double beta) {
  const double q = 1.0 + m * m;
  const double mu = k1 * k1 * q;
  const double cm = c[0] + c[1] * m;  // (c . k)/k1
  return -(alpha * (c[0] * m - c[1]) * cm + cFun(mu, alpha) * cm * cm) / q + 1.0 + beta * mu;
}

inline double gTilde(double k1, double m, const PhysicalParams& p) {
  return gTilde(k1, m, p.cVec(), p.alpha, p.beta);
}

/// g(k) on k != 0; k_perp = (k2, -k1).
inline double gFull(double k1, double k2, const Eigen::Vector2d& c, double alpha, double beta) {
  const double kk = k1 * k1 + k2 * k2;
  if (kk == 0.0) throw std::invalid_argument("gFull: undefined at k = 0");
  const double ck = c[0] * k1 + c[1] * k2;
  const double ckp = c[0] * k2 - c[1] * k1;
  return -(alpha * ckp * ck + cFun(kk, alpha) * ck * ck) / kk + 1.0 + beta * kk;
}

inline double gFull(double k1, double k2, const PhysicalParams& p) {
  return gFull(k1, k2, p.cVec(), p.alpha, p.beta);
}

/// Symbol of (1/D^2)(c0.D)(c0.L) = (c0.k)(alpha (c0.k_perp) + c(|k|^2)(c0.k))/|k|^2;
/// the three-term expansion of g with c = (1-eps^2) c0 uses it.
inline double gPerturbationSymbol(double k1, double k2, const PhysicalParams& p) {
  const double kk = k1 * k1 + k2 * k2;
  if (kk == 0.0) throw std::invalid_argument("gPerturbationSymbol: undefined at k = 0");
  const Eigen::Vector2d c0 = p.c0Vec();
  const double ck = c0[0] * k1 + c0[1] * k2;
  const double ckp = c0[0] * k2 - c0[1] * k1;
  return ck * (p.alpha * ckp + cFun(kk, p.alpha) * ck) / kk;
}

// ---------------------------------------------------------------------------
// Appendix quantities for the no-extra-roots scan.
// ---------------------------------------------------------------------------

inline double kappa(double mu, double theta, const PhysicalParams& p) {
  const double c2 = c0Squared(p.alpha);
  const double ct = std::cos(theta);
  if (ct == 0.0) throw std::invalid_argument("kappa: undefined at cos(theta) = 0");
  return (1.0 + p.beta * mu - p.alpha * c2 * std::sin(theta) * ct) / (c2 * ct * ct);
}

inline double kappaMin(double mu, const PhysicalParams& p) {
  const double c2 = c0Squared(p.alpha);
  const double w = 1.0 + p.beta * mu;
  return w / c2 - c2 * p.alpha * p.alpha / (4.0 * w);
}

inline double thetaMin(double mu, const PhysicalParams& p) {
  const double c2 = c0Squared(p.alpha);
  return -std::atan(p.alpha * c2 / (2.0 * (1.0 + p.beta * mu)));
}

struct NoRootsReport {
  bool hypothesisHolds = false;   // beta > beta_star
  bool noRoots = false;           // max of c - kappa_min over the scan is negative
  double maxValue = 0.0;          // max over [muTol, muMax] of c(mu) - kappa_min(mu)
  double argmaxMu = 0.0;
  double marginAtMuTol = 0.0;     // kappa_min - c at the left end of the scan
  bool derivativeConditionOk = false;  // c'(mu) < kappa_min'(mu) on the scan
  double muTol = 0.0, muMax = 0.0;
  Index points = 0;
};

/// Samples c(mu) - kappa_min(mu) on [muTol, muMax]. Under beta > beta_star the
/// maximum must be negative; out-of-hypothesis parameters still get a report.
inline NoRootsReport verifyNoNonzeroRoots(const PhysicalParams& p, double muMax, Index points = 10000,
                                          double muTol = 1e-6) {
  if (!(muMax > muTol) || points < 3) throw std::invalid_argument("verifyNoNonzeroRoots: bad scan range");
  NoRootsReport rep;
  rep.hypothesisHolds = p.inNoRootsRegime();
  rep.muTol = muTol;
  rep.muMax = muMax;
  rep.points = points;
  const double h = (muMax - muTol) / double(points - 1);
  double best = -std::numeric_limits<double>::infinity();
  double bestMu = muTol;
  bool deriv = true;
  double prev = 0.0;
  for (Index i = 0; i < points; ++i) {
    const double mu = muTol + double(i) * h;
    const double d = cFun(mu, p.alpha) - kappaMin(mu, p);
    if (d > best) {
      best = d;
      bestMu = mu;
    }
    if (i > 0 && d - prev >= 0.0) deriv = false;  // c - kappa_min must strictly decrease
    prev = d;
  }
  rep.maxValue = best;
  rep.argmaxMu = bestMu;
  rep.marginAtMuTol = kappaMin(muTol, p) - cFun(muTol, p.alpha);
  rep.derivativeConditionOk = deriv;
  rep.noRoots = best < 0.0;
  return rep;
}

// ---------------------------------------------------------------------------
// The scaled dispersion symbol used by the reduced equation.
// ---------------------------------------------------------------------------

/// eps^-2 g(eps k1, eps^2 k2) with c = c0; at eps = 0 the limit symbol
/// (beta - beta0) k1^2 + sec^2(alpha/2) (k2/k1)^2. NaN where k1 = 0, k2 != 0.
inline double gEpsSymbol(double k1, double k2, const PhysicalParams& p) {
  if (k1 == 0.0 && k2 == 0.0) return 0.0;
  if (k1 == 0.0) return std::numeric_limits<double>::quiet_NaN();
  const double m = k2 / k1;
  if (p.eps == 0.0) return (p.beta - p.beta0()) * k1 * k1 + p.secHalfSquared() * m * m;
  const double e = p.eps;
  return gTilde(e * k1, e * m, p.c0Vec(), p.alpha, p.beta) / (e * e);
}

inline Multiplierd gEpsMultiplier(const Grid2d& grid, const PhysicalParams& p) {
  return makeMultiplier(grid, [&p](double k1, double k2) -> std::complex<double> {
    return gEpsSymbol(k1, k2, p);
  });
}

/// Symbol of the KP operator L_alpha = 2 - (beta-beta0) dxx + sec^2(alpha/2) D2^2/D1^2.
inline double lAlphaSymbol(double k1, double k2, const PhysicalParams& p) {
  if (k1 == 0.0 && k2 == 0.0) return 2.0;
  if (k1 == 0.0) return std::numeric_limits<double>::quiet_NaN();
  const double m = k2 / k1;
  return 2.0 + (p.beta - p.beta0()) * k1 * k1 + p.secHalfSquared() * m * m;
}

}  // namespace fdkp
