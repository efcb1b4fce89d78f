#pragma once

#include <array>

#include "fdkp/Dispersion.hpp"
#include "fdkp/DoubleDouble.hpp"
#include "fdkp/Krylov.hpp"
#include "fdkp/Poly2.hpp"

namespace fdkp {

// ---------------------------------------------------------------------------
// The tau polynomials and their x-derivatives, exact integer coefficients.
// tau_1 = x^2 + y^2 + 3
// tau_2 = x^6 + 3x^4y^2 + 3x^2y^4 + y^6 + 25x^4 + 90x^2y^2 + 17y^4
//         - 125x^2 + 475y^2 + 1875
// ---------------------------------------------------------------------------

namespace detail {

struct Monomial {
  int i, j;
  double c;
};

inline constexpr std::array<Monomial, 3> kTau1{{{0, 0, 3}, {2, 0, 1}, {0, 2, 1}}};
inline constexpr std::array<Monomial, 1> kTau1x{{{1, 0, 2}}};
inline constexpr std::array<Monomial, 1> kTau1xx{{{0, 0, 2}}};

inline constexpr std::array<Monomial, 10> kTau2{{{6, 0, 1},
                                                 {4, 2, 3},
                                                 {2, 4, 3},
                                                 {0, 6, 1},
                                                 {4, 0, 25},
                                                 {2, 2, 90},
                                                 {0, 4, 17},
                                                 {2, 0, -125},
                                                 {0, 2, 475},
                                                 {0, 0, 1875}}};
inline constexpr std::array<Monomial, 6> kTau2x{{{5, 0, 6},
                                                 {3, 2, 12},
                                                 {1, 4, 6},
                                                 {3, 0, 100},
                                                 {1, 2, 180},
                                                 {1, 0, -250}}};
inline constexpr std::array<Monomial, 6> kTau2xx{{{4, 0, 30},
                                                  {2, 2, 36},
                                                  {0, 4, 6},
                                                  {2, 0, 300},
                                                  {0, 2, 180},
                                                  {0, 0, -250}}};

template <typename T, size_t N>
Poly2<T> fromMonomials(const std::array<Monomial, N>& ms) {
  int dx = 0, dy = 0;
  for (const auto& m : ms) {
    dx = std::max(dx, m.i);
    dy = std::max(dy, m.j);
  }
  Poly2<T> p(dx, dy);
  for (const auto& m : ms) p.at(m.i, m.j) = T(m.c);
  return p;
}

template <typename T>
const Poly2<T>& tauPoly(int k) {
  static const Poly2<T> t1 = fromMonomials<T>(kTau1);
  static const Poly2<T> t2 = fromMonomials<T>(kTau2);
  if (k == 1) return t1;
  if (k == 2) return t2;
  throw std::invalid_argument("lump index k must be 1 or 2");
}

template <typename T>
const Poly2<T>& tauPolyX(int k) {
  static const Poly2<T> t1 = fromMonomials<T>(kTau1x);
  static const Poly2<T> t2 = fromMonomials<T>(kTau2x);
  if (k == 1) return t1;
  if (k == 2) return t2;
  throw std::invalid_argument("lump index k must be 1 or 2");
}

template <typename T>
const Poly2<T>& tauPolyXX(int k) {
  static const Poly2<T> t1 = fromMonomials<T>(kTau1xx);
  static const Poly2<T> t2 = fromMonomials<T>(kTau2xx);
  if (k == 1) return t1;
  if (k == 2) return t2;
  throw std::invalid_argument("lump index k must be 1 or 2");
}

}  // namespace detail

inline double tauStar(int k, double x, double y) {
  return detail::tauPoly<double>(k).eval(x, y);
}

/// u_k = -2 dxx log tau_k in the closed rational form
/// -2 (tau_xx tau - tau_x^2) / tau^2; tau > 0 on the plane, no poles.
template <typename T>
T lumpValue(int k, T x, T y) {
  const T t = detail::tauPoly<T>(k).evalExact(x, y);
  const T tx = detail::tauPolyX<T>(k).evalExact(x, y);
  const T txx = detail::tauPolyXX<T>(k).evalExact(x, y);
  return T(-2) * (txx * t - tx * tx) / (t * t);
}

inline double lumpU(int k, double x, double y) { return lumpValue<double>(k, x, y); }

// ---------------------------------------------------------------------------
// Pointwise residual oracle in double-double via truncated Taylor jets.
// ---------------------------------------------------------------------------

namespace detail {

constexpr int kJetLen = 7;
using Jet = std::array<dd, kJetLen>;

inline Jet jetMul(const Jet& a, const Jet& b, int order) {
  Jet r{};
  for (int m = 0; m <= order; ++m) {
    dd s(0.0);
    for (int i = 0; i <= m; ++i) s += a[i] * b[m - i];
    r[m] = s;
  }
  return r;
}

inline Jet jetDiv(const Jet& a, const Jet& b, int order) {
  Jet r{};
  for (int m = 0; m <= order; ++m) {
    dd s = a[m];
    for (int i = 0; i < m; ++i) s -= r[i] * b[m - i];
    r[m] = s / b[0];
  }
  return r;
}

inline dd powDD(dd x, int n) {
  dd r(1.0);
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

inline double binom(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
  return r;
}

// Taylor coefficients of p(x0 + t, y0) in t.
inline Jet jetX(const Poly2<dd>& p, dd x0, dd y0, int order) {
  Jet jet{};
  std::vector<dd> row(p.degX() + 1, dd(0.0));
  for (int i = 0; i <= p.degX(); ++i) {
    dd a(0.0);
    for (int j = p.degY(); j >= 0; --j) a = a * y0 + p.at(i, j);
    row[i] = a;
  }
  for (int m = 0; m <= std::min(order, p.degX()); ++m)
    for (int i = m; i <= p.degX(); ++i) jet[m] += dd(binom(i, m)) * row[i] * powDD(x0, i - m);
  return jet;
}

// Taylor coefficients of p(x0, y0 + s) in s.
inline Jet jetY(const Poly2<dd>& p, dd x0, dd y0, int order) {
  Jet jet{};
  std::vector<dd> col(p.degY() + 1, dd(0.0));
  for (int j = 0; j <= p.degY(); ++j) {
    dd a(0.0);
    for (int i = p.degX(); i >= 0; --i) a = a * x0 + p.at(i, j);
    col[j] = a;
  }
  for (int m = 0; m <= std::min(order, p.degY()); ++m)
    for (int j = m; j <= p.degY(); ++j) jet[m] += dd(binom(j, m)) * col[j] * powDD(y0, j - m);
  return jet;
}

// Jet of u = -2 (tau'' tau - tau'^2)/tau^2 from the jet of tau along x.
inline Jet lumpJetFromTau(const Jet& tau, int order) {
  Jet tp{}, tpp{};
  for (int m = 0; m + 1 < kJetLen; ++m) tp[m] = dd(double(m + 1)) * tau[m + 1];
  for (int m = 0; m + 2 < kJetLen; ++m) tpp[m] = dd(double((m + 1) * (m + 2))) * tau[m + 2];
  const Jet num = jetMul(tpp, tau, order);
  const Jet sub = jetMul(tp, tp, order);
  Jet f{};
  for (int m = 0; m <= order; ++m) f[m] = dd(-2.0) * (num[m] - sub[m]);
  const Jet den = jetMul(tau, tau, order);
  return jetDiv(f, den, order);
}

}  // namespace detail

/// Residual of u_k* in dxx(-dxx u + u + 3u^2) + dyy u = 0 at one point,
/// evaluated in double-double arithmetic. Exact lumps sit at the rounding
/// floor (~1e-28 here).
inline double kpResidualPointwise(int k, double x, double y) {
  using namespace detail;
  const auto& tau = tauPoly<dd>(k);
  const auto& taux = tauPolyX<dd>(k);
  const auto& tauxx = tauPolyXX<dd>(k);
  const dd x0(x), y0(y);

  // x-direction: jet of u to order 4, then of -dxx u + u + 3u^2 to order 2.
  const Jet tauJet = jetX(tau, x0, y0, 6);
  const Jet u = lumpJetFromTau(tauJet, 4);
  Jet inner{};
  for (int m = 0; m <= 2; ++m) {
    const dd uxx = dd(double((m + 1) * (m + 2))) * u[m + 2];
    inner[m] = -uxx + u[m];
  }
  const Jet u2 = jetMul(u, u, 2);
  for (int m = 0; m <= 2; ++m) inner[m] += dd(3.0) * u2[m];
  const dd ddxInner = dd(2.0) * inner[2];

  // y-direction: jet of u(x0, y0+s) to order 2 through tau, tau_x, tau_xx.
  const Jet t0 = jetY(tau, x0, y0, 2);
  const Jet t1 = jetY(taux, x0, y0, 2);
  const Jet t2 = jetY(tauxx, x0, y0, 2);
  Jet fy{};
  const Jet n1 = jetMul(t2, t0, 2);
  const Jet n2 = jetMul(t1, t1, 2);
  for (int m = 0; m <= 2; ++m) fy[m] = dd(-2.0) * (n1[m] - n2[m]);
  const Jet uy = jetDiv(fy, jetMul(t0, t0, 2), 2);
  const dd ddyU = dd(2.0) * uy[2];

  return double(ddxInner + ddyU);
}

// ---------------------------------------------------------------------------
// Normalization between the physical and normalized KP equations.
// ---------------------------------------------------------------------------

/// zeta(x,y) = A u(a x, b y) maps normalized lumps to solutions of the
/// physical equation; certified by the residual oracle, not by the algebra alone.
struct NormalizationMap {
  double A = 0, a = 0, b = 0;
};

inline NormalizationMap normalizationMap(const PhysicalParams& p) {
  const double gap = p.beta - p.beta0();
  if (!(gap > 0)) throw std::invalid_argument("normalizationMap: requires beta > beta0(alpha)");
  NormalizationMap m;
  m.A = 6.0 / p.dAlpha();
  m.a = std::sqrt(2.0 / gap);
  m.b = 2.0 * std::cos(p.alpha / 2.0) / std::sqrt(gap);
  return m;
}

inline RealField2d normalizedLumpField(const Grid2d& grid, int k) {
  RealField2d f(grid);
  for (Index j = 0; j < grid.ny(); ++j)
    for (Index i = 0; i < grid.nx(); ++i) f(i, j) = lumpU(k, grid.x(i), grid.y(j));
  return f;
}

inline RealField2d mappedLumpField(const Grid2d& grid, int k, const NormalizationMap& m) {
  RealField2d f(grid);
  for (Index j = 0; j < grid.ny(); ++j)
    for (Index i = 0; i < grid.nx(); ++i) f(i, j) = m.A * lumpU(k, m.a * grid.x(i), m.b * grid.y(j));
  return f;
}

inline RealField2d mappedLumpField(const Grid2d& grid, int k, const PhysicalParams& p) {
  return mappedLumpField(grid, k, normalizationMap(p));
}

// ---------------------------------------------------------------------------
// Grid residuals and the linearized operator.
// ---------------------------------------------------------------------------

/// Spectral residual of dxx(-dxx u + u + 3 u^2) + dyy u on the grid.
inline RealField2d kpResidualNormalized(const RealField2d& u) {
  const Grid2d& g = u.grid();
  SpectralField2d uh = transform(u);
  SpectralField2d sq = transform(dealiasedSquare(u));
  SpectralField2d r(g);
  for (Index j = 0; j < g.ny(); ++j)
    for (Index i = 0; i < g.nx(); ++i) {
      const double k1 = g.k1(i), k2 = g.k2(j);
      const auto innerHat = (k1 * k1 + 1.0) * uh(i, j) + 3.0 * sq(i, j);
      r(i, j) = -k1 * k1 * innerHat - k2 * k2 * uh(i, j);
    }
  return inverseTransform(r);
}

/// Residual of the physical stationary KP equation in the divided form
/// L_alpha zeta + d_alpha zeta^2 on the k1 != 0 lattice modes. The k1 = 0
/// modes (mean included) carry no equation on the periodic lattice and are
/// projected out.
inline RealField2d kpResidualPhysical(const RealField2d& zeta, const PhysicalParams& p) {
  const Grid2d& g = zeta.grid();
  SpectralField2d zh = transform(zeta);
  zh.coeffs().row(0).setZero();
  SpectralField2d sq = transform(dealiasedSquare(inverseTransform(zh)));
  SpectralField2d r(g);
  const double da = p.dAlpha();
  for (Index j = 0; j < g.ny(); ++j)
    for (Index i = 0; i < g.nx(); ++i) {
      if (g.k1(i) == 0.0) continue;
      r(i, j) = lAlphaSymbol(g.k1(i), g.k2(j), p) * zh(i, j) + da * sq(i, j);
    }
  return inverseTransform(r);
}

enum class LumpForm { Normalized, Physical };

/// Linearization of the divided KP equation at `base`:
///   normalized: (-dxx + 1 + D2^2/D1^2) v + 6 base v
///   physical:   L_alpha v + 2 d_alpha base v
/// restricted to the k1 != 0 subspace, where it is symmetric.
inline RealField2d linearizedKpApply(const RealField2d& base, const RealField2d& v,
                                     const PhysicalParams& p, LumpForm form) {
  requireSameGrid(base.grid(), v.grid(), "linearizedKpApply");
  const Grid2d& g = v.grid();
  SpectralField2d vh = transform(v);
  vh.coeffs().row(0).setZero();
  RealField2d vproj = inverseTransform(vh);
  const double w = form == LumpForm::Normalized ? 6.0 : 2.0 * p.dAlpha();
  RealField2d prod(g, w * base.values() * vproj.values());
  SpectralField2d ph = transform(prod);
  SpectralField2d out(g);
  for (Index j = 0; j < g.ny(); ++j)
    for (Index i = 0; i < g.nx(); ++i) {
      const double k1 = g.k1(i), k2 = g.k2(j);
      if (k1 == 0.0) continue;
      const double m = k2 / k1;
      const double sym = form == LumpForm::Normalized ? 1.0 + k1 * k1 + m * m
                                                      : lAlphaSymbol(k1, k2, p);
      out(i, j) = sym * vh(i, j) + ph(i, j);
    }
  return inverseTransform(out);
}

// ---------------------------------------------------------------------------
// Nondegeneracy: smallest singular values of the linearization.
// ---------------------------------------------------------------------------

enum class SymmetrySector { Full, Even };

struct NondegeneracyReport {
  std::vector<double> singularValues;  // ascending
  int kernelDimension = 0;             // count below kernelThreshold
  double kernelThreshold = 1e-4;
  double spectralGap = 0.0;            // smallest value above the threshold
  bool converged = false;              // eigensolver converged; never report success otherwise
  int lanczosIterations = 0;
  long minresApplications = 0;
};

struct NondegeneracyOptions {
  int count = 6;             // singular values requested
  int lanczosMaxIter = 80;
  double lanczosTol = 1e-6;
  double minresTol = 1e-9;
  int minresMaxIter = 2000;
  double kernelThreshold = 1e-4;
  unsigned seed = 2024;
};

inline NondegeneracyReport nondegeneracyReport(int k, const Grid2d& grid, SymmetrySector sector,
                                               const PhysicalParams& p, LumpForm form,
                                               const NondegeneracyOptions& opts = {}) {
  using Eigen::VectorXd;
  const Index n = grid.size();
  RealField2d base = form == LumpForm::Normalized ? normalizedLumpField(grid, k)
                                                  : mappedLumpField(grid, k, p);

  auto toField = [&grid](const VectorXd& v) {
    RealField2d f(grid);
    f.values() = Eigen::Map<const Eigen::ArrayXXd>(v.data(), grid.nx(), grid.ny());
    return f;
  };
  auto toVec = [](const RealField2d& f) {
    return VectorXd(Eigen::Map<const VectorXd>(f.values().data(), f.values().size()));
  };

  const bool even = sector == SymmetrySector::Even;
  long applications = 0;
  LinearMap A = [&](const VectorXd& v) {
    ++applications;
    RealField2d f = toField(v);
    if (even) f = symmetrize(f);
    RealField2d out = linearizedKpApply(base, f, p, form);
    if (even) out = symmetrize(out);
    return toVec(out);
  };
  LinearMap precond = [&](const VectorXd& v) {
    RealField2d f = toField(v);
    SpectralField2d fh = transform(f);
    const Grid2d& g = grid;
    for (Index j = 0; j < g.ny(); ++j)
      for (Index i = 0; i < g.nx(); ++i) {
        const double k1 = g.k1(i), k2 = g.k2(j);
        if (k1 == 0.0) {
          fh(i, j) = 0.0;
          continue;
        }
        const double m = k2 / k1;
        const double sym = form == LumpForm::Normalized ? 1.0 + k1 * k1 + m * m
                                                        : lAlphaSymbol(k1, k2, p);
        fh(i, j) /= sym;
      }
    RealField2d out = inverseTransform(fh);
    if (even) out = symmetrize(out);
    return toVec(out);
  };

  bool allSolvesConverged = true;
  LinearMap shiftInvert = [&](const VectorXd& v) {
    MinresResult r = minres(A, v, precond, opts.minresTol, opts.minresMaxIter);
    if (!r.converged) allSolvesConverged = false;
    return r.x;
  };

  // Start vector in the right symmetry sector and off the k1 = 0 axis.
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  VectorXd start(n);
  for (Index i = 0; i < n; ++i) start[i] = gauss(rng);
  {
    RealField2d f = toField(start);
    f = inverseTransform(projectOffAxis(transform(f)));
    if (even) f = symmetrize(f);
    start = toVec(f);
  }

  LanczosResult lz = lanczosSpectrum(shiftInvert, n, opts.count, opts.lanczosMaxIter, opts.lanczosTol,
                                     opts.seed, &start);

  NondegeneracyReport rep;
  rep.kernelThreshold = opts.kernelThreshold;
  rep.lanczosIterations = lz.iterations;
  rep.minresApplications = applications;
  rep.converged = lz.converged && allSolvesConverged;
  const int avail = std::min<int>(opts.count, int(lz.ritzValues.size()));
  for (int i = 0; i < avail; ++i) {
    const double theta = std::abs(lz.ritzValues[i]);
    if (theta > 0) rep.singularValues.push_back(1.0 / theta);
  }
  std::sort(rep.singularValues.begin(), rep.singularValues.end());
  for (double s : rep.singularValues)
    if (s < opts.kernelThreshold) ++rep.kernelDimension;
  rep.spectralGap = 0.0;
  for (double s : rep.singularValues)
    if (s >= opts.kernelThreshold) {
      rep.spectralGap = s;
      break;
    }
  return rep;
}

}  // namespace fdkp
