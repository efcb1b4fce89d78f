#pragma once

#include <string>
#include <vector>

#include "fdkp/Dispersion.hpp"

namespace fdkp {

// Flat-state operators. All of them are compositions of Fourier multipliers
// and pointwise products; the multiplier stages are evaluated as exact symbol
// products in coefficient space, so real fields map to real fields without
// tracking the D = -i grad factors term by term.

namespace detail {

// alpha k2 + c(|k|^2) k1 and -alpha k1 + c(|k|^2) k2: the components of L.
inline double lSym1(double k1, double k2, const PhysicalParams& p) {
  return p.alpha * k2 + cFun(k1 * k1 + k2 * k2, p.alpha) * k1;
}
inline double lSym2(double k1, double k2, const PhysicalParams& p) {
  return -p.alpha * k1 + cFun(k1 * k1 + k2 * k2, p.alpha) * k2;
}
// c . L = alpha (c.k_perp) + c(|k|^2) (c.k), k_perp = (k2, -k1).
inline double cDotLSym(double k1, double k2, const Eigen::Vector2d& c, const PhysicalParams& p) {
  const double ck = c[0] * k1 + c[1] * k2;
  const double ckp = c[0] * k2 - c[1] * k1;
  return p.alpha * ckp + cFun(k1 * k1 + k2 * k2, p.alpha) * ck;
}

}  // namespace detail

/// L = alpha D_perp + c(D^2) D realized as a real operator (the -i of D folded
/// in): cos-mode inputs produce sin-phase outputs.
inline VectorField2d applyL(const RealField2d& f, const PhysicalParams& p) {
  const Grid2d& g = f.grid();
  SpectralField2d fh = transform(f);
  SpectralField2d a(g), b(g);
  const std::complex<double> mi(0.0, -1.0);
  for (Index j = 0; j < g.ny(); ++j)
    for (Index i = 0; i < g.nx(); ++i) {
      const double k1 = g.k1(i), k2 = g.k2(j);
      a(i, j) = mi * detail::lSym1(k1, k2, p) * fh(i, j);
      b(i, j) = mi * detail::lSym2(k1, k2, p) * fh(i, j);
    }
  return {inverseTransform(a), inverseTransform(b)};
}

/// H(0) = D^2 t(D^2).
inline RealField2d applyH0(const RealField2d& phi, const PhysicalParams& p) {
  const Grid2d& g = phi.grid();
  SpectralField2d fh = transform(phi);
  for (Index j = 0; j < g.ny(); ++j)
    for (Index i = 0; i < g.nx(); ++i) {
      const double kk = g.k1(i) * g.k1(i) + g.k2(j) * g.k2(j);
      fh(i, j) *= kk * tFun(kk, p.alpha);
    }
  return inverseTransform(fh);
}

/// H(0)^-1 on mean-free fields; the mean mode is zeroed.
inline RealField2d applyH0Inverse(const RealField2d& psi, const PhysicalParams& p) {
  const Grid2d& g = psi.grid();
  SpectralField2d fh = transform(psi);
  for (Index j = 0; j < g.ny(); ++j)
    for (Index i = 0; i < g.nx(); ++i) {
      const double kk = g.k1(i) * g.k1(i) + g.k2(j) * g.k2(j);
      fh(i, j) = kk == 0.0 ? 0.0 : fh(i, j) / (kk * tFun(kk, p.alpha));
    }
  return inverseTransform(fh);
}

/// M(0) g = (1/D^2) L D . g_perp, with g_perp = (g2, -g1).
inline VectorField2d applyM0(const VectorField2d& gfield, const PhysicalParams& p) {
  const Grid2d& g = gfield.grid();
  SpectralField2d g1 = transform(gfield.x), g2 = transform(gfield.y);
  SpectralField2d a(g), b(g);
  for (Index j = 0; j < g.ny(); ++j)
    for (Index i = 0; i < g.nx(); ++i) {
      const double k1 = g.k1(i), k2 = g.k2(j);
      const double kk = k1 * k1 + k2 * k2;
      if (kk == 0.0) continue;
      const auto h = (k1 * g2(i, j) - k2 * g1(i, j)) / kk;  // (D . g_perp)/D^2
      a(i, j) = detail::lSym1(k1, k2, p) * h;
      b(i, j) = detail::lSym2(k1, k2, p) * h;
    }
  return {inverseTransform(a), inverseTransform(b)};
}

/// M_1(eta) g = M_0(eta (M_0 g)_perp) - grad(eta div g_perp) + alpha eta (M_0 g)_perp.
inline VectorField2d applyM1(const RealField2d& eta, const VectorField2d& gfield,
                             const PhysicalParams& p) {
  requireSameGrid(eta.grid(), gfield.grid(), "applyM1");
  const Grid2d& g = eta.grid();
  const VectorField2d m0g = applyM0(gfield, p);
  // (M_0 g)_perp = (m0g.y, -m0g.x)
  const RealField2d em1 = dealiasedProduct(eta, m0g.y);
  const RealField2d em2(g, -dealiasedProduct(eta, m0g.x).values());
  VectorField2d first = applyM0(VectorField2d(em1, em2), p);

  // div g_perp = dx g2 - dy g1.
  SpectralField2d g1 = transform(gfield.x), g2 = transform(gfield.y);
  SpectralField2d divp(g);
  const std::complex<double> iu(0.0, 1.0);
  for (Index j = 0; j < g.ny(); ++j)
    for (Index i = 0; i < g.nx(); ++i)
      divp(i, j) = iu * (g.k1(i) * g2(i, j) - g.k2(j) * g1(i, j));
  const RealField2d ediv = dealiasedProduct(eta, inverseTransform(divp));
  SpectralField2d edivh = transform(ediv);
  SpectralField2d gx(g), gy(g);
  for (Index j = 0; j < g.ny(); ++j)
    for (Index i = 0; i < g.nx(); ++i) {
      gx(i, j) = iu * g.k1(i) * edivh(i, j);
      gy(i, j) = iu * g.k2(j) * edivh(i, j);
    }

  VectorField2d out(g);
  out.x.values() = first.x.values() - inverseTransform(gx).values() + p.alpha * em1.values();
  out.y.values() = first.y.values() - inverseTransform(gy).values() + p.alpha * em2.values();
  return out;
}

/// P_c = L (c.D)/D^2, the multiplier core of T_1 (applied with a plus sign).
inline VectorField2d applyLcD(const RealField2d& eta, const Eigen::Vector2d& c,
                              const PhysicalParams& p) {
  const Grid2d& g = eta.grid();
  SpectralField2d fh = transform(eta);
  SpectralField2d a(g), b(g);
  for (Index j = 0; j < g.ny(); ++j)
    for (Index i = 0; i < g.nx(); ++i) {
      const double k1 = g.k1(i), k2 = g.k2(j);
      const double kk = k1 * k1 + k2 * k2;
      if (kk == 0.0) continue;
      const double cd = (c[0] * k1 + c[1] * k2) / kk;
      a(i, j) = detail::lSym1(k1, k2, p) * cd * fh(i, j);
      b(i, j) = detail::lSym2(k1, k2, p) * cd * fh(i, j);
    }
  return {inverseTransform(a), inverseTransform(b)};
}

/// T_1(eta) = -L (c.D)/D^2 eta with c = (1-eps^2) c0.
inline VectorField2d applyT1(const RealField2d& eta, const PhysicalParams& p) {
  VectorField2d v = applyLcD(eta, p.cVec(), p);
  v.x.values() = -v.x.values();
  v.y.values() = -v.y.values();
  return v;
}

/// T_2(eta), the four-term quadratic coefficient of T, term by term.
inline VectorField2d applyT2(const RealField2d& eta, const PhysicalParams& p) {
  const Grid2d& g = eta.grid();
  const Eigen::Vector2d c = p.cVec();
  VectorField2d out(g);

  // (1/2) alpha L (c.D_perp)/D^2 eta^2
  const RealField2d eta2 = dealiasedSquare(eta);
  {
    SpectralField2d fh = transform(eta2);
    SpectralField2d a(g), b(g);
    for (Index j = 0; j < g.ny(); ++j)
      for (Index i = 0; i < g.nx(); ++i) {
        const double k1 = g.k1(i), k2 = g.k2(j);
        const double kk = k1 * k1 + k2 * k2;
        if (kk == 0.0) continue;
        const double cdp = (c[0] * k2 - c[1] * k1) / kk;  // (c.k_perp)/|k|^2
        a(i, j) = 0.5 * p.alpha * detail::lSym1(k1, k2, p) * cdp * fh(i, j);
        b(i, j) = 0.5 * p.alpha * detail::lSym2(k1, k2, p) * cdp * fh(i, j);
      }
    out.x.values() += inverseTransform(a).values();
    out.y.values() += inverseTransform(b).values();
  }

  const VectorField2d P = applyLcD(eta, c, p);

  // -alpha eta L_perp (c.D)/D^2 eta; L_perp = (L2, -L1).
  out.x.values() += -p.alpha * dealiasedProduct(eta, P.y).values();
  out.y.values() += p.alpha * dealiasedProduct(eta, P.x).values();

  // L (D/D^2) . (eta P eta)
  {
    const RealField2d f1 = dealiasedProduct(eta, P.x);
    const RealField2d f2 = dealiasedProduct(eta, P.y);
    SpectralField2d f1h = transform(f1), f2h = transform(f2);
    SpectralField2d a(g), b(g);
    for (Index j = 0; j < g.ny(); ++j)
      for (Index i = 0; i < g.nx(); ++i) {
        const double k1 = g.k1(i), k2 = g.k2(j);
        const double kk = k1 * k1 + k2 * k2;
        if (kk == 0.0) continue;
        const auto h = (k1 * f1h(i, j) + k2 * f2h(i, j)) / kk;
        a(i, j) = detail::lSym1(k1, k2, p) * h;
        b(i, j) = detail::lSym2(k1, k2, p) * h;
      }
    out.x.values() += inverseTransform(a).values();
    out.y.values() += inverseTransform(b).values();
  }

  // -D(eta (c.D) eta) = +grad(eta (c.grad) eta)
  {
    SpectralField2d fh = transform(eta);
    SpectralField2d wh(g);
    const std::complex<double> iu(0.0, 1.0);
    for (Index j = 0; j < g.ny(); ++j)
      for (Index i = 0; i < g.nx(); ++i)
        wh(i, j) = iu * (c[0] * g.k1(i) + c[1] * g.k2(j)) * fh(i, j);
    const RealField2d s = dealiasedProduct(eta, inverseTransform(wh));
    SpectralField2d sh = transform(s);
    SpectralField2d a(g), b(g);
    for (Index j = 0; j < g.ny(); ++j)
      for (Index i = 0; i < g.nx(); ++i) {
        a(i, j) = iu * g.k1(i) * sh(i, j);
        b(i, j) = iu * g.k2(j) * sh(i, j);
      }
    out.x.values() += inverseTransform(a).values();
    out.y.values() += inverseTransform(b).values();
  }
  return out;
}

namespace detail {

// (1/D^2)(c0.L) applied to D.F for a vector field F, as one multiplier stage.
inline RealField2d applyQdiv(const VectorField2d& F, const Eigen::Vector2d& c0,
                             const PhysicalParams& p) {
  const Grid2d& g = F.grid();
  SpectralField2d f1 = transform(F.x), f2 = transform(F.y);
  SpectralField2d o(g);
  for (Index j = 0; j < g.ny(); ++j)
    for (Index i = 0; i < g.nx(); ++i) {
      const double k1 = g.k1(i), k2 = g.k2(j);
      const double kk = k1 * k1 + k2 * k2;
      if (kk == 0.0) continue;
      o(i, j) = cDotLSym(k1, k2, c0, p) * (k1 * f1(i, j) + k2 * f2(i, j)) / kk;
    }
  return inverseTransform(o);
}

// (c0 . grad) f.
inline RealField2d applyCGrad(const RealField2d& f, const Eigen::Vector2d& c0) {
  const Grid2d& g = f.grid();
  SpectralField2d fh = transform(f);
  const std::complex<double> iu(0.0, 1.0);
  for (Index j = 0; j < g.ny(); ++j)
    for (Index i = 0; i < g.nx(); ++i) fh(i, j) *= iu * (c0[0] * g.k1(i) + c0[1] * g.k2(j));
  return inverseTransform(fh);
}

}  // namespace detail

/// The symmetric bilinear form m(v, w) behind the quadratic part of the
/// reduced equation; built with c0 (the seven-term symmetrized display).
inline RealField2d mBilinear(const RealField2d& v, const RealField2d& w, const PhysicalParams& p) {
  requireSameGrid(v.grid(), w.grid(), "mBilinear");
  const Grid2d& g = v.grid();
  const Eigen::Vector2d c0 = p.c0Vec();

  const VectorField2d Pv = applyLcD(v, c0, p);
  const VectorField2d Pw = applyLcD(w, c0, p);

  RealField2d out(g);
  // (1/2) (P v).(P w)
  out.values() += 0.5 * (dealiasedProduct(Pv.x, Pw.x).values() + dealiasedProduct(Pv.y, Pw.y).values());

  // (1/2) alpha (1/D^2)(c0.L)(c0.D_perp) vw
  {
    const RealField2d vw = dealiasedProduct(v, w);
    SpectralField2d fh = transform(vw);
    for (Index j = 0; j < g.ny(); ++j)
      for (Index i = 0; i < g.nx(); ++i) {
        const double k1 = g.k1(i), k2 = g.k2(j);
        const double kk = k1 * k1 + k2 * k2;
        if (kk == 0.0) {
          fh(i, j) = 0.0;
          continue;
        }
        fh(i, j) *= 0.5 * p.alpha * detail::cDotLSym(k1, k2, c0, p) * (c0[0] * k2 - c0[1] * k1) / kk;
      }
    out.values() += inverseTransform(fh).values();
  }

  // (1/(2D^2))(c0.L) D . (v P w) and the (w, v) twin
  out.values() += 0.5 * detail::applyQdiv(VectorField2d(dealiasedProduct(v, Pw.x), dealiasedProduct(v, Pw.y)), c0, p).values();
  out.values() += 0.5 * detail::applyQdiv(VectorField2d(dealiasedProduct(w, Pv.x), dealiasedProduct(w, Pv.y)), c0, p).values();

  // (1/2)((c0.D)v)((c0.D)w) - (1/2) c0.D(v (c0.D) w) - (1/2) c0.D(w (c0.D) v)
  const RealField2d Gv = detail::applyCGrad(v, c0);
  const RealField2d Gw = detail::applyCGrad(w, c0);
  out.values() += -0.5 * dealiasedProduct(Gv, Gw).values();
  out.values() += 0.5 * detail::applyCGrad(dealiasedProduct(v, Gw), c0).values();
  out.values() += 0.5 * detail::applyCGrad(dealiasedProduct(w, Gv), c0).values();
  return out;
}

/// J_2(eta) = m - 2 eps^2 m + eps^4 m = (1 - eps^2)^2 m(eta, eta).
inline RealField2d applyJ2(const RealField2d& eta, const PhysicalParams& p) {
  const double f = (1.0 - p.eps * p.eps);
  RealField2d m = mBilinear(eta, eta, p);
  m.values() *= f * f;
  return m;
}

}  // namespace fdkp
