#pragma once

#include "fdkp/Spectral.hpp"

namespace fdkp {

/// eta(x,y) = eps^2 zeta(eps x, eps^2 y) by trigonometric interpolation of the
/// periodic zeta onto the physical grid. The physical grid must lie inside the
/// rescaled periodic cell [-Lx/eps, Lx/eps) x [-Ly/eps^2, Ly/eps^2).
inline RealField2d reconstructEta(const RealField2d& zeta, double eps, const Grid2d& physGrid) {
  if (eps < 0) throw std::invalid_argument("reconstructEta: eps must be nonnegative");
  RealField2d out(physGrid);
  if (eps == 0.0) return out;
  const Grid2d& g = zeta.grid();
  const double tol = 1e-12;
  if (eps * physGrid.Lx() > g.Lx() * (1 + tol) || eps * eps * physGrid.Ly() > g.Ly() * (1 + tol))
    throw std::invalid_argument("reconstructEta: physical grid not covered by the rescaled cell");

  const SpectralField2d c = transform(zeta);
  using MatC = Eigen::MatrixXcd;
  MatC E1(g.nx(), physGrid.nx()), E2(g.ny(), physGrid.ny());
  const std::complex<double> iu(0.0, 1.0);
  for (Index q = 0; q < physGrid.nx(); ++q)
    for (Index i = 0; i < g.nx(); ++i) E1(i, q) = std::exp(iu * (g.k1(i) * eps * physGrid.x(q)));
  for (Index q = 0; q < physGrid.ny(); ++q)
    for (Index j = 0; j < g.ny(); ++j) E2(j, q) = std::exp(iu * (g.k2(j) * eps * eps * physGrid.y(q)));
  MatC vals = E1.transpose() * c.coeffs().matrix() * E2;
  out.values() = eps * eps * vals.real().array();
  return out;
}

/// Size bound for the omitted second-order surface correction,
/// eps * ||| eta_1 |||^2 with ||| eta_1 |||^2 = eps ||zeta||_{Y_1}^2.
inline double eta2BoundEstimate(const RealField2d& zeta, double eps) {
  if (eps == 0.0) return 0.0;
  const double y1 = yNorm(projectOffAxis(transform(zeta)), 1.0);
  return eps * (eps * y1 * y1);
}

/// The trivial Beltrami flow u*(z) = c1 (cos az, -sin az, 0) + c2 (sin az, cos az, 0),
/// z in [-1, 0]; |u*| = |c| at every depth.
inline Eigen::Vector3d trivialFlow(double alpha, const Eigen::Vector2d& c, double z) {
  if (z < -1.0 || z > 0.0) throw std::invalid_argument("trivialFlow: z must lie in [-1, 0]");
  const double ca = std::cos(alpha * z), sa = std::sin(alpha * z);
  return {c[0] * ca + c[1] * sa, -c[0] * sa + c[1] * ca, 0.0};
}

}  // namespace fdkp
