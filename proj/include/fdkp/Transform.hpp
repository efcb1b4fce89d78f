#pragma once

#include <unsupported/Eigen/FFT>

#include "fdkp/Field.hpp"

namespace fdkp {

namespace detail {

// One engine per thread; Eigen::FFT caches plans per transform length.
template <typename Scalar>
Eigen::FFT<Scalar>& fftEngine() {
  thread_local Eigen::FFT<Scalar> engine;
  return engine;
}

// Unnormalized 2D DFT over both axes, in place. sign = false: exp(-i k.x) sums,
// sign = true: exp(+i k.x) sums.
template <typename Scalar>
void dft2InPlace(Eigen::Array<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>& a, bool inverse) {
  using Vec = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
  auto& engine = fftEngine<Scalar>();
  const Index nx = a.rows(), ny = a.cols();
  Vec in, out;
  in.resize(nx);
  out.resize(nx);
  for (Index j = 0; j < ny; ++j) {
    in = a.col(j).matrix();
    if (inverse) {
      engine.inv(out, in);
      out *= Scalar(nx);
    } else {
      engine.fwd(out, in);
    }
    a.col(j) = out.array();
  }
  in.resize(ny);
  out.resize(ny);
  for (Index i = 0; i < nx; ++i) {
    in = a.row(i).matrix().transpose();
    if (inverse) {
      engine.inv(out, in);
      out *= Scalar(ny);
    } else {
      engine.fwd(out, in);
    }
    a.row(i) = out.array().transpose();
  }
}

// Centered-domain phase (-1)^(i+j); maps DFT-of-samples to coefficients w.r.t.
// exp(i k.x) on [-Lx,Lx) x [-Ly,Ly) and back (k_m * L = m * pi).
template <typename Scalar>
void applyCenterPhase(Eigen::Array<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>& a) {
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if ((i + j) & 1) a(i, j) = -a(i, j);
}

}  // namespace detail

template <typename Scalar>
SpectralField2<Scalar> transform(const RealField2<Scalar>& f) {
  if (!f.allFinite()) throw std::invalid_argument("transform: non-finite field values");
  typename SpectralField2<Scalar>::Coeffs a = f.values().template cast<std::complex<Scalar>>();
  detail::dft2InPlace(a, false);
  detail::applyCenterPhase(a);
  a /= Scalar(f.grid().size());
  return SpectralField2<Scalar>(f.grid(), std::move(a));
}

template <typename Scalar>
RealField2<Scalar> inverseTransform(const SpectralField2<Scalar>& c) {
  typename SpectralField2<Scalar>::Coeffs a = c.coeffs();
  detail::applyCenterPhase(a);
  detail::dft2InPlace(a, true);
  return RealField2<Scalar>(c.grid(), a.real());
}

/// Zero-pad coefficients of `c` onto the finer grid `fine` (matching frequencies).
template <typename Scalar>
SpectralField2<Scalar> padSpectrum(const SpectralField2<Scalar>& c, const Grid2<Scalar>& fine) {
  const Grid2<Scalar>& g = c.grid();
  if (fine.nx() < g.nx() || fine.ny() < g.ny())
    throw std::invalid_argument("padSpectrum: target grid is coarser");
  SpectralField2<Scalar> out(fine);
  const Index nx = g.nx(), ny = g.ny();
  for (Index i = 0; i < nx; ++i) {
    const Index mi = Grid2<Scalar>::freqIndex(i, nx);
    const Index ip = mi >= 0 ? mi : mi + fine.nx();
    for (Index j = 0; j < ny; ++j) {
      const Index mj = Grid2<Scalar>::freqIndex(j, ny);
      const Index jp = mj >= 0 ? mj : mj + fine.ny();
      out(ip, jp) = c(i, j);
    }
  }
  return out;
}

/// Restrict coefficients of `c` to the coarser grid (frequencies beyond the
/// coarse lattice are dropped; the coarse Nyquist row/column is zeroed).
template <typename Scalar>
SpectralField2<Scalar> truncateSpectrum(const SpectralField2<Scalar>& c, const Grid2<Scalar>& coarse) {
  SpectralField2<Scalar> out(coarse);
  const Index nx = coarse.nx(), ny = coarse.ny();
  for (Index i = 0; i < nx; ++i) {
    const Index mi = Grid2<Scalar>::freqIndex(i, nx);
    if (mi == -nx / 2) continue;
    const Index ip = mi >= 0 ? mi : mi + c.grid().nx();
    for (Index j = 0; j < ny; ++j) {
      const Index mj = Grid2<Scalar>::freqIndex(j, ny);
      if (mj == -ny / 2) continue;
      const Index jp = mj >= 0 ? mj : mj + c.grid().ny();
      out(i, j) = c(ip, jp);
    }
  }
  return out;
}

/// Pointwise product with 2/3-rule zero padding. Exact whenever the supports of
/// the factors sum inside the retained band.
template <typename Scalar>
RealField2<Scalar> dealiasedProduct(const RealField2<Scalar>& f, const RealField2<Scalar>& g) {
  requireSameGrid(f.grid(), g.grid(), "dealiasedProduct");
  const Grid2<Scalar>& grid = f.grid();
  const Grid2<Scalar> fine(3 * grid.nx() / 2, 3 * grid.ny() / 2, grid.Lx(), grid.Ly());
  RealField2<Scalar> ff = inverseTransform(padSpectrum(transform(f), fine));
  RealField2<Scalar> gf = inverseTransform(padSpectrum(transform(g), fine));
  RealField2<Scalar> prod(fine, ff.values() * gf.values());
  return inverseTransform(truncateSpectrum(transform(prod), grid));
}

/// Dealiased square, the common case in the quadratic equations here.
template <typename Scalar>
RealField2<Scalar> dealiasedSquare(const RealField2<Scalar>& f) {
  const Grid2<Scalar>& grid = f.grid();
  const Grid2<Scalar> fine(3 * grid.nx() / 2, 3 * grid.ny() / 2, grid.Lx(), grid.Ly());
  RealField2<Scalar> ff = inverseTransform(padSpectrum(transform(f), fine));
  RealField2<Scalar> prod(fine, ff.values().square());
  return inverseTransform(truncateSpectrum(transform(prod), grid));
}

}  // namespace fdkp
