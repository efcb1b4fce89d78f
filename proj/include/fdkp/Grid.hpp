#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fdkp {

using Eigen::Index;

inline constexpr double pi = std::numbers::pi_v<double>;

/// Periodic grid on [-Lx,Lx) x [-Ly,Ly) with nx x ny points and the
/// wavenumber lattice k = pi * m / L, m in {-n/2, ..., n/2 - 1}.
template <typename Scalar>
class Grid2 {
 public:
  Grid2() = default;

  Grid2(Index nx, Index ny, Scalar Lx, Scalar Ly, bool requirePowerOfTwo = false)
      : nx_(nx), ny_(ny), Lx_(Lx), Ly_(Ly) {
    if (nx <= 0 || ny <= 0 || nx % 2 != 0 || ny % 2 != 0)
      throw std::invalid_argument("Grid2: mode counts must be positive and even");
    if (!(Lx > Scalar(0)) || !(Ly > Scalar(0)))
      throw std::invalid_argument("Grid2: half-periods must be positive");
    if (requirePowerOfTwo && (!isPowerOfTwo(nx) || !isPowerOfTwo(ny)))
      throw std::invalid_argument("Grid2: mode counts must be powers of two in strict mode");
    k1_.resize(nx);
    for (Index i = 0; i < nx; ++i) k1_[i] = Scalar(freqIndex(i, nx)) * pi / Lx;
    k2_.resize(ny);
    for (Index j = 0; j < ny; ++j) k2_[j] = Scalar(freqIndex(j, ny)) * pi / Ly;
  }

  Index nx() const { return nx_; }
  Index ny() const { return ny_; }
  Index size() const { return nx_ * ny_; }
  Scalar Lx() const { return Lx_; }
  Scalar Ly() const { return Ly_; }
  Scalar dx() const { return 2 * Lx_ / Scalar(nx_); }
  Scalar dy() const { return 2 * Ly_ / Scalar(ny_); }
  Scalar cellArea() const { return dx() * dy(); }
  /// Area of the periodic cell, 4 Lx Ly.
  Scalar domainArea() const { return 4 * Lx_ * Ly_; }
  /// Spectral cell area dk1 * dk2.
  Scalar spectralCellArea() const { return (pi / Lx_) * (pi / Ly_); }

  Scalar x(Index i) const { return -Lx_ + Scalar(i) * dx(); }
  Scalar y(Index j) const { return -Ly_ + Scalar(j) * dy(); }
  Scalar k1(Index i) const { return k1_[i]; }
  Scalar k2(Index j) const { return k2_[j]; }
  const Eigen::Array<Scalar, Eigen::Dynamic, 1>& k1() const { return k1_; }
  const Eigen::Array<Scalar, Eigen::Dynamic, 1>& k2() const { return k2_; }

  Scalar nyquist1() const { return Scalar(nx_ / 2) * pi / Lx_; }
  Scalar nyquist2() const { return Scalar(ny_ / 2) * pi / Ly_; }

  /// Frequency index in FFT storage order: {0,...,n/2-1,-n/2,...,-1}.
  static Index freqIndex(Index i, Index n) { return i < n / 2 ? i : i - n; }

  static bool isPowerOfTwo(Index n) { return n > 0 && (n & (n - 1)) == 0; }

  friend bool operator==(const Grid2& a, const Grid2& b) {
    return a.nx_ == b.nx_ && a.ny_ == b.ny_ && a.Lx_ == b.Lx_ && a.Ly_ == b.Ly_;
  }
  friend bool operator!=(const Grid2& a, const Grid2& b) { return !(a == b); }

 private:
  Index nx_ = 0, ny_ = 0;
  Scalar Lx_ = 0, Ly_ = 0;
  Eigen::Array<Scalar, Eigen::Dynamic, 1> k1_, k2_;
};

using Grid2d = Grid2<double>;

template <typename Scalar>
Grid2<Scalar> makeGrid(Index nx, Index ny, Scalar Lx, Scalar Ly, bool requirePowerOfTwo = false) {
  return Grid2<Scalar>(nx, ny, Lx, Ly, requirePowerOfTwo);
}

inline Grid2d makeGrid(Index nx, Index ny, double Lx, double Ly, bool requirePowerOfTwo = false) {
  return Grid2d(nx, ny, Lx, Ly, requirePowerOfTwo);
}

}  // namespace fdkp
