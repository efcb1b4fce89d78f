#pragma once

#include <complex>
#include <stdexcept>
#include <utility>

#include "fdkp/Grid.hpp"

namespace fdkp {

/// Scalar field sampled on the physical grid, stored x-major (row i = x index).
template <typename Scalar>
class RealField2 {
 public:
  using Values = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  RealField2() = default;
  explicit RealField2(const Grid2<Scalar>& grid) : grid_(grid), values_(Values::Zero(grid.nx(), grid.ny())) {}
  RealField2(const Grid2<Scalar>& grid, Values values) : grid_(grid), values_(std::move(values)) {
    if (values_.rows() != grid_.nx() || values_.cols() != grid_.ny())
      throw std::invalid_argument("RealField2: value shape does not match grid");
  }

  const Grid2<Scalar>& grid() const { return grid_; }
  const Values& values() const { return values_; }
  Values& values() { return values_; }
  Scalar operator()(Index i, Index j) const { return values_(i, j); }
  Scalar& operator()(Index i, Index j) { return values_(i, j); }

  bool allFinite() const { return values_.allFinite(); }

 private:
  Grid2<Scalar> grid_;
  Values values_;
};

/// Fourier-series coefficients c(k) of a field on the centered periodic cell,
/// f(x) = sum_k c(k) exp(i k.x), stored in FFT frequency order.
template <typename Scalar>
class SpectralField2 {
 public:
  using Complex = std::complex<Scalar>;
  using Coeffs = Eigen::Array<Complex, Eigen::Dynamic, Eigen::Dynamic>;

  SpectralField2() = default;
  explicit SpectralField2(const Grid2<Scalar>& grid) : grid_(grid), coeffs_(Coeffs::Zero(grid.nx(), grid.ny())) {}
  SpectralField2(const Grid2<Scalar>& grid, Coeffs coeffs) : grid_(grid), coeffs_(std::move(coeffs)) {
    if (coeffs_.rows() != grid_.nx() || coeffs_.cols() != grid_.ny())
      throw std::invalid_argument("SpectralField2: coefficient shape does not match grid");
  }

  const Grid2<Scalar>& grid() const { return grid_; }
  const Coeffs& coeffs() const { return coeffs_; }
  Coeffs& coeffs() { return coeffs_; }
  Complex operator()(Index i, Index j) const { return coeffs_(i, j); }
  Complex& operator()(Index i, Index j) { return coeffs_(i, j); }

  /// Max deviation from Hermitian symmetry c(-k) = conj(c(k)), relative to max |c|.
  Scalar hermitianDefect() const {
    const Index nx = grid_.nx(), ny = grid_.ny();
    Scalar defect = 0;
    for (Index i = 0; i < nx; ++i) {
      const Index ir = (nx - i) % nx;
      for (Index j = 0; j < ny; ++j) {
        const Index jr = (ny - j) % ny;
        defect = std::max(defect, std::abs(coeffs_(i, j) - std::conj(coeffs_(ir, jr))));
      }
    }
    const Scalar scale = coeffs_.abs().maxCoeff();
    return scale > 0 ? defect / scale : defect;
  }

 private:
  Grid2<Scalar> grid_;
  Coeffs coeffs_;
};

/// Two-component vector field sharing one grid.
template <typename Scalar>
struct VectorField2 {
  RealField2<Scalar> x, y;

  VectorField2() = default;
  explicit VectorField2(const Grid2<Scalar>& grid) : x(grid), y(grid) {}
  VectorField2(RealField2<Scalar> cx, RealField2<Scalar> cy) : x(std::move(cx)), y(std::move(cy)) {
    if (x.grid() != y.grid()) throw std::invalid_argument("VectorField2: components on different grids");
  }

  const Grid2<Scalar>& grid() const { return x.grid(); }
};

using RealField2d = RealField2<double>;
using SpectralField2d = SpectralField2<double>;
using VectorField2d = VectorField2<double>;

template <typename Scalar>
void requireSameGrid(const Grid2<Scalar>& a, const Grid2<Scalar>& b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

}  // namespace fdkp
