#pragma once

#include <functional>
#include <random>

#include "fdkp/Transform.hpp"

namespace fdkp {

/// Rule for lattice points where a symbol formula is undefined (k1 = 0 columns,
/// the origin, 0/0 and 1/0 evaluations).
struct SingularPolicy {
  enum class Kind { ZeroOut, ValueAtLimit };
  Kind kind = Kind::ZeroOut;
  std::complex<double> value{0.0, 0.0};

  static SingularPolicy zeroOut() { return {}; }
  static SingularPolicy valueAtLimit(std::complex<double> v) { return {Kind::ValueAtLimit, v}; }
};

/// A Fourier multiplier sampled on the wavenumber lattice.
template <typename Scalar>
class Multiplier {
 public:
  using Complex = std::complex<Scalar>;
  using Symbol = Eigen::Array<Complex, Eigen::Dynamic, Eigen::Dynamic>;

  Multiplier() = default;
  Multiplier(const Grid2<Scalar>& grid, Symbol symbol) : grid_(grid), symbol_(std::move(symbol)) {
    if (symbol_.rows() != grid_.nx() || symbol_.cols() != grid_.ny())
      throw std::invalid_argument("Multiplier: symbol shape does not match grid");
    if (!symbol_.allFinite()) throw std::invalid_argument("Multiplier: non-finite symbol after policy");
  }

  const Grid2<Scalar>& grid() const { return grid_; }
  const Symbol& symbol() const { return symbol_; }
  Symbol& symbol() { return symbol_; }

 private:
  Grid2<Scalar> grid_;
  Symbol symbol_;
};

using Multiplierd = Multiplier<double>;

/// Sample fn(k1,k2) on the lattice; non-finite samples get the singular policy.
template <typename Scalar, typename Fn>
Multiplier<Scalar> makeMultiplier(const Grid2<Scalar>& grid, Fn&& fn,
                                  SingularPolicy policy = SingularPolicy::zeroOut()) {
  typename Multiplier<Scalar>::Symbol s(grid.nx(), grid.ny());
  for (Index j = 0; j < grid.ny(); ++j) {
    for (Index i = 0; i < grid.nx(); ++i) {
      std::complex<Scalar> v = fn(grid.k1(i), grid.k2(j));
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        v = policy.kind == SingularPolicy::Kind::ZeroOut ? std::complex<Scalar>(0, 0)
                                                         : std::complex<Scalar>(policy.value);
      s(i, j) = v;
    }
  }
  return Multiplier<Scalar>(grid, std::move(s));
}

template <typename Scalar>
SpectralField2<Scalar> applyMultiplier(const Multiplier<Scalar>& m, const SpectralField2<Scalar>& f) {
  requireSameGrid(m.grid(), f.grid(), "applyMultiplier");
  return SpectralField2<Scalar>(f.grid(), m.symbol() * f.coeffs());
}

template <typename Scalar>
RealField2<Scalar> applyMultiplier(const Multiplier<Scalar>& m, const RealField2<Scalar>& f) {
  requireSameGrid(m.grid(), f.grid(), "applyMultiplier");
  return inverseTransform(applyMultiplier(m, transform(f)));
}

/// Sharp cutoff onto S = {|k1| <= delta, |k2/k1| <= delta}; at k1 = 0 only the
/// mean mode survives (closure of the support).
template <typename Scalar>
Multiplier<Scalar> cutoffChi(const Grid2<Scalar>& grid, Scalar delta) {
  if (!(delta > 0)) throw std::invalid_argument("cutoffChi: delta must be positive");
  return makeMultiplier(grid, [delta](Scalar k1, Scalar k2) -> std::complex<Scalar> {
    if (k1 == Scalar(0)) return k2 == Scalar(0) ? Scalar(1) : Scalar(0);
    const bool keep = std::abs(k1) <= delta && std::abs(k2) <= delta * std::abs(k1);
    return keep ? Scalar(1) : Scalar(0);
  });
}

/// chi_eps(k1,k2) = chi(eps k1, eps^2 k2); eps = 0 is the identity on the lattice.
template <typename Scalar>
Multiplier<Scalar> cutoffChiEps(const Grid2<Scalar>& grid, Scalar delta, Scalar eps) {
  if (!(delta > 0)) throw std::invalid_argument("cutoffChiEps: delta must be positive");
  if (eps < 0) throw std::invalid_argument("cutoffChiEps: eps must be nonnegative");
  if (eps == Scalar(0))
    return makeMultiplier(grid, [](Scalar, Scalar) -> std::complex<Scalar> { return Scalar(1); });
  return makeMultiplier(grid, [delta, eps](Scalar k1, Scalar k2) -> std::complex<Scalar> {
    if (k1 == Scalar(0)) return k2 == Scalar(0) ? Scalar(1) : Scalar(0);
    const bool keep = std::abs(eps * k1) <= delta && eps * std::abs(k2) <= delta * std::abs(k1);
    return keep ? Scalar(1) : Scalar(0);
  });
}

// ---------------------------------------------------------------------------
// Inner products and norms. Discrete norms approximate the plane integrals by
// lattice sums times cell area; the periodization error is not corrected.
// ---------------------------------------------------------------------------

template <typename Scalar>
Scalar innerProduct(const RealField2<Scalar>& f, const RealField2<Scalar>& g) {
  requireSameGrid(f.grid(), g.grid(), "innerProduct");
  return (f.values() * g.values()).sum() * f.grid().cellArea();
}

template <typename Scalar>
Scalar l2Norm(const RealField2<Scalar>& f) {
  return std::sqrt(f.values().square().sum() * f.grid().cellArea());
}

template <typename Scalar>
Scalar l2Norm(const SpectralField2<Scalar>& c) {
  return std::sqrt(c.coeffs().abs2().sum() * c.grid().domainArea());
}

/// Root-mean-square value, the unit-area L2 norm used for residual reports.
template <typename Scalar>
Scalar rmsNorm(const RealField2<Scalar>& f) {
  return std::sqrt(f.values().square().mean());
}

template <typename Scalar>
Scalar lpNorm(const RealField2<Scalar>& f, Scalar p) {
  return std::pow((f.values().abs().pow(p)).sum() * f.grid().cellArea(), Scalar(1) / p);
}

template <typename Scalar>
Scalar supNorm(const RealField2<Scalar>& f) {
  return f.values().abs().maxCoeff();
}

/// L1 norm of the continuum-normalized Fourier transform,
/// int |eta_hat| dk  ~  2 pi sum |c(k)|.
template <typename Scalar>
Scalar spectralL1Norm(const SpectralField2<Scalar>& c) {
  return 2 * pi * c.coeffs().abs().sum();
}

template <typename Scalar>
Scalar sobolevNorm(const SpectralField2<Scalar>& c, Scalar s) {
  const Grid2<Scalar>& g = c.grid();
  Scalar acc = 0;
  for (Index j = 0; j < g.ny(); ++j)
    for (Index i = 0; i < g.nx(); ++i) {
      const Scalar kk = g.k1(i) * g.k1(i) + g.k2(j) * g.k2(j);
      acc += std::pow(Scalar(1) + kk, s) * std::norm(c(i, j));
    }
  return std::sqrt(acc * g.domainArea());
}

template <typename Scalar>
Scalar sobolevNorm(const RealField2<Scalar>& f, Scalar s) {
  return sobolevNorm(transform(f), s);
}

/// Anisotropic weight 1 + k1^2 + k2^2/k1^2 (zero ratio at the origin).
template <typename Scalar>
Scalar yWeight(Scalar k1, Scalar k2) {
  if (k1 == Scalar(0)) return k2 == Scalar(0) ? Scalar(1) : std::numeric_limits<Scalar>::infinity();
  const Scalar r = k2 / k1;
  return Scalar(1) + k1 * k1 + r * r;
}

struct InfiniteNormError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// || . ||_{Y_s}. Throws InfiniteNormError if the field carries energy on the
/// k1 = 0, k2 != 0 modes (relative threshold 1e-12), where the weight is infinite.
template <typename Scalar>
Scalar yNorm(const SpectralField2<Scalar>& c, Scalar s) {
  const Grid2<Scalar>& g = c.grid();
  Scalar acc = 0, total = 0, singular = 0;
  for (Index j = 0; j < g.ny(); ++j)
    for (Index i = 0; i < g.nx(); ++i) {
      const Scalar e = std::norm(c(i, j));
      total += e;
      if (g.k1(i) == Scalar(0) && g.k2(j) != Scalar(0)) {
        singular += e;
        continue;
      }
      acc += std::pow(yWeight(g.k1(i), g.k2(j)), s) * e;
    }
  if (singular > Scalar(1e-24) * total)
    throw InfiniteNormError("yNorm: field has energy at k1 = 0, k2 != 0; Y_s norm is infinite");
  return std::sqrt(acc * g.domainArea());
}

template <typename Scalar>
Scalar yNorm(const RealField2<Scalar>& f, Scalar s) {
  return yNorm(transform(f), s);
}

/// Scaled norm ||| . |||, weight 1 + k1^2/eps^2 + (k2/k1)^2/eps^2.
template <typename Scalar>
Scalar scaledNorm(const SpectralField2<Scalar>& c, Scalar eps) {
  if (!(eps > 0)) throw std::invalid_argument("scaledNorm: eps must be positive");
  const Grid2<Scalar>& g = c.grid();
  Scalar acc = 0, total = 0, singular = 0;
  for (Index j = 0; j < g.ny(); ++j)
    for (Index i = 0; i < g.nx(); ++i) {
      const Scalar e = std::norm(c(i, j));
      total += e;
      if (g.k1(i) == Scalar(0) && g.k2(j) != Scalar(0)) {
        singular += e;
        continue;
      }
      const Scalar r = g.k1(i) == Scalar(0) ? Scalar(0) : g.k2(j) / g.k1(i);
      acc += (Scalar(1) + (g.k1(i) * g.k1(i) + r * r) / (eps * eps)) * e;
    }
  if (singular > Scalar(1e-24) * total)
    throw InfiniteNormError("scaledNorm: field has energy at k1 = 0, k2 != 0");
  return std::sqrt(acc * g.domainArea());
}

template <typename Scalar>
Scalar scaledNorm(const RealField2<Scalar>& f, Scalar eps) {
  return scaledNorm(transform(f), eps);
}

// ---------------------------------------------------------------------------
// Projections.
// ---------------------------------------------------------------------------

template <typename Scalar>
RealField2<Scalar> meanFree(const RealField2<Scalar>& f) {
  return RealField2<Scalar>(f.grid(), f.values() - f.values().mean());
}

/// Zero every k1 = 0 mode (mean included); the space where 1/k1 weights are finite.
template <typename Scalar>
SpectralField2<Scalar> projectOffAxis(const SpectralField2<Scalar>& c) {
  SpectralField2<Scalar> out = c;
  out.coeffs().row(0).setZero();
  return out;
}

template <typename Scalar>
RealField2<Scalar> projectOffAxis(const RealField2<Scalar>& f) {
  return inverseTransform(projectOffAxis(transform(f)));
}

/// Even part under the reflection (x,y) -> (-x,-y); exact index arithmetic.
template <typename Scalar>
RealField2<Scalar> symmetrize(const RealField2<Scalar>& f) {
  const Index nx = f.grid().nx(), ny = f.grid().ny();
  typename RealField2<Scalar>::Values v(nx, ny);
  for (Index j = 0; j < ny; ++j) {
    const Index jr = (ny - j) % ny;
    for (Index i = 0; i < nx; ++i) {
      const Index ir = (nx - i) % nx;
      v(i, j) = (f(i, j) + f(ir, jr)) / Scalar(2);
    }
  }
  return RealField2<Scalar>(f.grid(), std::move(v));
}

// ---------------------------------------------------------------------------
// Random band-limited fields for the property checks.
// ---------------------------------------------------------------------------

/// Real field with Gaussian coefficients supported in
/// {0 < |k1| <= band, |k2| <= band |k1|}, optionally reflection-even.
template <typename Scalar>
RealField2<Scalar> randomBandField(const Grid2<Scalar>& grid, Scalar band, std::mt19937_64& rng,
                                   bool even = false) {
  std::normal_distribution<Scalar> gauss(0, 1);
  SpectralField2<Scalar> c(grid);
  const Index nx = grid.nx(), ny = grid.ny();
  for (Index i = 0; i < nx; ++i) {
    const Scalar k1 = grid.k1(i);
    if (k1 == Scalar(0) || std::abs(k1) > band) continue;
    for (Index j = 0; j < ny; ++j) {
      const Scalar k2 = grid.k2(j);
      if (std::abs(k2) > band * std::abs(k1)) continue;
      c(i, j) = std::complex<Scalar>(gauss(rng), even ? Scalar(0) : gauss(rng));
    }
  }
  // Hermitian-symmetrize so the field is real.
  SpectralField2<Scalar> h(grid);
  for (Index i = 0; i < nx; ++i) {
    const Index ir = (nx - i) % nx;
    for (Index j = 0; j < ny; ++j) {
      const Index jr = (ny - j) % ny;
      h(i, j) = (c(i, j) + std::conj(c(ir, jr))) / Scalar(2);
    }
  }
  return inverseTransform(h);
}

}  // namespace fdkp
