#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace fdkp {

/// Dense bivariate polynomial sum c(i,j) x^i y^j over an arbitrary coefficient
/// ring T (double, DoubleDouble, ...).
template <typename T>
class Poly2 {
 public:
  Poly2() : nx_(1), ny_(1), c_(1, T(0)) {}
  Poly2(int degX, int degY) : nx_(degX + 1), ny_(degY + 1), c_(size_t(nx_) * ny_, T(0)) {}

  static Poly2 constant(T v) {
    Poly2 p(0, 0);
    p.at(0, 0) = v;
    return p;
  }

  int degX() const { return nx_ - 1; }
  int degY() const { return ny_ - 1; }
  T& at(int i, int j) { return c_[size_t(i) * ny_ + j]; }
  const T& at(int i, int j) const { return c_[size_t(i) * ny_ + j]; }

  friend Poly2 operator+(const Poly2& a, const Poly2& b) {
    Poly2 r(std::max(a.degX(), b.degX()), std::max(a.degY(), b.degY()));
    for (int i = 0; i <= a.degX(); ++i)
      for (int j = 0; j <= a.degY(); ++j) r.at(i, j) += a.at(i, j);
    for (int i = 0; i <= b.degX(); ++i)
      for (int j = 0; j <= b.degY(); ++j) r.at(i, j) += b.at(i, j);
    return r;
  }
  friend Poly2 operator-(const Poly2& a, const Poly2& b) { return a + (T(-1) * b); }
  friend Poly2 operator*(T s, const Poly2& a) {
    Poly2 r = a;
    for (auto& v : r.c_) v = v * s;
    return r;
  }
  friend Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2 r(a.degX() + b.degX(), a.degY() + b.degY());
    for (int i = 0; i <= a.degX(); ++i)
      for (int j = 0; j <= a.degY(); ++j) {
        if (a.at(i, j) == T(0)) continue;
        for (int p = 0; p <= b.degX(); ++p)
          for (int q = 0; q <= b.degY(); ++q) r.at(i + p, j + q) += a.at(i, j) * b.at(p, q);
      }
    return r;
  }

  Poly2 dx() const {
    if (degX() == 0) return Poly2();
    Poly2 r(degX() - 1, degY());
    for (int i = 1; i <= degX(); ++i)
      for (int j = 0; j <= degY(); ++j) r.at(i - 1, j) = T(double(i)) * at(i, j);
    return r;
  }
  Poly2 dy() const {
    if (degY() == 0) return Poly2();
    Poly2 r(degX(), degY() - 1);
    for (int i = 0; i <= degX(); ++i)
      for (int j = 1; j <= degY(); ++j) r.at(i, j - 1) = T(double(j)) * at(i, j);
    return r;
  }

  template <typename S>
  S eval(S x, S y) const {
    // Horner in x of Horner-in-y rows.
    S acc = S(0);
    for (int i = degX(); i >= 0; --i) {
      S row = S(0);
      for (int j = degY(); j >= 0; --j) row = row * y + S(double_cast(at(i, j)));
      acc = acc * x + row;
    }
    return acc;
  }

  /// Exact evaluation when S == T.
  T evalExact(T x, T y) const {
    T acc = T(0);
    for (int i = degX(); i >= 0; --i) {
      T row = T(0);
      for (int j = degY(); j >= 0; --j) row = row * y + at(i, j);
      acc = acc * x + row;
    }
    return acc;
  }

  T maxAbsCoeff() const {
    T m = T(0);
    using std::abs;
    for (const auto& v : c_) {
      T a = abs(v);
      if (m < a) m = a;
    }
    return m;
  }

 private:
  static double double_cast(const T& v) { return double(v); }

  int nx_, ny_;
  std::vector<T> c_;
};

}  // namespace fdkp
