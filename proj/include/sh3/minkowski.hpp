#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace sh3 {

/// A vector of R^{1,3}.  Component 0 is the timelike coordinate; the
/// Lorentzian product is <a,b>_M = a0*b0 - a1*b1 - a2*b2 - a3*b3.
struct MinkowskiVector {
  std::array<double, 4> c{0, 0, 0, 0};

  MinkowskiVector() = default;
  MinkowskiVector(double c0, double c1, double c2, double c3) : c{c0, c1, c2, c3} {}

  double &operator[](std::size_t i) { return c[i]; }
  double operator[](std::size_t i) const { return c[i]; }

  MinkowskiVector operator+(const MinkowskiVector &o) const {
    return {c[0] + o.c[0], c[1] + o.c[1], c[2] + o.c[2], c[3] + o.c[3]};
  }
  MinkowskiVector operator-(const MinkowskiVector &o) const {
    return {c[0] - o.c[0], c[1] - o.c[1], c[2] - o.c[2], c[3] - o.c[3]};
  }
  MinkowskiVector operator*(double s) const { return {c[0] * s, c[1] * s, c[2] * s, c[3] * s}; }
  MinkowskiVector operator-() const { return {-c[0], -c[1], -c[2], -c[3]}; }
  MinkowskiVector &operator+=(const MinkowskiVector &o) {
    for (int i = 0; i < 4; ++i) c[i] += o.c[i];
    return *this;
  }
};

inline MinkowskiVector operator*(double s, const MinkowskiVector &v) { return v * s; }

/// Lorentzian product <a,b>_M = a0 b0 - a1 b1 - a2 b2 - a3 b3.
inline double mink_inner(const MinkowskiVector &a, const MinkowskiVector &b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

/// Euclidean product on R^4 (used by the explicit vector-field formulas).
inline double euclid_inner(const MinkowskiVector &a, const MinkowskiVector &b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

/// Riemannian product on tangent vectors of H^3: the restriction of -<.,.>_M.
inline double g_inner(const MinkowskiVector &a, const MinkowskiVector &b) {
  return -mink_inner(a, b);
}

inline double g_norm(const MinkowskiVector &a) { return std::sqrt(std::max(0.0, g_inner(a, a))); }

inline MinkowskiVector e0() { return {1, 0, 0, 0}; }
inline MinkowskiVector e1() { return {0, 1, 0, 0}; }
inline MinkowskiVector e2() { return {0, 0, 1, 0}; }
inline MinkowskiVector e3() { return {0, 0, 0, 1}; }

inline double max_abs_component(const MinkowskiVector &v) {
  double m = 0;
  for (double x : v.c) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace sh3
