#pragma once

#include <complex>
#include <vector>

#include "sh3/quadrature.hpp"

namespace sh3 {

using Complex = std::complex<double>;

/// Real orthonormal spherical harmonics Y_{l,m}, -l <= m <= l:
///   Y_{l,0}  = N P_l(cos t),
///   Y_{l,m>0} = sqrt2 N P_l^m(cos t) cos(m p),
///   Y_{l,m<0} = sqrt2 N P_l^|m|(cos t) sin(|m| p)
/// with the orthonormal normalization (integral of Y^2 over S^2 is 1).

/// All normalized theta-parts P-bar_l^m(ct) for l <= L, 0 <= m <= l, packed
/// as out[l*(l+1)/2 + m].  One O(L^2) recurrence per point.
void legendre_bar_all(int L, double cos_theta, std::vector<double> &out);

/// Single real harmonic at a direction (the theta-part equals
/// std::sph_legendre up to the Condon-Shortley phase, which this basis
/// omits; cross-checked in the tests).
double real_sph_harmonic(int l, int m, const std::array<double, 3> &dir);

/// A function on S^2 held as complex coefficients over the real orthonormal
/// harmonic basis up to degree L, plus a pointwise evaluator.
class SphereFunction {
public:
  SphereFunction() = default;
  explicit SphereFunction(int L) : L_(L), coeffs_(static_cast<std::size_t>((L + 1) * (L + 1))) {}

  int degree_cap() const { return L_; }

  /// Storage index of (l, m): l^2 + (m + l).
  static std::size_t index(int l, int m) {
    return static_cast<std::size_t>(l) * l + static_cast<std::size_t>(m + l);
  }

  Complex &coeff(int l, int m) { return coeffs_[index(l, m)]; }
  Complex coeff(int l, int m) const { return coeffs_[index(l, m)]; }
  const std::vector<Complex> &coeffs() const { return coeffs_; }

  bool is_real(double tol = 0.0) const;

  Complex operator()(const std::array<double, 3> &dir) const;

  /// Sum over (l,m) of |c|^2; Parseval pairs this with the L^2 norm.
  double coeff_norm2() const;

  static SphereFunction constant(double value);
  static SphereFunction harmonic(int l, int m);  // a single basis function

  /// Projects point values on a grid onto the basis (the grid must resolve
  /// degree 2L).
  static SphereFunction project(int L, const SphereRule &grid, const std::vector<Complex> &values);

private:
  int L_ = 0;
  std::vector<Complex> coeffs_;
};

/// Gradient of a real harmonic as a vector in R^3 tangent to the sphere
/// (Richardson-extrapolated central differences in a local tangent basis).
std::array<double, 3> sphere_gradient_fd(int l, int m, const std::array<double, 3> &dir,
                                         double step = 1e-4);

}  // namespace sh3
