#pragma once

#include <Eigen/Dense>
#include <array>

#include "sh3/hyperboloid.hpp"

namespace sh3 {

/// Unit vector in R^3, a point of the conformal boundary sphere.
struct BoundaryPoint {
  std::array<double, 3> nu{0, 0, 1};

  BoundaryPoint() = default;
  BoundaryPoint(double a, double b, double c, bool check = true);

  double dot(const BoundaryPoint &o) const {
    return nu[0] * o.nu[0] + nu[1] * o.nu[1] + nu[2] * o.nu[2];
  }
  double dist2(const BoundaryPoint &o) const {
    double d0 = nu[0] - o.nu[0], d1 = nu[1] - o.nu[1], d2 = nu[2] - o.nu[2];
    return d0 * d0 + d1 * d1 + d2 * d2;
  }
  MinkowskiVector lift() const { return {1.0, nu[0], nu[1], nu[2]}; }
};

/// Endpoint data of the geodesic through p: x +- v = Phi_pm (1, B_pm).
struct BoundaryData {
  double phi_minus = 0, phi_plus = 0;
  BoundaryPoint b_minus, b_plus;
};
BoundaryData boundary_maps(const UnitTangent &p);

/// Poisson kernel P(x,nu) = <x,(1,nu)>_M^{-1}.
double poisson_kernel(const H3Point &x, const BoundaryPoint &nu);

/// Inverse fiber maps: v_pm(x,nu) = -+ x +- P(x,nu)(1,nu), the unit tangent
/// at x whose forward (+) / backward (-) endpoint is nu.
MinkowskiVector v_pm(const H3Point &x, const BoundaryPoint &nu, int sign);

/// Action of gamma on the boundary: gamma.(1,nu) = N(nu) (1, L(nu)).
struct MobiusImage {
  BoundaryPoint image;
  double conformal = 1.0;  // N_gamma(nu)
};
MobiusImage mobius_action(const Eigen::Matrix4d &gamma, const BoundaryPoint &nu);

/// Lorentz checks and samplers.
bool is_lorentz(const Eigen::Matrix4d &gamma, double tol = 1e-10);
Eigen::Matrix4d random_lorentz(class Rng &rng, double scale = 1.0);
MinkowskiVector apply_matrix(const Eigen::Matrix4d &m, const MinkowskiVector &v);
UnitTangent apply_matrix(const Eigen::Matrix4d &m, const UnitTangent &p);

/// The coordinates (nu_-, nu_+, t) of a unit tangent:
/// nu_pm = B_pm, t = (1/2) log(Phi_+ / Phi_-).
struct XiCoordinates {
  BoundaryPoint nu_minus, nu_plus;
  double t = 0;
};
XiCoordinates xi_forward(const UnitTangent &p);

/// Inverse: Phi_pm = 2 e^{+-t} / |nu_- - nu_+|, x +- v = Phi_pm (1, nu_pm).
/// Throws when the boundary points (nearly) coincide.
UnitTangent xi_inverse(const XiCoordinates &c);

/// Exact Jacobian of the coordinate change with respect to the densities
/// dvol_g dS and dS dS dt: 4 (Phi_- Phi_+)^{-2}.
double xi_jacobian(const UnitTangent &p);

/// Numeric Jacobian of the same map in a Sasaki-orthonormal frame
/// (central differences with Richardson extrapolation).
double xi_jacobian_fd(const UnitTangent &p, double step = 1e-4);

/// Differential of B_pm along a bundle tangent, by central differences.
std::array<double, 3> dB_fd(const UnitTangent &p, const SphereTangent &xi, int sign,
                            double step = 1e-5);

}  // namespace sh3
