#pragma once

#include <functional>
#include <vector>

#include "sh3/hyperboloid.hpp"
#include "sh3/parallel.hpp"

namespace sh3 {

/// Radial profile psi(rho) on rho = <x,y>_M >= 1 with derivative callables.
struct RadialProfile {
  std::function<double(double)> eval;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
};

/// psi~(rho) = (1 - rho^2) psi''(rho) - 3 rho psi'(rho), so that
/// -Lap psi(<x,y>) = psi~(<x,y>) in the x variable.  Derivatives of the
/// output are Richardson central differences of its eval.
RadialProfile radial_laplacian(const RadialProfile &psi);

/// The s-kernel rho^{-s} with exact derivatives.
RadialProfile power_kernel(double s);

/// Configuration for the smoothing integrals.
struct QsConfig {
  double s = 4.0;
  double eps = 1e-5;        // cutoff scale chi(eps <x,y>)
  int radial_nodes = 64;    // Gauss nodes on the chi-supported interval
  int sphere_polar = 48;    // direction grid
  int sphere_az = 96;

  void validate() const;
};

/// Q_{s,chi,eps} F(x) = Int chi(eps <x,y>) <x,y>^{-s} F(y) dvol(y) by polar
/// quadrature around x.  The radial interval is [0, arccosh(2/eps)], where
/// the cutoff vanishes identically.
struct QsResult {
  double value = 0;
  bool converged = true;  // doubling the grid moved the value below tol
  double grid_delta = 0;  // observed change under doubling
};
QsResult q_s_apply(const QsConfig &cfg, const std::function<double(const H3Point &)> &F,
                   const H3Point &x = H3Point(), const ExecPolicy &pol = {},
                   bool check_convergence = false, double tol = 1e-6);

/// Residual of (-Lap - s(2-s)) Q_s f = s(s+1) Q_{s+2} f at x, with the
/// outer Laplacian pushed through the kernel by radial_laplacian.
double intertwining_residual(const QsConfig &cfg, const std::function<double(const H3Point &)> &f,
                             const ExecPolicy &pol = {});

/// Q_{s,chi,eps} over a ladder eps = eps0 * 2^{-k}.
struct RegularizedSequence {
  std::vector<double> eps;
  std::vector<double> value;
};
RegularizedSequence q_s_regularized(const QsConfig &cfg,
                                    const std::function<double(const H3Point &)> &F, int levels,
                                    const ExecPolicy &pol = {});

/// Hyperbolic finite-difference Laplacian at x (geodesic normal
/// coordinates, second-order stencil, Richardson-extrapolated).
double fd_laplacian(const std::function<double(const H3Point &)> &f, const H3Point &x,
                    double step = 1e-3);

/// 7-point stencil without extrapolation (the plain oracle).
double fd_laplacian_plain(const std::function<double(const H3Point &)> &f, const H3Point &x,
                          double step);

/// Orthonormal basis of T_x H^3.
std::array<MinkowskiVector, 3> tangent_basis(const H3Point &x);

/// Geodesic from x with initial unit direction u (|u|_g = 1): exp_x(t u).
H3Point h3_exp(const H3Point &x, const MinkowskiVector &u, double t);

}  // namespace sh3
