#include "sh3/boundary.hpp"

#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <stdexcept>

#include "sh3/frame_bundle.hpp"
#include "sh3/rng.hpp"

namespace sh3 {

BoundaryPoint::BoundaryPoint(double a, double b, double c, bool check) : nu{a, b, c} {
  if (check) {
    double n = std::sqrt(a * a + b * b + c * c);
    if (std::abs(n - 1.0) > 1e-9) throw std::invalid_argument("BoundaryPoint: not a unit vector");
  }
}

BoundaryData boundary_maps(const UnitTangent &p) {
  BoundaryData d;
  MinkowskiVector plus = p.x + p.v, minus = p.x - p.v;
  d.phi_plus = plus[0];
  d.phi_minus = minus[0];
  d.b_plus = BoundaryPoint(plus[1] / plus[0], plus[2] / plus[0], plus[3] / plus[0], false);
  d.b_minus = BoundaryPoint(minus[1] / minus[0], minus[2] / minus[0], minus[3] / minus[0], false);
  return d;
}

double poisson_kernel(const H3Point &x, const BoundaryPoint &nu) {
  return 1.0 / mink_inner(x.x, nu.lift());
}

MinkowskiVector v_pm(const H3Point &x, const BoundaryPoint &nu, int sign) {
  double P = poisson_kernel(x, nu);
  double s = sign > 0 ? 1.0 : -1.0;
  return x.x * (-s) + nu.lift() * (s * P);
}

MobiusImage mobius_action(const Eigen::Matrix4d &gamma, const BoundaryPoint &nu) {
  if (!is_lorentz(gamma)) throw std::invalid_argument("mobius_action: matrix is not Lorentz");
  MinkowskiVector w = apply_matrix(gamma, nu.lift());
  MobiusImage out;
  out.conformal = w[0];
  out.image = BoundaryPoint(w[1] / w[0], w[2] / w[0], w[3] / w[0], false);
  return out;
}

bool is_lorentz(const Eigen::Matrix4d &gamma, double tol) {
  Eigen::Matrix4d J = Eigen::Vector4d(1, -1, -1, -1).asDiagonal();
  return ((gamma.transpose() * J * gamma - J).cwiseAbs().maxCoeff() < tol) && gamma(0, 0) > 0 &&
         gamma.determinant() > 0;
}

Eigen::Matrix4d random_lorentz(Rng &rng, double scale) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  for (int k = 0; k < 6; ++k) {
    double c = rng.uniform(-1.0, 1.0) * scale;
    const AlgebraMatrix &g = algebra_matrix(kFieldOrder[k]);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) += c * g[i][j];
  }
  // keep the generator norm bounded so exp stays well conditioned
  double n = m.norm();
  if (n > 1.0) m *= 1.0 / n;
  return m.exp();
}

MinkowskiVector apply_matrix(const Eigen::Matrix4d &m, const MinkowskiVector &v) {
  MinkowskiVector r;
  for (int i = 0; i < 4; ++i) {
    double s = 0;
    for (int j = 0; j < 4; ++j) s += m(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

UnitTangent apply_matrix(const Eigen::Matrix4d &m, const UnitTangent &p) {
  return UnitTangent(apply_matrix(m, p.x), apply_matrix(m, p.v), false);
}

XiCoordinates xi_forward(const UnitTangent &p) {
  BoundaryData d = boundary_maps(p);
  XiCoordinates c;
  c.nu_minus = d.b_minus;
  c.nu_plus = d.b_plus;
  c.t = 0.5 * std::log(d.phi_plus / d.phi_minus);
  return c;
}

UnitTangent xi_inverse(const XiCoordinates &c) {
  double sep = std::sqrt(c.nu_minus.dist2(c.nu_plus));
  if (sep < 1e-8) throw std::invalid_argument("xi_inverse: coincident boundary points");
  double phi_plus = 2.0 * std::exp(c.t) / sep;
  double phi_minus = 2.0 * std::exp(-c.t) / sep;
  MinkowskiVector plus = c.nu_plus.lift() * phi_plus;
  MinkowskiVector minus = c.nu_minus.lift() * phi_minus;
  return UnitTangent((plus + minus) * 0.5, (plus - minus) * 0.5, false);
}

double xi_jacobian(const UnitTangent &p) {
  BoundaryData d = boundary_maps(p);
  double prod = d.phi_minus * d.phi_plus;
  return 4.0 / (prod * prod);
}

namespace {

// orthonormal tangent basis of S^2 at nu
void sphere_basis(const BoundaryPoint &nu, std::array<double, 3> &t1, std::array<double, 3> &t2) {
  std::array<double, 3> seed = (std::abs(nu.nu[0]) < 0.8) ? std::array<double, 3>{1, 0, 0}
                                                          : std::array<double, 3>{0, 1, 0};
  double d = seed[0] * nu.nu[0] + seed[1] * nu.nu[1] + seed[2] * nu.nu[2];
  double n = 0;
  for (int i = 0; i < 3; ++i) {
    t1[i] = seed[i] - d * nu.nu[i];
    n += t1[i] * t1[i];
  }
  n = std::sqrt(n);
  for (int i = 0; i < 3; ++i) t1[i] /= n;
  t2 = {nu.nu[1] * t1[2] - nu.nu[2] * t1[1], nu.nu[2] * t1[0] - nu.nu[0] * t1[2],
        nu.nu[0] * t1[1] - nu.nu[1] * t1[0]};
}

// 5x5 determinant
double det5(double a[5][5]) {
  double det = 1.0;
  for (int col = 0; col < 5; ++col) {
    int piv = col;
    for (int r = col + 1; r < 5; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (a[piv][col] == 0.0) return 0.0;
    if (piv != col) {
      for (int c = 0; c < 5; ++c) std::swap(a[piv][c], a[col][c]);
      det = -det;
    }
    det *= a[col][col];
    for (int r = col + 1; r < 5; ++r) {
      double f = a[r][col] / a[col][col];
      for (int c = col; c < 5; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

double xi_jacobian_fd_step(const UnitTangent &p, double h) {
  auto basis = standard_basis(p);  // Sasaki-orthonormal
  XiCoordinates c0 = xi_forward(p);
  std::array<double, 3> m1, m2, p1, p2;
  sphere_basis(c0.nu_minus, m1, m2);
  sphere_basis(c0.nu_plus, p1, p2);
  double jac[5][5];
  for (int i = 0; i < 5; ++i) {
    XiCoordinates cp = xi_forward(bundle_step(p, basis[i], h));
    XiCoordinates cm = xi_forward(bundle_step(p, basis[i], -h));
    double dmin[3], dplus[3];
    for (int k = 0; k < 3; ++k) {
      dmin[k] = (cp.nu_minus.nu[k] - cm.nu_minus.nu[k]) / (2 * h);
      dplus[k] = (cp.nu_plus.nu[k] - cm.nu_plus.nu[k]) / (2 * h);
    }
    jac[0][i] = dmin[0] * m1[0] + dmin[1] * m1[1] + dmin[2] * m1[2];
    jac[1][i] = dmin[0] * m2[0] + dmin[1] * m2[1] + dmin[2] * m2[2];
    jac[2][i] = dplus[0] * p1[0] + dplus[1] * p1[1] + dplus[2] * p1[2];
    jac[3][i] = dplus[0] * p2[0] + dplus[1] * p2[1] + dplus[2] * p2[2];
    jac[4][i] = (cp.t - cm.t) / (2 * h);
  }
  return std::abs(det5(jac));
}

}  // namespace

double xi_jacobian_fd(const UnitTangent &p, double step) {
  // Richardson: central differences are O(h^2), so J = (4 J(h/2) - J(h)) / 3
  double jh = xi_jacobian_fd_step(p, step);
  double jh2 = xi_jacobian_fd_step(p, step / 2);
  return (4.0 * jh2 - jh) / 3.0;
}

std::array<double, 3> dB_fd(const UnitTangent &p, const SphereTangent &xi, int sign, double step) {
  auto get = [&](double h) {
    BoundaryData d = boundary_maps(bundle_step(p, xi, h));
    return (sign > 0) ? d.b_plus : d.b_minus;
  };
  BoundaryPoint bp = get(step), bm = get(-step), bp2 = get(step / 2), bm2 = get(-step / 2);
  std::array<double, 3> out;
  for (int k = 0; k < 3; ++k) {
    double d1 = (bp.nu[k] - bm.nu[k]) / (2 * step);
    double d2 = (bp2.nu[k] - bm2.nu[k]) / step;
    out[k] = (4.0 * d2 - d1) / 3.0;
  }
  return out;
}

}  // namespace sh3
