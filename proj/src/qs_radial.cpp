#include "sh3/qs_radial.hpp"

#include <cmath>
#include <stdexcept>

#include "sh3/quadrature.hpp"
#include "sh3/zonal.hpp"

namespace sh3 {

RadialProfile radial_laplacian(const RadialProfile &psi) {
  RadialProfile out;
  auto d1 = psi.d1, d2 = psi.d2;
  out.eval = [d1, d2](double rho) { return (1.0 - rho * rho) * d2(rho) - 3.0 * rho * d1(rho); };
  auto e = out.eval;
  out.d1 = [e](double rho) {
    double h = 1e-5 * std::max(1.0, std::abs(rho));
    double a1 = (e(rho + h) - e(rho - h)) / (2 * h);
    double a2 = (e(rho + h / 2) - e(rho - h / 2)) / h;
    return (4 * a2 - a1) / 3;
  };
  out.d2 = [e](double rho) {
    double h = 1e-4 * std::max(1.0, std::abs(rho));
    return (e(rho + h) - 2 * e(rho) + e(rho - h)) / (h * h);
  };
  return out;
}

RadialProfile power_kernel(double s) {
  RadialProfile p;
  p.eval = [s](double rho) { return std::pow(rho, -s); };
  p.d1 = [s](double rho) { return -s * std::pow(rho, -s - 1); };
  p.d2 = [s](double rho) { return s * (s + 1) * std::pow(rho, -s - 2); };
  return p;
}

void QsConfig::validate() const {
  if (s <= 2.0) throw std::invalid_argument("QsConfig: s > 2 required for integrability");
  if (eps <= 0 || eps > 1.0) throw std::invalid_argument("QsConfig: eps in (0,1] required");
  if (radial_nodes < 2 || sphere_polar < 2 || sphere_az < 4)
    throw std::invalid_argument("QsConfig: grid too small");
}

std::array<MinkowskiVector, 3> tangent_basis(const H3Point &x) {
  // complete x to a Lorentz frame by Gram-Schmidt with pivoting
  const MinkowskiVector seeds[4] = {e1(), e2(), e3(), e0()};
  std::array<MinkowskiVector, 3> out;
  int have = 0;
  for (int si = 0; si < 4 && have < 3; ++si) {
    MinkowskiVector w = seeds[si];
    w += x.x * (-mink_inner(x.x, w));
    for (int j = 0; j < have; ++j) w += out[j] * (mink_inner(out[j], w));
    double n2 = -mink_inner(w, w);
    if (n2 < 1e-12) continue;
    out[have++] = w * (1.0 / std::sqrt(n2));
  }
  if (have < 3) throw std::runtime_error("tangent_basis: completion failed");
  // positively oriented: dvol_g(b1,b2,b3) = +1
  if (dvol_g(x, out[0], out[1], out[2]) < 0) out[2] = -out[2];
  return out;
}

H3Point h3_exp(const H3Point &x, const MinkowskiVector &u, double t) {
  return H3Point(x.x * std::cosh(t) + u * std::sinh(t), false);
}

namespace {

// polar integral around x: Int_0^R k(rho) sinh^2(rho) Avg_{S^2} F drho
double polar_integral(const QsConfig &cfg, const std::function<double(const H3Point &)> &F,
                      const H3Point &x, int radial_nodes, int polar, int az,
                      const ExecPolicy &pol) {
  double R = std::acosh(2.0 / cfg.eps);
  GaussRule rad = gauss_legendre_on(radial_nodes, 0.0, R);
  SphereRule sph = SphereRule::product(polar, az);
  auto basis = tangent_basis(x);
  std::size_t nr = rad.nodes.size(), ns = sph.nodes.size();
  return parallel_sum(nr * ns, pol, [&](std::size_t idx) {
    std::size_t ir = idx / ns, is = idx % ns;
    double rho = rad.nodes[ir];
    double ch = std::cosh(rho), sh = std::sinh(rho);
    const auto &d = sph.nodes[is].dir;
    MinkowskiVector u = basis[0] * d[0] + basis[1] * d[1] + basis[2] * d[2];
    H3Point y(x.x * ch + u * sh, false);
    double kernel = chi_cutoff(cfg.eps * ch) * std::pow(ch, -cfg.s);
    return rad.weights[ir] * sph.nodes[is].weight * kernel * sh * sh * F(y);
  });
}

}  // namespace

QsResult q_s_apply(const QsConfig &cfg, const std::function<double(const H3Point &)> &F,
                   const H3Point &x, const ExecPolicy &pol, bool check_convergence, double tol) {
  cfg.validate();
  QsResult r;
  r.value = polar_integral(cfg, F, x, cfg.radial_nodes, cfg.sphere_polar, cfg.sphere_az, pol);
  if (check_convergence) {
    double refined =
        polar_integral(cfg, F, x, 2 * cfg.radial_nodes, 2 * cfg.sphere_polar, 2 * cfg.sphere_az, pol);
    r.grid_delta = std::abs(refined - r.value);
    double scale = std::max(std::abs(refined), 1e-300);
    r.converged = (r.grid_delta <= tol * scale);
    r.value = refined;
  }
  return r;
}

double intertwining_residual(const QsConfig &cfg, const std::function<double(const H3Point &)> &f,
                             const ExecPolicy &pol) {
  cfg.validate();
  const H3Point x0;
  // left side: the Laplacian acts on the kernel profile through
  // radial_laplacian, inside the same polar quadrature
  RadialProfile ker = power_kernel(cfg.s);
  RadialProfile lap_ker = radial_laplacian(ker);
  double R = std::acosh(2.0 / cfg.eps);
  GaussRule rad = gauss_legendre_on(cfg.radial_nodes, 0.0, R);
  SphereRule sph = SphereRule::product(cfg.sphere_polar, cfg.sphere_az);
  auto basis = tangent_basis(x0);
  std::size_t nr = rad.nodes.size(), ns = sph.nodes.size();
  double shift = cfg.s * (2.0 - cfg.s);
  double lhs = parallel_sum(nr * ns, pol, [&](std::size_t idx) {
    std::size_t ir = idx / ns, is = idx % ns;
    double rho = rad.nodes[ir];
    double ch = std::cosh(rho), sh = std::sinh(rho);
    const auto &d = sph.nodes[is].dir;
    MinkowskiVector u = basis[0] * d[0] + basis[1] * d[1] + basis[2] * d[2];
    H3Point y(x0.x * ch + u * sh, false);
    double kernel = chi_cutoff(cfg.eps * ch) * (lap_ker.eval(ch) - shift * ker.eval(ch));
    return rad.weights[ir] * sph.nodes[is].weight * kernel * sh * sh * f(y);
  });
  QsConfig cfg2 = cfg;
  cfg2.s = cfg.s + 2.0;
  double rhs = cfg.s * (cfg.s + 1.0) * q_s_apply(cfg2, f, x0, pol).value;
  return std::abs(lhs - rhs);
}

RegularizedSequence q_s_regularized(const QsConfig &cfg,
                                    const std::function<double(const H3Point &)> &F, int levels,
                                    const ExecPolicy &pol) {
  RegularizedSequence seq;
  for (int k = 0; k < levels; ++k) {
    QsConfig c = cfg;
    c.eps = cfg.eps * std::pow(2.0, -k);
    seq.eps.push_back(c.eps);
    seq.value.push_back(q_s_apply(c, F, H3Point(), pol).value);
  }
  return seq;
}

double fd_laplacian_plain(const std::function<double(const H3Point &)> &f, const H3Point &x,
                          double step) {
  auto basis = tangent_basis(x);
  double center = f(x);
  double acc = 0;
  for (const auto &u : basis)
    acc += f(h3_exp(x, u, step)) + f(h3_exp(x, u, -step)) - 2.0 * center;
  return acc / (step * step);
}

double fd_laplacian(const std::function<double(const H3Point &)> &f, const H3Point &x,
                    double step) {
  double a1 = fd_laplacian_plain(f, x, step);
  double a2 = fd_laplacian_plain(f, x, step / 2);
  return (4.0 * a2 - a1) / 3.0;
}

}  // namespace sh3
