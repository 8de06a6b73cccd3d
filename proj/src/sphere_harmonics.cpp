#include "sh3/sphere_harmonics.hpp"

#include <cmath>
#include <stdexcept>

namespace sh3 {

void legendre_bar_all(int L, double ct, std::vector<double> &out) {
  // P-bar_l^m = sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!) P_l^m, no Condon-Shortley
  out.assign(static_cast<std::size_t>(L + 1) * (L + 2) / 2, 0.0);
  auto at = [&](int l, int m) -> double & { return out[static_cast<std::size_t>(l) * (l + 1) / 2 + m]; };
  double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
  at(0, 0) = std::sqrt(1.0 / (4.0 * M_PI));
  if (L == 0) return;
  // diagonal: P-bar_m^m = st * sqrt((2m+1)/(2m)) P-bar_{m-1}^{m-1}
  for (int m = 1; m <= L; ++m)
    at(m, m) = at(m - 1, m - 1) * st * std::sqrt((2.0 * m + 1.0) / (2.0 * m));
  // first subdiagonal: P-bar_{m+1}^m = ct sqrt(2m+3) P-bar_m^m
  for (int m = 0; m < L; ++m) at(m + 1, m) = ct * std::sqrt(2.0 * m + 3.0) * at(m, m);
  // upward three-term recurrence in l
  for (int m = 0; m <= L; ++m)
    for (int l = m + 2; l <= L; ++l) {
      double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(m) * m));
      double b = std::sqrt(((2.0 * l + 1.0) * ((l - 1.0) * (l - 1.0) - m * m)) /
                           ((2.0 * l - 3.0) * (static_cast<double>(l) * l - static_cast<double>(m) * m)));
      at(l, m) = a * ct * at(l - 1, m) - b * at(l - 2, m);
    }
}

double real_sph_harmonic(int l, int m, const std::array<double, 3> &dir) {
  double ct = dir[2];
  double phi = std::atan2(dir[1], dir[0]);
  static thread_local std::vector<double> buf;
  legendre_bar_all(l, ct, buf);
  double pb = buf[static_cast<std::size_t>(l) * (l + 1) / 2 + std::abs(m)];
  if (m == 0) return pb;
  if (m > 0) return std::sqrt(2.0) * pb * std::cos(m * phi);
  return std::sqrt(2.0) * pb * std::sin(-m * phi);
}

bool SphereFunction::is_real(double tol) const {
  for (const auto &c : coeffs_)
    if (std::abs(c.imag()) > tol) return false;
  return true;
}

Complex SphereFunction::operator()(const std::array<double, 3> &dir) const {
  double ct = dir[2];
  double phi = std::atan2(dir[1], dir[0]);
  static thread_local std::vector<double> buf;
  legendre_bar_all(L_, ct, buf);
  const double sqrt2 = std::sqrt(2.0);
  Complex total = 0;
  // incremental cos(m phi), sin(m phi)
  double cp = std::cos(phi), sp = std::sin(phi);
  std::vector<double> cm(L_ + 1), sm(L_ + 1);
  cm[0] = 1;
  sm[0] = 0;
  for (int m = 1; m <= L_; ++m) {
    cm[m] = cm[m - 1] * cp - sm[m - 1] * sp;
    sm[m] = sm[m - 1] * cp + cm[m - 1] * sp;
  }
  for (int l = 0; l <= L_; ++l) {
    const double *pb = buf.data() + static_cast<std::size_t>(l) * (l + 1) / 2;
    total += coeffs_[index(l, 0)] * pb[0];
    for (int m = 1; m <= l; ++m) {
      double base = sqrt2 * pb[m];
      total += coeffs_[index(l, m)] * (base * cm[m]);
      total += coeffs_[index(l, -m)] * (base * sm[m]);
    }
  }
  return total;
}

double SphereFunction::coeff_norm2() const {
  double s = 0;
  for (const auto &c : coeffs_) s += std::norm(c);
  return s;
}

SphereFunction SphereFunction::constant(double value) {
  SphereFunction f(0);
  f.coeff(0, 0) = value * std::sqrt(4.0 * M_PI);
  return f;
}

SphereFunction SphereFunction::harmonic(int l, int m) {
  SphereFunction f(l);
  f.coeff(l, m) = 1.0;
  return f;
}

SphereFunction SphereFunction::project(int L, const SphereRule &grid,
                                       const std::vector<Complex> &values) {
  if (values.size() != grid.nodes.size())
    throw std::invalid_argument("SphereFunction::project: value/grid size mismatch");
  SphereFunction f(L);
  std::vector<double> buf;
  const double sqrt2 = std::sqrt(2.0);
  for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
    const auto &n = grid.nodes[i];
    legendre_bar_all(L, n.cos_theta, buf);
    Complex wv = values[i] * n.weight;
    for (int l = 0; l <= L; ++l) {
      const double *pb = buf.data() + static_cast<std::size_t>(l) * (l + 1) / 2;
      f.coeff(l, 0) += wv * pb[0];
      for (int m = 1; m <= l; ++m) {
        double base = sqrt2 * pb[m];
        f.coeff(l, m) += wv * (base * std::cos(m * n.phi));
        f.coeff(l, -m) += wv * (base * std::sin(m * n.phi));
      }
    }
  }
  return f;
}

std::array<double, 3> sphere_gradient_fd(int l, int m, const std::array<double, 3> &dir,
                                         double step) {
  // local tangent basis
  std::array<double, 3> t1, t2;
  {
    std::array<double, 3> seed = (std::abs(dir[0]) < 0.8) ? std::array<double, 3>{1, 0, 0}
                                                          : std::array<double, 3>{0, 1, 0};
    double d = seed[0] * dir[0] + seed[1] * dir[1] + seed[2] * dir[2];
    double n = 0;
    for (int i = 0; i < 3; ++i) {
      t1[i] = seed[i] - d * dir[i];
      n += t1[i] * t1[i];
    }
    n = std::sqrt(n);
    for (int i = 0; i < 3; ++i) t1[i] /= n;
    t2 = {dir[1] * t1[2] - dir[2] * t1[1], dir[2] * t1[0] - dir[0] * t1[2],
          dir[0] * t1[1] - dir[1] * t1[0]};
  }
  auto value_at = [&](const std::array<double, 3> &t, double h) {
    std::array<double, 3> p;
    double n = 0;
    for (int i = 0; i < 3; ++i) {
      p[i] = dir[i] + h * t[i];
      n += p[i] * p[i];
    }
    n = std::sqrt(n);
    for (int i = 0; i < 3; ++i) p[i] /= n;
    return real_sph_harmonic(l, m, p);
  };
  auto deriv = [&](const std::array<double, 3> &t) {
    double d1 = (value_at(t, step) - value_at(t, -step)) / (2 * step);
    double d2 = (value_at(t, step / 2) - value_at(t, -step / 2)) / step;
    return (4.0 * d2 - d1) / 3.0;
  };
  double g1 = deriv(t1), g2 = deriv(t2);
  return {g1 * t1[0] + g2 * t2[0], g1 * t1[1] + g2 * t2[1], g1 * t1[2] + g2 * t2[2]};
}

}  // namespace sh3
