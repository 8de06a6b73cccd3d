#include "sh3/zonal.hpp"

#include <cmath>
#include <stdexcept>

namespace sh3 {

namespace {

double bump(double t) { return t > 0 ? std::exp(-1.0 / t) : 0.0; }
double bump_d1(double t) { return t > 0 ? bump(t) / (t * t) : 0.0; }
double bump_d2(double t) { return t > 0 ? bump(t) * (1.0 - 2.0 * t) / (t * t * t * t) : 0.0; }

}  // namespace

double chi_cutoff(double s) {
  double a = std::abs(s);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  double hb = bump(2.0 - a), ha = bump(a - 1.0);
  return hb / (hb + ha);
}

double chi_cutoff_d1(double s) {
  double a = std::abs(s);
  if (a <= 1.0 || a >= 2.0) return 0.0;
  double hb = bump(2.0 - a), ha = bump(a - 1.0);
  double hbp = -bump_d1(2.0 - a), hap = bump_d1(a - 1.0);
  double denom = hb + ha;
  double d = (hbp * denom - hb * (hbp + hap)) / (denom * denom);
  return (s >= 0) ? d : -d;
}

double chi_cutoff_d2(double s) {
  double a = std::abs(s);
  if (a <= 1.0 || a >= 2.0) return 0.0;
  double hb = bump(2.0 - a), ha = bump(a - 1.0);
  double hbp = -bump_d1(2.0 - a), hap = bump_d1(a - 1.0);
  double hbpp = bump_d2(2.0 - a), happ = bump_d2(a - 1.0);
  double denom = hb + ha, dp = hbp + hap, dpp = hbpp + happ;
  // second derivative of hb/denom
  double d2 = (hbpp * denom - hb * dpp) / (denom * denom) -
              2.0 * dp * (hbp * denom - hb * dp) / (denom * denom * denom);
  return d2;  // even in s
}

namespace {

FunkHeckeSpectrum spectrum_impl(const ZonalKernel &kappa, int L, int quad_nodes,
                                const ExecPolicy &pol, bool serial) {
  // r = 2 - 2t in [0,4].  Two node families: a global Gauss rule sized to L
  // over the bulk (so the Legendre oscillation is resolved), plus dyadic
  // panels toward r = 0 for kernels with short-range structure (kappa_eps).
  // Near t = 1 the Legendre functions stop oscillating on the panel scale,
  // so fixed panel orders suffice there.
  const double r_cut = 0.05;
  std::vector<double> nodes_r, weights_r;
  {
    int n_outer = quad_nodes > 0 ? std::max(quad_nodes, L + 48) : (L + 48);
    GaussRule outer = gauss_legendre_on(n_outer, r_cut, 4.0);
    nodes_r = outer.nodes;
    weights_r = outer.weights;
    std::vector<double> cuts{0.0, 1e-6};
    for (double c = 2e-6; c < r_cut; c *= 2.0) cuts.push_back(c);
    cuts.push_back(r_cut);
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
      GaussRule g = gauss_legendre_on(64, cuts[p], cuts[p + 1]);
      nodes_r.insert(nodes_r.end(), g.nodes.begin(), g.nodes.end());
      weights_r.insert(weights_r.end(), g.weights.begin(), g.weights.end());
    }
  }
  std::size_t n = nodes_r.size();
  std::vector<double> kv(n);
  for (std::size_t i = 0; i < n; ++i) kv[i] = kappa.eval(nodes_r[i]);

  FunkHeckeSpectrum sp;
  sp.lambdas.assign(L + 1, 0.0);
  // per-node upward Legendre recurrence, accumulated per fixed node chunk
  // and combined in chunk order, so the result does not depend on the
  // thread count
  const std::size_t chunk = 256;
  const std::size_t nchunks = (n + chunk - 1) / chunk;
  std::vector<std::vector<double>> partial(nchunks, std::vector<double>(L + 1, 0.0));
  auto body = [&](std::size_t ci) {
    auto &acc = partial[ci];
    std::size_t lo = ci * chunk, hi = std::min(lo + chunk, n);
    for (std::size_t i = lo; i < hi; ++i) {
      double t = 1.0 - 0.5 * nodes_r[i];
      double w = weights_r[i] * kv[i];
      double p0 = 1.0, p1 = t;
      acc[0] += w;
      if (L >= 1) acc[1] += w * t;
      for (int l = 2; l <= L; ++l) {
        double p2 = ((2 * l - 1) * t * p1 - (l - 1) * p0) / l;
        acc[l] += w * p2;
        p0 = p1;
        p1 = p2;
      }
    }
  };
  if (serial) {
    for (std::size_t ci = 0; ci < nchunks; ++ci) body(ci);
  } else {
    parallel_for(nchunks, pol, body);
  }
  for (const auto &acc : partial)
    for (int l = 0; l <= L; ++l) sp.lambdas[l] += M_PI * acc[l];
  return sp;
}

}  // namespace

FunkHeckeSpectrum funk_hecke_spectrum(const ZonalKernel &kappa, int L, int quad_nodes,
                                      const ExecPolicy &pol) {
  return spectrum_impl(kappa, L, quad_nodes, pol, false);
}

FunkHeckeSpectrum funk_hecke_spectrum_serial(const ZonalKernel &kappa, int L, int quad_nodes) {
  return spectrum_impl(kappa, L, quad_nodes, {}, true);
}

SphereFunction a_kappa_apply(const ZonalKernel &kappa, const SphereFunction &f,
                             const SphereRule &grid, const ExecPolicy &pol) {
  int L = f.degree_cap();
  // the product grid must integrate degree 2L exactly
  std::size_t n = grid.nodes.size();
  {
    // count distinct polar values
    int n_polar = 0, n_az = 0;
    double last = 2.0;
    for (const auto &node : grid.nodes)
      if (node.cos_theta != last) {
        ++n_polar;
        last = node.cos_theta;
      }
    if (n_polar > 0) n_az = static_cast<int>(n / n_polar);
    if (2 * n_polar - 1 < 2 * L || n_az - 1 < 2 * L)
      throw std::invalid_argument("a_kappa_apply: grid does not resolve degree 2L");
  }
  // input values on the grid
  std::vector<Complex> fv(n);
  parallel_for(n, pol, [&](std::size_t i) { fv[i] = f(grid.nodes[i].dir); });
  // pointwise zonal integrals
  std::vector<Complex> out(n);
  parallel_for(n, pol, [&](std::size_t i) {
    const auto &a = grid.nodes[i].dir;
    Complex s = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const auto &b = grid.nodes[j].dir;
      double d2 = (a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) +
                  (a[2] - b[2]) * (a[2] - b[2]);
      s += grid.nodes[j].weight * kappa.eval(d2) * fv[j];
    }
    out[i] = s;
  });
  return SphereFunction::project(L, grid, out);
}

ZonalKernel kappa_tilde(const ZonalKernel &kappa) {
  ZonalKernel t;
  auto e = kappa.eval, d1 = kappa.d1, d2 = kappa.d2;
  t.eval = [d1, d2](double r) { return (4.0 - r) * r * d2(r) + (4.0 - 2.0 * r) * d1(r); };
  // derivatives of the transform by central differences of t.eval
  auto te = t.eval;
  t.d1 = [te](double r) {
    double h = 1e-5;
    return (te(r + h) - te(r - h)) / (2 * h);
  };
  t.d2 = [te](double r) {
    double h = 1e-4;
    return (te(r + h) - 2.0 * te(r) + te(r - h)) / (h * h);
  };
  return t;
}

OperatorNorms operator_norms(const ZonalKernel &kappa, double s1, double s2, int L) {
  double diff = s2 - s1;
  int ell2 = static_cast<int>(std::lround(diff));
  if (ell2 < 0 || ell2 % 2 != 0 || std::abs(diff - ell2) > 1e-12)
    throw std::invalid_argument("operator_norms: s2 - s1 must be an even nonnegative integer");
  int ell = ell2 / 2;
  OperatorNorms out;
  FunkHeckeSpectrum sp = funk_hecke_spectrum(kappa, L);
  for (int l = 0; l <= L; ++l) {
    double mult = std::pow(1.0 + static_cast<double>(l) * (l + 1), diff / 2.0);
    out.norm = std::max(out.norm, mult * std::abs(sp.lambdas[l]));
  }
  // Schur bound: pi ||kappa||_L1([0,4])
  {
    GaussRule g = gauss_legendre_on(256, 0.0, 4.0);
    double l1 = 0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) l1 += g.weights[i] * std::abs(kappa.eval(g.nodes[i]));
    out.schur_bound = M_PI * l1;
  }
  // right side of the Sobolev bound, without the unspecified constant
  {
    GaussRule g = gauss_legendre_on(256, 0.0, 4.0);
    for (int j = 0; j <= 2 * ell; ++j) {
      int kpow = std::max(j - ell, 0);
      double l1 = 0;
      for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        double r = g.nodes[i];
        double dj;
        if (j == 0) dj = kappa.eval(r);
        else if (j == 1) dj = kappa.d1(r);
        else if (j == 2) dj = kappa.d2(r);
        else {
          double h = 5e-3;
          // Richardson-extrapolated central difference of d2 for j = 3, 4
          auto dn = [&](double rr) { return kappa.d2(rr); };
          if (j == 3) {
            double a1 = (dn(r + h) - dn(r - h)) / (2 * h);
            double a2 = (dn(r + h / 2) - dn(r - h / 2)) / h;
            dj = (4 * a2 - a1) / 3;
          } else {
            dj = (dn(r + h) - 2 * dn(r) + dn(r - h)) / (h * h);
          }
        }
        l1 += g.weights[i] * std::abs(std::pow(r, kpow) * dj);
      }
      out.sobolev_bound_rhs += l1;
    }
  }
  return out;
}

double psi_eps_eval(double eps, double r, int quad_nodes) {
  if (r <= 0) return 0.0;
  double sq = std::sqrt(r);
  // chi argument u = 2 eps cosh t / sq: identically 1 for u <= 1, i.e.
  // cosh t <= sq/(2 eps), and 0 once u >= 2, i.e. cosh t >= sq/eps
  double reach = sq / eps;
  if (reach <= 1.0) return 0.0;
  double T = std::acosh(reach);
  double T1 = (reach > 2.0) ? std::acosh(reach / 2.0) : 0.0;
  // Int_0^T1 cosh^-4 t dt = tanh T1 - tanh^3 T1 / 3
  double th = std::tanh(T1);
  double s = th - th * th * th / 3.0;
  GaussRule g = gauss_legendre_on(quad_nodes, T1, T);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    double ch = std::cosh(g.nodes[i]);
    double c = chi_cutoff(2.0 * eps * ch / sq);
    s += g.weights[i] * c / (ch * ch * ch * ch);
  }
  return 2.0 * s * 0.75;  // even integrand
}

ZonalKernel kappa_eps(double eps) {
  ZonalKernel k;
  k.eval = [eps](double r) {
    if (r <= 0) return 0.0;
    return (4.0 / 3.0) * r * r * (1.0 - psi_eps_eval(eps, r));
  };
  // d/dr under the integral:
  //   psi_eps(r) = (3/4) Int chi(2 eps cosh t / sqrt r) cosh^-4 t dt
  //   d/dr chi(u(r)) = chi'(u) * (-u / (2r)),  u = 2 eps cosh t / sqrt r
  // the chi-derivative factors live on cosh t in [sq/(2 eps), sq/eps] only
  auto transition = [eps](double r, auto &&integrand) {
    double sq = std::sqrt(r);
    double reach = sq / eps;
    if (reach <= 1.0) return 0.0;
    double T = std::acosh(reach);
    double T1 = (reach > 2.0) ? std::acosh(reach / 2.0) : 0.0;
    GaussRule g = gauss_legendre_on(128, T1, T);
    double s = 0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      double ch = std::cosh(g.nodes[i]);
      double u = 2.0 * eps * ch / sq;
      s += g.weights[i] * integrand(u) / (ch * ch * ch * ch);
    }
    return 2.0 * s * 0.75;
  };
  auto dpsi = [transition](double r) {
    if (r <= 0) return 0.0;
    return transition(r, [r](double u) { return chi_cutoff_d1(u) * (-u / (2.0 * r)); });
  };
  auto d2psi = [transition](double r) {
    if (r <= 0) return 0.0;
    // d2/dr2 chi(u(r)) = chi''(u) u^2/(4r^2) + chi'(u) 3u/(4r^2)
    return transition(r, [r](double u) {
      return chi_cutoff_d2(u) * u * u / (4.0 * r * r) + chi_cutoff_d1(u) * 3.0 * u / (4.0 * r * r);
    });
  };
  k.d1 = [eps, dpsi](double r) {
    if (r <= 0) return 0.0;
    return (8.0 / 3.0) * r * (1.0 - psi_eps_eval(eps, r)) - (4.0 / 3.0) * r * r * dpsi(r);
  };
  k.d2 = [eps, dpsi, d2psi](double r) {
    if (r <= 0) return 0.0;
    return (8.0 / 3.0) * (1.0 - psi_eps_eval(eps, r)) - (16.0 / 3.0) * r * dpsi(r) -
           (4.0 / 3.0) * r * r * d2psi(r);
  };
  return k;
}

double kappa_eps_l1_profile(double eps, int j, int k) {
  if (j < 0 || j > 4 || k < 0) throw std::invalid_argument("kappa_eps_l1_profile: bad orders");
  ZonalKernel kap = kappa_eps(eps);
  // graded panels refine toward r = 0 where the kernel has its eps^2-scale knee
  std::vector<double> cuts{0.0};
  double lo = std::min(0.25 * eps * eps, 1e-4);
  for (double c = lo; c < 4.0; c *= 2.0) cuts.push_back(c);
  cuts.push_back(4.0);
  double total = 0;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    GaussRule g = gauss_legendre_on(64, cuts[p], cuts[p + 1]);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      double r = g.nodes[i];
      double dj;
      if (j == 0) dj = kap.eval(r);
      else if (j == 1) dj = kap.d1(r);
      else if (j == 2) dj = kap.d2(r);
      else {
        double h = std::min(1e-3, r * 0.25);
        if (j == 3) {
          double a1 = (kap.d2(r + h) - kap.d2(r - h)) / (2 * h);
          double a2 = (kap.d2(r + h / 2) - kap.d2(r - h / 2)) / h;
          dj = (4 * a2 - a1) / 3;
        } else {
          dj = (kap.d2(r + h) - 2 * kap.d2(r) + kap.d2(r - h)) / (h * h);
        }
      }
      total += g.weights[i] * std::abs(std::pow(r, k) * dj);
    }
  }
  return total;
}

std::vector<DecayRow> regularization_norm_decay(const std::vector<double> &eps_list, int L,
                                                const ExecPolicy &pol) {
  std::vector<DecayRow> rows;
  for (double e : eps_list) {
    ZonalKernel k = kappa_eps(e);
    FunkHeckeSpectrum sp = funk_hecke_spectrum(k, L, 0, pol);
    double norm = 0;
    for (int l = 0; l <= L; ++l) {
      double mult = std::pow(1.0 + static_cast<double>(l) * (l + 1), 2.5);  // (s2-s1)/2 = 5/2
      norm = std::max(norm, mult * std::abs(sp.lambdas[l]));
    }
    rows.push_back({e, norm});
  }
  return rows;
}

double loglog_slope(const std::vector<double> &x, const std::vector<double> &y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: need >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = static_cast<int>(x.size());
  for (int i = 0; i < n; ++i) {
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace sh3
