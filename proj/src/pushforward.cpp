#include "sh3/pushforward.hpp"

#include <cmath>
#include <stdexcept>

#include "sh3/qs_radial.hpp"
#include "sh3/rng.hpp"
#include "sh3/zonal.hpp"

namespace sh3 {

Complex g_inner_c(const CTangent &a, const CTangent &b) {
  return -(a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]);
}

namespace {

SphereTangent clean_tangent(const UnitTangent &base, MinkowskiVector xi_x, MinkowskiVector xi_v) {
  // orthogonal correction back onto the linearized constraints
  xi_x += base.x * (-mink_inner(base.x, xi_x));
  xi_v += base.v * (mink_inner(base.v, xi_v));
  double c = mink_inner(base.x, xi_v) + mink_inner(base.v, xi_x);
  xi_v += base.x * (-0.5 * c);
  xi_x += base.v * (0.5 * c);
  SphereTangent t;
  t.base = base;
  t.xi_x = xi_x;
  t.xi_v = xi_v;
  return t;
}

// direction and fiber tangents of a product-rule node in a local basis
struct FiberNode {
  MinkowskiVector v, t_theta, t_phi;
};

FiberNode fiber_node(const std::array<MinkowskiVector, 3> &b, double ct, double phi) {
  double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
  double cp = std::cos(phi), sp = std::sin(phi);
  FiberNode n;
  n.v = b[0] * (st * cp) + b[1] * (st * sp) + b[2] * ct;
  n.t_theta = b[0] * (ct * cp) + b[1] * (ct * sp) - b[2] * st;
  n.t_phi = b[0] * (-sp) + b[1] * cp;
  return n;
}

double fiber_pushforward_impl(int degree, const FormField &omega, const H3Point &x,
                              std::span<const MinkowskiVector> test_vectors,
                              const SphereRule &rule, const ExecPolicy &pol, bool serial) {
  if (degree < 2 || degree > 5) throw std::invalid_argument("fiber_pushforward: degree must be 2..5");
  if (static_cast<int>(test_vectors.size()) != degree - 2)
    throw std::invalid_argument("fiber_pushforward: need degree-2 test vectors");
  auto basis = tangent_basis(x);
  auto term = [&](std::size_t i) {
    const auto &nd = rule.nodes[i];
    FiberNode fn = fiber_node(basis, nd.cos_theta, nd.phi);
    UnitTangent p(x.x, fn.v, false);
    std::vector<SphereTangent> args;
    args.reserve(degree);
    for (const auto &y : test_vectors) args.push_back(hv_assemble(p, {y, MinkowskiVector{}}));
    args.push_back(hv_assemble(p, {MinkowskiVector{}, fn.t_theta}));
    args.push_back(hv_assemble(p, {MinkowskiVector{}, fn.t_phi}));
    return nd.weight * omega(p, args);
  };
  return serial ? serial_sum(rule.nodes.size(), term)
                : parallel_sum(rule.nodes.size(), pol, term);
}

}  // namespace

double fiber_pushforward(int degree, const FormField &omega, const H3Point &x,
                         std::span<const MinkowskiVector> test_vectors, const SphereRule &rule,
                         const ExecPolicy &pol) {
  return fiber_pushforward_impl(degree, omega, x, test_vectors, rule, pol, false);
}

double fiber_pushforward_serial(int degree, const FormField &omega, const H3Point &x,
                                std::span<const MinkowskiVector> test_vectors,
                                const SphereRule &rule) {
  return fiber_pushforward_impl(degree, omega, x, test_vectors, rule, {}, true);
}

Complex f_pm_eval(const BoundaryDensityPair &pair, const UnitTangent &p, int sign) {
  BoundaryData d = boundary_maps(p);
  double phi = (sign > 0) ? d.phi_plus : d.phi_minus;
  const BoundaryPoint &b = (sign > 0) ? d.b_plus : d.b_minus;
  const SphereFunction &g = (sign > 0) ? pair.g_plus : pair.g_minus;
  return g(b.nu) / (phi * phi);
}

double TransportResiduals::max_residual() const {
  return std::max({flow_minus, flow_plus, stun_minus, stun_plus});
}

TransportResiduals transport_residual(const BoundaryDensityPair &pair, int samples,
                                      std::uint64_t seed, double step) {
  TransportResiduals out;
  for (int k = 0; k < samples; ++k) {
    Rng rng(derive_seed(seed, k));
    UnitTangent p = random_unit_tangent(rng, 0.5);
    Frame fr = orthonormal_frame(p);
    for (int sign : {-1, +1}) {
      auto f = [&](const UnitTangent &q) { return f_pm_eval(pair, q, sign); };
      // flow derivative
      Complex xf = (f(geodesic_flow(p, step)) - f(geodesic_flow(p, -step))) / (2 * step);
      double flow_res = std::abs(xf + static_cast<double>(sign) * 2.0 * f(p));
      // stable/unstable derivative: f_- is killed along (w,w), f_+ along (w,-w)
      MinkowskiVector w = fr.v2 * rng.uniform(-1.0, 1.0) + fr.v3 * rng.uniform(-1.0, 1.0);
      SphereTangent dir = clean_tangent(p, w, (sign > 0) ? -w : w);
      Complex uf = (f(bundle_step(p, dir, step)) - f(bundle_step(p, dir, -step))) / (2 * step);
      double stun_res = std::abs(uf);
      if (sign > 0) {
        out.flow_plus = std::max(out.flow_plus, flow_res);
        out.stun_plus = std::max(out.stun_plus, stun_res);
      } else {
        out.flow_minus = std::max(out.flow_minus, flow_res);
        out.stun_minus = std::max(out.stun_minus, stun_res);
      }
    }
  }
  return out;
}

CTangent sigma_pm_eval(const BoundaryDensityPair &pair, const H3Point &x, int sign,
                       const SphereRule &rule) {
  const SphereFunction &g = (sign > 0) ? pair.g_plus : pair.g_minus;
  CTangent acc{};
  for (const auto &nd : rule.nodes) {
    BoundaryPoint nu(nd.dir[0], nd.dir[1], nd.dir[2], false);
    Complex gv = g(nd.dir) * (0.25 * nd.weight);
    MinkowskiVector v = v_pm(x, nu, sign);
    for (int i = 0; i < 4; ++i) acc[i] += gv * v[i];
  }
  return acc;
}

Complex F_eval_with(const BoundaryEvaluator &gm, const BoundaryEvaluator &gp, const H3Point &y,
                    const SphereRule &rule, const ExecPolicy &pol) {
  auto basis = tangent_basis(y);
  std::vector<Complex> vals(rule.nodes.size());
  parallel_for(rule.nodes.size(), pol, [&](std::size_t i) {
    const auto &nd = rule.nodes[i];
    FiberNode fn = fiber_node(basis, nd.cos_theta, nd.phi);
    UnitTangent p(y.x, fn.v, false);
    BoundaryData bd = boundary_maps(p);
    double w = bd.phi_minus * bd.phi_plus;
    vals[i] = nd.weight / (w * w) * gm(bd.b_minus) * gp(bd.b_plus);
  });
  Complex s = 0;
  for (const auto &v : vals) s += v;
  return 0.25 * s;
}

Complex F_eval(const BoundaryDensityPair &pair, const H3Point &y, const SphereRule &rule,
               const ExecPolicy &pol) {
  return F_eval_with([&](const BoundaryPoint &nu) { return pair.g_minus(nu.nu); },
                     [&](const BoundaryPoint &nu) { return pair.g_plus(nu.nu); }, y, rule, pol);
}

AlternatingForm du_fd(const std::function<double(const UnitTangent &, const SphereTangent &)> &u,
                      const UnitTangent &p, std::span<const SphereTangent> basis, double step) {
  if (basis.size() != 5) throw std::invalid_argument("du_fd: need a 5-vector basis");
  auto chart = [&](const std::array<double, 5> &a) {
    MinkowskiVector x = p.x, v = p.v;
    for (int i = 0; i < 5; ++i) {
      x += basis[i].xi_x * a[i];
      v += basis[i].xi_v * a[i];
    }
    return project_to_bundle(x, v);
  };
  double delta = step;
  auto comp = [&](const std::array<double, 5> &a, int j) {
    // u_j(a) = u(Psi(a), dPsi(a) e_j)
    std::array<double, 5> ap = a, am = a;
    ap[j] += delta;
    am[j] -= delta;
    UnitTangent qp = chart(ap), qm = chart(am), q = chart(a);
    MinkowskiVector ex = (qp.x - qm.x) * (1.0 / (2 * delta));
    MinkowskiVector ev = (qp.v - qm.v) * (1.0 / (2 * delta));
    return u(q, clean_tangent(q, ex, ev));
  };
  AlternatingForm out(2, 5);
  const auto &pairs = AlternatingForm::subsets(5, 2);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    int i = pairs[k][0], j = pairs[k][1];
    std::array<double, 5> a{};
    auto partial = [&](int wrt, int comp_j) {
      std::array<double, 5> apl = a, ami = a;
      apl[wrt] += step;
      ami[wrt] -= step;
      return (comp(apl, comp_j) - comp(ami, comp_j)) / (2 * step);
    };
    out.coeff_at(k) = partial(i, j) - partial(j, i);
  }
  return out;
}

HarmonicityResidual harmonicity_fd(const std::function<CTangent(const H3Point &)> &sigma,
                                   const H3Point &x, double step) {
  auto basis = tangent_basis(x);
  auto chart = [&](const std::array<double, 3> &a) {
    MinkowskiVector w = basis[0] * a[0] + basis[1] * a[1] + basis[2] * a[2];
    double n = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
    if (n < 1e-300) return x;
    return h3_exp(x, w * (1.0 / n), n);
  };
  double delta = step;
  auto comp = [&](const std::array<double, 3> &a, int j) {
    std::array<double, 3> ap = a, am = a;
    ap[j] += delta;
    am[j] -= delta;
    H3Point qp = chart(ap), qm = chart(am), q = chart(a);
    MinkowskiVector ej = (qp.x - qm.x) * (1.0 / (2 * delta));
    // project onto T_q H^3
    ej += q.x * (-mink_inner(q.x, ej));
    CTangent s = sigma(q);
    CTangent ejc{Complex(ej[0]), Complex(ej[1]), Complex(ej[2]), Complex(ej[3])};
    return g_inner_c(s, ejc);
  };
  HarmonicityResidual out;
  Complex div = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      std::array<double, 3> a{};
      auto partial = [&](int wrt, int cj) {
        std::array<double, 3> apl = a, ami = a;
        apl[wrt] += step;
        ami[wrt] -= step;
        return (comp(apl, cj) - comp(ami, cj)) / (2 * step);
      };
      out.d_residual = std::max(out.d_residual, std::abs(partial(i, j) - partial(j, i)));
    }
    std::array<double, 3> apl{}, ami{};
    apl[i] += step;
    ami[i] -= step;
    div += (comp(apl, i) - comp(ami, i)) / (2 * step);
  }
  out.delta_residual = std::abs(div);
  return out;
}

Complex sphere_pair_sum(const SphereRule &rule, const std::vector<Complex> &gm_values,
                        const std::vector<Complex> &gp_values,
                        const std::function<double(double)> &weight_of_dot,
                        const ExecPolicy &pol) {
  std::size_t n = rule.nodes.size();
  if (gm_values.size() != n || gp_values.size() != n)
    throw std::invalid_argument("sphere_pair_sum: value array size mismatch");
  std::vector<Complex> rows(n);
  parallel_for(n, pol, [&](std::size_t i) {
    const auto &a = rule.nodes[i].dir;
    Complex s = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const auto &b = rule.nodes[j].dir;
      double dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
      s += rule.nodes[j].weight * weight_of_dot(dot) * gp_values[j];
    }
    rows[i] = rule.nodes[i].weight * gm_values[i] * s;
  });
  Complex total = 0;
  for (const auto &r : rows) total += r;
  return total;
}

Complex sphere_pair_sum_serial(const SphereRule &rule, const std::vector<Complex> &gm_values,
                               const std::vector<Complex> &gp_values,
                               const std::function<double(double)> &weight_of_dot) {
  std::size_t n = rule.nodes.size();
  Complex total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto &a = rule.nodes[i].dir;
    Complex s = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const auto &b = rule.nodes[j].dir;
      double dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
      s += rule.nodes[j].weight * weight_of_dot(dot) * gp_values[j];
    }
    total += rule.nodes[i].weight * gm_values[i] * s;
  }
  return total;
}

namespace {

// cubic interpolation table of psi_eps in the variable u = sqrt(r)
class PsiEpsTable {
public:
  PsiEpsTable(double eps, int samples = 4096) : h_(2.0 / samples) {
    vals_.resize(samples + 3);
    for (int i = 0; i <= samples; ++i) {
      double u = i * h_;
      vals_[i + 1] = psi_eps_eval(eps, u * u);
    }
    vals_[0] = vals_[1];
    vals_[samples + 2] = vals_[samples + 1];
  }

  double operator()(double r) const {
    double u = std::sqrt(std::max(0.0, r));
    double t = u / h_;
    int i = static_cast<int>(t);
    if (i >= static_cast<int>(vals_.size()) - 3) i = static_cast<int>(vals_.size()) - 4;
    double f = t - i;
    double p0 = vals_[i], p1 = vals_[i + 1], p2 = vals_[i + 2], p3 = vals_[i + 3];
    // Catmull-Rom
    return p1 + 0.5 * f * (p2 - p0 + f * (2 * p0 - 5 * p1 + 4 * p2 - p3 + f * (3 * (p1 - p2) + p3 - p0)));
  }

private:
  double h_;
  std::vector<double> vals_;
};

}  // namespace

Complex bulk_integral(const BoundaryDensityPair &pair, double eps, const MainIdentityConfig &cfg,
                      const ExecPolicy &pol) {
  double R = std::acosh(2.0 / eps);
  GaussRule rad = gauss_legendre_on(cfg.bulk_radial, 0.0, R);
  SphereRule dirs = SphereRule::product(cfg.bulk_polar, cfg.bulk_az);
  const H3Point origin;
  auto obasis = tangent_basis(origin);
  std::size_t nr = rad.nodes.size(), nd = dirs.nodes.size();
  std::vector<Complex> cell(nr * nd);
  parallel_for(nr * nd, pol, [&](std::size_t idx) {
    std::size_t ir = idx / nd, id = idx % nd;
    double rho = rad.nodes[ir];
    double ch = std::cosh(rho), sh = std::sinh(rho);
    const auto &dv = dirs.nodes[id].dir;
    MinkowskiVector bdir = obasis[0] * dv[0] + obasis[1] * dv[1] + obasis[2] * dv[2];
    H3Point y(e0() * ch + bdir * sh, false);
    // fiber frame: radial direction and a transverse pair
    MinkowskiVector ur = e0() * sh + bdir * ch;
    std::array<MinkowskiVector, 3> fb;
    fb[0] = ur;
    {
      const MinkowskiVector seeds[4] = {e1(), e2(), e3(), e0()};
      int have = 0;
      for (int si = 0; si < 4 && have < 2; ++si) {
        MinkowskiVector w = seeds[si];
        w += y.x * (-mink_inner(y.x, w));
        w += ur * (mink_inner(ur, w));
        for (int j = 0; j < have; ++j) w += fb[1 + j] * (mink_inner(fb[1 + j], w));
        double n2 = -mink_inner(w, w);
        if (n2 < 1e-12) continue;
        fb[1 + have] = w * (1.0 / std::sqrt(n2));
        ++have;
      }
    }
    // fiber quadrature in flow time: cos(theta) = tanh(t)
    double T = rho + cfg.fiber_margin;
    int nt = std::max(24, static_cast<int>(std::ceil(2.0 * T / cfg.fiber_spacing)) + 1);
    double ht = 2.0 * T / (nt - 1);
    int nphi = cfg.fiber_az;
    double hphi = 2.0 * M_PI / nphi;
    Complex fsum = 0;
    for (int it = 0; it < nt; ++it) {
      double t = -T + it * ht;
      double tw = (it == 0 || it == nt - 1) ? 0.5 * ht : ht;  // trapezoid
      double th = std::tanh(t), sech = 1.0 / std::cosh(t);
      Complex ring = 0;
      for (int ip = 0; ip < nphi; ++ip) {
        double phi = hphi * ip;
        MinkowskiVector v = ur * th + fb[1] * (sech * std::cos(phi)) + fb[2] * (sech * std::sin(phi));
        UnitTangent p(y.x, v, false);
        BoundaryData bd = boundary_maps(p);
        double w = bd.phi_minus * bd.phi_plus;
        ring += pair.g_minus(bd.b_minus.nu) * pair.g_plus(bd.b_plus.nu) / (w * w);
      }
      fsum += tw * sech * sech * hphi * ring;
    }
    Complex F = 0.25 * fsum;
    double radial_weight = chi_cutoff(eps * ch) * std::pow(ch, -4.0) * sh * sh;
    cell[idx] = rad.weights[ir] * dirs.nodes[id].weight * radial_weight * F;
  });
  Complex total = 0;
  for (const auto &c : cell) total += c;
  return total;
}

double MainIdentityReport::boundary_vs_rhs_rel() const {
  if (lhs_boundary.empty()) return 0;
  double scale = std::max(std::abs(rhs), 1e-300);
  // smallest eps = last entry by convention of the builder
  std::size_t best = 0;
  for (std::size_t i = 1; i < eps.size(); ++i)
    if (eps[i] < eps[best]) best = i;
  return std::abs(lhs_boundary[best] - rhs) / scale;
}

double MainIdentityReport::bulk_vs_boundary_rel() const {
  double worst = 0;
  for (std::size_t i = 0; i < bulk_eps.size(); ++i) {
    // match the boundary value at the same eps
    for (std::size_t j = 0; j < eps.size(); ++j)
      if (std::abs(eps[j] - bulk_eps[i]) < 1e-14) {
        double scale = std::max(std::abs(rhs), 1e-300);
        worst = std::max(worst, std::abs(lhs_bulk[i] - lhs_boundary[j]) / scale);
      }
  }
  return worst;
}

double MainIdentityReport::rhs_vs_fd_rel() const {
  double scale = std::max(std::abs(rhs), 1e-300);
  return std::abs(rhs - rhs_fd) / scale;
}

MainIdentityReport main_identity_check(const BoundaryDensityPair &pair,
                                       const MainIdentityConfig &cfg, const ExecPolicy &pol) {
  MainIdentityReport rep;
  SphereRule rule = SphereRule::product(cfg.pair_polar, cfg.pair_az);
  std::size_t n = rule.nodes.size();
  std::vector<Complex> gm(n), gp(n);
  parallel_for(n, pol, [&](std::size_t i) {
    gm[i] = pair.g_minus(rule.nodes[i].dir);
    gp[i] = pair.g_plus(rule.nodes[i].dir);
  });
  // grid sanity: the rule must recover the band-limited L^2 norms
  {
    double q2m = 0, q2p = 0;
    for (std::size_t i = 0; i < n; ++i) {
      q2m += rule.nodes[i].weight * std::norm(gm[i]);
      q2p += rule.nodes[i].weight * std::norm(gp[i]);
    }
    double scale = std::max({q2m, q2p, 1e-300});
    if (std::abs(q2m - pair.g_minus.coeff_norm2()) > 1e-8 * scale ||
        std::abs(q2p - pair.g_plus.coeff_norm2()) > 1e-8 * scale)
      rep.grid_flag = true;
  }

  rep.rhs = (1.0 / 48.0) *
            sphere_pair_sum(rule, gm, gp, [](double t) { return (1.0 - t) * (1.0 - t); }, pol);

  for (double e : cfg.eps_list) {
    PsiEpsTable tab(e);
    rep.eps.push_back(e);
    rep.lhs_boundary.push_back(
        (1.0 / 48.0) * sphere_pair_sum(rule, gm, gp,
                                       [&](double t) {
                                         double r = 2.0 - 2.0 * t;
                                         return tab(r) * (1.0 - t) * (1.0 - t);
                                       },
                                       pol));
  }

  for (double e : cfg.bulk_eps_list) {
    rep.bulk_eps.push_back(e);
    rep.lhs_bulk.push_back(bulk_integral(pair, e, cfg, pol));
  }

  // independent oracle: finite-difference Laplacian of sigma-.sigma+ at e0
  {
    SphereRule srule = SphereRule::product(cfg.sigma_polar, cfg.sigma_az);
    auto dot_sigma = [&](const H3Point &x) {
      CTangent sm = sigma_pm_eval(pair, x, -1, srule);
      CTangent sp = sigma_pm_eval(pair, x, +1, srule);
      return g_inner_c(sm, sp);
    };
    auto re = [&](const H3Point &x) { return dot_sigma(x).real(); };
    auto im = [&](const H3Point &x) { return dot_sigma(x).imag(); };
    const H3Point origin;
    Complex lap(fd_laplacian(re, origin), fd_laplacian(im, origin));
    rep.rhs_fd = -lap / 6.0;
  }
  return rep;
}

}  // namespace sh3
