#include "sh3/hyperboloid.hpp"

#include <cmath>
#include <stdexcept>

#include "sh3/rng.hpp"

namespace sh3 {

namespace {
constexpr double kInvariantTol = 1e-8;

void renormalize(MinkowskiVector &x, MinkowskiVector &v) {
  // project x back to the hyperboloid, then v to the unit tangent sphere
  double nx = mink_inner(x, x);
  if (nx <= 0) throw std::invalid_argument("renormalize: point left the timelike cone");
  x = x * (1.0 / std::sqrt(nx));
  v += x * (-mink_inner(x, v));  // <x,.> component (note <x,x> = 1)
  double nv = -mink_inner(v, v);
  if (nv <= 0) throw std::invalid_argument("renormalize: degenerate tangent");
  v = v * (1.0 / std::sqrt(nv));
}
}  // namespace

H3Point::H3Point(const MinkowskiVector &v, bool check) : x(v) {
  if (check) {
    if (std::abs(mink_inner(x, x) - 1.0) > 1e-9 || x[0] <= 0)
      throw std::invalid_argument("H3Point: not on the hyperboloid");
  }
}

UnitTangent::UnitTangent(const MinkowskiVector &x_, const MinkowskiVector &v_, bool check)
    : x(x_), v(v_) {
  if (check) {
    if (std::abs(mink_inner(x, x) - 1.0) > 1e-9 || x[0] <= 0 ||
        std::abs(mink_inner(v, v) + 1.0) > 1e-9 || std::abs(mink_inner(x, v)) > 1e-9)
      throw std::invalid_argument("UnitTangent: invariants violated");
  }
}

double SphereTangent::invariant_residual() const {
  double r1 = mink_inner(base.x, xi_x);
  double r2 = mink_inner(base.v, xi_v);
  double r3 = mink_inner(base.x, xi_v) + mink_inner(base.v, xi_x);
  return std::max({std::abs(r1), std::abs(r2), std::abs(r3)});
}

double dist(const H3Point &x, const H3Point &y) {
  return std::acosh(std::max(1.0, mink_inner(x.x, y.x)));
}

UnitTangent geodesic_flow(const UnitTangent &p, double t) {
  double ch = std::cosh(t), sh = std::sinh(t);
  return UnitTangent(p.x * ch + p.v * sh, p.x * sh + p.v * ch, false);
}

UnitTangent antipodal(const UnitTangent &p) { return UnitTangent(p.x, -p.v, false); }

HVSplit hv_split(const SphereTangent &xi) {
  if (xi.invariant_residual() > kInvariantTol)
    throw std::invalid_argument("hv_split: tangent invariants violated");
  HVSplit hv;
  hv.xi_H = xi.xi_x;
  hv.xi_V = xi.xi_v + xi.base.x * mink_inner(xi.base.v, xi.xi_x);
  return hv;
}

SphereTangent hv_assemble(const UnitTangent &base, const HVSplit &hv) {
  SphereTangent xi;
  xi.base = base;
  xi.xi_x = hv.xi_H;
  xi.xi_v = hv.xi_V - base.x * mink_inner(base.v, hv.xi_H);
  return xi;
}

double sasaki_norm2(const SphereTangent &xi) {
  HVSplit hv = hv_split(xi);
  return g_inner(hv.xi_H, hv.xi_H) + g_inner(hv.xi_V, hv.xi_V);
}

double sasaki_inner(const SphereTangent &a, const SphereTangent &b) {
  HVSplit ha = hv_split(a), hb = hv_split(b);
  return g_inner(ha.xi_H, hb.xi_H) + g_inner(ha.xi_V, hb.xi_V);
}

SphereTangent flow_pushforward(const SphereTangent &xi, double t) {
  double ch = std::cosh(t), sh = std::sinh(t);
  SphereTangent out;
  out.base = geodesic_flow(xi.base, t);
  out.xi_x = xi.xi_x * ch + xi.xi_v * sh;
  out.xi_v = xi.xi_x * sh + xi.xi_v * ch;
  return out;
}

StunSplit stun_split(const SphereTangent &xi) {
  HVSplit hv = hv_split(xi);
  StunSplit s;
  s.flow = g_inner(hv.xi_H, xi.base.v);  // alpha(xi)
  MinkowskiVector h = hv.xi_H - xi.base.v * s.flow;
  s.unstable = (h + hv.xi_V) * 0.5;
  s.stable = (h - hv.xi_V) * 0.5;
  return s;
}

SphereTangent stun_assemble(const UnitTangent &base, const StunSplit &s) {
  HVSplit hv;
  hv.xi_H = base.v * s.flow + s.unstable + s.stable;
  hv.xi_V = s.unstable - s.stable;
  return hv_assemble(base, hv);
}

MinkowskiVector cross_product(const H3Point &x, const MinkowskiVector &v,
                              const MinkowskiVector &w) {
  // <v x w, z>_g = det[x v w z]; expand the determinant by the last column.
  double cof[4];
  const MinkowskiVector &a = x.x;
  auto det3 = [](double m00, double m01, double m02, double m10, double m11, double m12,
                 double m20, double m21, double m22) {
    return m00 * (m11 * m22 - m12 * m21) - m01 * (m10 * m22 - m12 * m20) +
           m02 * (m10 * m21 - m11 * m20);
  };
  // cof[mu] = det of columns (x v w e_mu) = (-1)^(3+mu-row...) use direct minors:
  // det[x v w e_mu] with e_mu in the last column equals the cofactor of the
  // (mu, 3) entry: (-1)^(mu+3) * minor(mu).
  for (int mu = 0; mu < 4; ++mu) {
    int r[3], k = 0;
    for (int i = 0; i < 4; ++i)
      if (i != mu) r[k++] = i;
    double minor_ = det3(a[r[0]], v[r[0]], w[r[0]], a[r[1]], v[r[1]], w[r[1]], a[r[2]], v[r[2]],
                         w[r[2]]);
    cof[mu] = ((mu + 3) % 2 == 0 ? 1.0 : -1.0) * minor_;
  }
  // <u,z>_g = sum cof[mu] z_mu  =>  <u,z>_M = -sum cof[mu] z_mu
  // => u0 = -cof[0], ui = +cof[i]
  return {-cof[0], cof[1], cof[2], cof[3]};
}

double dvol_g(const H3Point &x, const MinkowskiVector &a, const MinkowskiVector &b,
              const MinkowskiVector &c) {
  const MinkowskiVector &p = x.x;
  double m[4][4] = {{p[0], a[0], b[0], c[0]},
                    {p[1], a[1], b[1], c[1]},
                    {p[2], a[2], b[2], c[2]},
                    {p[3], a[3], b[3], c[3]}};
  // 4x4 determinant by cofactor expansion on the first row
  auto det3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
    return m[r0][c0] * (m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]) -
           m[r0][c1] * (m[r1][c0] * m[r2][c2] - m[r1][c2] * m[r2][c0]) +
           m[r0][c2] * (m[r1][c0] * m[r2][c1] - m[r1][c1] * m[r2][c0]);
  };
  return m[0][0] * det3(1, 2, 3, 1, 2, 3) - m[0][1] * det3(1, 2, 3, 0, 2, 3) +
         m[0][2] * det3(1, 2, 3, 0, 1, 3) - m[0][3] * det3(1, 2, 3, 0, 1, 2);
}

Frame orthonormal_frame(const UnitTangent &p) {
  Frame f;
  f.x = p.x;
  f.v1 = p.v;
  // Minkowski Gram-Schmidt on seed vectors, with pivot fallback
  const MinkowskiVector seeds[4] = {e1(), e2(), e3(), e0()};
  MinkowskiVector got[2];
  int have = 0;
  for (int si = 0; si < 4 && have < 2; ++si) {
    MinkowskiVector w = seeds[si];
    w += f.x * (-mink_inner(f.x, w));        // <x,x> = 1
    w += f.v1 * (mink_inner(f.v1, w));       // <v,v> = -1
    for (int j = 0; j < have; ++j) w += got[j] * (mink_inner(got[j], w));
    double n2 = -mink_inner(w, w);
    if (n2 < 1e-12) continue;  // near-degenerate seed, pivot to the next one
    got[have++] = w * (1.0 / std::sqrt(n2));
  }
  if (have < 2) throw std::runtime_error("orthonormal_frame: frame completion failed");
  f.v2 = got[0];
  f.v3 = got[1];
  // fix orientation: det(x v1 v2 v3) = +1
  if (dvol_g(p.base(), f.v1, f.v2, f.v3) < 0) f.v3 = -f.v3;
  return f;
}

SphereTangent flow_vector(const UnitTangent &p) {
  SphereTangent xi;
  xi.base = p;
  xi.xi_x = p.v;
  xi.xi_v = p.x;
  return xi;
}

std::array<SphereTangent, 5> standard_basis(const UnitTangent &p) {
  Frame f = orthonormal_frame(p);
  std::array<SphereTangent, 5> b;
  b[0] = flow_vector(p);
  b[1] = hv_assemble(p, {f.v2, MinkowskiVector{}});
  b[2] = hv_assemble(p, {f.v3, MinkowskiVector{}});
  b[3] = hv_assemble(p, {MinkowskiVector{}, f.v2});
  b[4] = hv_assemble(p, {MinkowskiVector{}, f.v3});
  return b;
}

double alpha_eval(const SphereTangent &xi) {
  HVSplit hv = hv_split(xi);
  return g_inner(hv.xi_H, xi.base.v);
}

double dalpha_eval(const SphereTangent &xi, const SphereTangent &eta) {
  HVSplit a = hv_split(xi), b = hv_split(eta);
  return g_inner(a.xi_V, b.xi_H) - g_inner(a.xi_H, b.xi_V);
}

ContactData contact_data_at(const UnitTangent &p, std::span<const SphereTangent> basis) {
  if (basis.size() != 5) throw std::invalid_argument("contact_data_at: need a 5-vector basis");
  for (const auto &b : basis)
    if (max_abs_component(b.base.x - p.x) > 1e-9 || max_abs_component(b.base.v - p.v) > 1e-9)
      throw std::invalid_argument("contact_data_at: basis not anchored at p");
  // degenerate-basis guard: Gram determinant of the Sasaki products
  {
    double gram[5][5];
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) gram[i][j] = sasaki_inner(basis[i], basis[j]);
    double det = 1.0;
    double a[5][5];
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) a[i][j] = gram[i][j];
    for (int col = 0; col < 5; ++col) {
      int piv = col;
      for (int r = col + 1; r < 5; ++r)
        if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
      if (std::abs(a[piv][col]) < 1e-12) throw std::invalid_argument("contact_data_at: degenerate basis");
      if (piv != col) {
        for (int c = 0; c < 5; ++c) std::swap(a[piv][c], a[col][c]);
        det = -det;
      }
      det *= a[col][col];
      for (int r = col + 1; r < 5; ++r) {
        double fct = a[r][col] / a[col][col];
        for (int c = col; c < 5; ++c) a[r][c] -= fct * a[col][c];
      }
    }
  }
  ContactData cd{AlternatingForm(1, 5), AlternatingForm(2, 5), AlternatingForm(5, 5)};
  for (int i = 0; i < 5; ++i) cd.alpha.coeff_at(i) = alpha_eval(basis[i]);
  const auto &pairs = AlternatingForm::subsets(5, 2);
  for (std::size_t k = 0; k < pairs.size(); ++k)
    cd.dalpha.coeff_at(k) = dalpha_eval(basis[pairs[k][0]], basis[pairs[k][1]]);
  cd.dvol = cd.alpha.wedge(cd.dalpha).wedge(cd.dalpha);
  return cd;
}

UnitTangent project_to_bundle(const MinkowskiVector &x, const MinkowskiVector &v) {
  MinkowskiVector xx = x, vv = v;
  renormalize(xx, vv);
  return UnitTangent(xx, vv, false);
}

UnitTangent bundle_step(const UnitTangent &p, const SphereTangent &xi, double t) {
  return project_to_bundle(p.x + xi.xi_x * t, p.v + xi.xi_v * t);
}

UnitTangent random_unit_tangent(Rng &rng, double spread) {
  MinkowskiVector x = rng.gaussian_vec4() * spread;
  x[0] = std::sqrt(1.0 + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
  MinkowskiVector v = rng.gaussian_vec4();
  v += x * (-mink_inner(x, v));
  double n2 = -mink_inner(v, v);
  if (n2 < 1e-12) return random_unit_tangent(rng, spread);
  v = v * (1.0 / std::sqrt(n2));
  return UnitTangent(x, v, false);
}

SphereTangent random_sphere_tangent(Rng &rng, const UnitTangent &p) {
  Frame f = orthonormal_frame(p);
  HVSplit hv;
  hv.xi_H = p.v * rng.gaussian() + f.v2 * rng.gaussian() + f.v3 * rng.gaussian();
  hv.xi_V = f.v2 * rng.gaussian() + f.v3 * rng.gaussian();
  return hv_assemble(p, hv);
}

}  // namespace sh3
