#include "sh3/frame_bundle.hpp"

#include <cmath>
#include <stdexcept>

namespace sh3 {

std::string field_name(FieldTag t) {
  switch (t) {
    case FieldTag::X: return "X";
    case FieldTag::R: return "R";
    case FieldTag::U1p: return "U1+";
    case FieldTag::U2p: return "U2+";
    case FieldTag::U1m: return "U1-";
    case FieldTag::U2m: return "U2-";
  }
  return "?";
}

const AlgebraMatrix &algebra_matrix(FieldTag t) {
  static const AlgebraMatrix X = {{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}};
  static const AlgebraMatrix R = {{{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}}};
  static const AlgebraMatrix U1p = {{{0, 0, -1, 0}, {0, 0, -1, 0}, {-1, 1, 0, 0}, {0, 0, 0, 0}}};
  static const AlgebraMatrix U2p = {{{0, 0, 0, -1}, {0, 0, 0, -1}, {0, 0, 0, 0}, {-1, 1, 0, 0}}};
  static const AlgebraMatrix U1m = {{{0, 0, -1, 0}, {0, 0, 1, 0}, {-1, -1, 0, 0}, {0, 0, 0, 0}}};
  static const AlgebraMatrix U2m = {{{0, 0, 0, -1}, {0, 0, 0, 1}, {0, 0, 0, 0}, {-1, -1, 0, 0}}};
  switch (t) {
    case FieldTag::X: return X;
    case FieldTag::R: return R;
    case FieldTag::U1p: return U1p;
    case FieldTag::U2p: return U2p;
    case FieldTag::U1m: return U1m;
    case FieldTag::U2m: return U2m;
  }
  throw std::invalid_argument("algebra_matrix: bad tag");
}

FrameQuadruple::FrameQuadruple(const MinkowskiVector &x_, const MinkowskiVector &v1_,
                               const MinkowskiVector &v2_, const MinkowskiVector &v3_, bool check)
    : x(x_), v1(v1_), v2(v2_), v3(v3_) {
  if (check && invariant_residual() > 1e-10)
    throw std::invalid_argument("FrameQuadruple: invariants violated");
}

double FrameQuadruple::invariant_residual() const {
  const MinkowskiVector *vs[3] = {&v1, &v2, &v3};
  double r = std::abs(mink_inner(x, x) - 1.0);
  for (int i = 0; i < 3; ++i) {
    r = std::max(r, std::abs(mink_inner(x, *vs[i])));
    for (int j = 0; j < 3; ++j)
      r = std::max(r, std::abs(mink_inner(*vs[i], *vs[j]) + (i == j ? 1.0 : 0.0)));
  }
  r = std::max(r, std::abs(dvol_g(H3Point(x, false), v1, v2, v3) - 1.0));
  return r;
}

FrameQuadruple frame_from_tangent(const UnitTangent &p) {
  Frame f = orthonormal_frame(p);
  return FrameQuadruple(f.x, f.v1, f.v2, f.v3, false);
}

FrameVelocity field_at(FieldTag t, const FrameQuadruple &F) {
  const AlgebraMatrix &m = algebra_matrix(t);
  const MinkowskiVector cols[4] = {F.x, F.v1, F.v2, F.v3};
  FrameVelocity out;
  MinkowskiVector *dst[4] = {&out.dx, &out.dv1, &out.dv2, &out.dv3};
  // velocity of column j is sum_i cols[i] * m[i][j]
  for (int j = 0; j < 4; ++j) {
    MinkowskiVector acc;
    for (int i = 0; i < 4; ++i) acc += cols[i] * static_cast<double>(m[i][j]);
    *dst[j] = acc;
  }
  return out;
}

std::array<double, 6> algebra_coordinates(const std::array<std::array<double, 4>, 4> &m) {
  // Generic so(1,3) element over these generators:
  //   m = a X + b R + c U1+ + d U2+ + e U1- + f U2-
  // has entries m[0][1] = a, m[2][3] = b, m[0][2] = -c-e, m[1][2] = -c+e,
  // m[0][3] = -d-f, m[1][3] = -d+f; invert these linear relations.
  std::array<double, 6> a{};
  a[0] = m[0][1];
  a[1] = m[2][3];
  a[2] = -(m[0][2] + m[1][2]) / 2.0;  // c
  a[4] = (m[1][2] - m[0][2]) / 2.0;   // e
  a[3] = -(m[0][3] + m[1][3]) / 2.0;  // d
  a[5] = (m[1][3] - m[0][3]) / 2.0;   // f
  return a;
}

CommutatorTable commutator_table() {
  // integer matrix products
  auto mul = [](const AlgebraMatrix &a, const AlgebraMatrix &b) {
    AlgebraMatrix r{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        int s = 0;
        for (int k = 0; k < 4; ++k) s += a[i][k] * b[k][j];
        r[i][j] = s;
      }
    return r;
  };
  CommutatorTable table;
  for (int ia = 0; ia < 6; ++ia)
    for (int ib = 0; ib < 6; ++ib) {
      const AlgebraMatrix &A = algebra_matrix(kFieldOrder[ia]);
      const AlgebraMatrix &B = algebra_matrix(kFieldOrder[ib]);
      AlgebraMatrix AB = mul(A, B), BA = mul(B, A);
      AlgebraMatrix C{};
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) C[i][j] = AB[i][j] - BA[i][j];
      std::array<std::array<double, 4>, 4> cd;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) cd[i][j] = C[i][j];
      std::array<double, 6> coords = algebra_coordinates(cd);
      // verify the expansion reproduces C exactly (integer arithmetic)
      AlgebraMatrix rebuilt{};
      for (int k = 0; k < 6; ++k) {
        double ck = coords[k];
        int cki = static_cast<int>(std::lround(ck));
        if (std::abs(ck - cki) > 0) throw std::runtime_error("commutator_table: non-integer coefficient");
        const AlgebraMatrix &G = algebra_matrix(kFieldOrder[k]);
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) rebuilt[i][j] += cki * G[i][j];
      }
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          if (rebuilt[i][j] != C[i][j])
            throw std::runtime_error("commutator_table: commutator outside the 6-field span");
      for (int k = 0; k < 6; ++k)
        table.coeff[ia][ib][k] = static_cast<int>(std::lround(coords[k]));
    }
  return table;
}

std::array<double, 6> field_coordinates(const FrameQuadruple &F, const SphereTangent &xi) {
  // gamma^{-1} = J gamma^T J for Lorentz gamma, J = diag(1,-1,-1,-1).
  // The lift of xi = (xi_x, xi_v) fixes the first two columns of
  // m = gamma^{-1} gammadot; the so(1,3) shape determines the rest, up to
  // the R-component which we set to zero.
  const MinkowskiVector cols[4] = {F.x, F.v1, F.v2, F.v3};
  auto inv_apply = [&](const MinkowskiVector &w) {
    // (gamma^{-1} w)_i = <J columns_i, w>_euclid with J signs:
    // row i of gamma^{-1} is J_ii * (column i of gamma)^T * J
    std::array<double, 4> r{};
    for (int i = 0; i < 4; ++i) {
      double sgn_i = (i == 0) ? 1.0 : -1.0;
      r[i] = sgn_i * mink_inner(cols[i], w);
    }
    return r;
  };
  std::array<double, 4> c0 = inv_apply(xi.xi_x);
  std::array<double, 4> c1 = inv_apply(xi.xi_v);
  std::array<std::array<double, 4>, 4> m{};
  for (int i = 0; i < 4; ++i) {
    m[i][0] = c0[i];
    m[i][1] = c1[i];
  }
  // so(1,3): m[0][j] = m[j][0], m[i][j] = -m[j][i] for i,j >= 1
  m[0][2] = m[2][0];
  m[0][3] = m[3][0];
  m[1][2] = -m[2][1];
  m[1][3] = -m[3][1];
  m[2][3] = 0.0;  // R-component of the lift
  m[3][2] = 0.0;
  return algebra_coordinates(m);
}

}  // namespace sh3
