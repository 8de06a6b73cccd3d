#pragma once

#include <array>
#include <vector>

#include "sh3/alternating.hpp"
#include "sh3/minkowski.hpp"

namespace sh3 {

class Rng;

/// Point of the hyperboloid model: <x,x>_M = 1, x0 > 0.
struct H3Point {
  MinkowskiVector x;

  H3Point() : x(1, 0, 0, 0) {}
  explicit H3Point(const MinkowskiVector &v, bool check = true);
};

/// Unit tangent vector (x,v): <x,x>=1, <v,v>=-1, <x,v>=0.
struct UnitTangent {
  MinkowskiVector x;
  MinkowskiVector v;

  UnitTangent() : x(1, 0, 0, 0), v(0, 1, 0, 0) {}
  UnitTangent(const MinkowskiVector &x_, const MinkowskiVector &v_, bool check = true);

  H3Point base() const { return H3Point(x, false); }
};

/// Tangent vector of the sphere bundle at `base`, as a pair (xi_x, xi_v)
/// subject to <x,xi_x> = <v,xi_v> = <x,xi_v> + <v,xi_x> = 0.
struct SphereTangent {
  UnitTangent base;
  MinkowskiVector xi_x;
  MinkowskiVector xi_v;

  double invariant_residual() const;
};

/// Horizontal/vertical components of a sphere-bundle tangent vector:
/// xi_H in T_x H^3, xi_V in {v}^perp inside T_x H^3.
struct HVSplit {
  MinkowskiVector xi_H;
  MinkowskiVector xi_V;
};

/// Flow/unstable/stable coefficients: xi = a X + (w_u, w_u) + (w_s, -w_s).
struct StunSplit {
  double flow = 0;
  MinkowskiVector unstable;
  MinkowskiVector stable;
};

/// Geodesic distance via cosh d = <x,y>_M, clamped at 1 against rounding.
double dist(const H3Point &x, const H3Point &y);

/// Geodesic flow phi_t(x,v) = (x cosh t + v sinh t, x sinh t + v cosh t).
UnitTangent geodesic_flow(const UnitTangent &p, double t);

/// Time reversal J(x,v) = (x,-v).
UnitTangent antipodal(const UnitTangent &p);

/// Horizontal/vertical splitting.  Throws if the invariants of xi are
/// violated beyond 1e-8.
HVSplit hv_split(const SphereTangent &xi);

/// Inverse of hv_split.
SphereTangent hv_assemble(const UnitTangent &base, const HVSplit &hv);

/// Sasaki squared norm |xi|_S^2 = |xi_H|_g^2 + |xi_V|_g^2.
double sasaki_norm2(const SphereTangent &xi);
double sasaki_inner(const SphereTangent &a, const SphereTangent &b);

/// Pushforward of the flow differential: phi_t is linear in (x,v).
SphereTangent flow_pushforward(const SphereTangent &xi, double t);

/// Flow/unstable/stable decomposition at xi.base.
StunSplit stun_split(const SphereTangent &xi);
SphereTangent stun_assemble(const UnitTangent &base, const StunSplit &s);

/// Cross product on T_x H^3, fixed by <v x w, z>_g = det[x v w z].
/// At x = e0 this makes e1 x e2 = e3.
MinkowskiVector cross_product(const H3Point &x, const MinkowskiVector &v, const MinkowskiVector &w);

/// Volume form of H^3 at x on three tangent vectors (equals det[x a b c]).
double dvol_g(const H3Point &x, const MinkowskiVector &a, const MinkowskiVector &b,
              const MinkowskiVector &c);

/// Completes (x,v) to a positively oriented Minkowski-orthonormal frame
/// (x, v, v2, v3) by Gram-Schmidt from a fixed seed basis, with pivoting.
struct Frame {
  MinkowskiVector x, v1, v2, v3;
};
Frame orthonormal_frame(const UnitTangent &p);

/// The generator X at p, i.e. (v, x).
SphereTangent flow_vector(const UnitTangent &p);

/// Standard 5-vector tangent basis at p built from orthonormal_frame(p):
/// (X, (v2,0), (v3,0), (0,v2), (0,v3)) in horizontal/vertical components.
std::array<SphereTangent, 5> standard_basis(const UnitTangent &p);

/// Contact data at p, expressed in the supplied tangent basis.
struct ContactData {
  AlternatingForm alpha;   // degree 1
  AlternatingForm dalpha;  // degree 2
  AlternatingForm dvol;    // degree 5, alpha ^ dalpha ^ dalpha
};
ContactData contact_data_at(const UnitTangent &p, std::span<const SphereTangent> basis);

/// alpha(xi) = <xi_H, v>_g.
double alpha_eval(const SphereTangent &xi);

/// dalpha(xi,eta) = <xi_V,eta_H>_g - <xi_H,eta_V>_g.
double dalpha_eval(const SphereTangent &xi, const SphereTangent &eta);

/// Nearest-point reprojection onto SH^3 (used by finite-difference probes).
UnitTangent project_to_bundle(const MinkowskiVector &x, const MinkowskiVector &v);

/// Moves p along a bundle tangent direction and reprojects; first-order
/// accurate curve with velocity xi at t = 0.
UnitTangent bundle_step(const UnitTangent &p, const SphereTangent &xi, double t);

/// Random samplers (deterministic given the generator state).
UnitTangent random_unit_tangent(Rng &rng, double spread = 1.0);
SphereTangent random_sphere_tangent(Rng &rng, const UnitTangent &p);

}  // namespace sh3
