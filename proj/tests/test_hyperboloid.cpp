#include <doctest.h>

#include <cmath>

#include "sh3/hyperboloid.hpp"
#include "sh3/rng.hpp"

using namespace sh3;

TEST_SUITE_BEGIN("hyperboloid");

TEST_CASE("distance") {
  H3Point o;
  CHECK(dist(o, o) == doctest::Approx(0.0));
  H3Point p(MinkowskiVector(std::cosh(1.0), std::sinh(1.0), 0, 0));
  CHECK(dist(o, p) == doctest::Approx(1.0).epsilon(1e-12));

  Rng rng(71);
  for (int i = 0; i < 50; ++i) {
    UnitTangent a = random_unit_tangent(rng), b = random_unit_tangent(rng),
                c = random_unit_tangent(rng);
    double ab = dist(a.base(), b.base());
    CHECK(ab == doctest::Approx(dist(b.base(), a.base())).epsilon(1e-12));
    CHECK(ab <= dist(a.base(), c.base()) + dist(c.base(), b.base()) + 1e-10);
  }
}

TEST_CASE("geodesic flow") {
  UnitTangent p;  // (e0, e1)
  UnitTangent q = geodesic_flow(p, 1.0);
  CHECK(q.x[0] == doctest::Approx(std::cosh(1.0)));
  CHECK(q.x[1] == doctest::Approx(std::sinh(1.0)));
  CHECK(q.v[0] == doctest::Approx(std::sinh(1.0)));
  CHECK(q.v[1] == doctest::Approx(std::cosh(1.0)));

  UnitTangent same = geodesic_flow(p, 0.0);
  CHECK(max_abs_component(same.x - p.x) == doctest::Approx(0.0));

  Rng rng(3);
  for (int i = 0; i < 30; ++i) {
    UnitTangent a = random_unit_tangent(rng);
    double s = rng.uniform(-3.0, 3.0), t = rng.uniform(-3.0, 3.0);
    UnitTangent lhs = geodesic_flow(geodesic_flow(a, t), s);
    UnitTangent rhs = geodesic_flow(a, s + t);
    CHECK(max_abs_component(lhs.x - rhs.x) < 1e-12 * std::max(1.0, max_abs_component(rhs.x)));
    CHECK(max_abs_component(lhs.v - rhs.v) < 1e-12 * std::max(1.0, max_abs_component(rhs.v)));
  }
}

TEST_CASE("flow preserves the bundle invariants out to |t| = 20") {
  Rng rng(9);
  for (int i = 0; i < 20; ++i) {
    UnitTangent a = random_unit_tangent(rng);
    for (double t : {-20.0, -7.5, 7.5, 20.0}) {
      UnitTangent b = geodesic_flow(a, t);
      double scale = std::max(1.0, max_abs_component(b.x) * max_abs_component(b.x));
      CHECK(std::abs(mink_inner(b.x, b.x) - 1.0) < 1e-10 * scale);
      CHECK(std::abs(mink_inner(b.v, b.v) + 1.0) < 1e-10 * scale);
      CHECK(std::abs(mink_inner(b.x, b.v)) < 1e-10 * scale);
    }
  }
}

TEST_CASE("horizontal/vertical split") {
  UnitTangent p;
  SphereTangent X = flow_vector(p);
  HVSplit hv = hv_split(X);
  CHECK(max_abs_component(hv.xi_H - p.v) == doctest::Approx(0.0));
  CHECK(max_abs_component(hv.xi_V) == doctest::Approx(0.0));

  // vertical input
  SphereTangent vert;
  vert.base = p;
  vert.xi_x = MinkowskiVector{};
  vert.xi_v = e2();
  HVSplit hv2 = hv_split(vert);
  CHECK(max_abs_component(hv2.xi_H) == doctest::Approx(0.0));
  CHECK(max_abs_component(hv2.xi_V - e2()) == doctest::Approx(0.0));

  Rng rng(17);
  for (int i = 0; i < 40; ++i) {
    UnitTangent q = random_unit_tangent(rng);
    SphereTangent xi = random_sphere_tangent(rng, q);
    HVSplit s = hv_split(xi);
    SphereTangent back = hv_assemble(q, s);
    CHECK(max_abs_component(back.xi_x - xi.xi_x) < 1e-10);
    CHECK(max_abs_component(back.xi_v - xi.xi_v) < 1e-10);
    // Sasaki norm matches the direct expansion
    double direct = -mink_inner(xi.xi_x, xi.xi_x) - mink_inner(xi.xi_v, xi.xi_v) +
                    mink_inner(q.v, xi.xi_x) * mink_inner(q.v, xi.xi_x);
    CHECK(sasaki_norm2(xi) == doctest::Approx(direct).epsilon(1e-10));
  }
  // invariant violation is rejected
  SphereTangent bad;
  bad.base = p;
  bad.xi_x = e0();
  bad.xi_v = MinkowskiVector{};
  CHECK_THROWS(hv_split(bad));
}

TEST_CASE("contact data at the standard basis") {
  Rng rng(23);
  for (int i = 0; i < 10; ++i) {
    UnitTangent p = (i == 0) ? UnitTangent() : random_unit_tangent(rng);
    auto basis = standard_basis(p);
    ContactData cd = contact_data_at(p, basis);
    // alpha(X) = 1, iota_X dalpha = 0
    CHECK(cd.alpha.coeff_at(0) == doctest::Approx(1.0).epsilon(1e-12));
    for (int j = 1; j < 5; ++j) CHECK(cd.alpha.coeff_at(j) == doctest::Approx(0.0).epsilon(1e-12));
    for (int j = 1; j < 5; ++j) {
      SphereTangent xi = basis[j];
      CHECK(dalpha_eval(basis[0], xi) == doctest::Approx(0.0).epsilon(1e-10));
    }
    // dvol on the ordered basis (X, h1, h2, u1, u2) equals -2: the vertical
    // pairings in dalpha carry the sign that also drives the -8 pi
    // pushforward normalization
    std::vector<std::vector<double>> args;
    for (int j = 0; j < 5; ++j) {
      std::vector<double> ei(5, 0.0);
      ei[j] = 1.0;
      args.push_back(ei);
    }
    CHECK(cd.dvol(args) == doctest::Approx(-2.0).epsilon(1e-10));
  }
  // degenerate basis is rejected
  UnitTangent p0;
  auto bad = standard_basis(p0);
  bad[4] = bad[3];
  CHECK_THROWS(contact_data_at(p0, bad));
}

TEST_CASE("alpha is invariant under the flow pushforward") {
  Rng rng(31);
  for (int i = 0; i < 30; ++i) {
    UnitTangent p = random_unit_tangent(rng);
    SphereTangent xi = random_sphere_tangent(rng, p);
    double t = rng.uniform(-2.0, 2.0);
    SphereTangent push = flow_pushforward(xi, t);
    CHECK(alpha_eval(push) == doctest::Approx(alpha_eval(xi)).epsilon(1e-8));
    // and dalpha likewise
    SphereTangent eta = random_sphere_tangent(rng, p);
    SphereTangent push2 = flow_pushforward(eta, t);
    CHECK(dalpha_eval(push, push2) == doctest::Approx(dalpha_eval(xi, eta)).epsilon(1e-8));
  }
}

TEST_CASE("stable/unstable splitting") {
  UnitTangent p;
  SphereTangent X = flow_vector(p);
  StunSplit s = stun_split(X);
  CHECK(s.flow == doctest::Approx(1.0));
  CHECK(max_abs_component(s.unstable) == doctest::Approx(0.0));
  CHECK(max_abs_component(s.stable) == doctest::Approx(0.0));

  // (w, w) is purely unstable
  SphereTangent uns;
  uns.base = p;
  uns.xi_x = e2();
  uns.xi_v = e2();
  StunSplit su = stun_split(uns);
  CHECK(su.flow == doctest::Approx(0.0));
  CHECK(max_abs_component(su.unstable - e2()) == doctest::Approx(0.0));
  CHECK(max_abs_component(su.stable) == doctest::Approx(0.0));

  Rng rng(41);
  for (int i = 0; i < 30; ++i) {
    UnitTangent q = random_unit_tangent(rng);
    SphereTangent xi = random_sphere_tangent(rng, q);
    StunSplit sp = stun_split(xi);
    SphereTangent back = stun_assemble(q, sp);
    CHECK(max_abs_component(back.xi_x - xi.xi_x) < 1e-10);
    CHECK(max_abs_component(back.xi_v - xi.xi_v) < 1e-10);

    // conformal scaling of the Sasaki norm along the flow
    double t = rng.uniform(-2.0, 2.0);
    SphereTangent u = stun_assemble(q, {0.0, sp.unstable, MinkowskiVector{}});
    SphereTangent st = stun_assemble(q, {0.0, MinkowskiVector{}, sp.stable});
    double nu0 = std::sqrt(sasaki_norm2(u)), ns0 = std::sqrt(sasaki_norm2(st));
    if (nu0 > 1e-8)
      CHECK(std::sqrt(sasaki_norm2(flow_pushforward(u, t))) ==
            doctest::Approx(std::exp(t) * nu0).epsilon(1e-9));
    if (ns0 > 1e-8)
      CHECK(std::sqrt(sasaki_norm2(flow_pushforward(st, t))) ==
            doctest::Approx(std::exp(-t) * ns0).epsilon(1e-9));

    // E_u = {xi_V = xi_H} once the flow part is removed
    HVSplit hv = hv_split(stun_assemble(q, {0.0, sp.unstable, MinkowskiVector{}}));
    CHECK(max_abs_component(hv.xi_H - hv.xi_V) < 1e-10);
  }
}

TEST_CASE("time reversal") {
  UnitTangent p;
  UnitTangent j = antipodal(p);
  CHECK(max_abs_component(j.v + p.v) == doctest::Approx(0.0));
  UnitTangent jj = antipodal(j);
  CHECK(max_abs_component(jj.v - p.v) == doctest::Approx(0.0));

  Rng rng(53);
  for (int i = 0; i < 20; ++i) {
    UnitTangent q = random_unit_tangent(rng);
    double t = rng.uniform(-3.0, 3.0);
    UnitTangent lhs = geodesic_flow(antipodal(q), t);
    UnitTangent rhs = antipodal(geodesic_flow(q, -t));
    CHECK(max_abs_component(lhs.x - rhs.x) < 1e-11 * std::max(1.0, max_abs_component(rhs.x)));
    CHECK(max_abs_component(lhs.v - rhs.v) < 1e-11 * std::max(1.0, max_abs_component(rhs.v)));
  }
}

TEST_CASE("cross product") {
  H3Point o;
  MinkowskiVector c = cross_product(o, e1(), e2());
  CHECK(max_abs_component(c - e3()) == doctest::Approx(0.0));
  CHECK(max_abs_component(cross_product(o, e1(), e1())) == doctest::Approx(0.0));

  Rng rng(67);
  for (int i = 0; i < 40; ++i) {
    UnitTangent p = random_unit_tangent(rng);
    H3Point x = p.base();
    MinkowskiVector w[4];
    for (auto &wi : w) {
      wi = rng.gaussian_vec4();
      wi += p.x * (-mink_inner(p.x, wi));
      wi += p.v * (mink_inner(p.v, wi));
    }
    double lhs = g_inner(cross_product(x, p.v, w[0]), w[1]) *
                 g_inner(cross_product(x, p.v, w[2]), w[3]);
    double rhs = g_inner(w[0], w[2]) * g_inner(w[1], w[3]) -
                 g_inner(w[1], w[2]) * g_inner(w[0], w[3]);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    // orthogonality and orientation
    MinkowskiVector cp = cross_product(x, w[0], w[1]);
    CHECK(std::abs(g_inner(cp, w[0])) < 1e-10 * std::max(1.0, g_norm(cp)));
    CHECK(dvol_g(x, w[0], w[1], cp) >= -1e-12);
  }
}

TEST_SUITE_END();
