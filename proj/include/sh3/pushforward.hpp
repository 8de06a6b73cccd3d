#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "sh3/alternating.hpp"
#include "sh3/boundary.hpp"
#include "sh3/hyperboloid.hpp"
#include "sh3/parallel.hpp"
#include "sh3/quadrature.hpp"
#include "sh3/sphere_harmonics.hpp"

namespace sh3 {

/// Pointwise k-form field on the sphere bundle: value on k tangent vectors.
using FormField = std::function<double(const UnitTangent &, std::span<const SphereTangent>)>;

/// Boundary densities (g_-, g_+), band-limited to degree L.
struct BoundaryDensityPair {
  SphereFunction g_minus;
  SphereFunction g_plus;

  int degree_cap() const { return std::max(g_minus.degree_cap(), g_plus.degree_cap()); }
  bool is_real(double tol = 0.0) const { return g_minus.is_real(tol) && g_plus.is_real(tol); }
};

/// Complex tangent vector at a point of H^3 (componentwise over R^{1,3}).
using CTangent = std::array<Complex, 4>;
Complex g_inner_c(const CTangent &a, const CTangent &b);  // bilinear, not sesquilinear

/// Fiber pushforward: integrates the iota-contracted k-form over the fiber
/// S_x H^3 with the fiber orientation induced by the base orientation.
/// test_vectors supplies the k-2 base tangent vectors (lifted horizontally).
double fiber_pushforward(int degree, const FormField &omega, const H3Point &x,
                         std::span<const MinkowskiVector> test_vectors, const SphereRule &rule,
                         const ExecPolicy &pol = {});
double fiber_pushforward_serial(int degree, const FormField &omega, const H3Point &x,
                                std::span<const MinkowskiVector> test_vectors,
                                const SphereRule &rule);

/// f_pm(p) = Phi_pm(p)^{-2} g_pm(B_pm(p)).
Complex f_pm_eval(const BoundaryDensityPair &pair, const UnitTangent &p, int sign);

/// Max residuals of the transport laws (X +- 2) f_pm = 0 and U_pm f_pm = 0
/// over seeded random sample points (finite differences).
struct TransportResiduals {
  double flow_minus = 0, flow_plus = 0;  // (X -+ 2) f_-+
  double stun_minus = 0, stun_plus = 0;  // U_- f_-, U_+ f_+
  double max_residual() const;
};
TransportResiduals transport_residual(const BoundaryDensityPair &pair, int samples,
                                      std::uint64_t seed, double step = 1e-5);

/// sigma_pm(x) = (1/4) Int g_pm(nu) v_pm(x,nu) dS(nu).
CTangent sigma_pm_eval(const BoundaryDensityPair &pair, const H3Point &x, int sign,
                       const SphereRule &rule);

/// F(y) = (1/4) Int_{S_y} (Phi_- Phi_+)^{-2} g_-(B_-) g_+(B_+) dS(v).
Complex F_eval(const BoundaryDensityPair &pair, const H3Point &y, const SphereRule &rule,
               const ExecPolicy &pol = {});
/// Same with arbitrary boundary evaluators (used by equivariance checks).
using BoundaryEvaluator = std::function<Complex(const BoundaryPoint &)>;
Complex F_eval_with(const BoundaryEvaluator &gm, const BoundaryEvaluator &gp, const H3Point &y,
                    const SphereRule &rule, const ExecPolicy &pol = {});

/// Chart-based finite-difference exterior derivative of a 1-form field on
/// the sphere bundle, in the supplied tangent basis at p.
AlternatingForm du_fd(const std::function<double(const UnitTangent &, const SphereTangent &)> &u,
                      const UnitTangent &p, std::span<const SphereTangent> basis,
                      double step = 1e-4);

/// Finite-difference d(sigma) and delta(sigma) residuals of a complex
/// 1-form field on H^3 at x (normal-coordinate chart).
struct HarmonicityResidual {
  double d_residual = 0;
  double delta_residual = 0;
};
HarmonicityResidual harmonicity_fd(const std::function<CTangent(const H3Point &)> &sigma,
                                   const H3Point &x, double step = 1e-3);

/// Grid and epsilon choices for the main-identity pipeline.
struct MainIdentityConfig {
  std::vector<double> eps_list{0.5, 0.25, 0.125};  // for the boundary integral
  std::vector<double> bulk_eps_list{0.25};         // bulk integral, per eps
  int pair_polar = 48, pair_az = 96;               // S^2 x S^2 grid (per factor)
  int bulk_radial = 32;                            // radial Gauss nodes
  int bulk_polar = 16, bulk_az = 32;               // direction grid for y
  double fiber_spacing = 0.18;                     // flow-time step of the fiber rule
  int fiber_az = 32;
  double fiber_margin = 7.0;                       // flow-time beyond the radius
  int sigma_polar = 24, sigma_az = 48;             // sigma quadrature
};

/// Full report of the regularized pushforward identity at the origin.
struct MainIdentityReport {
  Complex rhs = 0;     // (1/48) IntInt (1 - nu.nu')^2 g- g+
  Complex rhs_fd = 0;  // -(1/6) * finite-difference Laplacian of sigma-.sigma+
  std::vector<double> eps;
  std::vector<Complex> lhs_boundary;  // I_eps via psi_eps on the boundary
  std::vector<double> bulk_eps;
  std::vector<Complex> lhs_bulk;      // I_eps as the cutoff bulk integral
  bool grid_flag = false;             // set when a quadrature self-check trips

  double boundary_vs_rhs_rel() const;         // at the smallest eps
  double bulk_vs_boundary_rel() const;        // worst over bulk_eps
  double rhs_vs_fd_rel() const;
};
MainIdentityReport main_identity_check(const BoundaryDensityPair &pair,
                                       const MainIdentityConfig &cfg, const ExecPolicy &pol = {});

/// The two double-sphere quadratures underlying the report, exposed for
/// tests and benchmarks: weight(t) is applied to g-(nu) g+(nu').
Complex sphere_pair_sum(const SphereRule &rule, const std::vector<Complex> &gm_values,
                        const std::vector<Complex> &gp_values,
                        const std::function<double(double)> &weight_of_dot,
                        const ExecPolicy &pol = {});
Complex sphere_pair_sum_serial(const SphereRule &rule, const std::vector<Complex> &gm_values,
                               const std::vector<Complex> &gp_values,
                               const std::function<double(double)> &weight_of_dot);

/// Cutoff bulk integral Int chi(eps y0) y0^{-4} F(y) dvol(y) with the
/// flow-time-adapted fiber rule.
Complex bulk_integral(const BoundaryDensityPair &pair, double eps, const MainIdentityConfig &cfg,
                      const ExecPolicy &pol = {});

}  // namespace sh3
