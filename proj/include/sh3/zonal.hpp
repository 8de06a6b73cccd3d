#pragma once

#include <functional>
#include <vector>

#include "sh3/parallel.hpp"
#include "sh3/sphere_harmonics.hpp"

namespace sh3 {

/// Kernel profile kappa(r) on r = |nu - nu'|^2 in [0, 4], with first and
/// second derivative callables.
struct ZonalKernel {
  std::function<double(double)> eval;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
};

/// Smooth cutoff chi: 1 on [-1,1], supported in [-2,2], built from the
/// standard exp(-1/t) bump.  Fixed once for reproducibility.
double chi_cutoff(double s);
double chi_cutoff_d1(double s);
double chi_cutoff_d2(double s);

/// Funk-Hecke eigenvalues lambda_l = 2 pi Int_{-1}^{1} kappa(2-2t) P_l(t) dt.
struct FunkHeckeSpectrum {
  std::vector<double> lambdas;
};
FunkHeckeSpectrum funk_hecke_spectrum(const ZonalKernel &kappa, int L, int quad_nodes = 0,
                                      const ExecPolicy &pol = {});
FunkHeckeSpectrum funk_hecke_spectrum_serial(const ZonalKernel &kappa, int L, int quad_nodes = 0);

/// A_kappa f(nu) = Int kappa(|nu-nu'|^2) f(nu') dS(nu'), evaluated by
/// pointwise quadrature on the grid and reprojected to degree L.
/// Throws when the grid cannot resolve degree 2L.
SphereFunction a_kappa_apply(const ZonalKernel &kappa, const SphereFunction &f,
                             const SphereRule &grid, const ExecPolicy &pol = {});

/// The Laplacian commutation transform:
/// kappa~(r) = (4-r) r kappa''(r) + (4-2r) kappa'(r).
ZonalKernel kappa_tilde(const ZonalKernel &kappa);

/// Operator norms of A_kappa as H^{s1} -> H^{s2} on the band-limited sector.
struct OperatorNorms {
  double norm = 0;               // max_l (1+l(l+1))^{(s2-s1)/2} |lambda_l|
  double schur_bound = 0;        // pi * ||kappa||_L1([0,4])
  double sobolev_bound_rhs = 0;  // sum_j ||r^{max(j-l,0)} d_r^j kappa||_L1
};
OperatorNorms operator_norms(const ZonalKernel &kappa, double s1, double s2, int L);

/// psi_eps(r) = (3/4) Int chi(2 eps cosh t / sqrt r) cosh^{-4} t dt.
double psi_eps_eval(double eps, double r, int quad_nodes = 96);

/// kappa_eps(r) = (4/3) r^2 (1 - psi_eps(r)).
ZonalKernel kappa_eps(double eps);

/// ||r^k d_r^j kappa_eps||_{L1([0,4])} by quadrature; derivatives under the
/// integral for j <= 2, Richardson differences above.
double kappa_eps_l1_profile(double eps, int j, int k);

/// Band-limited H^{-5/2} -> H^{5/2} norms of A_{kappa_eps} per eps.
struct DecayRow {
  double eps;
  double norm;
};
std::vector<DecayRow> regularization_norm_decay(const std::vector<double> &eps_list, int L,
                                                const ExecPolicy &pol = {});

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double> &x, const std::vector<double> &y);

}  // namespace sh3
