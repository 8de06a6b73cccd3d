#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <vector>

namespace sh3 {

/// Primitive closed geodesic: length and linearized return map on the
/// 4-dimensional transversal.  det P = 1 and no eigenvalue sits on the
/// unit circle.
struct ClosedGeodesicRecord {
  double T = 0;              // primitive length
  int multiplicity_cap = 20; // iterates summed per geodesic
  Eigen::Matrix4d P;

  void validate() const;  // throws on det != 1 or unit-circle eigenvalues
};

/// Trace of the k-th exterior power via elementary symmetric functions of
/// the eigenvalues.
std::complex<double> trace_wedge(const Eigen::Matrix4d &P, int k);
/// Brute-force oracle: sum of principal k x k minors.
std::complex<double> trace_wedge_minors(const Eigen::Matrix4d &P, int k);

struct ZetaTruncation {
  std::complex<double> value = 0;   // log zeta_k
  bool decayed = true;              // last term below 1e-12 of the partial sum
};

/// Truncated log zeta_k(lambda) =
///   - sum over geodesics and iterates n <= cap of
///     tr(wedge^k P^n) e^{i lambda n T} / (n det(I - P^n)).
ZetaTruncation zeta_k_log_truncated(const std::vector<ClosedGeodesicRecord> &records, int k,
                                    std::complex<double> lambda);

/// Truncated log of the direct product Prod (1 - e^{i lambda T_gamma}) over
/// primitive geodesics (series in iterates, same cap).
ZetaTruncation ruelle_log_product(const std::vector<ClosedGeodesicRecord> &records,
                                  std::complex<double> lambda);

/// Multiplicities m_{k,0}(0) for k = 0..4 plus the Betti number that
/// produced them.
struct MultiplicityTable {
  std::array<long long, 5> m{};
  long long b1 = 0;

  void validate() const;  // m1 == m3 and m0 == m4
};

enum class ZetaCase { Hyperbolic, Perturbed };

MultiplicityTable multiplicity_table(ZetaCase c, long long b1);

/// Order of vanishing: alternating sum 2 m0 - 2 m1 + m2.
long long ruelle_order(const MultiplicityTable &table);

/// Betti numbers (b_k(M))_{k=0..5} of the sphere bundle from b1 of the base.
std::array<long long, 6> betti_table(long long b1);

}  // namespace sh3
