#include "sh3/zeta.hpp"

#include <cmath>
#include <stdexcept>

namespace sh3 {

void ClosedGeodesicRecord::validate() const {
  if (T <= 0) throw std::invalid_argument("ClosedGeodesicRecord: length must be positive");
  if (std::abs(P.determinant() - 1.0) > 1e-8)
    throw std::invalid_argument("ClosedGeodesicRecord: det P != 1");
  Eigen::EigenSolver<Eigen::Matrix4d> es(P);
  for (int i = 0; i < 4; ++i)
    if (std::abs(std::abs(es.eigenvalues()(i)) - 1.0) < 1e-6)
      throw std::invalid_argument("ClosedGeodesicRecord: eigenvalue on the unit circle");
}

std::complex<double> trace_wedge(const Eigen::Matrix4d &P, int k) {
  if (k < 0 || k > 4) throw std::invalid_argument("trace_wedge: k must be 0..4");
  if (k == 0) return 1.0;
  Eigen::EigenSolver<Eigen::Matrix4d> es(P);
  std::array<std::complex<double>, 4> ev;
  for (int i = 0; i < 4; ++i) ev[i] = es.eigenvalues()(i);
  // elementary symmetric polynomials by the Newton-free direct product
  std::array<std::complex<double>, 5> e{};
  e[0] = 1.0;
  for (int i = 0; i < 4; ++i)
    for (int j = std::min(i + 1, 4); j >= 1; --j) e[j] += e[j - 1] * ev[i];
  return e[k];
}

std::complex<double> trace_wedge_minors(const Eigen::Matrix4d &P, int k) {
  if (k == 0) return 1.0;
  // sum over k-subsets of {0..3} of det(P[I,I])
  std::complex<double> total = 0;
  for (int mask = 0; mask < 16; ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    int idx[4], m = 0;
    for (int i = 0; i < 4; ++i)
      if (mask & (1 << i)) idx[m++] = i;
    Eigen::MatrixXd sub(k, k);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) sub(r, c) = P(idx[r], idx[c]);
    total += sub.determinant();
  }
  return total;
}

ZetaTruncation zeta_k_log_truncated(const std::vector<ClosedGeodesicRecord> &records, int k,
                                    std::complex<double> lambda) {
  ZetaTruncation out;
  const std::complex<double> I(0, 1);
  for (const auto &rec : records) {
    rec.validate();
    Eigen::Matrix4d Pn = Eigen::Matrix4d::Identity();
    std::complex<double> partial = 0;
    std::complex<double> last = 0;
    for (int n = 1; n <= rec.multiplicity_cap; ++n) {
      Pn = Pn * rec.P;
      Eigen::Matrix4cd M = Eigen::Matrix4cd::Identity() - Pn.cast<std::complex<double>>();
      std::complex<double> det = M.determinant();
      last = trace_wedge(Pn, k) * std::exp(I * lambda * (rec.T * n)) / (det * static_cast<double>(n));
      partial += last;
    }
    out.value -= partial;
    if (std::abs(last) > 1e-12 * std::max(1.0, std::abs(partial))) out.decayed = false;
  }
  return out;
}

ZetaTruncation ruelle_log_product(const std::vector<ClosedGeodesicRecord> &records,
                                  std::complex<double> lambda) {
  // log(1 - z) = -sum z^n / n with z = e^{i lambda T}
  ZetaTruncation out;
  const std::complex<double> I(0, 1);
  for (const auto &rec : records) {
    std::complex<double> z = std::exp(I * lambda * rec.T);
    std::complex<double> zn = 1.0;
    std::complex<double> partial = 0, last = 0;
    for (int n = 1; n <= rec.multiplicity_cap; ++n) {
      zn *= z;
      last = zn / static_cast<double>(n);
      partial -= last;
    }
    out.value += partial;
    if (std::abs(last) > 1e-12 * std::max(1.0, std::abs(partial))) out.decayed = false;
  }
  return out;
}

void MultiplicityTable::validate() const {
  if (m[1] != m[3] || m[0] != m[4])
    throw std::invalid_argument("MultiplicityTable: m1 == m3 and m0 == m4 required");
}

MultiplicityTable multiplicity_table(ZetaCase c, long long b1) {
  if (b1 < 0) throw std::invalid_argument("multiplicity_table: b1 >= 0 required");
  MultiplicityTable t;
  t.b1 = b1;
  if (c == ZetaCase::Hyperbolic) {
    t.m = {1, 2 * b1, 2 * b1 + 2, 2 * b1, 1};
  } else {
    t.m = {1, b1, b1 + 2, b1, 1};
  }
  return t;
}

long long ruelle_order(const MultiplicityTable &table) {
  table.validate();
  return 2 * table.m[0] - 2 * table.m[1] + table.m[2];
}

std::array<long long, 6> betti_table(long long b1) {
  if (b1 < 0) throw std::invalid_argument("betti_table: b1 >= 0 required");
  return {1, b1, b1 + 1, b1 + 1, b1, 1};
}

}  // namespace sh3
