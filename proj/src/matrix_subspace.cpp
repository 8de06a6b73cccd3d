#include "sh3/matrix_subspace.hpp"

#include <cmath>
#include <stdexcept>

namespace sh3 {

int numeric_rank(const Eigen::MatrixXd &m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto &sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  double thresh = 1e-9 * sv(0);
  if (sv(0) == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > thresh) ++r;
  return r;
}

SubspaceSearchResult find_invertible_in_subspace(const MatrixSubspace &V, int budget) {
  SubspaceSearchResult out;
  if (V.basis.empty()) throw std::invalid_argument("find_invertible_in_subspace: empty basis");
  const int n = V.n;
  for (const auto &b : V.basis)
    if (b.rows() != n || b.cols() != n)
      throw std::invalid_argument("find_invertible_in_subspace: basis shape mismatch");

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  int rank = 0;
  for (int iter = 0; iter < budget; ++iter) {
    if (rank == n) break;
    // kernel pairing data of A
    Eigen::MatrixXd ker_right, ker_left;  // columns span the kernels
    if (V.symmetric_flag) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
      double scale = es.eigenvalues().cwiseAbs().maxCoeff();
      double thresh = (scale == 0.0) ? 0.5 : 1e-9 * scale;
      int kdim = 0;
      for (int i = 0; i < n; ++i)
        if (std::abs(es.eigenvalues()(i)) <= thresh) ++kdim;
      ker_right.resize(n, kdim);
      int c = 0;
      for (int i = 0; i < n; ++i)
        if (std::abs(es.eigenvalues()(i)) <= thresh) ker_right.col(c++) = es.eigenvectors().col(i);
      ker_left = ker_right;
    } else {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
      ker_right.resize(n, n - rank);
      ker_left.resize(n, n - rank);
      for (int i = rank; i < n; ++i) {
        ker_right.col(i - rank) = svd.matrixV().col(i);
        ker_left.col(i - rank) = svd.matrixU().col(i);
      }
    }
    if (ker_right.cols() == 0) break;

    // scan the kernel-aligned pairings; for symmetric V the pairing uses
    // the same eigenvector on both sides, mirroring the rank-augmentation
    // argument
    const Eigen::MatrixXd *chosen = nullptr;
    double best = 0;
    for (const auto &B : V.basis) {
      double scale = B.cwiseAbs().maxCoeff();
      if (scale == 0.0) continue;
      for (int i = 0; i < ker_right.cols(); ++i) {
        int jmax = V.symmetric_flag ? 1 : static_cast<int>(ker_left.cols());
        for (int j = 0; j < jmax; ++j) {
          double pairing = V.symmetric_flag ? ker_right.col(i).dot(B * ker_right.col(i))
                                            : ker_left.col(j).dot(B * ker_right.col(i));
          if (std::abs(pairing) > 1e-12 * scale && std::abs(pairing) > std::abs(best)) {
            best = pairing;
            chosen = &B;
          }
        }
      }
    }
    if (!chosen) {
      // every kernel-aligned pairing vanished for every basis element
      out.failure = SearchFailure::HypothesisFailure;
      out.rank_reached = rank;
      return out;
    }
    // halve t from 1 until the rank strictly increases
    bool advanced = false;
    double t = 1.0;
    for (int h = 0; h <= 40; ++h, t *= 0.5) {
      Eigen::MatrixXd cand = A + t * (*chosen);
      int r = numeric_rank(cand);
      if (r > rank) {
        A = cand;
        rank = r;
        advanced = true;
        break;
      }
    }
    if (!advanced) {
      out.failure = SearchFailure::BudgetExhausted;
      out.rank_reached = rank;
      return out;
    }
  }

  out.rank_reached = rank;
  if (rank == n) {
    // scale-invariant determinant guard: never return a singular matrix
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    double smax = svd.singularValues()(0);
    double det_scale = std::pow(smax, n);
    if (std::abs(A.determinant()) > 1e-10 * det_scale) {
      out.matrix = A;
      return out;
    }
  }
  out.failure = SearchFailure::BudgetExhausted;
  return out;
}

std::optional<Eigen::MatrixXd> brute_force_invertible(const MatrixSubspace &V, int range) {
  int dim = static_cast<int>(V.basis.size());
  std::vector<int> c(dim, -range);
  while (true) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(V.n, V.n);
    for (int i = 0; i < dim; ++i) m += static_cast<double>(c[i]) * V.basis[i];
    if (numeric_rank(m) == V.n) return m;
    int i = 0;
    while (i < dim && c[i] == range) c[i++] = -range;
    if (i == dim) return std::nullopt;
    ++c[i];
  }
}

}  // namespace sh3
