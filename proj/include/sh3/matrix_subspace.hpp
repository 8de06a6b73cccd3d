#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace sh3 {

/// Subspace of n x n real matrices spanned by `basis`; symmetric_flag marks
/// a subspace of symmetric matrices (kernel pairing uses a single vector).
struct MatrixSubspace {
  int n = 0;
  std::vector<Eigen::MatrixXd> basis;
  bool symmetric_flag = false;
};

enum class SearchFailure {
  None,
  HypothesisFailure,  // all pairings vanished on the blocking kernel direction
  BudgetExhausted,
};

struct SubspaceSearchResult {
  std::optional<Eigen::MatrixXd> matrix;  // an invertible element when found
  SearchFailure failure = SearchFailure::None;
  int rank_reached = 0;
};

/// Rank-augmentation search for an invertible element of V: maintain a
/// maximal-rank A, expose its kernel pairing by SVD (or eigenvectors in the
/// symmetric case), scan basis elements whose pairing on the blocking kernel
/// direction is nonzero, and add a small multiple (t halved from 1, at most
/// 40 times) until the rank increases.
SubspaceSearchResult find_invertible_in_subspace(const MatrixSubspace &V, int budget = 64);

/// Scale-invariant rank with threshold 1e-9 * (largest singular value).
int numeric_rank(const Eigen::MatrixXd &m);

/// Brute-force oracle: scans integer coefficient combinations in
/// {-range..range}^dim(V) for an invertible element.
std::optional<Eigen::MatrixXd> brute_force_invertible(const MatrixSubspace &V, int range = 3);

}  // namespace sh3
