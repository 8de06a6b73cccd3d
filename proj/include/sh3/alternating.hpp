#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace sh3 {

/// Dense alternating k-form on a d-dimensional tangent space (d <= 6).
/// Coefficients are stored over strictly increasing k-subsets of {0..d-1},
/// ordered lexicographically, so antisymmetry is structural.  Vectors are
/// coordinate arrays in the basis the form was built in.
class AlternatingForm {
public:
  AlternatingForm(int degree, int dim);

  int degree() const { return degree_; }
  int dim() const { return dim_; }

  /// Number of stored coefficients, C(dim, degree).
  std::size_t size() const { return coeffs_.size(); }

  double &coeff(std::span<const int> subset);
  double coeff(std::span<const int> subset) const;
  double &coeff_at(std::size_t flat) { return coeffs_[flat]; }
  double coeff_at(std::size_t flat) const { return coeffs_[flat]; }

  /// Value on `degree()` vectors: sum over stored subsets of coeff * minor.
  double operator()(std::span<const std::vector<double>> vectors) const;

  AlternatingForm operator+(const AlternatingForm &o) const;
  AlternatingForm operator-(const AlternatingForm &o) const;
  AlternatingForm operator*(double s) const;

  /// Wedge product (shuffle convention: (dx^1 ^ dx^2)(e1,e2) = 1).
  AlternatingForm wedge(const AlternatingForm &o) const;

  /// Contraction with a vector in the first slot; degree drops by one.
  AlternatingForm interior(std::span<const double> v) const;

  double max_abs_coeff() const;

  /// k-subsets of {0..d-1} in lexicographic order.
  static const std::vector<std::vector<int>> &subsets(int d, int k);

private:
  int degree_;
  int dim_;
  std::vector<double> coeffs_;
};

/// Builds a deg-1 form from covector components.
AlternatingForm one_form(std::span<const double> comps);

/// Evaluates the wedge of several forms on a matching list of vectors.
/// Degrees must sum to vectors.size(); all forms share the ambient dim.
double wedge_eval(std::span<const AlternatingForm> forms,
                  std::span<const std::vector<double>> vectors);

}  // namespace sh3
