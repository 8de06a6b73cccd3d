#include "sh3/alternating.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

namespace sh3 {

namespace {

std::size_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

std::vector<std::vector<int>> make_subsets(int d, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k);
  // iterative lexicographic enumeration
  for (int i = 0; i < k; ++i) cur[i] = i;
  if (k == 0) {
    out.push_back({});
    return out;
  }
  if (k > d) return out;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == d - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

// determinant of a small k x k matrix, k <= 6
double small_det(const std::vector<std::vector<double>> &m) {
  int n = static_cast<int>(m.size());
  if (n == 0) return 1.0;
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  std::vector<std::vector<double>> a = m;
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (a[piv][col] == 0.0) return 0.0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (int r = col + 1; r < n; ++r) {
      double f = a[r][col] / a[col][col];
      for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

}  // namespace

const std::vector<std::vector<int>> &AlternatingForm::subsets(int d, int k) {
  static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
  auto key = std::make_pair(d, k);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, make_subsets(d, k)).first;
  return it->second;
}

AlternatingForm::AlternatingForm(int degree, int dim)
    : degree_(degree), dim_(dim), coeffs_(binom(dim, degree), 0.0) {
  if (degree < 0 || dim < 0 || dim > 8) throw std::invalid_argument("AlternatingForm: bad degree/dim");
}

double &AlternatingForm::coeff(std::span<const int> subset) {
  const auto &ss = subsets(dim_, degree_);
  for (std::size_t i = 0; i < ss.size(); ++i)
    if (std::equal(ss[i].begin(), ss[i].end(), subset.begin(), subset.end())) return coeffs_[i];
  throw std::invalid_argument("AlternatingForm: subset not found");
}

double AlternatingForm::coeff(std::span<const int> subset) const {
  return const_cast<AlternatingForm *>(this)->coeff(subset);
}

double AlternatingForm::operator()(std::span<const std::vector<double>> vectors) const {
  if (static_cast<int>(vectors.size()) != degree_)
    throw std::invalid_argument("AlternatingForm: wrong number of vectors");
  for (const auto &v : vectors)
    if (static_cast<int>(v.size()) != dim_) throw std::invalid_argument("AlternatingForm: vector dim mismatch");
  const auto &ss = subsets(dim_, degree_);
  double total = 0;
  std::vector<std::vector<double>> minor_(degree_, std::vector<double>(degree_));
  for (std::size_t i = 0; i < ss.size(); ++i) {
    if (coeffs_[i] == 0.0) continue;
    for (int r = 0; r < degree_; ++r)
      for (int c = 0; c < degree_; ++c) minor_[r][c] = vectors[c][ss[i][r]];
    total += coeffs_[i] * small_det(minor_);
  }
  return total;
}

AlternatingForm AlternatingForm::operator+(const AlternatingForm &o) const {
  if (o.degree_ != degree_ || o.dim_ != dim_) throw std::invalid_argument("AlternatingForm: shape mismatch");
  AlternatingForm r = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] += o.coeffs_[i];
  return r;
}

AlternatingForm AlternatingForm::operator-(const AlternatingForm &o) const {
  return *this + o * (-1.0);
}

AlternatingForm AlternatingForm::operator*(double s) const {
  AlternatingForm r = *this;
  for (auto &c : r.coeffs_) c *= s;
  return r;
}

namespace {

// Merge two increasing subsets; returns 0 on collision, otherwise the
// permutation sign and the merged subset.
int merge_sign(const std::vector<int> &a, const std::vector<int> &b, std::vector<int> &out) {
  out.clear();
  int sign = 1;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return 0;
    if (a[i] < b[j]) {
      out.push_back(a[i++]);
    } else {
      // b[j] jumps over the remaining elements of a
      if ((a.size() - i) % 2 == 1) sign = -sign;
      out.push_back(b[j++]);
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(b[j++]);
  return sign;
}

}  // namespace

AlternatingForm AlternatingForm::wedge(const AlternatingForm &o) const {
  if (o.dim_ != dim_) throw std::invalid_argument("AlternatingForm: dim mismatch");
  AlternatingForm r(degree_ + o.degree_, dim_);
  if (degree_ + o.degree_ > dim_) return r;  // identically zero
  const auto &sa = subsets(dim_, degree_);
  const auto &sb = subsets(dim_, o.degree_);
  const auto &sr = subsets(dim_, degree_ + o.degree_);
  std::vector<int> merged;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (coeffs_[i] == 0.0) continue;
    for (std::size_t j = 0; j < sb.size(); ++j) {
      if (o.coeffs_[j] == 0.0) continue;
      int sign = merge_sign(sa[i], sb[j], merged);
      if (sign == 0) continue;
      for (std::size_t k = 0; k < sr.size(); ++k)
        if (sr[k] == merged) {
          r.coeffs_[k] += sign * coeffs_[i] * o.coeffs_[j];
          break;
        }
    }
  }
  return r;
}

AlternatingForm AlternatingForm::interior(std::span<const double> v) const {
  if (degree_ < 1) throw std::invalid_argument("AlternatingForm: interior product needs degree >= 1");
  if (static_cast<int>(v.size()) != dim_) throw std::invalid_argument("AlternatingForm: vector dim mismatch");
  AlternatingForm r(degree_ - 1, dim_);
  const auto &ss = subsets(dim_, degree_);
  const auto &sr = subsets(dim_, degree_ - 1);
  std::vector<int> rest(degree_ - 1);
  for (std::size_t i = 0; i < ss.size(); ++i) {
    if (coeffs_[i] == 0.0) continue;
    for (int pos = 0; pos < degree_; ++pos) {
      double vc = v[ss[i][pos]];
      if (vc == 0.0) continue;
      int sign = (pos % 2 == 0) ? 1 : -1;
      int w = 0;
      for (int q = 0; q < degree_; ++q)
        if (q != pos) rest[w++] = ss[i][q];
      for (std::size_t k = 0; k < sr.size(); ++k)
        if (sr[k] == rest) {
          r.coeffs_[k] += sign * vc * coeffs_[i];
          break;
        }
    }
  }
  return r;
}

double AlternatingForm::max_abs_coeff() const {
  double m = 0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

AlternatingForm one_form(std::span<const double> comps) {
  AlternatingForm f(1, static_cast<int>(comps.size()));
  for (std::size_t i = 0; i < comps.size(); ++i) f.coeff_at(i) = comps[i];
  return f;
}

double wedge_eval(std::span<const AlternatingForm> forms,
                  std::span<const std::vector<double>> vectors) {
  if (forms.empty()) throw std::invalid_argument("wedge_eval: no forms");
  int dim = forms[0].dim();
  int total = 0;
  for (const auto &f : forms) {
    if (f.dim() != dim) throw std::invalid_argument("wedge_eval: ambient dim mismatch");
    total += f.degree();
  }
  if (total != static_cast<int>(vectors.size()))
    throw std::invalid_argument("wedge_eval: degrees must sum to the number of vectors");
  AlternatingForm w = forms[0];
  for (std::size_t i = 1; i < forms.size(); ++i) w = w.wedge(forms[i]);
  return w(vectors);
}

}  // namespace sh3
