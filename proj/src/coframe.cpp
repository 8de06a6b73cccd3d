#include "sh3/coframe.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace sh3 {

namespace {

const char *kSymbolNames[6] = {"a", "R*", "U1+*", "U2+*", "U1-*", "U2-*"};

// sign of merging two disjoint ascending masks: (-1)^(inversions)
int merge_mask_sign(std::uint8_t a, std::uint8_t b) {
  int sign = 1;
  for (int i = 0; i < 6; ++i) {
    if (!(b & (1u << i))) continue;
    // count elements of a above i
    int above = std::popcount(static_cast<unsigned>(a >> (i + 1)));
    if (above % 2 == 1) sign = -sign;
  }
  return sign;
}

}  // namespace

void CoframePolynomial::add_term(std::uint8_t mask, const Rational &c) {
  if (c == 0) return;
  auto it = terms_.find(mask);
  if (it == terms_.end()) {
    terms_.emplace(mask, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

CoframePolynomial CoframePolynomial::symbol(int index) {
  if (index < 0 || index > 5) throw std::invalid_argument("CoframePolynomial: bad symbol index");
  CoframePolynomial p;
  p.add_term(static_cast<std::uint8_t>(1u << index), 1);
  return p;
}

CoframePolynomial CoframePolynomial::u_star(int i, int sign) {
  if ((i != 1 && i != 2) || (sign != 1 && sign != -1))
    throw std::invalid_argument("CoframePolynomial: bad U* index");
  int idx = (sign > 0) ? (1 + i) : (3 + i);  // U1+*:2 U2+*:3 U1-*:4 U2-*:5
  return symbol(idx);
}

CoframePolynomial CoframePolynomial::constant(const Rational &c) {
  CoframePolynomial p;
  p.add_term(0, c);
  return p;
}

CoframePolynomial CoframePolynomial::psi() {
  return (u_star(1, +1).wedge(u_star(2, -1)) + u_star(1, -1).wedge(u_star(2, +1))) * Rational(2);
}

CoframePolynomial CoframePolynomial::omega(int sign) {
  return u_star(1, sign).wedge(u_star(2, sign));
}

CoframePolynomial CoframePolynomial::dvol_alpha() {
  CoframePolynomial da = alpha().d();
  return alpha().wedge(da).wedge(da);
}

int CoframePolynomial::degree() const {
  if (terms_.empty()) return 0;
  int deg = std::popcount(static_cast<unsigned>(terms_.begin()->first));
  for (const auto &[m, c] : terms_)
    if (std::popcount(static_cast<unsigned>(m)) != deg)
      throw std::logic_error("CoframePolynomial: mixed degrees");
  return deg;
}

CoframePolynomial CoframePolynomial::operator+(const CoframePolynomial &o) const {
  CoframePolynomial r = *this;
  for (const auto &[m, c] : o.terms_) r.add_term(m, c);
  return r;
}

CoframePolynomial CoframePolynomial::operator-(const CoframePolynomial &o) const {
  CoframePolynomial r = *this;
  for (const auto &[m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

CoframePolynomial CoframePolynomial::operator*(const Rational &s) const {
  CoframePolynomial r;
  if (s == 0) return r;
  for (const auto &[m, c] : terms_) r.terms_.emplace(m, c * s);
  return r;
}

CoframePolynomial CoframePolynomial::wedge(const CoframePolynomial &o) const {
  CoframePolynomial r;
  for (const auto &[ma, ca] : terms_)
    for (const auto &[mb, cb] : o.terms_) {
      if (ma & mb) continue;
      int sign = merge_mask_sign(ma, mb);
      r.add_term(ma | mb, Rational(sign) * ca * cb);
    }
  return r;
}

CoframePolynomial CoframePolynomial::d() const {
  // structure equations:
  //   d(alpha) = 2 (U1+* ^ U1-* + U2+* ^ U2-*)
  //   d(R*)    = 2 (U2-* ^ U1+* + U2+* ^ U1-*)
  //   d(Ui+*)  = +alpha ^ Ui+* -+ R* ^ U(3-i)+*   (the rotation mixes U1,U2)
  //   d(Ui-*)  = -alpha ^ Ui-* -+ R* ^ U(3-i)-*
  static const auto ds = [] {
    std::array<CoframePolynomial, 6> out;
    auto a = symbol(0), rs = symbol(1), u1p = symbol(2), u2p = symbol(3), u1m = symbol(4),
         u2m = symbol(5);
    out[0] = (u1p.wedge(u1m) + u2p.wedge(u2m)) * Rational(2);
    out[1] = (u2m.wedge(u1p) + u2p.wedge(u1m)) * Rational(2);
    out[2] = a.wedge(u1p) - rs.wedge(u2p);
    out[3] = a.wedge(u2p) + rs.wedge(u1p);
    out[4] = a.wedge(u1m) * Rational(-1) - rs.wedge(u2m);
    out[5] = a.wedge(u2m) * Rational(-1) + rs.wedge(u1m);
    return out;
  }();
  CoframePolynomial r;
  for (const auto &[mask, c] : terms_) {
    int pos = 0;  // parity of symbols before the current one
    for (int i = 0; i < 6; ++i) {
      if (!(mask & (1u << i))) continue;
      // graded Leibniz: the term e_{i1}^..^d(e_{ij})^..^e_{ik} carries the
      // sign (-1)^(j-1), and pulling the 2-form d(e_{ij}) to the front
      // across one-forms costs nothing
      std::uint8_t rest = static_cast<std::uint8_t>(mask & ~(1u << i));
      Rational sgn = (pos % 2 == 0) ? c : -c;
      CoframePolynomial rest_poly;
      rest_poly.add_term(rest, 1);
      r = r + ds[i].wedge(rest_poly) * sgn;
      ++pos;
    }
  }
  return r;
}

CoframePolynomial CoframePolynomial::interior(FieldTag field) const {
  // duality: alpha<->X, R*<->R, U1+*<->U1-, U2+*<->U2-, U1-*<->U1+, U2-*<->U2+
  int sym;
  switch (field) {
    case FieldTag::X: sym = 0; break;
    case FieldTag::R: sym = 1; break;
    case FieldTag::U1m: sym = 2; break;
    case FieldTag::U2m: sym = 3; break;
    case FieldTag::U1p: sym = 4; break;
    case FieldTag::U2p: sym = 5; break;
    default: throw std::invalid_argument("interior: bad field");
  }
  CoframePolynomial r;
  for (const auto &[mask, c] : terms_) {
    if (!(mask & (1u << sym))) continue;
    int before = std::popcount(static_cast<unsigned>(mask & ((1u << sym) - 1)));
    Rational sgn = (before % 2 == 0) ? c : -c;
    r.add_term(static_cast<std::uint8_t>(mask & ~(1u << sym)), sgn);
  }
  return r;
}

CoframePolynomial CoframePolynomial::lie(FieldTag field) const {
  return d().interior(field) + interior(field).d();
}

bool CoframePolynomial::descends() const {
  return interior(FieldTag::R).is_zero() && lie(FieldTag::R).is_zero();
}

AlternatingForm CoframePolynomial::realize(const FrameQuadruple &F,
                                           std::span<const SphereTangent> basis) const {
  if (!descends()) throw std::invalid_argument("realize: form does not descend to the sphere bundle");
  return realize_at_frame(F, basis);
}

AlternatingForm CoframePolynomial::realize_at_frame(const FrameQuadruple &F,
                                                    std::span<const SphereTangent> basis) const {
  int deg = degree();
  int dim = static_cast<int>(basis.size());
  AlternatingForm out(deg, dim);
  // pairing of each symbol with each basis vector, through the field
  // coordinates of its lift; the duality pairs each starred symbol with the
  // opposite-sign field, so <symbol s, xi> reads the dual field coefficient
  static const int kDualField[6] = {0, 1, 4, 5, 2, 3};
  std::vector<std::array<double, 6>> coords(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) coords[i] = field_coordinates(F, basis[i]);
  const auto &ss = AlternatingForm::subsets(dim, deg);
  std::vector<std::vector<double>> minor_(deg, std::vector<double>(deg));
  for (std::size_t k = 0; k < ss.size(); ++k) {
    double total = 0;
    for (const auto &[mask, c] : terms_) {
      // det of pairings <symbol_r, basis_{ss[k][c]}>
      int syms[6], ns = 0;
      for (int s = 0; s < 6; ++s)
        if (mask & (1u << s)) syms[ns++] = s;
      // build the deg x deg matrix
      double det = 1.0;
      {
        for (int r = 0; r < deg; ++r)
          for (int cc = 0; cc < deg; ++cc) minor_[r][cc] = coords[ss[k][cc]][kDualField[syms[r]]];
        // small determinant via Gaussian elimination
        det = 1.0;
        auto a = minor_;
        for (int col = 0; col < deg; ++col) {
          int piv = col;
          for (int r = col + 1; r < deg; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
          if (a[piv][col] == 0.0) {
            det = 0.0;
            break;
          }
          if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
          }
          det *= a[col][col];
          for (int r = col + 1; r < deg; ++r) {
            double f = a[r][col] / a[col][col];
            for (int cc = col; cc < deg; ++cc) a[r][cc] -= f * a[col][cc];
          }
        }
      }
      total += static_cast<double>(c) * det;
    }
    out.coeff_at(k) = total;
  }
  return out;
}

std::string CoframePolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto &[mask, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (int i = 0; i < 6; ++i)
      if (mask & (1u << i)) os << "^" << kSymbolNames[i];
  }
  return os.str();
}

}  // namespace sh3
