#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <string>

#include "sh3/alternating.hpp"
#include "sh3/frame_bundle.hpp"

namespace sh3 {

using Rational = boost::multiprecision::cpp_rational;

/// Exterior-algebra element over the canonical coframe symbols, with exact
/// rational coefficients.  Symbol order is fixed as
///   0: alpha, 1: R*, 2: U1+*, 3: U2+*, 4: U1-*, 5: U2-*
/// and monomials are keyed by 6-bit masks over that order.
class CoframePolynomial {
public:
  CoframePolynomial() = default;

  /// The six generators.
  static CoframePolynomial symbol(int index);
  static CoframePolynomial alpha() { return symbol(0); }
  static CoframePolynomial r_star() { return symbol(1); }
  static CoframePolynomial u_star(int i, int sign);  // i in {1,2}, sign in {+1,-1}

  static CoframePolynomial constant(const Rational &c);

  /// 2*(U1+* ^ U2-* + U1-* ^ U2+*).
  static CoframePolynomial psi();
  /// omega_+ = U1+* ^ U2+*,  omega_- = U1-* ^ U2-*.
  static CoframePolynomial omega(int sign);
  /// alpha ^ d(alpha) ^ d(alpha).
  static CoframePolynomial dvol_alpha();

  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // degree of a homogeneous polynomial; 0 for zero

  CoframePolynomial operator+(const CoframePolynomial &o) const;
  CoframePolynomial operator-(const CoframePolynomial &o) const;
  CoframePolynomial operator*(const Rational &s) const;
  CoframePolynomial wedge(const CoframePolynomial &o) const;
  bool operator==(const CoframePolynomial &o) const { return terms_ == o.terms_; }

  /// Exterior derivative from the structure equations, extended by the
  /// graded Leibniz rule.
  CoframePolynomial d() const;

  /// Contraction with one of the six dual fields (X, R, U1+, ...).
  /// The duality pairs each symbol with one field: alpha with X, R* with R,
  /// Ui+* with Ui-, Ui-* with Ui+.
  CoframePolynomial interior(FieldTag field) const;

  /// Lie derivative along a field via Cartan's formula.
  CoframePolynomial lie(FieldTag field) const;

  /// True when the form descends to the sphere bundle:
  /// interior(R) == 0 and lie(R) == 0.
  bool descends() const;

  /// Numeric realization at the frame F, as an alternating form in the
  /// supplied basis of T_(x,v1) SH^3.  Requires descends(); throws otherwise.
  AlternatingForm realize(const FrameQuadruple &F, std::span<const SphereTangent> basis) const;

  /// Realization without the descent check.  The value depends on the
  /// chosen frame over (x, v1), which is intended for frame-anchored test
  /// forms like the realized U1-*.
  AlternatingForm realize_at_frame(const FrameQuadruple &F,
                                   std::span<const SphereTangent> basis) const;

  std::string to_string() const;

  const std::map<std::uint8_t, Rational> &terms() const { return terms_; }

private:
  // keys: bitmask over symbols; values: nonzero rational coefficients
  std::map<std::uint8_t, Rational> terms_;

  void add_term(std::uint8_t mask, const Rational &c);
};

}  // namespace sh3
