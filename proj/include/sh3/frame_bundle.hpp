#pragma once

#include <array>
#include <optional>
#include <string>

#include "sh3/hyperboloid.hpp"
#include "sh3/minkowski.hpp"

namespace sh3 {

/// The six left-invariant fields on the frame bundle, in the fixed order
/// used throughout: X, R, U1+, U2+, U1-, U2-.
enum class FieldTag { X = 0, R = 1, U1p = 2, U2p = 3, U1m = 4, U2m = 5 };

constexpr std::array<FieldTag, 6> kFieldOrder = {FieldTag::X,   FieldTag::R,   FieldTag::U1p,
                                                 FieldTag::U2p, FieldTag::U1m, FieldTag::U2m};

std::string field_name(FieldTag t);

/// Integer 4x4 matrix in so(1,3) generating the field.
using AlgebraMatrix = std::array<std::array<int, 4>, 4>;
const AlgebraMatrix &algebra_matrix(FieldTag t);

/// Positively oriented orthonormal quadruple (x, v1, v2, v3):
/// <x,x> = 1, <vi,vj> = -delta, <x,vi> = 0, det(x v1 v2 v3) = +1.
struct FrameQuadruple {
  MinkowskiVector x, v1, v2, v3;

  FrameQuadruple() : x(1, 0, 0, 0), v1(0, 1, 0, 0), v2(0, 0, 1, 0), v3(0, 0, 0, 1) {}
  FrameQuadruple(const MinkowskiVector &x_, const MinkowskiVector &v1_, const MinkowskiVector &v2_,
                 const MinkowskiVector &v3_, bool check = true);

  UnitTangent tangent() const { return UnitTangent(x, v1, false); }
  double invariant_residual() const;
};

FrameQuadruple frame_from_tangent(const UnitTangent &p);

/// Velocity quadruple (xdot, v1dot, v2dot, v3dot) tangent to the frame
/// bundle at F.
struct FrameVelocity {
  MinkowskiVector dx, dv1, dv2, dv3;
};

/// Value of the left-invariant field at F: columns of F * algebra_matrix.
FrameVelocity field_at(FieldTag t, const FrameQuadruple &F);

/// All pairwise commutators [a,b] expanded over the 6-field basis.
/// entry(a,b)[k] is the integer coefficient of kFieldOrder[k].
/// Throws if some commutator falls outside the span (a transcription bug).
struct CommutatorTable {
  std::array<std::array<std::array<int, 6>, 6>, 6> coeff{};
  std::span<const int, 6> entry(FieldTag a, FieldTag b) const {
    return std::span<const int, 6>(coeff[static_cast<int>(a)][static_cast<int>(b)]);
  }
};
CommutatorTable commutator_table();

/// Expands an so(1,3) matrix over the 6 generators (exact for integer
/// matrices, least-squares-free: the basis change is triangular).
std::array<double, 6> algebra_coordinates(const std::array<std::array<double, 4>, 4> &m);

/// Coordinates of a sphere-bundle tangent vector in the field basis at the
/// frame F over p = (x, v1): xi = a0 X + a1 R + a2 U1+ + ... with a1 = 0
/// fixed by the horizontal lift (the R-component of the lift is set to 0).
std::array<double, 6> field_coordinates(const FrameQuadruple &F, const SphereTangent &xi);

}  // namespace sh3
