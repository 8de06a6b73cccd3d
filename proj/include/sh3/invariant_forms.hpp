#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sh3/hyperboloid.hpp"
#include "sh3/parallel.hpp"

namespace sh3 {

/// The rotation I(x,v)(xi_H, xi_V) = (v x xi_V, v x xi_H).  It kills the
/// flow direction, squares to -Id on ker alpha, and preserves E_u, E_s.
struct RotationI {
  UnitTangent base;

  SphereTangent apply(const SphereTangent &xi) const;
};

enum class TwoFormKind { DAlpha, Psi, OmegaPlus, OmegaMinus };

/// Pointwise invariant 2-form at a base tangent.
struct InvariantTwoForm {
  TwoFormKind kind;
  UnitTangent base;

  double eval(const SphereTangent &xi, const SphereTangent &eta) const;
};

/// psi(xi,eta) = <v x xi_H, eta_H>_g - <v x xi_V, eta_V>_g.
double psi_eval(const SphereTangent &xi, const SphereTangent &eta);

/// omega_+ lives on the unstable pairs, omega_- on the stable ones;
/// omega_pm((w1,+-w1),(w2,+-w2)) = <v x w1, w2>_g, zero on the rest.
double omega_eval(int sign, const SphereTangent &xi, const SphereTangent &eta);

/// 1-form "beta o I" given beta as a covector functional.
/// (beta o I)(xi) = beta(I xi).

/// Residual of one identity over seeded random trials.
struct IdentityResidual {
  std::string id;
  int trials = 0;
  double max_residual = 0;
  std::uint64_t seed = 0;
  bool symbolic = false;  // exact check done in rational arithmetic
};

struct IdentitySuiteReport {
  std::vector<IdentityResidual> entries;
  double max_residual() const;
  const IdentityResidual &entry(const std::string &id) const;
};

/// Runs the full pointwise identity suite at random frames around p
/// (trials are independently seeded so the fan-out is deterministic).
IdentitySuiteReport identity_suite(const UnitTangent &p, int trials, std::uint64_t seed,
                                   const ExecPolicy &pol = {});

/// Serial twin kept as the reference path.
IdentitySuiteReport identity_suite_serial(const UnitTangent &p, int trials, std::uint64_t seed);

/// Same suite with a sign flipped in one block of psi; identity
/// "psi^psi = dalpha^dalpha" must then fail loudly (negative control).
double corrupted_psi_residual(const UnitTangent &p, int trials, std::uint64_t seed);

}  // namespace sh3
