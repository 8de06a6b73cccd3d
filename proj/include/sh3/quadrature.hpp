#pragma once

#include <array>
#include <vector>

namespace sh3 {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule &gauss_legendre(int n);

/// Gauss-Legendre rule mapped to [a, b].
GaussRule gauss_legendre_on(int n, double a, double b);

/// Product rule on S^2: Gauss-Legendre in cos(theta) x uniform azimuth.
/// Exact for spherical polynomials of degree <= min(2 n_polar - 1, n_az - 1).
struct SphereRule {
  struct Node {
    std::array<double, 3> dir;
    double weight;     // quadrature weight, sums to 4*pi
    double cos_theta;  // polar data kept for zonal integrands
    double phi;
  };
  std::vector<Node> nodes;

  static SphereRule product(int n_polar, int n_az);
};

}  // namespace sh3
