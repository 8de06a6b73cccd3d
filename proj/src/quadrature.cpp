#include "sh3/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace sh3 {

namespace {

GaussRule compute_gauss(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1 required");
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  // Newton iteration from the Chebyshev-angle initial guess
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      // evaluate P_n and P_n' by the three-term recurrence
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.nodes[i] = x;
    r.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return r;
}

}  // namespace

const GaussRule &gauss_legendre(int n) {
  static std::map<int, GaussRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss(n)).first;
  return it->second;
}

GaussRule gauss_legendre_on(int n, double a, double b) {
  const GaussRule &base = gauss_legendre(n);
  GaussRule r = base;
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = mid + half * base.nodes[i];
    r.weights[i] = half * base.weights[i];
  }
  return r;
}

SphereRule SphereRule::product(int n_polar, int n_az) {
  const GaussRule &g = gauss_legendre(n_polar);
  SphereRule r;
  r.nodes.reserve(static_cast<std::size_t>(n_polar) * n_az);
  double wphi = 2.0 * M_PI / n_az;
  for (int i = 0; i < n_polar; ++i) {
    double ct = g.nodes[i];
    double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    for (int j = 0; j < n_az; ++j) {
      double phi = wphi * j;
      Node n;
      n.dir = {st * std::cos(phi), st * std::sin(phi), ct};
      n.weight = g.weights[i] * wphi;
      n.cos_theta = ct;
      n.phi = phi;
      r.nodes.push_back(n);
    }
  }
  return r;
}

}  // namespace sh3
