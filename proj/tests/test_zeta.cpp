#include <doctest.h>

#include <cmath>
#include <complex>

#include "sh3/rng.hpp"
#include "sh3/zeta.hpp"

using namespace sh3;

namespace {

// hyperbolic-type return map with eigenvalues e^{+-(T + i theta)} in 2x2
// rotation-scaling blocks; det = 1, no unit-circle spectrum
ClosedGeodesicRecord synthetic_record(double T, double theta, int cap = 20) {
  ClosedGeodesicRecord rec;
  rec.T = T;
  rec.multiplicity_cap = cap;
  Eigen::Matrix2d rot;
  rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  rec.P.setZero();
  rec.P.block<2, 2>(0, 0) = std::exp(-T) * rot;          // contracting pair
  rec.P.block<2, 2>(2, 2) = std::exp(T) * rot.transpose();  // expanding pair
  return rec;
}

std::vector<ClosedGeodesicRecord> synthetic_spectrum(Rng &rng, int count, int cap = 20) {
  std::vector<ClosedGeodesicRecord> out;
  for (int i = 0; i < count; ++i)
    out.push_back(synthetic_record(rng.uniform(1.0, 5.0), rng.uniform(0.0, 2.0 * M_PI), cap));
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("zeta");

TEST_CASE("record validation") {
  ClosedGeodesicRecord ok = synthetic_record(2.0, 0.7);
  CHECK_NOTHROW(ok.validate());
  ClosedGeodesicRecord bad_det = ok;
  bad_det.P *= 1.01;
  CHECK_THROWS(bad_det.validate());
  ClosedGeodesicRecord unit = ok;
  unit.P.setIdentity();
  CHECK_THROWS(unit.validate());
}

TEST_CASE("exterior power traces") {
  Eigen::Matrix4d P = Eigen::Vector4d(2.0, 0.5, 3.0, 1.0 / 3.0).asDiagonal();
  // tr wedge^2 diag(a,1/a,b,1/b) = ab + a/b + b/a + 1/(ab) + 2
  double a = 2.0, b = 3.0;
  double expected = a * b + a / b + b / a + 1.0 / (a * b) + 2.0;
  CHECK(trace_wedge(P, 2).real() == doctest::Approx(expected).epsilon(1e-12));
  CHECK(trace_wedge_minors(P, 2).real() == doctest::Approx(expected).epsilon(1e-12));

  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    ClosedGeodesicRecord rec = synthetic_record(rng.uniform(1.0, 4.0), rng.uniform(0.0, 6.0));
    for (int k = 0; k <= 4; ++k) {
      auto ev = trace_wedge(rec.P, k);
      auto minor = trace_wedge_minors(rec.P, k);
      CHECK(std::abs(ev - minor) < 1e-10 * std::max(1.0, std::abs(minor)));
    }
  }
  // k = 0 and k = 4
  CHECK(trace_wedge(P, 0).real() == doctest::Approx(1.0));
  CHECK(trace_wedge(P, 4).real() == doctest::Approx(P.determinant()).epsilon(1e-12));
}

TEST_CASE("single-record single-iterate value") {
  ClosedGeodesicRecord rec = synthetic_record(2.0, 1.1, 1);
  std::complex<double> lambda(0.3, 9.0);
  ZetaTruncation z = zeta_k_log_truncated({rec}, 0, lambda);
  const std::complex<double> I(0, 1);
  Eigen::Matrix4cd M = Eigen::Matrix4cd::Identity() - rec.P.cast<std::complex<double>>();
  std::complex<double> expected = -std::exp(I * lambda * rec.T) / M.determinant();
  CHECK(std::abs(z.value - expected) < 1e-14);
}

TEST_CASE("graded sum reproduces the direct product") {
  Rng rng(17);
  auto records = synthetic_spectrum(rng, 50, 20);
  double max_rate = 0;
  for (const auto &r : records) max_rate = std::max(max_rate, r.T);
  std::complex<double> lambda(0.4, 3.0 * max_rate / 1.0);
  // Im lambda is measured against the per-period expansion rate; lengths in
  // [1,5] give rate T per period, so 3x the max rate dominates everything
  lambda.imag(3.0);
  std::complex<double> graded = 0;
  bool decayed = true;
  for (int k = 0; k <= 4; ++k) {
    ZetaTruncation zk = zeta_k_log_truncated(records, k, lambda);
    decayed = decayed && zk.decayed;
    graded += ((k % 2 == 0) ? 1.0 : -1.0) * zk.value;
  }
  ZetaTruncation prod = ruelle_log_product(records, lambda);
  CHECK(decayed);
  CHECK(prod.decayed);
  CHECK(std::abs(graded - prod.value) < 1e-10);
}

TEST_CASE("non-decaying tail is flagged") {
  ClosedGeodesicRecord rec = synthetic_record(1.0, 0.3, 3);
  // at real lambda the iterate terms do not decay
  ZetaTruncation z = zeta_k_log_truncated({rec}, 2, std::complex<double>(1.0, 0.0));
  CHECK(!z.decayed);
}

TEST_CASE("multiplicity tables and the order of vanishing") {
  for (long long b1 = 0; b1 <= 5; ++b1) {
    MultiplicityTable h = multiplicity_table(ZetaCase::Hyperbolic, b1);
    CHECK(ruelle_order(h) == 4 - 2 * b1);
    MultiplicityTable p = multiplicity_table(ZetaCase::Perturbed, b1);
    CHECK(ruelle_order(p) == 4 - b1);
  }
  CHECK(ruelle_order(multiplicity_table(ZetaCase::Hyperbolic, 2)) == 0);
  CHECK(ruelle_order(multiplicity_table(ZetaCase::Perturbed, 3)) == 1);
  MultiplicityTable broken = multiplicity_table(ZetaCase::Hyperbolic, 1);
  broken.m[1] += 1;
  CHECK_THROWS(ruelle_order(broken));
}

TEST_CASE("betti numbers of the sphere bundle") {
  auto b0 = betti_table(0);
  CHECK(b0 == std::array<long long, 6>{1, 0, 1, 1, 0, 1});
  auto b2 = betti_table(2);
  CHECK(b2 == std::array<long long, 6>{1, 2, 3, 3, 2, 1});
  for (long long b1 = 0; b1 <= 6; ++b1) {
    auto t = betti_table(b1);
    for (int k = 0; k <= 5; ++k) CHECK(t[k] == t[5 - k]);
  }
}

TEST_SUITE_END();
