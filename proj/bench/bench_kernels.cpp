// Serial reference vs OpenMP kernels for the heavy quadrature loops.

#include <benchmark/benchmark.h>

#include <cmath>

#include "sh3/invariant_forms.hpp"
#include "sh3/pushforward.hpp"
#include "sh3/rng.hpp"
#include "sh3/zonal.hpp"

using namespace sh3;

namespace {

struct PairData {
  SphereRule rule = SphereRule::product(48, 96);
  std::vector<Complex> gm, gp;
  PairData() {
    Rng rng(1);
    gm.resize(rule.nodes.size());
    gp.resize(rule.nodes.size());
    for (std::size_t i = 0; i < gm.size(); ++i) {
      gm[i] = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
      gp[i] = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    }
  }
};

PairData &pair_data() {
  static PairData d;
  return d;
}

double quadratic_weight(double t) { return (1.0 - t) * (1.0 - t); }

}  // namespace

static void BM_pair_sum_serial(benchmark::State &state) {
  auto &d = pair_data();
  for (auto _ : state) {
    Complex v = sphere_pair_sum_serial(d.rule, d.gm, d.gp, quadratic_weight);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_pair_sum_serial)->Unit(benchmark::kMillisecond);

static void BM_pair_sum_parallel(benchmark::State &state) {
  auto &d = pair_data();
  ExecPolicy pol{static_cast<int>(state.range(0))};
  for (auto _ : state) {
    Complex v = sphere_pair_sum(d.rule, d.gm, d.gp, quadratic_weight, pol);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_pair_sum_parallel)->Arg(2)->Arg(0)->Unit(benchmark::kMillisecond);

static void BM_fiber_pushforward_serial(benchmark::State &state) {
  SphereRule rule = SphereRule::product(48, 96);
  FormField psi2 = [](const UnitTangent &, std::span<const SphereTangent> a) {
    return psi_eval(a[0], a[1]);
  };
  H3Point x;
  for (auto _ : state) {
    double v = fiber_pushforward_serial(2, psi2, x, {}, rule);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_fiber_pushforward_serial)->Unit(benchmark::kMillisecond);

static void BM_fiber_pushforward_parallel(benchmark::State &state) {
  SphereRule rule = SphereRule::product(48, 96);
  FormField psi2 = [](const UnitTangent &, std::span<const SphereTangent> a) {
    return psi_eval(a[0], a[1]);
  };
  H3Point x;
  ExecPolicy pol{static_cast<int>(state.range(0))};
  for (auto _ : state) {
    double v = fiber_pushforward(2, psi2, x, {}, rule, pol);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_fiber_pushforward_parallel)->Arg(2)->Arg(0)->Unit(benchmark::kMillisecond);

static void BM_funk_hecke_serial(benchmark::State &state) {
  ZonalKernel k = kappa_eps(0.125);
  for (auto _ : state) {
    FunkHeckeSpectrum sp = funk_hecke_spectrum_serial(k, 256);
    benchmark::DoNotOptimize(sp.lambdas.data());
  }
}
BENCHMARK(BM_funk_hecke_serial)->Unit(benchmark::kMillisecond);

static void BM_funk_hecke_parallel(benchmark::State &state) {
  ZonalKernel k = kappa_eps(0.125);
  ExecPolicy pol{static_cast<int>(state.range(0))};
  for (auto _ : state) {
    FunkHeckeSpectrum sp = funk_hecke_spectrum(k, 256, 0, pol);
    benchmark::DoNotOptimize(sp.lambdas.data());
  }
}
BENCHMARK(BM_funk_hecke_parallel)->Arg(2)->Arg(0)->Unit(benchmark::kMillisecond);

static void BM_identity_suite_serial(benchmark::State &state) {
  for (auto _ : state) {
    IdentitySuiteReport rep = identity_suite_serial(UnitTangent(), 128, 9);
    benchmark::DoNotOptimize(rep.entries.data());
  }
}
BENCHMARK(BM_identity_suite_serial)->Unit(benchmark::kMillisecond);

static void BM_identity_suite_parallel(benchmark::State &state) {
  ExecPolicy pol{static_cast<int>(state.range(0))};
  for (auto _ : state) {
    IdentitySuiteReport rep = identity_suite(UnitTangent(), 128, 9, pol);
    benchmark::DoNotOptimize(rep.entries.data());
  }
}
BENCHMARK(BM_identity_suite_parallel)->Arg(2)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
