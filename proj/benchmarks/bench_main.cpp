#include <benchmark/benchmark.h>

#include "hsfc/calculus.hpp"
#include "hsfc/quadrature.hpp"
#include "hsfc/random.hpp"
#include "hsfc/ssf.hpp"

using namespace hsfc;

namespace {

void BM_Resolvent(benchmark::State& state) {
  OperatorSampler rng(1);
  const HermitianOperator s = rng.gue(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(resolvent(s, Complex(0.3, 0.7)));
}
BENCHMARK(BM_Resolvent)->Arg(4)->Arg(8)->Arg(32)->Arg(128);

void BM_Oracle(benchmark::State& state) {
  OperatorSampler rng(2);
  const HermitianOperator s = rng.with_spectrum_in(state.range(0), -1.5, 1.5);
  const auto f = bump(0.0, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(matrix_function_oracle(s, f.derivative_fn(0)));
}
BENCHMARK(BM_Oracle)->Arg(8)->Arg(128);

void BM_Cubature(benchmark::State& state) {
  const Rect unit{0.0, 1.0, 0.0, 1.0};
  CubatureOptions opts;
  opts.tol = 1e-10;
  for (auto _ : state) {
    auto r = adaptive_cubature<double>([](double x, double y) { return 1.0 / std::sqrt(x + y); },
                                       std::span<const Rect>(&unit, 1), opts, 0.0,
                                       [](double v) { return std::abs(v); });
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_Cubature)->Unit(benchmark::kMillisecond);

void BM_HsFunction(benchmark::State& state) {
  OperatorSampler rng(3);
  const HermitianOperator s = rng.with_spectrum_in(state.range(0), -1.5, 1.5);
  const AlmostAnalyticExtension ext(bump(0.0, 2.0));
  const QuadraturePlan plan = make_plan(ext);
  for (auto _ : state) benchmark::DoNotOptimize(hs_function(s, ext, plan).value);
}
BENCHMARK(BM_HsFunction)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_DiracSpectra(benchmark::State& state) {
  const int modes = static_cast<int>(state.range(0));
  const double a = bump_amplitude_for_flux(5.0, kPi);
  const auto phi = bump(50.0, 5.0, a);
  const DiracDiscretization d = DiracDiscretization::sample(100.0, modes, [&](double x) { return phi(x).real(); });
  for (auto _ : state) benchmark::DoNotOptimize(dirac_spectra(d).plus);
}
BENCHMARK(BM_DiracSpectra)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
