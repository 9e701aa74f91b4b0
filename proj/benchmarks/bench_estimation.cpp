#include <benchmark/benchmark.h>

#include "ldar/diagnostics.hpp"
#include "ldar/estimation.hpp"
#include "ldar/model.hpp"
#include "ldar/probability.hpp"

namespace {

ldar::TimeSeries series(std::size_t n, ldar::Method method) {
  const ldar::LdarParams theta({0.5}, 1.0, {0.4});
  const auto dist = method == ldar::Method::gqmle ? ldar::Distribution::normal()
                                                  : ldar::Distribution::laplace();
  return ldar::simulate(theta, ldar::InnovationSpec::make(dist, ldar::identification_mode(method)),
                        n, 500, 17);
}

void BM_GaussianLoss(benchmark::State& state) {
  const auto y = series(static_cast<std::size_t>(state.range(0)), ldar::Method::gqmle);
  const ldar::LdarParams theta({0.45}, 0.9, {0.35});
  for (auto _ : state) benchmark::DoNotOptimize(ldar::gaussian_loss(y.values(), theta));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GaussianLoss)->Arg(500)->Arg(5000);

void BM_ExponentialLoss(benchmark::State& state) {
  const auto y = series(static_cast<std::size_t>(state.range(0)), ldar::Method::eqmle);
  const ldar::LdarParams theta({0.45}, 0.9, {0.35});
  for (auto _ : state) benchmark::DoNotOptimize(ldar::exponential_loss(y.values(), theta));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExponentialLoss)->Arg(500)->Arg(5000);

void BM_GaussianGradient(benchmark::State& state) {
  const auto y = series(static_cast<std::size_t>(state.range(0)), ldar::Method::gqmle);
  const ldar::LdarParams theta({0.45}, 0.9, {0.35});
  for (auto _ : state) benchmark::DoNotOptimize(ldar::gaussian_gradient(y.values(), theta));
}
BENCHMARK(BM_GaussianGradient)->Arg(500)->Arg(5000);

void BM_Fit(benchmark::State& state) {
  const auto method = static_cast<ldar::Method>(state.range(1));
  const auto y = series(static_cast<std::size_t>(state.range(0)), method);
  for (auto _ : state) benchmark::DoNotOptimize(ldar::fit(y.values(), 1, method).loss);
}
BENCHMARK(BM_Fit)
    ->Args({500, static_cast<int>(ldar::Method::gqmle)})
    ->Args({500, static_cast<int>(ldar::Method::eqmle)})
    ->Args({1000, static_cast<int>(ldar::Method::eqmle)})
    ->Unit(benchmark::kMillisecond);

void BM_SandwichAndPortmanteau(benchmark::State& state) {
  const auto y = series(1000, ldar::Method::eqmle);
  const auto f = ldar::fit(y.values(), 1, ldar::Method::eqmle);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ldar::sandwich_covariance(y.values(), f).ase);
    benchmark::DoNotOptimize(ldar::portmanteau_test(y.values(), f, 6).q_stat);
  }
}
BENCHMARK(BM_SandwichAndPortmanteau)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
