#include <benchmark/benchmark.h>

#include "nirenberg/flow.hpp"
#include "nirenberg/landscape.hpp"
#include "nirenberg/quadrature.hpp"
#include "nirenberg/reduced_model.hpp"

using namespace nirenberg;

namespace {

ScalarField flow_field() {
  return ScalarField(5, 2.0, {{Monomial::parse("x1", 6), 0.1}, {Monomial::parse("x6", 6), -0.05}});
}

Configuration three_bubbles(const ScalarField& K) {
  Configuration c;
  c.q = 2;
  c.p = 1;
  c.eps = 0.1;
  Vec y = Vec::Unit(6, 1);
  y[5] = 0.8;
  c.bubbles.emplace_back(Vec::Unit(6, 0), 300.0);
  c.bubbles.emplace_back(Vec::Unit(6, 2), 400.0);
  c.bubbles.emplace_back(Vec(y / y.norm()), 250.0);
  c.alpha.assign(3, 1.0);
  return normalize_alphas(c, K);
}

void BM_ComputeConstants(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(compute_constants(static_cast<int>(s.range(0)), 1e-10));
}
BENCHMARK(BM_ComputeConstants)->Arg(5)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_ReducedJ(benchmark::State& s) {
  const ScalarField K = flow_field();
  const Configuration c = three_bubbles(K);
  for (auto _ : s) benchmark::DoNotOptimize(reduced_J(c, K));
}
BENCHMARK(BM_ReducedJ);

void BM_GradientComponents(benchmark::State& s) {
  const ScalarField K = flow_field();
  const Configuration c = three_bubbles(K);
  for (auto _ : s) benchmark::DoNotOptimize(gradient_components(c, K));
}
BENCHMARK(BM_GradientComponents);

void BM_FindCriticalPoints(benchmark::State& s) {
  const ScalarField K = flow_field();
  for (auto _ : s) benchmark::DoNotOptimize(find_critical_points(K));
}
BENCHMARK(BM_FindCriticalPoints)->Unit(benchmark::kMillisecond);

void BM_IntegrateFlowW(benchmark::State& s) {
  const ScalarField K = flow_field();
  const FlowLandscape land = FlowLandscape::compute(K);
  Configuration c;
  c.q = 1;
  c.eps = 0.1;
  c.bubbles.emplace_back(Vec::Unit(6, 0), 200.0);
  c.alpha = {1.0};
  c = normalize_alphas(c, K);
  for (auto _ : s) benchmark::DoNotOptimize(integrate_flow(c, K, land, 1.0, FlowParams{}));
}
BENCHMARK(BM_IntegrateFlowW)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
