#include <benchmark/benchmark.h>

#include "symflex/certify.hpp"
#include "symflex/examples.hpp"
#include "symflex/trace.hpp"

namespace {

using namespace symflex;

FrameworkDocument suspension(benchmark::State& state) {
  return builtin_example("double-suspension", {.seed = 1, .n = static_cast<int>(state.range(0))});
}

void BM_SymmetryContext(benchmark::State& state) {
  const auto doc = suspension(state);
  const Graph g = doc.graph();
  const TypeMap phi = doc.type_map();
  for (auto _ : state) benchmark::DoNotOptimize(SymmetryContext(g, phi));
}
BENCHMARK(BM_SymmetryContext)->Arg(3)->Arg(6)->Arg(12);

void BM_BlockDiagonalize(benchmark::State& state) {
  const auto doc = suspension(state);
  const SymmetryContext ctx(doc.graph(), doc.type_map());
  const Configuration p = doc.configuration();
  for (auto _ : state) benchmark::DoNotOptimize(block_diagonalize(ctx, p));
}
BENCHMARK(BM_BlockDiagonalize)->Arg(3)->Arg(6)->Arg(12);

void BM_FiniteFlexDecision(benchmark::State& state) {
  const auto doc = suspension(state);
  const SymmetryContext ctx(doc.graph(), doc.type_map());
  const Configuration p = doc.configuration();
  auto policy = doc.policy(Tolerances{});
  policy.generic_sample = false;
  for (auto _ : state) benchmark::DoNotOptimize(finite_flex_decision(ctx, p, policy));
}
BENCHMARK(BM_FiniteFlexDecision)->Arg(3)->Arg(6)->Arg(12);

void BM_RegularityTest(benchmark::State& state) {
  const auto doc = suspension(state);
  const SymmetryContext ctx(doc.graph(), doc.type_map());
  const Configuration p = doc.configuration();
  for (auto _ : state)
    benchmark::DoNotOptimize(regularity_test(doc.graph(), p, ctx.fixed_basis(), 32, 1e-3 * p.scale(), 1, 1e-9));
}
BENCHMARK(BM_RegularityTest)->Arg(3)->Arg(6)->Arg(12);

void BM_TraceBricard(benchmark::State& state) {
  const auto doc = builtin_example("bricard-c2", {.seed = 7});
  const SymmetryContext ctx(doc.graph(), doc.type_map());
  TraceOptions options;
  options.steps = static_cast<int>(state.range(0));
  options.policy = doc.policy(Tolerances{});
  for (auto _ : state) benchmark::DoNotOptimize(trace_flex(ctx, doc.configuration(), options));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TraceBricard)->Arg(10)->Arg(50);

}  // namespace
BENCHMARK_MAIN();
