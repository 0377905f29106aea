#include <benchmark/benchmark.h>

#include <string>

#include "nvaw/registry.hpp"
#include "nvaw/suites.hpp"

namespace {

using namespace nvaw;

Window line() { return Window::uniform(1, -8, 8); }

Nva algebra(const std::string& name) {
  const WorkbenchFile f = load_input(name);
  return algebra_of(f, primary_algebra(f));
}

TwistOp sign_twist() { return twist_of(load_input("Z2"), "R_sign"); }

void BM_SeriesMultiply(benchmark::State& state) {
  const Series a = parse_series_literal("1@(-3) + 2/3@(-1) - 5 + 7/2@(2) + 1@(4)", {"x"}, line());
  const Series b = parse_series_literal("-1@(-2) + 1/5 + 3@(1) - 1/7@(3)", {"x"}, line());
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_SeriesMultiply);

void BM_TaylorSubstitute(benchmark::State& state) {
  const int top = static_cast<int>(state.range(0));
  const Series a = parse_series_literal("1@(-2) + 1/2@(1) - 3@(" + std::to_string(top) + ")", {"x"},
                                        Window::uniform(1, -top, top));
  const Window w({{-top, top}, {0, top}});
  for (auto _ : state) benchmark::DoNotOptimize(taylor_substitute(a, TaylorForm::SecondPlusZero, w));
}
BENCHMARK(BM_TaylorSubstitute)->Arg(4)->Arg(8)->Arg(16);

void BM_NvaSuite(benchmark::State& state, const char* name) {
  const Nva a = algebra(name);
  for (auto _ : state) benchmark::DoNotOptimize(check_nva_suite(a));
}
BENCHMARK_CAPTURE(BM_NvaSuite, E2, "E2");
BENCHMARK_CAPTURE(BM_NvaSuite, Cl2, "Cl2");

void BM_TwistedProduct(benchmark::State& state) {
  const TwistOp r = sign_twist();
  for (auto _ : state) benchmark::DoNotOptimize(build_twisted_tensor(r));
}
BENCHMARK(BM_TwistedProduct);

void BM_ExtractTwist(benchmark::State& state) {
  const ProductNva p = build_twisted_tensor(sign_twist());
  for (auto _ : state)
    benchmark::DoNotOptimize(extract_twisting(p.algebra, p.u, p.v, p.embed_u, p.embed_v));
}
BENCHMARK(BM_ExtractTwist)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
