// Copyright 2026 The spencerkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <memory>

#include "spencerkit/charts.hpp"
#include "spencerkit/crsolve.hpp"
#include "spencerkit/jfield.hpp"
#include "spencerkit/pseudogroup.hpp"

namespace sk = spencerkit;

namespace {

sk::ScalarField field(const char* text, const sk::Box& box) {
  return sk::ScalarField(sk::parse_polynomial(text, static_cast<std::size_t>(box.dim()), "x"), box);
}

void BM_Nijenhuis(benchmark::State& state) {
  const sk::ACStructure acs = sk::twisted_r4();
  const sk::SampleGrid grid(acs.box(), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sk::integrability_report(acs, grid, 1e-10));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.size()));
}
BENCHMARK(BM_Nijenhuis)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_SolveAh(benchmark::State& state) {
  const sk::ACStructure acs = sk::standard_structure(sk::Box::cube(2, -1, 1));
  const sk::SampleGrid grid(acs.box(), 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sk::solve_ah_polynomials(acs, static_cast<int>(state.range(0)), grid));
  }
}
BENCHMARK(BM_SolveAh)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_SpencerType(benchmark::State& state) {
  const sk::ACStructure acs = sk::twisted_r4();
  const sk::SampleGrid grid(acs.box(), 7);
  for (auto _ : state) benchmark::DoNotOptimize(sk::estimate_spencer_type(acs, grid, 3));
}
BENCHMARK(BM_SpencerType)->Unit(benchmark::kMillisecond);

void BM_Factorize(benchmark::State& state) {
  auto acs = std::make_shared<const sk::ACStructure>(sk::standard_structure(sk::Box::cube(1, -1, 1)));
  const sk::SampleGrid grid(acs->box(), static_cast<int>(state.range(0)));
  const sk::SpencerChart chart =
      sk::build_spencer_chart(acs, {field("x1 + (0+1i)*x2", acs->box())}, grid);
  const sk::ScalarField h = field("1 + x1 - 0.5*x1^2 + 0.5*x2^2 + (0+1i)*x2 - (0+1i)*x1*x2", acs->box());
  sk::FitOptions options;
  options.fit_degree = 6;
  for (auto _ : state) benchmark::DoNotOptimize(sk::factorize(chart, h, grid, options));
}
BENCHMARK(BM_Factorize)->Arg(7)->Arg(15)->Arg(31)->Unit(benchmark::kMicrosecond);

void BM_Generate(benchmark::State& state) {
  const sk::Box unit = sk::Box::cube(1, -1, 1);
  const sk::SampleGrid grid(unit, 9);
  sk::PseudogroupFamily f;
  f.members = {sk::LocalMap::polynomial("t_a", sk::Box(1, {-1, -1}, {0.5, 1}),
                                        {sk::parse_polynomial("x1 + 0.5", 2, "x"),
                                         sk::parse_polynomial("x2", 2, "x")}),
               sk::LocalMap::polynomial("s2", sk::Box::cube(1, -0.5, 0.5),
                                        {sk::parse_polynomial("2*x1", 2, "x"),
                                         sk::parse_polynomial("2*x2", 2, "x")})};
  f.depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sk::generate(f, grid));
}
BENCHMARK(BM_Generate)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
