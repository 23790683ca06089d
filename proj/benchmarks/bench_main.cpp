// Copyright 2026 The flexsusp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "flexsusp/curve/cubic.hpp"
#include "flexsusp/flexer/flexer.hpp"
#include "flexsusp/flow/flow_graph.hpp"
#include "flexsusp/synthesis/suspension.hpp"
#include "flexsusp/verify/verify.hpp"

using namespace flexsusp;

namespace {

const SuspensionSpec& hexagon() {
  static const SuspensionSpec spec = synthesize(builtin_hexagon());
  return spec;
}

void BM_GroupLaw(benchmark::State& state) {
  const Cubic curve(Rational(51), Rational(100));
  const CurvePoint b{Rational::parse("4039540/762129"), Rational::parse("100768585960/665338617")};
  const CurvePoint d{Rational(30), Rational(-210)};
  for (auto _ : state) benchmark::DoNotOptimize(add(curve, scalar_mul(curve, 2, b), scalar_mul(curve, -2, d)));
}
BENCHMARK(BM_GroupLaw);

void BM_Synthesize(benchmark::State& state) {
  const Dataset data = builtin_hexagon();
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(data));
}
BENCHMARK(BM_Synthesize)->Unit(benchmark::kMillisecond);

void BM_ExactIdentity(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_flexing_identity(hexagon()));
}
BENCHMARK(BM_ExactIdentity)->Unit(benchmark::kMillisecond);

void BM_Reconstruct(benchmark::State& state) {
  ScopedPrecision p(static_cast<unsigned>(state.range(0)));
  const NumericSpec ns = numeric_spec(hexagon());
  const BigFloat x(75);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct(ns, x));
}
BENCHMARK(BM_Reconstruct)->Arg(20)->Arg(50)->Arg(200)->Unit(benchmark::kMicrosecond);

void BM_Trace(benchmark::State& state) {
  const auto grid = uniform_grid(BigFloat("51.5"), BigFloat("99.5"), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(trace(hexagon(), grid));
}
BENCHMARK(BM_Trace)->Arg(51)->Arg(201)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
