// Copyright 2026 The qcompat Authors
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

#include "qcompat/channel.hpp"
#include "qcompat/compat.hpp"
#include "qcompat/errors.hpp"
#include "qcompat/holevo.hpp"
#include "qcompat/homodyne.hpp"
#include "qcompat/quantum_bounds.hpp"

namespace {

using namespace qcompat;

ProbeOutput make_output(int N) {
  return output_state(Scenario::ref_arm_known(), ProbeLabel{N, N / 2},
                      ParamPoint{0.7, 0.6, 0.8, 0.0});
}

void BM_OutputState(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(make_output(N));
  }
}
BENCHMARK(BM_OutputState)->DenseRange(2, 10, 2);

void BM_DephasedOutputState(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(output_state(Scenario::dephasing(), ProbeLabel{N, N / 2},
                                          ParamPoint{0.7, 0.9, 0.9, 0.2}));
  }
}
BENCHMARK(BM_DephasedOutputState)->DenseRange(2, 10, 4);

void BM_ClassicalFim(benchmark::State& state) {
  const ProbeOutput out = make_output(static_cast<int>(state.range(0)));
  HomodyneConfig cfg;
  if (state.range(1) == 1) {
    cfg.rule = QuadratureRuleKind::gauss_hermite;
    cfg.quad_nodes = 192;
  }
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(classical_fim_detailed(out, cfg));
    } catch (const ConvergenceError& e) {
      state.SkipWithError(e.what());
      break;
    }
  }
}
BENCHMARK(BM_ClassicalFim)
    ->ArgsProduct({{2, 4, 6}, {0, 1}})
    ->ArgNames({"N", "gauss_hermite"})
    ->Unit(benchmark::kMillisecond);

void BM_Qfim(benchmark::State& state) {
  const ProbeOutput out = make_output(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qfim(out));
  }
}
BENCHMARK(BM_Qfim)->DenseRange(2, 10, 2);

void BM_Hcrb(benchmark::State& state) {
  const ProbeOutput out = make_output(static_cast<int>(state.range(0)));
  const WeightMatrix w = weight_matrix(0.4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hcrb(out, w));
  }
}
BENCHMARK(BM_Hcrb)->DenseRange(2, 10, 2)->Unit(benchmark::kMillisecond);

// Full point: channel, homodyne FIM, SLDs and Holevo bound.
void BM_EvaluatePoint(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_point(Scenario::ref_arm_known(), ProbeLabel{N, N / 2},
                                            ParamPoint{0.7, 0.6, 0.8, 0.0}, 0.4));
  }
}
BENCHMARK(BM_EvaluatePoint)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
