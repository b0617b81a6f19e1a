// Copyright 2026 The sqthermo Authors
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

#include "sqthermo/collisional.hpp"
#include "sqthermo/fock.hpp"
#include "sqthermo/otto.hpp"

namespace {

using namespace sqt;

const ReservoirSpec kRes(1.0, 1.0, SqueezeParams(0.5, 0.3), 1.0);

CMatrix dense_input(int dim) {
  const CMatrix m = CMatrix::Random(dim, dim);
  return m + m.adjoint();
}

void BM_GeneratorBanded(benchmark::State& st) {
  const int dim = static_cast<int>(st.range(0));
  const LindbladGenerator gen(dim, kRes);
  const CMatrix rho = dense_input(dim);
  for (auto _ : st) benchmark::DoNotOptimize(gen.apply(rho));
}
BENCHMARK(BM_GeneratorBanded)->Arg(40)->Arg(80)->Arg(160);

void BM_GeneratorDense(benchmark::State& st) {
  const int dim = static_cast<int>(st.range(0));
  const LindbladGenerator gen(dim, kRes);
  const CMatrix rho = dense_input(dim);
  for (auto _ : st) benchmark::DoNotOptimize(gen.apply_reference(rho));
}
BENCHMARK(BM_GeneratorDense)->Arg(40)->Arg(80)->Arg(160);

void BM_PhaseDiagram(benchmark::State& st) {
  const PhaseGrid g;
  for (auto _ : st) benchmark::DoNotOptimize(phase_diagram(g, CycleParams()));
}
BENCHMARK(BM_PhaseDiagram);

void BM_PhaseDiagramSerial(benchmark::State& st) {
  const PhaseGrid g;
  for (auto _ : st) benchmark::DoNotOptimize(phase_diagram_serial(g, CycleParams()));
}
BENCHMARK(BM_PhaseDiagramSerial);

EnsembleOptions bench_options() {
  EnsembleOptions o;
  o.n_traj = 64;
  o.t_end = 100.0;
  return o;
}

void BM_Ensemble(benchmark::State& st) {
  const auto cfg = CollisionConfig::for_gamma(0.01, 0.1, 0, 1, 1.0, 1.0, SqueezeParams(0.5, 0.0));
  for (auto _ : st) benchmark::DoNotOptimize(run_ensemble(GaussianState::vacuum(), cfg, bench_options()));
}
BENCHMARK(BM_Ensemble)->Unit(benchmark::kMillisecond);

void BM_EnsembleSerial(benchmark::State& st) {
  const auto cfg = CollisionConfig::for_gamma(0.01, 0.1, 0, 1, 1.0, 1.0, SqueezeParams(0.5, 0.0));
  for (auto _ : st) {
    benchmark::DoNotOptimize(run_ensemble_serial(GaussianState::vacuum(), cfg, bench_options()));
  }
}
BENCHMARK(BM_EnsembleSerial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
