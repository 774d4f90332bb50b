// Copyright 2026 The cvmaser Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "cvmaser/micromaser.hpp"

namespace {

using namespace cvmaser;

void BM_PumpStep(benchmark::State &state) {
    SpaceSignature s = SpaceSignature::modes({static_cast<int>(state.range(0))});
    DensityOperator rho = DensityOperator::from_pure(make_vacuum(s));
    PumpConfig cfg = PumpConfig::from_epsilon(0.05);
    std::size_t k = 0;
    for (auto _ : state) {
        rho = pump_step(rho, cfg, k++);
    }
}
BENCHMARK(BM_PumpStep)->Arg(20)->Arg(40);

void BM_JCEvolve(benchmark::State &state) {
    SpaceSignature s = atom_field_space(32);
    StateVector psi = make_fock(s, 1, 3);
    JCParams p{1.0, 1.0, 1.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(jc_evolve(psi, p, 0.7));
    }
}
BENCHMARK(BM_JCEvolve);

void BM_EffectiveHamiltonian(benchmark::State &state) {
    ThreeLevelConfig cfg;
    cfg.g1 = cfg.g2 = cfg.gamma = 1.0;
    cfg.delta1 = 10.0;
    cfg.delta2 = 12.0;
    cfg.delta3 = 50.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(two_mode_effective_hamiltonian(cfg, 12, 12));
    }
}
BENCHMARK(BM_EffectiveHamiltonian);

void BM_BeamStatistics(benchmark::State &state) {
    BeamConfig b{10.0, 0.03, 300.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(beam_statistics(b, 100000, 1));
    }
}
BENCHMARK(BM_BeamStatistics)->Unit(benchmark::kMillisecond);

}  // namespace
