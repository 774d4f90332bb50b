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

#include "cvmaser/gates.hpp"
#include "cvmaser/phase_space.hpp"
#include "cvmaser/polynomial.hpp"
#include "cvmaser/synthesis.hpp"

namespace {

using namespace cvmaser;

void BM_ExpHermitian(benchmark::State &state) {
    SpaceSignature s = SpaceSignature::modes({static_cast<int>(state.range(0))});
    OperatorMatrix h = realize(parse_polynomial("x_0^3 + 0.5*p_0^2"), s);
    for (auto _ : state) {
        benchmark::DoNotOptimize(exp_hermitian(h, 0.1));
    }
}
BENCHMARK(BM_ExpHermitian)->Arg(20)->Arg(40)->Arg(80);

void BM_Realize(benchmark::State &state) {
    SpaceSignature s = SpaceSignature::modes({12, 12});
    HermitianPolynomial p = parse_polynomial("x_0^2*p_1^2 + x_0*x_1 + p_0^4");
    for (auto _ : state) {
        benchmark::DoNotOptimize(realize(p, s));
    }
}
BENCHMARK(BM_Realize);

void BM_HusimiQ(benchmark::State &state) {
    SpaceSignature s = SpaceSignature::modes({40});
    StateVector psi = apply(squeeze_one(s, 0, SqueezeParam{0.5, 0.0}), make_vacuum(s));
    DensityOperator rho = DensityOperator::from_pure(psi);
    GridSpec g{AxisSpec{-4, 4, 121}, AxisSpec{-4, 4, 121}};
    unsigned threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(husimi_q(rho, 0, g, threads));
    }
}
BENCHMARK(BM_HusimiQ)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_SynthesizeCubic(benchmark::State &state) {
    SpaceSignature s = SpaceSignature::modes({20});
    HermitianPolynomial target = parse_polynomial("x_0^3");
    for (auto _ : state) {
        benchmark::DoNotOptimize(synthesize(target, PrimitiveSet::standard(), 0.05, 0.01, s));
    }
}
BENCHMARK(BM_SynthesizeCubic)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace

BENCHMARK_MAIN();
