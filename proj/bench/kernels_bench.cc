// Copyright 2026 The mzisim Authors
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

// Serial reference path against the OpenMP path for the three sweep kernels.
// Run with OMP_NUM_THREADS set to the number of cores to compare.

#include <cmath>
#include <numbers>
#include <vector>

#include "benchmark/benchmark.h"
#include "mzi/kernels.h"

using namespace mzi;

namespace {

Execution mode(const benchmark::State &state) {
    return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void label(benchmark::State &state) {
    state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}

void BM_phase_curve(benchmark::State &state) {
    MziConfig base;
    base.loss = 0.2;
    std::vector<double> phis(1025);
    for (size_t i = 0; i < phis.size(); i++) {
        phis[i] = 2 * std::numbers::pi * i / (phis.size() - 1);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(phase_curve(base, Intensity{1}, phis, mode(state)));
    }
    state.SetItemsProcessed(state.iterations() * phis.size());
    label(state);
}
BENCHMARK(BM_phase_curve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_power_curve(benchmark::State &state) {
    MziConfig base;
    base.loss = 0.2;
    std::vector<double> alphas;
    for (int k = 0; k < 16; k++) {
        alphas.push_back(1e3 * std::pow(1e3, k / 15.0));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(power_curve(base, IntensityDifference{}, alphas, mode(state)));
    }
    state.SetItemsProcessed(state.iterations() * alphas.size());
    label(state);
}
BENCHMARK(BM_power_curve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_drift_ensemble(benchmark::State &state) {
    DriftConfig config;
    std::vector<uint64_t> seeds(64);
    for (size_t i = 0; i < seeds.size(); i++) {
        seeds[i] = i + 1;
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(drift_ensemble(config, seeds, mode(state)));
    }
    state.SetItemsProcessed(state.iterations() * seeds.size());
    label(state);
}
BENCHMARK(BM_drift_ensemble)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
