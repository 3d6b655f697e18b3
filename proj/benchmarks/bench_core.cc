// Copyright 2026 The quasispec Authors
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

#include "quasispec/driver.h"
#include "quasispec/filter.h"
#include "quasispec/matlin.h"
#include "quasispec/oracle.h"
#include "quasispec/quasirandom.h"

namespace {

using namespace quasispec;

HermitianMatrix working_matrix(size_t n) {
    return rescale_to_range(gue_sample(n, RngSeed{17, n})).matrix;
}

void BM_UnitaryExp(benchmark::State &state) {
    const auto a = working_matrix(static_cast<size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(unitary_exp(a, 1e-12));
    }
}
BENCHMARK(BM_UnitaryExp)->Arg(8)->Arg(16)->Arg(32);

void BM_FilterCopy(benchmark::State &state) {
    const size_t n = static_cast<size_t>(state.range(0));
    const uint64_t max_m = static_cast<uint64_t>(n) * n * n * n * n;
    const FilterEngine engine(working_matrix(n), 1e-12, max_m);
    Engine rng = make_engine(RngSeed{3, 0});
    std::uniform_int_distribution<uint64_t> pick(1, max_m);
    for (auto _ : state) {
        benchmark::DoNotOptimize(engine.run(pick(rng), rng));
    }
}
BENCHMARK(BM_FilterCopy)->Arg(8)->Arg(16)->Arg(20);

void BM_JacobiEigh(benchmark::State &state) {
    const auto a = gue_sample(static_cast<size_t>(state.range(0)), RngSeed{5, 0});
    for (auto _ : state) {
        benchmark::DoNotOptimize(jacobi_eigh(a));
    }
}
BENCHMARK(BM_JacobiEigh)->Arg(8)->Arg(16)->Arg(64);

void BM_AsdRun(benchmark::State &state) {
    const size_t n = static_cast<size_t>(state.range(0));
    const auto a = working_matrix(n);
    const AsdParams params = compute_asd_params(n, 1.0 / (16.0 * static_cast<double>(n)));
    AsdOptions options;
    options.threads = 1;
    uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(asd_run(a, RngSeed{seed++, 0}, params, options));
    }
}
BENCHMARK(BM_AsdRun)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_BoxDiscrepancy2d(benchmark::State &state) {
    const std::vector<double> seeds{0.318309886, 0.577215665};
    const ResidualSequence seq = residual_sequence(seeds, 10000);
    for (auto _ : state) {
        benchmark::DoNotOptimize(box_discrepancy(seq, static_cast<uint32_t>(state.range(0))));
    }
}
BENCHMARK(BM_BoxDiscrepancy2d)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
