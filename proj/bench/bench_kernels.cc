// Copyright 2026 The qboost Authors
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

#include <random>
#include <vector>

#include "qboost/kernels.h"

using namespace qboost;

namespace {

std::vector<cplx> random_vector(int n) {
    std::mt19937_64 rng(n);
    std::normal_distribution<double> g;
    std::vector<cplx> v(std::size_t{1} << n);
    for (auto &x : v) {
        x = {g(rng), g(rng)};
    }
    return v;
}

template <void (*F)(std::span<cplx>)>
void bm_fwht(benchmark::State &state) {
    auto v = random_vector((int)state.range(0));
    for (auto _ : state) {
        F(v);
        benchmark::DoNotOptimize(v.data());
    }
    state.SetItemsProcessed(state.iterations() * (int64_t)v.size());
}

template <cplx (*F)(std::span<const cplx>, std::span<const cplx>)>
void bm_inner(benchmark::State &state) {
    auto a = random_vector((int)state.range(0));
    auto b = random_vector((int)state.range(0) + 1);
    b.resize(a.size());
    for (auto _ : state) {
        benchmark::DoNotOptimize(F(a, b));
    }
    state.SetItemsProcessed(state.iterations() * (int64_t)a.size());
}

template <double (*F)(std::span<const cplx>)>
void bm_norm(benchmark::State &state) {
    auto a = random_vector((int)state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(F(a));
    }
    state.SetItemsProcessed(state.iterations() * (int64_t)a.size());
}

}  // namespace

BENCHMARK(bm_fwht<kernels::serial::fwht>)->Name("fwht/serial")->DenseRange(12, 22, 2);
BENCHMARK(bm_fwht<kernels::parallel::fwht>)->Name("fwht/parallel")->DenseRange(12, 22, 2);
BENCHMARK(bm_inner<kernels::serial::inner>)->Name("inner/serial")->DenseRange(12, 22, 2);
BENCHMARK(bm_inner<kernels::parallel::inner>)->Name("inner/parallel")->DenseRange(12, 22, 2);
BENCHMARK(bm_norm<kernels::serial::norm_sq>)->Name("norm_sq/serial")->DenseRange(12, 22, 2);
BENCHMARK(bm_norm<kernels::parallel::norm_sq>)->Name("norm_sq/parallel")->DenseRange(12, 22, 2);

BENCHMARK_MAIN();
