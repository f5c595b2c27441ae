// Copyright 2026 The QSS Authors
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

// Serial reference kernels against their OpenMP counterparts. Arg(0) is the qubit count.

#include <benchmark/benchmark.h>

#include <vector>

#include "qss/bell.hpp"
#include "qss/kernels.hpp"
#include "qss/rng.hpp"
#include "qss/states.hpp"
#include "qss/types.hpp"

namespace {

namespace k = qss::kernels;

qss::PureState random_state(std::size_t n) {
    qss::Rng rng(n);
    std::vector<qss::cplx> amps(std::size_t{1} << n);
    for (auto &a : amps) {
        a = qss::cplx(rng.gaussian(), rng.gaussian());
    }
    return qss::PureState::normalized(n, std::move(amps));
}

k::PauliMasks mixed_masks(std::size_t n) {
    std::string label;
    for (std::size_t q = 0; q < n; ++q) {
        label += "XYZ"[q % 3];
    }
    return k::PauliMasks::from(qss::PauliString::parse(label));
}

std::vector<std::size_t> keep_three(std::size_t n) { return {0, n / 2, n - 1}; }

template <bool Parallel>
void BM_Expectation(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const qss::PureState psi = random_state(n);
    const k::PauliMasks masks = mixed_masks(n);
    for (auto _ : state) {
        const qss::cplx v = Parallel ? k::parallel::expectation_pure(psi.amplitudes(), masks)
                                     : k::serial::expectation_pure(psi.amplitudes(), masks);
        benchmark::DoNotOptimize(v);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(psi.dim()));
}

template <bool Parallel>
void BM_ApplyPauli(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const qss::PureState psi = random_state(n);
    const k::PauliMasks masks = mixed_masks(n);
    std::vector<qss::cplx> out(psi.dim());
    for (auto _ : state) {
        if (Parallel) {
            k::parallel::apply_pauli(psi.amplitudes(), out, masks);
        } else {
            k::serial::apply_pauli(psi.amplitudes(), out, masks);
        }
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(psi.dim()));
}

template <bool Parallel>
void BM_PartialTrace(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const qss::PureState psi = random_state(n);
    const k::IndexSplit split(n, keep_three(n));
    for (auto _ : state) {
        qss::CMatrix rho = Parallel ? k::parallel::partial_trace_pure(psi.amplitudes(), split)
                                    : k::serial::partial_trace_pure(psi.amplitudes(), split);
        benchmark::DoNotOptimize(rho.data());
    }
}

template <bool Parallel>
void BM_MarginalProbabilities(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const qss::PureState psi = random_state(n);
    const k::IndexSplit split(n, keep_three(n));
    for (auto _ : state) {
        auto probs = Parallel ? k::parallel::marginal_probabilities(psi.amplitudes(), split)
                              : k::serial::marginal_probabilities(psi.amplitudes(), split);
        benchmark::DoNotOptimize(probs.data());
    }
}

template <bool Parallel>
void BM_TensorBatch(benchmark::State &state) {
    // All 3^6 correlators of G_6, the workload behind the tensor analysis.
    const qss::PureState g6 = qss::g_state(6);
    std::vector<k::PauliMasks> batch;
    for (std::size_t i = 0; i < 729; ++i) {
        std::string label;
        for (std::size_t j = i, q = 0; q < 6; ++q, j /= 3) {
            label.insert(label.begin(), "XYZ"[j % 3]);
        }
        batch.push_back(k::PauliMasks::from(qss::PauliString::parse(label)));
    }
    std::vector<qss::cplx> out(batch.size());
    for (auto _ : state) {
        if (Parallel) {
            k::parallel::expectation_batch(g6.amplitudes(), batch, out);
        } else {
            k::serial::expectation_batch(g6.amplitudes(), batch, out);
        }
        benchmark::ClobberMemory();
    }
}

void Sizes(benchmark::internal::Benchmark *b) {
    for (int n : {10, 14, 18, 20}) {
        b->Arg(n);
    }
}

}  // namespace

BENCHMARK(BM_Expectation<false>)->Name("expectation/serial")->Apply(Sizes);
BENCHMARK(BM_Expectation<true>)->Name("expectation/parallel")->Apply(Sizes);
BENCHMARK(BM_ApplyPauli<false>)->Name("apply_pauli/serial")->Apply(Sizes);
BENCHMARK(BM_ApplyPauli<true>)->Name("apply_pauli/parallel")->Apply(Sizes);
BENCHMARK(BM_PartialTrace<false>)->Name("partial_trace/serial")->Apply(Sizes);
BENCHMARK(BM_PartialTrace<true>)->Name("partial_trace/parallel")->Apply(Sizes);
BENCHMARK(BM_MarginalProbabilities<false>)->Name("marginals/serial")->Apply(Sizes);
BENCHMARK(BM_MarginalProbabilities<true>)->Name("marginals/parallel")->Apply(Sizes);
BENCHMARK(BM_TensorBatch<false>)->Name("tensor_batch_g6/serial");
BENCHMARK(BM_TensorBatch<true>)->Name("tensor_batch_g6/parallel");

BENCHMARK_MAIN();
