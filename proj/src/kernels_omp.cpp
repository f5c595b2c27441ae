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

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cstdint>

#include "kernels_common.hpp"
#include "qss/kernels.hpp"

namespace qss::kernels {

namespace {

using Index = Eigen::Index;

// Reductions are split into a fixed number of chunks summed in order, so results are
// bit-identical for any thread count.
constexpr std::int64_t kReduceChunks = 64;

template <typename Term>
cplx chunked_sum(std::int64_t count, Term term) {
    std::array<cplx, kReduceChunks> partial{};
    const std::int64_t chunk = (count + kReduceChunks - 1) / kReduceChunks;
#pragma omp parallel for schedule(static) if (count >= static_cast<std::int64_t>(kParallelThreshold))
    for (std::int64_t c = 0; c < kReduceChunks; ++c) {
        const std::int64_t lo = c * chunk;
        const std::int64_t hi = std::min(count, lo + chunk);
        cplx acc = 0.0;
        for (std::int64_t i = lo; i < hi; ++i) {
            acc += term(static_cast<std::uint64_t>(i));
        }
        partial[static_cast<std::size_t>(c)] = acc;
    }
    cplx total = 0.0;
    for (const cplx &p : partial) {
        total += p;
    }
    return total;
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_max_threads(int threads) {
#ifdef _OPENMP
    if (threads >= 1) {
        omp_set_num_threads(threads);
    }
#else
    (void)threads;
#endif
}

namespace parallel {

void apply_pauli(std::span<const cplx> in, std::span<cplx> out, const PauliMasks &masks) {
    const cplx base = detail::i_power(masks.y_count);
    const auto dim = static_cast<std::int64_t>(in.size());
#pragma omp parallel for schedule(static) if (dim >= static_cast<std::int64_t>(kParallelThreshold))
    for (std::int64_t i = 0; i < dim; ++i) {
        const auto u = static_cast<std::uint64_t>(i);
        out[u ^ masks.flip] = detail::pauli_phase(base, u, masks.sign) * in[u];
    }
}

cplx expectation_pure(std::span<const cplx> psi, const PauliMasks &masks) {
    const cplx base = detail::i_power(masks.y_count);
    return chunked_sum(static_cast<std::int64_t>(psi.size()), [&](std::uint64_t i) {
        return std::conj(psi[i ^ masks.flip]) * detail::pauli_phase(base, i, masks.sign) * psi[i];
    });
}

cplx expectation_density(const CMatrix &rho, const PauliMasks &masks) {
    const cplx base = detail::i_power(masks.y_count);
    return chunked_sum(static_cast<std::int64_t>(rho.rows()), [&](std::uint64_t i) {
        return rho(static_cast<Index>(i), static_cast<Index>(i ^ masks.flip)) * detail::pauli_phase(base, i, masks.sign);
    });
}

void apply_gate(std::span<cplx> psi, std::size_t n, std::size_t qubit, const Gate2 &gate) {
    const std::uint64_t stride = std::uint64_t{1} << bit_of(n, qubit);
    const auto pairs = static_cast<std::int64_t>(psi.size() / 2);
#pragma omp parallel for schedule(static) if (pairs >= static_cast<std::int64_t>(kParallelThreshold))
    for (std::int64_t k = 0; k < pairs; ++k) {
        const std::uint64_t i0 = detail::insert_zero(static_cast<std::uint64_t>(k), stride);
        detail::gate_pair(psi[i0], psi[i0 | stride], gate);
    }
}

void conjugate_gate(CMatrix &rho, std::size_t n, std::size_t qubit, const Gate2 &gate) {
    const std::uint64_t stride = std::uint64_t{1} << bit_of(n, qubit);
    const auto dim = static_cast<std::int64_t>(rho.rows());
    const bool go_parallel = dim * dim >= static_cast<std::int64_t>(kParallelThreshold);
    const Gate2 conj_gate{std::conj(gate[0]), std::conj(gate[1]), std::conj(gate[2]), std::conj(gate[3])};
#pragma omp parallel for schedule(static) if (go_parallel)
    for (std::int64_t c = 0; c < dim; ++c) {
        for (std::int64_t k = 0; k < dim / 2; ++k) {
            const std::uint64_t r0 = detail::insert_zero(static_cast<std::uint64_t>(k), stride);
            detail::gate_pair(rho.coeffRef(static_cast<Index>(r0), c), rho.coeffRef(static_cast<Index>(r0 | stride), c), gate);
        }
    }
#pragma omp parallel for schedule(static) if (go_parallel)
    for (std::int64_t k = 0; k < dim / 2; ++k) {
        const std::uint64_t c0 = detail::insert_zero(static_cast<std::uint64_t>(k), stride);
        for (std::int64_t r = 0; r < dim; ++r) {
            detail::gate_pair(rho.coeffRef(r, static_cast<Index>(c0)), rho.coeffRef(r, static_cast<Index>(c0 | stride)),
                              conj_gate);
        }
    }
}

CMatrix partial_trace_pure(std::span<const cplx> psi, const IndexSplit &split) {
    const auto kd = static_cast<std::int64_t>(split.kept_dim());
    const std::size_t td = split.traced_dim();
    CMatrix out = CMatrix::Zero(kd, kd);
#pragma omp parallel for schedule(dynamic, 4) if (kd * kd * static_cast<std::int64_t>(td) >= static_cast<std::int64_t>(kParallelThreshold))
    for (std::int64_t c = 0; c < kd; ++c) {
        for (std::int64_t r = c; r < kd; ++r) {
            cplx acc = 0.0;
            for (std::size_t t = 0; t < td; ++t) {
                acc += psi[split.index(static_cast<std::size_t>(r), t)] *
                       std::conj(psi[split.index(static_cast<std::size_t>(c), t)]);
            }
            out(r, c) = acc;
            out(c, r) = std::conj(acc);
        }
    }
    return out;
}

CMatrix partial_trace_density(const CMatrix &rho, const IndexSplit &split) {
    const auto kd = static_cast<std::int64_t>(split.kept_dim());
    const std::size_t td = split.traced_dim();
    CMatrix out = CMatrix::Zero(kd, kd);
#pragma omp parallel for schedule(static) if (kd * kd * static_cast<std::int64_t>(td) >= static_cast<std::int64_t>(kParallelThreshold))
    for (std::int64_t c = 0; c < kd; ++c) {
        for (std::int64_t r = 0; r < kd; ++r) {
            cplx acc = 0.0;
            for (std::size_t t = 0; t < td; ++t) {
                acc += rho(static_cast<Index>(split.index(static_cast<std::size_t>(r), t)),
                           static_cast<Index>(split.index(static_cast<std::size_t>(c), t)));
            }
            out(r, c) = acc;
        }
    }
    return out;
}

std::vector<double> marginal_probabilities(std::span<const cplx> psi, const IndexSplit &split) {
    const auto kd = static_cast<std::int64_t>(split.kept_dim());
    const std::size_t td = split.traced_dim();
    std::vector<double> out(static_cast<std::size_t>(kd), 0.0);
#pragma omp parallel for schedule(static) if (psi.size() >= kParallelThreshold)
    for (std::int64_t r = 0; r < kd; ++r) {
        double acc = 0.0;
        for (std::size_t t = 0; t < td; ++t) {
            acc += std::norm(psi[split.index(static_cast<std::size_t>(r), t)]);
        }
        out[static_cast<std::size_t>(r)] = acc;
    }
    return out;
}

void expectation_batch(std::span<const cplx> psi, std::span<const PauliMasks> batch, std::span<cplx> out) {
    const auto count = static_cast<std::int64_t>(batch.size());
#pragma omp parallel for schedule(dynamic, 8) if (count * static_cast<std::int64_t>(psi.size()) >= static_cast<std::int64_t>(kParallelThreshold))
    for (std::int64_t k = 0; k < count; ++k) {
        out[static_cast<std::size_t>(k)] = serial::expectation_pure(psi, batch[static_cast<std::size_t>(k)]);
    }
}

void expectation_batch(const CMatrix &rho, std::span<const PauliMasks> batch, std::span<cplx> out) {
    const auto count = static_cast<std::int64_t>(batch.size());
#pragma omp parallel for schedule(dynamic, 8) if (count * static_cast<std::int64_t>(rho.rows()) >= static_cast<std::int64_t>(kParallelThreshold))
    for (std::int64_t k = 0; k < count; ++k) {
        out[static_cast<std::size_t>(k)] = serial::expectation_density(rho, batch[static_cast<std::size_t>(k)]);
    }
}

}  // namespace parallel
}  // namespace qss::kernels
