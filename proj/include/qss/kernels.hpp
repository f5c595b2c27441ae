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

// Dense statevector and density-matrix kernels.
//
// Each kernel exists twice with identical signatures: `serial::` is the plain reference loop,
// `parallel::` is the OpenMP version used by the library. The test suite checks the two against
// each other and bench/ times them. Parallel kernels fall back to a single thread below
// `kParallelThreshold` elements, where fork/join overhead dominates.
//
// Indices follow the library convention: qubit q of an n-qubit register sits at bit n-1-q.

#ifndef QSS_KERNELS_HPP
#define QSS_KERNELS_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qss/types.hpp"

namespace qss::kernels {

inline constexpr std::size_t kParallelThreshold = 1u << 12;

/// Index-space description of a Pauli string: P|i> = phase(i) |i ^ flip>, with
/// phase(i) = i^{y_count} * (-1)^{popcount(i & sign)}.
struct PauliMasks {
    std::uint64_t flip = 0;
    std::uint64_t sign = 0;
    std::size_t y_count = 0;

    static PauliMasks from(const PauliString &p);
};

using Gate2 = std::array<cplx, 4>;  // row-major 2x2

/// Split of an n-qubit index space into kept and traced qubits. `index(r, t)` is the full
/// index whose kept bits spell r and traced bits spell t, both in ascending qubit order.
class IndexSplit {
   public:
    IndexSplit(std::size_t n, std::span<const std::size_t> keep);

    std::size_t kept_dim() const { return kept_offsets_.size(); }
    std::size_t traced_dim() const { return traced_offsets_.size(); }
    std::uint64_t index(std::size_t r, std::size_t t) const { return kept_offsets_[r] | traced_offsets_[t]; }

   private:
    std::vector<std::uint64_t> kept_offsets_;
    std::vector<std::uint64_t> traced_offsets_;
};

namespace serial {

void apply_pauli(std::span<const cplx> in, std::span<cplx> out, const PauliMasks &masks);
cplx expectation_pure(std::span<const cplx> psi, const PauliMasks &masks);
cplx expectation_density(const CMatrix &rho, const PauliMasks &masks);
void apply_gate(std::span<cplx> psi, std::size_t n, std::size_t qubit, const Gate2 &gate);
/// rho -> U rho U^dagger for a single-qubit U.
void conjugate_gate(CMatrix &rho, std::size_t n, std::size_t qubit, const Gate2 &gate);
CMatrix partial_trace_pure(std::span<const cplx> psi, const IndexSplit &split);
CMatrix partial_trace_density(const CMatrix &rho, const IndexSplit &split);
/// Marginal computational-basis distribution of the kept qubits.
std::vector<double> marginal_probabilities(std::span<const cplx> psi, const IndexSplit &split);
/// Evaluates one expectation per mask in `batch`.
void expectation_batch(std::span<const cplx> psi, std::span<const PauliMasks> batch, std::span<cplx> out);
void expectation_batch(const CMatrix &rho, std::span<const PauliMasks> batch, std::span<cplx> out);

}  // namespace serial

namespace parallel {

void apply_pauli(std::span<const cplx> in, std::span<cplx> out, const PauliMasks &masks);
cplx expectation_pure(std::span<const cplx> psi, const PauliMasks &masks);
cplx expectation_density(const CMatrix &rho, const PauliMasks &masks);
void apply_gate(std::span<cplx> psi, std::size_t n, std::size_t qubit, const Gate2 &gate);
void conjugate_gate(CMatrix &rho, std::size_t n, std::size_t qubit, const Gate2 &gate);
CMatrix partial_trace_pure(std::span<const cplx> psi, const IndexSplit &split);
CMatrix partial_trace_density(const CMatrix &rho, const IndexSplit &split);
std::vector<double> marginal_probabilities(std::span<const cplx> psi, const IndexSplit &split);
void expectation_batch(std::span<const cplx> psi, std::span<const PauliMasks> batch, std::span<cplx> out);
void expectation_batch(const CMatrix &rho, std::span<const PauliMasks> batch, std::span<cplx> out);

}  // namespace parallel

/// Number of OpenMP threads the parallel kernels use (1 when built without OpenMP).
int max_threads();
/// Caps the parallel kernels' thread count; values < 1 are ignored.
void set_max_threads(int threads);

}  // namespace qss::kernels

#endif  // QSS_KERNELS_HPP
