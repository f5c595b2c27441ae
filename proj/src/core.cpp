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

#include "qss/core.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace qss {

namespace {

using kernels::Gate2;

constexpr double kInvSqrt2 = 0.70710678118654752440;

Gate2 adjoint(const Gate2 &g) { return {std::conj(g[0]), std::conj(g[2]), std::conj(g[1]), std::conj(g[3])}; }

void check_qubits(std::size_t n, std::span<const std::size_t> qubits) {
    std::vector<bool> seen(n, false);
    for (std::size_t q : qubits) {
        require(q < n, ErrorKind::InvalidDimension, "qubit index " + std::to_string(q) + " out of range");
        require(!seen[q], ErrorKind::InvalidArgument, "qubit index " + std::to_string(q) + " listed twice");
        seen[q] = true;
    }
}

double checked_real(cplx value) {
    require(std::abs(value.imag()) <= kExactTol, ErrorKind::InvalidState,
            "expectation has imaginary part " + std::to_string(value.imag()));
    return std::clamp(value.real(), -1.0, 1.0);
}

std::vector<cplx> copy_amplitudes(const PureState &state) {
    const auto amps = state.amplitudes();
    return {amps.begin(), amps.end()};
}

// Zeroes every amplitude whose bits on `qubits` differ from the ones encoded in `outcomes`
// (+1 -> 0, -1 -> 1). Assumes the qubits were already rotated into the Z basis.
void keep_branch(std::span<cplx> amps, std::size_t n, std::span<const std::size_t> qubits, std::span<const int> outcomes) {
    std::uint64_t mask = 0;
    std::uint64_t want = 0;
    for (std::size_t k = 0; k < qubits.size(); ++k) {
        const std::uint64_t bit = std::uint64_t{1} << bit_of(n, qubits[k]);
        mask |= bit;
        if (outcomes[k] == -1) {
            want |= bit;
        }
    }
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & mask) != want) {
            amps[i] = 0.0;
        }
    }
}

void check_outcomes(std::span<const std::size_t> qubits, std::span<const int> outcomes) {
    require(outcomes.size() == qubits.size(), ErrorKind::InvalidDimension, "one outcome per projected qubit");
    for (int o : outcomes) {
        require(o == 1 || o == -1, ErrorKind::InvalidArgument, "projection outcomes must be +1 or -1");
    }
}

std::vector<cplx> projected_amplitudes(const PureState &state, std::span<const std::size_t> qubits,
                                       std::span<const PauliAxis> bases, std::span<const int> outcomes) {
    const std::size_t n = state.n_qubits();
    std::vector<cplx> amps = copy_amplitudes(state);
    for (std::size_t k = 0; k < qubits.size(); ++k) {
        kernels::parallel::apply_gate(amps, n, qubits[k], basis_change(bases[k]));
    }
    keep_branch(amps, n, qubits, outcomes);
    for (std::size_t k = 0; k < qubits.size(); ++k) {
        kernels::parallel::apply_gate(amps, n, qubits[k], adjoint(basis_change(bases[k])));
    }
    return amps;
}

}  // namespace

PureState make_basis_state(std::size_t n, std::string_view bits) {
    require(bits.size() == n, ErrorKind::InvalidDimension, "bitstring length must equal qubit count");
    require(n >= 1 && n <= kMaxStateQubits, ErrorKind::InvalidDimension, "qubit count out of range");
    std::size_t index = 0;
    for (char c : bits) {
        require(c == '0' || c == '1', ErrorKind::InvalidArgument, "bitstring must contain only 0 and 1");
        index = (index << 1) | static_cast<std::size_t>(c == '1');
    }
    std::vector<cplx> amps(std::size_t{1} << n, 0.0);
    amps[index] = 1.0;
    return PureState(n, std::move(amps));
}

PureState apply_pauli_string(const PureState &state, const PauliString &p) {
    require(p.n_qubits() == state.n_qubits(), ErrorKind::InvalidDimension, "Pauli string and state differ in size");
    std::vector<cplx> out(state.dim());
    kernels::parallel::apply_pauli(state.amplitudes(), out, kernels::PauliMasks::from(p));
    return PureState(state.n_qubits(), std::move(out));
}

double expectation(const PureState &state, const PauliString &p) {
    require(p.n_qubits() == state.n_qubits(), ErrorKind::InvalidDimension, "Pauli string and state differ in size");
    return checked_real(kernels::parallel::expectation_pure(state.amplitudes(), kernels::PauliMasks::from(p)));
}

double expectation(const DensityMatrix &rho, const PauliString &p) {
    require(p.n_qubits() == rho.n_qubits(), ErrorKind::InvalidDimension, "Pauli string and state differ in size");
    return checked_real(kernels::parallel::expectation_density(rho.matrix(), kernels::PauliMasks::from(p)));
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> keep) {
    require(!keep.empty(), ErrorKind::InvalidArgument, "partial trace needs at least one kept qubit");
    check_qubits(rho.n_qubits(), keep);
    const kernels::IndexSplit split(rho.n_qubits(), keep);
    return DensityMatrix::trusted(keep.size(), kernels::parallel::partial_trace_density(rho.matrix(), split));
}

DensityMatrix partial_trace(const PureState &state, std::span<const std::size_t> keep) {
    require(!keep.empty(), ErrorKind::InvalidArgument, "partial trace needs at least one kept qubit");
    require(keep.size() <= kMaxDensityQubits, ErrorKind::InvalidDimension, "reduced state too large for a dense matrix");
    check_qubits(state.n_qubits(), keep);
    const kernels::IndexSplit split(state.n_qubits(), keep);
    return DensityMatrix::trusted(keep.size(), kernels::parallel::partial_trace_pure(state.amplitudes(), split));
}

Gate2 basis_change(PauliAxis axis) {
    switch (axis) {
        case PauliAxis::X:
            return {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
        case PauliAxis::Y:
            // H S^dagger
            return {kInvSqrt2, cplx(0.0, -kInvSqrt2), kInvSqrt2, cplx(0.0, kInvSqrt2)};
        case PauliAxis::Z:
            break;
    }
    return {1.0, 0.0, 0.0, 1.0};
}

PureState rotate_to_z(const PureState &state, std::span<const std::size_t> qubits, std::span<const PauliAxis> bases) {
    require(qubits.size() == bases.size(), ErrorKind::InvalidDimension, "one basis per qubit");
    check_qubits(state.n_qubits(), qubits);
    std::vector<cplx> amps = copy_amplitudes(state);
    for (std::size_t k = 0; k < qubits.size(); ++k) {
        if (bases[k] != PauliAxis::Z) {
            kernels::parallel::apply_gate(amps, state.n_qubits(), qubits[k], basis_change(bases[k]));
        }
    }
    return PureState::normalized(state.n_qubits(), std::move(amps));
}

std::vector<double> born_distribution(const PureState &state, std::span<const std::size_t> qubits,
                                      std::span<const PauliAxis> bases) {
    const PureState rotated = rotate_to_z(state, qubits, bases);
    const kernels::IndexSplit split(state.n_qubits(), qubits);
    // IndexSplit orders kept qubits ascending; permute to the caller's order.
    std::vector<double> sorted = kernels::parallel::marginal_probabilities(rotated.amplitudes(), split);
    std::vector<std::size_t> order(qubits.begin(), qubits.end());
    std::sort(order.begin(), order.end());
    if (std::equal(order.begin(), order.end(), qubits.begin())) {
        return sorted;
    }
    const std::size_t k = qubits.size();
    std::vector<std::size_t> rank(k);
    for (std::size_t j = 0; j < k; ++j) {
        rank[j] = static_cast<std::size_t>(std::find(order.begin(), order.end(), qubits[j]) - order.begin());
    }
    std::vector<double> out(sorted.size());
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
        std::size_t sorted_idx = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if ((idx >> (k - 1 - j)) & 1u) {
                sorted_idx |= std::size_t{1} << (k - 1 - rank[j]);
            }
        }
        out[idx] = sorted[sorted_idx];
    }
    return out;
}

Outcome outcome_from_index(std::size_t index, std::size_t count) {
    std::vector<int> values(count);
    for (std::size_t j = 0; j < count; ++j) {
        values[j] = ((index >> (count - 1 - j)) & 1u) ? -1 : 1;
    }
    return Outcome(std::move(values));
}

std::size_t index_from_outcome(const Outcome &outcome) {
    std::size_t index = 0;
    for (int v : outcome.values()) {
        index = (index << 1) | static_cast<std::size_t>(v == -1);
    }
    return index;
}

Projection<PureState> project(const PureState &state, std::span<const std::size_t> qubits, PauliAxis basis,
                              std::span<const int> outcomes) {
    check_qubits(state.n_qubits(), qubits);
    check_outcomes(qubits, outcomes);
    const std::vector<PauliAxis> bases(qubits.size(), basis);
    std::vector<cplx> amps = projected_amplitudes(state, qubits, bases, outcomes);
    double probability = 0.0;
    for (const cplx &a : amps) {
        probability += std::norm(a);
    }
    if (probability <= kZeroProbability) {
        fail(ErrorKind::ZeroProbabilityBranch, "projection branch has probability " + std::to_string(probability));
    }
    return {probability, PureState::normalized(state.n_qubits(), std::move(amps))};
}

double branch_probability(const PureState &state, std::span<const std::size_t> qubits, PauliAxis basis,
                          std::span<const int> outcomes) {
    check_qubits(state.n_qubits(), qubits);
    check_outcomes(qubits, outcomes);
    const std::vector<PauliAxis> bases(qubits.size(), basis);
    const std::vector<cplx> amps = projected_amplitudes(state, qubits, bases, outcomes);
    double probability = 0.0;
    for (const cplx &a : amps) {
        probability += std::norm(a);
    }
    return probability;
}

Projection<DensityMatrix> project(const DensityMatrix &rho, std::span<const std::size_t> qubits, PauliAxis basis,
                                  std::span<const int> outcomes) {
    const std::size_t n = rho.n_qubits();
    check_qubits(n, qubits);
    check_outcomes(qubits, outcomes);
    CMatrix m = rho.matrix();
    const Gate2 u = basis_change(basis);
    if (basis != PauliAxis::Z) {
        for (std::size_t q : qubits) {
            kernels::parallel::conjugate_gate(m, n, q, u);
        }
    }
    std::uint64_t mask = 0;
    std::uint64_t want = 0;
    for (std::size_t k = 0; k < qubits.size(); ++k) {
        const std::uint64_t bit = std::uint64_t{1} << bit_of(n, qubits[k]);
        mask |= bit;
        if (outcomes[k] == -1) {
            want |= bit;
        }
    }
    const auto dim = m.rows();
    for (Eigen::Index c = 0; c < dim; ++c) {
        const bool col_in = (static_cast<std::uint64_t>(c) & mask) == want;
        for (Eigen::Index r = 0; r < dim; ++r) {
            if (!col_in || (static_cast<std::uint64_t>(r) & mask) != want) {
                m(r, c) = 0.0;
            }
        }
    }
    const double probability = m.trace().real();
    if (probability <= kZeroProbability) {
        fail(ErrorKind::ZeroProbabilityBranch, "projection branch has probability " + std::to_string(probability));
    }
    if (basis != PauliAxis::Z) {
        const Gate2 back = adjoint(u);
        for (std::size_t q : qubits) {
            kernels::parallel::conjugate_gate(m, n, q, back);
        }
    }
    m /= probability;
    return {probability, DensityMatrix::trusted(n, std::move(m))};
}

std::size_t sample_index(std::span<const double> probs, Rng &rng) {
    require(!probs.empty(), ErrorKind::InvalidArgument, "cannot sample from an empty distribution");
    const double u = rng.uniform();
    double cumulative = 0.0;
    std::size_t pick = probs.size() - 1;
    for (std::size_t j = 0; j < probs.size(); ++j) {
        cumulative += probs[j];
        if (u < cumulative) {
            pick = j;
            break;
        }
    }
    // Rounding can leave u above the final cumulative sum.
    while (probs[pick] <= 0.0 && pick > 0) {
        --pick;
    }
    return pick;
}

Outcome sample_outcome(const PureState &state, std::span<const std::size_t> qubits, std::span<const PauliAxis> bases,
                       Rng &rng) {
    const std::vector<double> probs = born_distribution(state, qubits, bases);
    return outcome_from_index(sample_index(probs, rng), qubits.size());
}

std::pair<Outcome, PureState> measure_sample(const PureState &state, std::span<const PauliAxis> bases, Rng &rng) {
    require(bases.size() == state.n_qubits(), ErrorKind::InvalidDimension, "one basis per qubit required");
    std::vector<std::size_t> qubits(state.n_qubits());
    for (std::size_t q = 0; q < qubits.size(); ++q) {
        qubits[q] = q;
    }
    Outcome outcome = sample_outcome(state, qubits, bases, rng);
    std::vector<cplx> amps = projected_amplitudes(state, qubits, bases, outcome.values());
    return {std::move(outcome), PureState::normalized(state.n_qubits(), std::move(amps))};
}

std::vector<double> hermitian_eigenvalues(const CMatrix &m) {
    require(m.rows() == m.cols() && m.rows() > 0, ErrorKind::InvalidDimension, "eigenvalues need a non-empty square matrix");
    const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    require(asym <= kEigenTol, ErrorKind::InvalidState, "matrix not Hermitian (deviation " + std::to_string(asym) + ")");
    const CMatrix herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
    std::vector<double> values(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
    std::sort(values.begin(), values.end(), std::greater<>());
    return values;
}

CMatrix pauli_matrix(PauliAxis axis) {
    CMatrix m(2, 2);
    switch (axis) {
        case PauliAxis::X:
            m << 0.0, 1.0, 1.0, 0.0;
            break;
        case PauliAxis::Y:
            m << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
            break;
        case PauliAxis::Z:
            m << 1.0, 0.0, 0.0, -1.0;
            break;
    }
    return m;
}

}  // namespace qss
