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

// Exact dense simulation primitives: basis states, Pauli algebra, partial traces, projective
// measurement and Hermitian spectra. All functions are pure; stochastic ones take an Rng.

#ifndef QSS_CORE_HPP
#define QSS_CORE_HPP

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "qss/error.hpp"
#include "qss/kernels.hpp"
#include "qss/rng.hpp"
#include "qss/types.hpp"

namespace qss {

/// `bits[0]` is qubit 0, the most significant bit of the index.
PureState make_basis_state(std::size_t n, std::string_view bits);

PureState apply_pauli_string(const PureState &state, const PauliString &p);

/// Real expectation value, checked real within 1e-10 and clamped to [-1, 1].
double expectation(const PureState &state, const PauliString &p);
double expectation(const DensityMatrix &rho, const PauliString &p);

/// Reduced state on `keep` (listed in any order; the result orders them ascending).
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> keep);
DensityMatrix partial_trace(const PureState &state, std::span<const std::size_t> keep);

/// Unitary taking the +1/-1 eigenvectors of `axis` to |0>/|1>.
kernels::Gate2 basis_change(PauliAxis axis);

/// Applies basis_change(bases[k]) to qubit qubits[k] for every k.
PureState rotate_to_z(const PureState &state, std::span<const std::size_t> qubits, std::span<const PauliAxis> bases);

/// Born distribution of measuring `qubits[k]` in `bases[k]`. Entry `j` is the probability of the
/// outcome tuple whose k-th bit from the top is 1 when qubit qubits[k] returned -1.
std::vector<double> born_distribution(const PureState &state, std::span<const std::size_t> qubits,
                                      std::span<const PauliAxis> bases);

/// Converts a born_distribution index to the corresponding +/-1 tuple.
Outcome outcome_from_index(std::size_t index, std::size_t count);
std::size_t index_from_outcome(const Outcome &outcome);

template <typename State>
struct Projection {
    double probability;
    State collapsed;
};

/// Projects `qubits` onto the eigenvectors of `basis` with the given +/-1 outcomes.
/// Throws ZeroProbabilityBranch when the branch probability is <= 1e-12.
Projection<PureState> project(const PureState &state, std::span<const std::size_t> qubits, PauliAxis basis,
                              std::span<const int> outcomes);
Projection<DensityMatrix> project(const DensityMatrix &rho, std::span<const std::size_t> qubits, PauliAxis basis,
                                  std::span<const int> outcomes);

/// Probability of a projection branch without forming the collapsed state.
double branch_probability(const PureState &state, std::span<const std::size_t> qubits, PauliAxis basis,
                          std::span<const int> outcomes);

/// Inverse-CDF draw from a probability vector; never returns a zero-probability entry.
std::size_t sample_index(std::span<const double> probs, Rng &rng);

/// Samples the outcomes of measuring `qubits` in `bases` (other qubits untouched).
Outcome sample_outcome(const PureState &state, std::span<const std::size_t> qubits, std::span<const PauliAxis> bases,
                       Rng &rng);

/// Measures every qubit in its own basis. The returned state is the renormalized projection
/// onto the sampled eigenvector tuple.
std::pair<Outcome, PureState> measure_sample(const PureState &state, std::span<const PauliAxis> bases, Rng &rng);

/// Eigenvalues of a Hermitian matrix in descending order. Throws InvalidState when the input
/// deviates from Hermitian by more than 1e-8.
std::vector<double> hermitian_eigenvalues(const CMatrix &m);

/// Two-by-two Pauli matrix.
CMatrix pauli_matrix(PauliAxis axis);

}  // namespace qss

#endif  // QSS_CORE_HPP
