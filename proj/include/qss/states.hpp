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

#ifndef QSS_STATES_HPP
#define QSS_STATES_HPP

#include <string_view>
#include <utility>

#include "qss/types.hpp"

namespace qss {

enum class CarrierFamily { G, GHZ };

std::string_view to_string(CarrierFamily family);
CarrierFamily carrier_from_string(std::string_view text);

/// Equal superposition of the n single-excitation basis states.
PureState w_state(std::size_t n);
/// Equal superposition of the n single-hole basis states (bit-flipped W).
PureState wbar_state(std::size_t n);

/// (W_n + Wbar_n)/sqrt(2) for n >= 3; for n = 2 the two W states coincide and the Bell state
/// (|01> + |10>)/sqrt(2) is returned instead.
PureState g_state(std::size_t n);

PureState ghz_state(std::size_t n);

/// Carrier state on n qubits for either family.
PureState carrier_state(CarrierFamily family, std::size_t n);

/// The states the Bobs hold in the two branches of Alice's qubit, on 2m-1 qubits:
/// xi = (sum |10..0> + |1..1>)/sqrt(2m), xibar its bit flip. For m = 1 these are |1> and |0>.
std::pair<PureState, PureState> xi_states(std::size_t m);

/// The two branches of G_n over its last qubit, on n-1 qubits, each with prefactor 1/sqrt(n):
/// G_n = (v0 |0>_n + v1 |1>_n)/sqrt(2).
std::pair<PureState, PureState> v_states(std::size_t n);

/// |+x>^{⊗n} or |-x>^{⊗n}.
PureState x_product_state(std::size_t n, int sign);

/// White-noise admixture p |psi><psi| + (1 - p) I / 2^n.
struct NoisyState {
    PureState base;
    double visibility;
    DensityMatrix realized;
};

NoisyState add_white_noise(const PureState &state, double p);

}  // namespace qss

#endif  // QSS_STATES_HPP
