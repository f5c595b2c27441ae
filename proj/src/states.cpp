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

#include "qss/states.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "qss/error.hpp"

namespace qss {

namespace {

// Uniform superposition over the basis states of `n` qubits whose Hamming weight is in `weights`.
// Every constructor here has real non-negative amplitudes, which fixes the global phase.
template <typename Pred>
PureState weight_superposition(std::size_t n, Pred keep) {
    require(n >= 1 && n <= kMaxStateQubits, ErrorKind::InvalidDimension, "qubit count out of range");
    std::vector<cplx> amps(std::size_t{1} << n, 0.0);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (keep(static_cast<std::size_t>(std::popcount(i)))) {
            amps[i] = 1.0;
        }
    }
    return PureState::normalized(n, std::move(amps));
}

void require_at_least(std::size_t n, std::size_t minimum, const char *what) {
    require(n >= minimum, ErrorKind::InvalidArgument,
            std::string(what) + " needs n >= " + std::to_string(minimum) + ", got " + std::to_string(n));
}

}  // namespace

std::string_view to_string(CarrierFamily family) { return family == CarrierFamily::G ? "g" : "ghz"; }

CarrierFamily carrier_from_string(std::string_view text) {
    if (text == "g" || text == "G") {
        return CarrierFamily::G;
    }
    if (text == "ghz" || text == "GHZ") {
        return CarrierFamily::GHZ;
    }
    fail(ErrorKind::InvalidArgument, "unknown carrier '" + std::string(text) + "' (expected g or ghz)");
}

PureState w_state(std::size_t n) {
    require_at_least(n, 2, "w_state");
    return weight_superposition(n, [](std::size_t w) { return w == 1; });
}

PureState wbar_state(std::size_t n) {
    require_at_least(n, 2, "wbar_state");
    return weight_superposition(n, [n](std::size_t w) { return w == n - 1; });
}

PureState g_state(std::size_t n) {
    require_at_least(n, 2, "g_state");
    // Weights 1 and n-1 each carry n equal amplitudes; for n = 2 they are the same two states.
    return weight_superposition(n, [n](std::size_t w) { return w == 1 || w == n - 1; });
}

PureState ghz_state(std::size_t n) {
    require_at_least(n, 2, "ghz_state");
    return weight_superposition(n, [n](std::size_t w) { return w == 0 || w == n; });
}

PureState carrier_state(CarrierFamily family, std::size_t n) {
    return family == CarrierFamily::G ? g_state(n) : ghz_state(n);
}

std::pair<PureState, PureState> xi_states(std::size_t m) {
    require(m >= 1, ErrorKind::InvalidArgument, "xi_states needs m >= 1");
    const std::size_t k = 2 * m - 1;
    if (k == 1) {
        return {PureState(1, {0.0, 1.0}), PureState(1, {1.0, 0.0})};
    }
    auto xi = weight_superposition(k, [k](std::size_t w) { return w == 1 || w == k; });
    auto xibar = weight_superposition(k, [k](std::size_t w) { return w == k - 1 || w == 0; });
    return {std::move(xi), std::move(xibar)};
}

std::pair<PureState, PureState> v_states(std::size_t n) {
    require_at_least(n, 3, "v_states");
    const std::size_t k = n - 1;
    auto v0 = weight_superposition(k, [k](std::size_t w) { return w == 1 || w == k; });
    auto v1 = weight_superposition(k, [k](std::size_t w) { return w == k - 1 || w == 0; });
    return {std::move(v0), std::move(v1)};
}

PureState x_product_state(std::size_t n, int sign) {
    require(sign == 1 || sign == -1, ErrorKind::InvalidArgument, "sign must be +1 or -1");
    require(n >= 1 && n <= kMaxStateQubits, ErrorKind::InvalidDimension, "qubit count out of range");
    const double scale = std::pow(2.0, -0.5 * static_cast<double>(n));
    std::vector<cplx> amps(std::size_t{1} << n);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const bool negative = sign == -1 && (std::popcount(i) & 1);
        amps[i] = negative ? -scale : scale;
    }
    return PureState::normalized(n, std::move(amps));
}

NoisyState add_white_noise(const PureState &state, double p) {
    require(p >= 0.0 && p <= 1.0, ErrorKind::InvalidArgument, "visibility must lie in [0, 1]");
    require(state.n_qubits() <= kMaxDensityQubits, ErrorKind::InvalidDimension, "state too large for a dense density matrix");
    const auto dim = static_cast<Eigen::Index>(state.dim());
    const auto amps = state.amplitudes();
    Eigen::Map<const Eigen::VectorXcd> v(amps.data(), dim);
    CMatrix m = p * (v * v.adjoint());
    m.diagonal().array() += (1.0 - p) / static_cast<double>(dim);
    return NoisyState{state, p, DensityMatrix::trusted(state.n_qubits(), std::move(m))};
}

}  // namespace qss
