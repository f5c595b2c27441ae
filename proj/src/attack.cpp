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

#include "qss/attack.hpp"

#include <bit>
#include <cmath>
#include <numeric>

#include "qss/core.hpp"
#include "qss/error.hpp"

namespace qss {

namespace {

constexpr double kAngleSlack = 1e-12;

double checked_angle(double phi) {
    require(phi >= -kAngleSlack && phi <= kHalfPi + kAngleSlack, ErrorKind::InvalidArgument,
            "attack angle " + std::to_string(phi) + " outside [0, pi/2]");
    return std::clamp(phi, 0.0, kHalfPi);
}

std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> out(hi - lo);
    std::iota(out.begin(), out.end(), lo);
    return out;
}

}  // namespace

void AttackScenario::validate() const {
    require(m >= 1, ErrorKind::InvalidArgument, "scenario needs m >= 1");
    require(2 * m + 1 <= kMaxStateQubits, ErrorKind::InvalidDimension, "attacked state would exceed the statevector cap");
    checked_angle(phi);
}

std::array<double, 4> evan_unitary_action(Branch branch, double phi) {
    phi = checked_angle(phi);
    if (branch == Branch::Xi) {
        return {1.0, 0.0, 0.0, 0.0};
    }
    return {0.0, std::sin(phi), std::cos(phi), 0.0};
}

std::pair<PureState, PureState> carrier_branches(CarrierFamily carrier, std::size_t m) {
    if (carrier == CarrierFamily::G) {
        return xi_states(m);
    }
    const std::size_t k = 2 * m - 1;
    return {make_basis_state(k, std::string(k, '0')), make_basis_state(k, std::string(k, '1'))};
}

TripartiteState attacked_state(const AttackScenario &scenario) {
    scenario.validate();
    const double phi = std::clamp(scenario.phi, 0.0, kHalfPi);
    const auto [xi, xibar] = carrier_branches(scenario.carrier, scenario.m);
    const std::size_t bob_dim = xi.dim();
    const std::size_t n = 2 * scenario.m + 1;
    std::vector<cplx> amps(std::size_t{1} << n, 0.0);

    // |psi> = (|0>_A U(xi|0>) + |1>_A U(xibar|0>)) / sqrt(2)
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t alice = 0; alice < 2; ++alice) {
        const auto image = evan_unitary_action(alice == 0 ? Branch::Xi : Branch::XiBar, phi);
        for (std::size_t b = 0; b < bob_dim; ++b) {
            for (std::size_t probe = 0; probe < 2; ++probe) {
                const cplx amp = image[probe] * xi[b] + image[2 + probe] * xibar[b];
                amps[(alice * bob_dim + b) * 2 + probe] = inv_sqrt2 * amp;
            }
        }
    }
    return TripartiteState{PureState::normalized(n, std::move(amps)), scenario};
}

DensityMatrix rho_ab(const TripartiteState &t) { return partial_trace(t.psi, range(0, t.scenario.parties())); }

DensityMatrix rho_ae(const TripartiteState &t) {
    const std::array<std::size_t, 2> keep{0, t.scenario.probe_qubit()};
    return partial_trace(t.psi, keep);
}

DensityMatrix rho_b(const TripartiteState &t) { return partial_trace(t.psi, range(1, t.scenario.parties())); }

PauliAxis collapse_basis(CarrierFamily carrier) { return carrier == CarrierFamily::G ? PauliAxis::Z : PauliAxis::X; }

CollapsedPair coalition_collapse(const TripartiteState &t, std::size_t kept_bob, CollapsePattern pattern) {
    const std::size_t m = t.scenario.m;
    require(m >= 2, ErrorKind::InvalidArgument, "coalition collapse needs at least two Bobs (m >= 2)");
    require(kept_bob >= 1 && kept_bob < t.scenario.parties(), ErrorKind::InvalidArgument,
            "kept Bob must be a qubit index in 1..2m-1");
    std::vector<std::size_t> measured;
    for (std::size_t q = 1; q < t.scenario.parties(); ++q) {
        if (q != kept_bob) {
            measured.push_back(q);
        }
    }
    const std::vector<int> outcomes(measured.size(), pattern == CollapsePattern::AllPlus ? 1 : -1);
    const auto projected = project(t.psi, measured, collapse_basis(t.scenario.carrier), outcomes);
    const std::array<std::size_t, 2> keep{0, kept_bob};
    return {projected.probability, partial_trace(projected.collapsed, keep)};
}

double binary_entropy(double p) {
    require(p >= -1e-12 && p <= 1.0 + 1e-12, ErrorKind::InvalidArgument, "binary entropy needs p in [0, 1]");
    p = std::clamp(p, 0.0, 1.0);
    const double dist[2] = {p, 1.0 - p};
    return shannon_entropy(dist);
}

double shannon_entropy(std::span<const double> dist) {
    double total = 0.0;
    for (double p : dist) {
        require(p >= -1e-9, ErrorKind::InvalidArgument, "probabilities must be non-negative");
        total += p;
    }
    require(std::abs(total - 1.0) <= 1e-9, ErrorKind::InvalidArgument, "probabilities must sum to 1");
    double h = 0.0;
    for (double p : dist) {
        if (p > 0.0) {
            h -= p * std::log2(p);
        }
    }
    return std::max(h, 0.0);
}

double mutual_info_ab(double phi) {
    phi = checked_angle(phi);
    return 1.0 - binary_entropy((1.0 + std::cos(phi)) / 2.0);
}

double mutual_info_ae(double phi) {
    phi = checked_angle(phi);
    return mutual_info_ab(kHalfPi - phi);
}

double qber_x(double phi) {
    phi = checked_angle(phi);
    return (1.0 - std::cos(phi)) / 2.0;
}

SecurityReport security_report(const AttackScenario &scenario) {
    scenario.validate();
    const double phi = std::clamp(scenario.phi, 0.0, kHalfPi);
    const double i_ab = mutual_info_ab(phi);
    const double i_ae = mutual_info_ae(phi);
    const double margin = i_ab - i_ae;
    return SecurityReport{phi, i_ab, i_ae, margin, margin > 0.0};
}

int key_parity_sign(CarrierFamily carrier, std::size_t m, PauliAxis basis) {
    require(basis != PauliAxis::Z, ErrorKind::InvalidArgument, "key rounds use the X or Y basis only");
    if (basis == PauliAxis::X) {
        return 1;
    }
    const bool m_odd = (m % 2) == 1;
    if (carrier == CarrierFamily::G) {
        return m_odd ? 1 : -1;  // (-1)^{m+1}
    }
    return m_odd ? -1 : 1;  // (-1)^m
}

std::array<std::array<double, 2>, 2> exact_key_distribution(const TripartiteState &t, PauliAxis basis) {
    const std::size_t parties = t.scenario.parties();
    const std::vector<std::size_t> qubits = range(0, parties);
    const std::vector<PauliAxis> bases(parties, basis);
    const std::vector<double> probs = born_distribution(t.psi, qubits, bases);
    const int sign = key_parity_sign(t.scenario.carrier, t.scenario.m, basis);
    const std::size_t bob_bits = parties - 1;
    std::array<std::array<double, 2>, 2> joint{};
    for (std::size_t idx = 0; idx < probs.size(); ++idx) {
        // Top bit is Alice; a set bit means outcome -1, i.e. key bit 1.
        const std::size_t alice_bit = (idx >> bob_bits) & 1u;
        const std::size_t bob_mask = idx & ((std::size_t{1} << bob_bits) - 1);
        const int bob_product = (std::popcount(bob_mask) & 1) ? -1 : 1;
        const std::size_t bob_bit = sign * bob_product == 1 ? 0 : 1;
        joint[alice_bit][bob_bit] += probs[idx];
    }
    return joint;
}

double exact_conditional_entropy(const TripartiteState &t, PauliAxis basis) {
    const auto joint = exact_key_distribution(t, basis);
    double h = 0.0;
    for (std::size_t b = 0; b < 2; ++b) {
        const double pb = joint[0][b] + joint[1][b];
        if (pb > 0.0) {
            h += pb * binary_entropy(joint[0][b] / pb);
        }
    }
    return h;
}

double exact_mutual_info_ab(const TripartiteState &t) {
    double total = 0.0;
    for (PauliAxis basis : {PauliAxis::X, PauliAxis::Y}) {
        const auto joint = exact_key_distribution(t, basis);
        const double pa0 = joint[0][0] + joint[0][1];
        total += binary_entropy(pa0) - exact_conditional_entropy(t, basis);
    }
    return 0.5 * total;
}

double exact_qber(const TripartiteState &t, PauliAxis basis) {
    const auto joint = exact_key_distribution(t, basis);
    return joint[0][1] + joint[1][0];
}

}  // namespace qss
