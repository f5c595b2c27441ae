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

// The eavesdropper's coherent individual attack on the secret-sharing carrier and the
// information-theoretic security quantities that follow from it.
//
// Register layout of every attacked state: qubit 0 is Alice, qubits 1..2m-1 are the Bobs and
// qubit 2m is the eavesdropper's probe.

#ifndef QSS_ATTACK_HPP
#define QSS_ATTACK_HPP

#include <array>
#include <numbers>
#include <span>
#include <vector>

#include "qss/states.hpp"
#include "qss/types.hpp"

namespace qss {

inline constexpr double kHalfPi = std::numbers::pi / 2.0;
inline constexpr double kQuarterPi = std::numbers::pi / 4.0;

struct AttackScenario {
    CarrierFamily carrier = CarrierFamily::G;
    std::size_t m = 2;  // carrier has 2m qubits
    double phi = 0.0;   // attack angle in [0, pi/2]

    /// Throws InvalidArgument for m < 1 or phi outside [0, pi/2]. Angles within 1e-12 of an
    /// endpoint are accepted (grid arithmetic).
    void validate() const;

    std::size_t parties() const { return 2 * m; }
    std::size_t probe_qubit() const { return 2 * m; }
};

/// The two carrier branches the attack acts on.
enum class Branch { Xi, XiBar };

/// Image of `branch ⊗ |0>_probe` in the basis {xi|0>, xi|1>, xibar|0>, xibar|1>}.
/// xi|0> is left alone; xibar|0> goes to cos(phi) xibar|0> + sin(phi) xi|1>. The attack is only
/// ever defined on this two-dimensional span.
std::array<double, 4> evan_unitary_action(Branch branch, double phi);

/// Bob-register states standing in for xi and xibar: the xi states for the G carrier,
/// |0...0> and |1...1> for the GHZ carrier.
std::pair<PureState, PureState> carrier_branches(CarrierFamily carrier, std::size_t m);

struct TripartiteState {
    PureState psi;
    AttackScenario scenario;
};

TripartiteState attacked_state(const AttackScenario &scenario);

DensityMatrix rho_ab(const TripartiteState &t);
DensityMatrix rho_ae(const TripartiteState &t);
DensityMatrix rho_b(const TripartiteState &t);

/// Which accepted post-selection pattern the other Bobs report: all +1 (|0> for the G carrier,
/// |+x> for GHZ) or all -1.
enum class CollapsePattern { AllPlus, AllMinus };

PauliAxis collapse_basis(CarrierFamily carrier);

struct CollapsedPair {
    double probability;
    DensityMatrix state;  // two qubits: Alice, kept Bob
};

/// Exact post-selection: projects every Bob except `kept_bob` (a qubit index in 1..2m-1) onto
/// the accepted pattern, traces out the probe and returns the Alice/kept-Bob pair.
/// Requires m >= 2. Throws ZeroProbabilityBranch for a vanishing pattern.
CollapsedPair coalition_collapse(const TripartiteState &t, std::size_t kept_bob,
                                 CollapsePattern pattern = CollapsePattern::AllPlus);

double binary_entropy(double p);
double shannon_entropy(std::span<const double> dist);

/// 1 - H((1 + cos phi)/2).
double mutual_info_ab(double phi);
/// mutual_info_ab(pi/2 - phi).
double mutual_info_ae(double phi);
/// (1 - cos phi)/2.
double qber_x(double phi);

struct SecurityReport {
    double phi;
    double i_ab;
    double i_ae;
    double margin;
    bool secure;
};

SecurityReport security_report(const AttackScenario &scenario);

/// Sign relating Alice's outcome to the product of the Bobs' outcomes in a sifted round:
/// +1 in X rounds; in Y rounds (-1)^{m+1} for G and (-1)^m for GHZ.
int key_parity_sign(CarrierFamily carrier, std::size_t m, PauliAxis basis);

/// Exact joint distribution P[a][b] of Alice's key bit a and the Bobs' reconstructed key bit b
/// when all 2m parties measure in `basis`, from the Born rule on the attacked state.
std::array<std::array<double, 2>, 2> exact_key_distribution(const TripartiteState &t, PauliAxis basis);

/// H(A|B) from exact_key_distribution.
double exact_conditional_entropy(const TripartiteState &t, PauliAxis basis);

/// I(A:B) averaged over the X and Y sifted rounds, from exact distributions.
double exact_mutual_info_ab(const TripartiteState &t);

/// Probability that the reconstructed bit disagrees with Alice's in a `basis` round.
double exact_qber(const TripartiteState &t, PauliAxis basis);

}  // namespace qss

#endif  // QSS_ATTACK_HPP
