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

#include <gtest/gtest.h>

#include <bit>
#include <cmath>

#include "qss/core.hpp"
#include "test_util.hpp"

using namespace qss;
using qss::testing::expect_error;

namespace {

// Sum of |b> over bitstrings with the given Hamming weights, normalized.
Eigen::VectorXcd weight_sum(std::size_t n, std::initializer_list<int> weights) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
    for (Eigen::Index b = 0; b < v.size(); ++b) {
        const int w = std::popcount(static_cast<unsigned>(b));
        for (int target : weights) {
            if (w == target) {
                v(b) = 1.0;
            }
        }
    }
    return v.normalized();
}

std::string uniform_label(std::size_t n, char c) { return std::string(n, c); }

}  // namespace

TEST(States, w_and_wbar_are_single_excitation_and_single_hole) {
    for (std::size_t n : {2u, 3u, 5u}) {
        const auto wn = static_cast<int>(n);
        EXPECT_LT((qss::testing::to_vec(w_state(n)) - weight_sum(n, {1})).norm(), 1e-14);
        EXPECT_LT((qss::testing::to_vec(wbar_state(n)) - weight_sum(n, {wn - 1})).norm(), 1e-14);
    }
}

TEST(States, g_state_is_normalized_w_plus_wbar) {
    for (std::size_t n = 3; n <= 8; ++n) {
        const Eigen::VectorXcd expected = (weight_sum(n, {1}) + weight_sum(n, {static_cast<int>(n) - 1})) / std::sqrt(2.0);
        EXPECT_LT((qss::testing::to_vec(g_state(n)) - expected).norm(), 1e-14) << n;
    }
}

TEST(States, g2_is_the_bell_state) {
    const PureState g2 = g_state(2);
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(g2[1].real(), r, 1e-15);
    EXPECT_NEAR(g2[2].real(), r, 1e-15);
    EXPECT_NEAR(std::abs(g2[0]) + std::abs(g2[3]), 0.0, 1e-15);
}

TEST(States, g4_is_a_rotated_ghz) {
    const PureState target = PureState::normalized(4, [] {
        const Eigen::VectorXcd plus = Eigen::VectorXcd::Constant(16, 0.25);
        Eigen::VectorXcd minus(16);
        for (int b = 0; b < 16; ++b) {
            minus(b) = (std::popcount(static_cast<unsigned>(b)) % 2 ? -0.25 : 0.25);
        }
        const Eigen::VectorXcd v = (plus - minus) / std::sqrt(2.0);
        return std::vector<cplx>(v.data(), v.data() + v.size());
    }());
    EXPECT_LT(g_state(4).distance_up_to_phase(target), 1e-10);
}

TEST(States, carrier_correlation_identities) {
    for (std::size_t m = 1; m <= 4; ++m) {
        const std::size_t n = 2 * m;
        const PureState g = g_state(n);
        const double y_sign = (m % 2 == 1) ? 1.0 : -1.0;  // (-1)^{m+1}
        EXPECT_NEAR(expectation(g, PauliString::uniform(n, PauliAxis::X)), 1.0, 1e-10) << n;
        EXPECT_NEAR(expectation(g, PauliString::uniform(n, PauliAxis::Y)), y_sign, 1e-10) << n;
        EXPECT_NEAR(qss::testing::dense_expectation(g, uniform_label(n, 'Y')), y_sign, 1e-10) << n;
    }
    for (std::size_t n : {3u, 5u, 7u}) {
        EXPECT_NEAR(expectation(g_state(n), PauliString::uniform(n, PauliAxis::Y)), 0.0, 1e-10) << n;
    }
}

TEST(States, ghz_y_parity_sign) {
    for (std::size_t m = 1; m <= 4; ++m) {
        const std::size_t n = 2 * m;
        const double sign = (m % 2 == 1) ? -1.0 : 1.0;  // (-1)^m
        EXPECT_NEAR(qss::testing::dense_expectation(ghz_state(n), uniform_label(n, 'Y')), sign, 1e-12);
        EXPECT_NEAR(qss::testing::dense_expectation(ghz_state(n), uniform_label(n, 'X')), 1.0, 1e-12);
    }
}

TEST(States, xi_branches_rebuild_the_carrier) {
    for (std::size_t m = 1; m <= 4; ++m) {
        const auto [xi, xibar] = xi_states(m);
        const PureState zero = make_basis_state(1, "0");
        const PureState one = make_basis_state(1, "1");
        const Eigen::VectorXcd rebuilt =
            (qss::testing::to_vec(zero.tensor(xi)) + qss::testing::to_vec(one.tensor(xibar))) / std::sqrt(2.0);
        EXPECT_LT((rebuilt - qss::testing::to_vec(g_state(2 * m))).norm(), 1e-14) << m;
        EXPECT_NEAR(std::abs(xi.inner(xibar)), 0.0, 1e-15);
    }
}

TEST(States, v_states_split_the_last_qubit) {
    for (std::size_t n = 3; n <= 7; ++n) {
        const auto [v0, v1] = v_states(n);
        const PureState zero = make_basis_state(1, "0");
        const PureState one = make_basis_state(1, "1");
        const Eigen::VectorXcd rebuilt =
            (qss::testing::to_vec(v0.tensor(zero)) + qss::testing::to_vec(v1.tensor(one))) / std::sqrt(2.0);
        EXPECT_LT((rebuilt - qss::testing::to_vec(g_state(n))).norm(), 1e-14) << n;
    }
}

TEST(States, g_state_is_permutation_symmetric) {
    const PureState g = g_state(5);
    // swapping qubits 0 and 3 permutes basis indices; amplitudes depend only on weight
    for (std::size_t i = 0; i < g.dim(); ++i) {
        const std::size_t b0 = (i >> 4) & 1u;
        const std::size_t b3 = (i >> 1) & 1u;
        std::size_t j = i & ~((std::size_t{1} << 4) | (std::size_t{1} << 1));
        j |= (b3 << 4) | (b0 << 1);
        EXPECT_EQ(g[i], g[j]);
    }
}

TEST(States, x_product_state_is_x_eigenstate) {
    for (int sign : {1, -1}) {
        const PureState s = x_product_state(4, sign);
        for (std::size_t q = 0; q < 4; ++q) {
            std::string label(4, 'I');
            label[q] = 'X';
            EXPECT_NEAR(expectation(s, PauliString::parse(label)), sign, 1e-14);
        }
    }
}

TEST(States, white_noise_mixture) {
    const NoisyState noisy = add_white_noise(ghz_state(3), 0.25);
    const CMatrix expected = 0.25 * qss::testing::projector(qss::testing::to_vec(ghz_state(3))) +
                             0.75 / 8.0 * CMatrix::Identity(8, 8);
    EXPECT_LT((noisy.realized.matrix() - expected).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_EQ(noisy.visibility, 0.25);
    expect_error(ErrorKind::InvalidArgument, [] { add_white_noise(ghz_state(3), 1.5); });
}

TEST(States, carrier_names_round_trip) {
    for (CarrierFamily f : {CarrierFamily::G, CarrierFamily::GHZ}) {
        EXPECT_EQ(carrier_from_string(to_string(f)), f);
    }
    expect_error(ErrorKind::InvalidArgument, [] { carrier_from_string("w"); });
    EXPECT_LT(carrier_state(CarrierFamily::GHZ, 3).distance_up_to_phase(ghz_state(3)), 1e-15);
}
