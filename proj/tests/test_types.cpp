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

#include "qss/types.hpp"

#include <gtest/gtest.h>

#include <complex>
#include <numbers>

#include "qss/rng.hpp"
#include "test_util.hpp"

using namespace qss;
using qss::testing::expect_error;

TEST(PauliString, parse_and_print) {
    const PauliString p = PauliString::parse("XIYZ");
    EXPECT_EQ(p.n_qubits(), 4u);
    EXPECT_EQ(p.weight(), 3u);
    EXPECT_EQ(p.str(), "XIYZ");
    EXPECT_EQ(p.y_count(), 1u);
    // qubit 0 is the most significant bit
    EXPECT_EQ(p.flip_mask(), 0b1010u);
    EXPECT_EQ(p.sign_mask(), 0b0011u);
}

TEST(PauliString, uniform_and_on) {
    EXPECT_EQ(PauliString::uniform(3, PauliAxis::Y).str(), "YYY");
    const std::vector<std::size_t> qubits{3, 0};
    const std::vector<PauliAxis> axes{PauliAxis::Z, PauliAxis::X};
    EXPECT_EQ(PauliString::on(5, qubits, axes).str(), "XIIZI");
}

TEST(PauliString, rejects_bad_input) {
    expect_error(ErrorKind::InvalidArgument, [] { PauliString::parse("XQ"); });
    const std::vector<std::size_t> qubits{7};
    const std::vector<PauliAxis> axes{PauliAxis::Z};
    expect_error(ErrorKind::InvalidDimension, [&] { PauliString::on(3, qubits, axes); });
}

TEST(Outcome, validates_and_multiplies) {
    const Outcome o(std::vector<int>{1, -1, -1});
    EXPECT_EQ(o.product(), 1);
    EXPECT_EQ(o[1], -1);
    expect_error(ErrorKind::InvalidArgument, [] { Outcome(std::vector<int>{1, 0}); });
}

TEST(PureState, validates_norm_and_length) {
    expect_error(ErrorKind::InvalidDimension, [] { PureState(2, std::vector<cplx>(3, 0.5)); });
    expect_error(ErrorKind::InvalidState, [] { PureState(1, std::vector<cplx>{1.0, 1.0}); });
    expect_error(ErrorKind::InvalidState, [] { PureState::normalized(1, std::vector<cplx>{0.0, 0.0}); });
    const PureState s = PureState::normalized(1, std::vector<cplx>{3.0, 4.0});
    EXPECT_NEAR(s[0].real(), 0.6, 1e-15);
    EXPECT_NEAR(s.norm(), 1.0, 1e-15);
}

TEST(PureState, distance_up_to_phase_ignores_global_phase) {
    Rng rng(5);
    const PureState a = qss::testing::random_state(3, rng);
    std::vector<cplx> rotated(a.amplitudes().begin(), a.amplitudes().end());
    for (cplx &z : rotated) {
        z *= std::polar(1.0, 0.83);
    }
    EXPECT_LT(a.distance_up_to_phase(PureState(3, rotated)), 1e-14);
    const PureState b = qss::testing::random_state(3, rng);
    EXPECT_GT(a.distance_up_to_phase(b), 1e-3);
}

TEST(PureState, tensor_matches_kron) {
    Rng rng(6);
    const PureState a = qss::testing::random_state(2, rng);
    const PureState b = qss::testing::random_state(1, rng);
    const Eigen::VectorXcd expected = qss::testing::kron(qss::testing::to_vec(a), qss::testing::to_vec(b));
    const PureState ab = a.tensor(b);
    EXPECT_LT((qss::testing::to_vec(ab) - expected).norm(), 1e-15);
}

TEST(DensityMatrix, rejects_unphysical_matrices) {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = 1.0;
    m(0, 1) = 0.5;
    expect_error(ErrorKind::InvalidState, [&] { DensityMatrix(1, m); });  // not Hermitian
    m(1, 0) = 0.5;
    m(0, 0) = 0.5;
    expect_error(ErrorKind::InvalidState, [&] { DensityMatrix(1, m); });  // trace 0.5
    m(0, 0) = 1.2;
    m(1, 1) = -0.2;
    m(0, 1) = m(1, 0) = 0.0;
    expect_error(ErrorKind::InvalidState, [&] { DensityMatrix(1, m); });  // negative eigenvalue
}

TEST(DensityMatrix, metrics) {
    const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
    EXPECT_NEAR(mixed.purity(), 0.25, 1e-15);
    const DensityMatrix zero = DensityMatrix::from_pure(PureState(1, std::vector<cplx>{1.0, 0.0}));
    const DensityMatrix one = DensityMatrix::from_pure(PureState(1, std::vector<cplx>{0.0, 1.0}));
    EXPECT_NEAR(zero.trace_distance(one), 1.0, 1e-14);
    const std::vector<double> w{0.5, 0.5};
    const std::vector<DensityMatrix> parts{zero, one};
    const DensityMatrix half = DensityMatrix::mixture(w, parts);
    EXPECT_NEAR(half.max_abs_diff(DensityMatrix::maximally_mixed(1)), 0.0, 1e-15);
    EXPECT_NEAR(half.trace_distance(zero), 0.5, 1e-14);
    const std::vector<double> bad{0.7, 0.7};
    expect_error(ErrorKind::InvalidArgument, [&] { DensityMatrix::mixture(bad, parts); });
}

TEST(Rng, split_is_deterministic_and_independent_of_parent_draws) {
    Rng a(123);
    Rng b(123);
    for (int i = 0; i < 10; ++i) {
        a.next();
    }
    Rng ca = a.split(7);
    Rng cb = b.split(7);
    for (int i = 0; i < 20; ++i) {
        EXPECT_EQ(ca.next(), cb.next());
    }
    EXPECT_NE(b.split(1).next(), b.split(2).next());
    EXPECT_NE(Rng(1).next(), Rng(2).next());
}

TEST(Rng, uniform_and_gaussian_moments) {
    Rng rng(99);
    const int n = 200000;
    double su = 0.0;
    double sg = 0.0;
    double sg2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        su += u;
        const double g = rng.gaussian();
        sg += g;
        sg2 += g * g;
    }
    EXPECT_NEAR(su / n, 0.5, 5.0 * std::sqrt(1.0 / 12.0 / n));
    EXPECT_NEAR(sg / n, 0.0, 5.0 / std::sqrt(n));
    EXPECT_NEAR(sg2 / n, 1.0, 5.0 * std::sqrt(2.0 / n));
}
