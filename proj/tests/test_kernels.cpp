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

#include "qss/kernels.hpp"

#include <gtest/gtest.h>

#include "qss/core.hpp"
#include "test_util.hpp"

using namespace qss;
namespace k = qss::kernels;

namespace {

// Large enough that the parallel kernels actually fork.
constexpr std::size_t kBigQubits = 13;

std::vector<std::size_t> sample_keep(std::size_t n) { return {1, 4, n - 2}; }

double max_diff(std::span<const cplx> a, std::span<const cplx> b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

const std::vector<std::string> kLabels = {"XYZIXYZIXYZIX", "ZZZZZZZZZZZZZ", "YIIIIIIIIIIIY", "IIIIIIXIIIIII"};

}  // namespace

TEST(Kernels, apply_pauli_serial_parallel_agree) {
    Rng rng(1);
    const PureState s = qss::testing::random_state(kBigQubits, rng);
    for (const auto &label : kLabels) {
        const auto masks = k::PauliMasks::from(PauliString::parse(label));
        std::vector<cplx> a(s.dim());
        std::vector<cplx> b(s.dim());
        k::serial::apply_pauli(s.amplitudes(), a, masks);
        k::parallel::apply_pauli(s.amplitudes(), b, masks);
        EXPECT_EQ(max_diff(a, b), 0.0) << label;
    }
}

TEST(Kernels, apply_pauli_matches_dense_operator) {
    Rng rng(2);
    const PureState s = qss::testing::random_state(4, rng);
    for (const std::string label : {"XYZI", "YYYY", "IZXY"}) {
        std::vector<cplx> out(s.dim());
        k::serial::apply_pauli(s.amplitudes(), out, k::PauliMasks::from(PauliString::parse(label)));
        const Eigen::VectorXcd expected = qss::testing::dense_pauli(label) * qss::testing::to_vec(s);
        for (std::size_t i = 0; i < s.dim(); ++i) {
            EXPECT_NEAR(std::abs(out[i] - expected(static_cast<Eigen::Index>(i))), 0.0, 1e-14);
        }
    }
}

TEST(Kernels, expectation_serial_parallel_agree) {
    Rng rng(3);
    const PureState s = qss::testing::random_state(kBigQubits, rng);
    for (const auto &label : kLabels) {
        const auto masks = k::PauliMasks::from(PauliString::parse(label));
        EXPECT_NEAR(std::abs(k::serial::expectation_pure(s.amplitudes(), masks) -
                             k::parallel::expectation_pure(s.amplitudes(), masks)),
                    0.0, 1e-13);
    }
}

TEST(Kernels, parallel_reductions_are_thread_count_independent) {
    Rng rng(4);
    const PureState s = qss::testing::random_state(kBigQubits, rng);
    const auto masks = k::PauliMasks::from(PauliString::parse(kLabels[0]));
    const int saved = k::max_threads();
    k::set_max_threads(1);
    const cplx one = k::parallel::expectation_pure(s.amplitudes(), masks);
    k::set_max_threads(4);
    const cplx four = k::parallel::expectation_pure(s.amplitudes(), masks);
    k::set_max_threads(saved);
    EXPECT_EQ(one, four);
}

TEST(Kernels, density_expectation_matches_dense_trace) {
    Rng rng(5);
    const CMatrix rho = qss::testing::random_density(4, rng);
    for (const std::string label : {"XYZI", "YYYY", "ZIIX"}) {
        const auto masks = k::PauliMasks::from(PauliString::parse(label));
        const cplx expected = (rho * qss::testing::dense_pauli(label)).trace();
        EXPECT_NEAR(std::abs(k::serial::expectation_density(rho, masks) - expected), 0.0, 1e-13);
        EXPECT_NEAR(std::abs(k::parallel::expectation_density(rho, masks) - expected), 0.0, 1e-13);
    }
}

TEST(Kernels, apply_gate_serial_parallel_agree) {
    Rng rng(6);
    const PureState s = qss::testing::random_state(kBigQubits, rng);
    for (std::size_t q : {std::size_t{0}, std::size_t{6}, kBigQubits - 1}) {
        for (PauliAxis axis : {PauliAxis::X, PauliAxis::Y}) {
            std::vector<cplx> a(s.amplitudes().begin(), s.amplitudes().end());
            std::vector<cplx> b = a;
            k::serial::apply_gate(a, kBigQubits, q, basis_change(axis));
            k::parallel::apply_gate(b, kBigQubits, q, basis_change(axis));
            EXPECT_EQ(max_diff(a, b), 0.0);
        }
    }
}

TEST(Kernels, conjugate_gate_matches_dense_similarity) {
    Rng rng(7);
    const CMatrix rho = qss::testing::random_density(3, rng);
    const k::Gate2 g = basis_change(PauliAxis::Y);
    CMatrix u2(2, 2);
    u2 << g[0], g[1], g[2], g[3];
    const CMatrix u = qss::testing::kron(qss::testing::kron(CMatrix::Identity(2, 2), u2), CMatrix::Identity(2, 2));
    const CMatrix expected = u * rho * u.adjoint();
    CMatrix a = rho;
    CMatrix b = rho;
    k::serial::conjugate_gate(a, 3, 1, g);
    k::parallel::conjugate_gate(b, 3, 1, g);
    EXPECT_LT((a - expected).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((b - expected).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Kernels, partial_trace_pure_serial_parallel_and_oracle) {
    Rng rng(8);
    const PureState s = qss::testing::random_state(kBigQubits, rng);
    const auto keep = sample_keep(kBigQubits);
    const k::IndexSplit split(kBigQubits, keep);
    const CMatrix a = k::serial::partial_trace_pure(s.amplitudes(), split);
    const CMatrix b = k::parallel::partial_trace_pure(s.amplitudes(), split);
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-14);

    const PureState small = qss::testing::random_state(5, rng);
    const std::vector<std::size_t> keep_small{0, 3};
    const CMatrix oracle =
        qss::testing::brute_partial_trace(qss::testing::projector(qss::testing::to_vec(small)), 5, keep_small);
    const CMatrix got = k::parallel::partial_trace_pure(small.amplitudes(), k::IndexSplit(5, keep_small));
    EXPECT_LT((got - oracle).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Kernels, partial_trace_density_serial_parallel_and_oracle) {
    Rng rng(9);
    const CMatrix rho = qss::testing::random_density(7, rng);
    const std::vector<std::size_t> keep{0, 2, 6};
    const k::IndexSplit split(7, keep);
    const CMatrix a = k::serial::partial_trace_density(rho, split);
    const CMatrix b = k::parallel::partial_trace_density(rho, split);
    const CMatrix oracle = qss::testing::brute_partial_trace(rho, 7, keep);
    EXPECT_LT((a - oracle).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_LT((b - oracle).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Kernels, marginal_probabilities_serial_parallel_agree) {
    Rng rng(10);
    const PureState s = qss::testing::random_state(kBigQubits, rng);
    const k::IndexSplit split(kBigQubits, sample_keep(kBigQubits));
    const auto a = k::serial::marginal_probabilities(s.amplitudes(), split);
    const auto b = k::parallel::marginal_probabilities(s.amplitudes(), split);
    ASSERT_EQ(a.size(), 8u);
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_NEAR(a[i], b[i], 1e-15);
        total += a[i];
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Kernels, expectation_batch_serial_parallel_agree) {
    Rng rng(11);
    const PureState s = qss::testing::random_state(8, rng);
    std::vector<k::PauliMasks> batch;
    for (const std::string label : {"XXXXXXXX", "YYYYYYYY", "ZZZZZZZZ", "XYZXYZXY", "IIIIIIIZ"}) {
        batch.push_back(k::PauliMasks::from(PauliString::parse(label)));
    }
    std::vector<cplx> a(batch.size());
    std::vector<cplx> b(batch.size());
    k::serial::expectation_batch(s.amplitudes(), batch, a);
    k::parallel::expectation_batch(s.amplitudes(), batch, b);
    EXPECT_EQ(max_diff(a, b), 0.0);

    const CMatrix rho = qss::testing::projector(qss::testing::to_vec(s));
    k::parallel::expectation_batch(rho, batch, b);
    EXPECT_LT(max_diff(a, b), 1e-13);
}

TEST(Kernels, index_split_orders_kept_and_traced_bits) {
    const std::vector<std::size_t> keep{2, 0};
    const k::IndexSplit split(3, keep);
    EXPECT_EQ(split.kept_dim(), 4u);
    EXPECT_EQ(split.traced_dim(), 2u);
    // kept qubits ascending (0, 2): r = 0b10 sets qubit 0, the MSB of a 3-qubit index
    EXPECT_EQ(split.index(0b10, 0), 0b100u);
    EXPECT_EQ(split.index(0b01, 1), 0b011u);
}
