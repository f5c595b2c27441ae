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

#include "qss/protocol.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "qss/kernels.hpp"
#include "test_util.hpp"

using namespace qss;
using qss::testing::expect_error;

namespace {

ProtocolConfig config(std::size_t m, std::size_t rounds, double phi, std::uint64_t seed,
                      CarrierFamily carrier = CarrierFamily::G) {
    ProtocolConfig c;
    c.m = m;
    c.rounds = rounds;
    c.scenario = AttackScenario{carrier, m, phi};
    c.seed = seed;
    return c;
}

bool same_records(const ProtocolTranscript &a, const ProtocolTranscript &b) {
    if (a.records.size() != b.records.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        if (a.records[i].bases != b.records[i].bases || a.records[i].outcomes.values() != b.records[i].outcomes.values()) {
            return false;
        }
    }
    return a.alice_key == b.alice_key && a.bob_product_key == b.bob_product_key;
}

double five_sigma(double p, std::size_t n) { return 5.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n)); }

}  // namespace

TEST(Protocol, runs_are_deterministic_per_seed) {
    const ProtocolTranscript a = run_protocol(config(3, 3000, 0.4, 7));
    const ProtocolTranscript b = run_protocol(config(3, 3000, 0.4, 7));
    EXPECT_TRUE(same_records(a, b));
    const ProtocolTranscript c = run_protocol(config(3, 3000, 0.4, 8));
    EXPECT_FALSE(same_records(a, c));
}

TEST(Protocol, runs_do_not_depend_on_thread_count) {
    const int saved = kernels::max_threads();
    kernels::set_max_threads(1);
    const ProtocolTranscript a = run_protocol(config(2, 2000, 0.9, 3));
    kernels::set_max_threads(4);
    const ProtocolTranscript b = run_protocol(config(2, 2000, 0.9, 3));
    kernels::set_max_threads(saved);
    EXPECT_TRUE(same_records(a, b));
}

TEST(Protocol, sifting_keeps_uniform_basis_rounds) {
    const ProtocolTranscript t = run_protocol(config(2, 20000, 0.0, 11));
    std::size_t sifted = 0;
    for (const RoundRecord &r : t.records) {
        bool uniform = true;
        for (PauliAxis a : r.bases) {
            uniform = uniform && a == r.bases[0];
        }
        EXPECT_EQ(r.sifted, uniform);
        EXPECT_EQ(r.bases.size(), 4u);
        if (r.sifted) {
            ++sifted;
            EXPECT_EQ(r.basis_label, r.bases[0] == PauliAxis::X ? BasisLabel::X : BasisLabel::Y);
        } else {
            EXPECT_EQ(r.basis_label, BasisLabel::Mixed);
        }
    }
    EXPECT_EQ(sifted, t.sift_count);
    EXPECT_EQ(t.alice_key.size(), sifted);
    const double expected = 1.0 / 8.0;  // 2^{1 - 2m}
    EXPECT_NEAR(sift_rate(t), expected, five_sigma(expected, t.records.size()));
}

TEST(Protocol, honest_runs_reconstruct_the_key_exactly) {
    for (CarrierFamily carrier : {CarrierFamily::G, CarrierFamily::GHZ}) {
        for (std::size_t m : {2u, 3u}) {
            const ProtocolTranscript t = run_protocol(config(m, 20000, 0.0, 5, carrier));
            const KeyReconstruction k = reconstruct_key(t);
            EXPECT_EQ(k.error_rate, 0.0);
            EXPECT_GT(k.x_rounds, 0u);
            EXPECT_GT(k.y_rounds, 0u);
            EXPECT_EQ(k.y_errors, 0u);  // checks the Y-basis parity sign
            EXPECT_EQ(k.alice_bits, k.bob_bits);
        }
    }
}

TEST(Protocol, parity_holds_round_by_round) {
    const ProtocolTranscript t = run_protocol(config(2, 5000, 0.0, 9));
    for (const RoundRecord &r : t.records) {
        if (r.sifted) {
            const int sign = r.basis_label == BasisLabel::X ? 1 : -1;  // G carrier, m = 2
            EXPECT_EQ(r.outcomes.product(), sign);
        }
    }
}

TEST(Protocol, error_rates_follow_the_attack_angle) {
    for (double phi : {kQuarterPi, kHalfPi}) {
        const ProtocolTranscript t = run_protocol(config(2, 40000, phi, 13));
        const KeyReconstruction k = reconstruct_key(t);
        const double q = qber_x(phi);
        EXPECT_NEAR(k.x_error_rate(), q, five_sigma(q, k.x_rounds) + 1e-12) << phi;
        EXPECT_NEAR(k.y_error_rate(), q, five_sigma(q, k.y_rounds) + 1e-12) << phi;
        EXPECT_EQ(k.x_rounds + k.y_rounds, t.sift_count);
    }
}

TEST(Protocol, alice_marginal_is_unaffected_by_the_attack) {
    for (double phi : {0.0, 0.8, kHalfPi}) {
        const ProtocolTranscript t = run_protocol(config(2, 20000, phi, 17));
        std::size_t plus = 0;
        for (const RoundRecord &r : t.records) {
            plus += r.outcomes[0] == 1 ? 1 : 0;
        }
        EXPECT_NEAR(static_cast<double>(plus) / 20000.0, 0.5, five_sigma(0.5, 20000)) << phi;
    }
}

TEST(Protocol, exact_error_and_information_are_monotone) {
    double last_q = -1.0;
    double last_i = 2.0;
    for (int k = 0; k <= 20; ++k) {
        const double phi = kHalfPi * k / 20.0;
        const TripartiteState t = attacked_state({CarrierFamily::G, 2, phi});
        const double q = exact_qber(t, PauliAxis::X);
        const double i = exact_mutual_info_ab(t);
        EXPECT_GE(q, last_q - 1e-15);
        EXPECT_LE(i, last_i + 1e-15);
        last_q = q;
        last_i = i;
    }
}

TEST(Protocol, mutual_information_estimator) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> copies;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> independent;
    Rng rng(41);
    for (int i = 0; i < 4000; ++i) {
        const std::uint64_t a = rng.coin() ? 1 : 0;
        copies.emplace_back(a, a);
        independent.emplace_back(a, rng.coin() ? 1 : 0);
    }
    const MutualInfoEstimate same = estimate_mutual_info(copies);
    EXPECT_NEAR(same.plug_in, 1.0, 1e-3);
    EXPECT_EQ(same.samples, 4000u);
    const MutualInfoEstimate indep = estimate_mutual_info(independent);
    EXPECT_LT(indep.plug_in, 5e-3);
    EXPECT_LT(std::abs(indep.miller_madow), std::max(indep.plug_in, 1e-3));
    const std::vector<std::pair<std::uint64_t, std::uint64_t>> one{{0, 0}};
    expect_error(ErrorKind::InvalidArgument, [&] { estimate_mutual_info(one); });
}

TEST(Protocol, coalition_estimates_track_exact_values) {
    const ProtocolTranscript t = run_protocol(config(2, 80000, 0.0, 23));
    for (const auto &subset : default_coalitions(2)) {
        const double exact = exact_coalition_info(t.config.scenario, subset);
        const MutualInfoEstimate est = coalition_info(t, subset);
        EXPECT_NEAR(est.miller_madow, exact, 0.03) << subset.size();
        EXPECT_EQ(est.samples, t.sift_count);
    }
}

TEST(Protocol, ghz_coalitions_learn_nothing) {
    const ProtocolTranscript t = run_protocol(config(3, 100000, 0.0, 29, CarrierFamily::GHZ));
    for (const auto &subset : default_coalitions(3)) {
        EXPECT_NEAR(exact_coalition_info(t.config.scenario, subset), 0.0, 1e-12);
        EXPECT_LE(coalition_info(t, subset).miller_madow, 0.02);
    }
}

TEST(Protocol, g_coalitions_see_alices_bit_through_two_body_correlations) {
    // <X_A X_B> = 1/3 on G_6, so a single Bob already carries information about Alice's bit.
    const std::vector<std::size_t> one{1};
    const double exact = exact_coalition_info({CarrierFamily::G, 3, 0.0}, one);
    const double p = (1.0 + 1.0 / 3.0) / 2.0;
    EXPECT_NEAR(exact, 1.0 - qss::testing::binary_entropy_ref(p), 1e-12);
}

TEST(Protocol, default_coalitions) {
    const auto c3 = default_coalitions(3);
    ASSERT_EQ(c3.size(), 3u);
    EXPECT_EQ(c3[0].size(), 1u);
    EXPECT_EQ(c3[1].size(), 2u);
    EXPECT_EQ(c3[2].size(), 4u);
    expect_error(ErrorKind::InvalidArgument, [] { default_coalitions(1); });
}

TEST(Protocol, rejects_bad_configurations) {
    expect_error(ErrorKind::InvalidArgument, [] { run_protocol(config(1, 10, 0.0, 0)); });
    expect_error(ErrorKind::BudgetExceeded, [] { run_protocol(config(10, 10, 0.0, 0)); });
    expect_error(ErrorKind::InvalidArgument, [] { run_protocol(config(2, 0, 0.0, 0)); });
    ProtocolConfig mismatch = config(2, 10, 0.0, 0);
    mismatch.scenario.m = 3;
    expect_error(ErrorKind::InvalidArgument, [&] { run_protocol(mismatch); });

    ProtocolTranscript empty;
    empty.config = config(2, 1, 0.0, 0);
    expect_error(ErrorKind::EmptySiftedSet, [&] { reconstruct_key(empty); });

    const ProtocolTranscript t = run_protocol(config(2, 100, 0.0, 0));
    const std::vector<std::size_t> all{1, 2, 3};
    const std::vector<std::size_t> alice{0};
    const std::vector<std::size_t> dup{1, 1};
    expect_error(ErrorKind::InvalidArgument, [&] { coalition_info(t, all); });
    expect_error(ErrorKind::InvalidArgument, [&] { coalition_info(t, alice); });
    expect_error(ErrorKind::InvalidArgument, [&] { coalition_info(t, dup); });
}
