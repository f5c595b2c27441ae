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

// Monte Carlo run of the secret-sharing procedure: random X/Y bases per party, measurement of
// the (possibly attacked) carrier, sifting, key reconstruction and coalition information.

#ifndef QSS_PROTOCOL_HPP
#define QSS_PROTOCOL_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qss/attack.hpp"
#include "qss/types.hpp"

namespace qss {

struct ProtocolConfig {
    std::size_t m = 2;
    std::size_t rounds = 1;
    AttackScenario scenario;  // scenario.m must equal m; phi = 0 is the honest run
    std::uint64_t seed = 0;

    void validate() const;
    std::size_t parties() const { return 2 * m; }
};

enum class BasisLabel { X, Y, Mixed };

char basis_label_char(BasisLabel label);

struct RoundRecord {
    std::vector<PauliAxis> bases;  // one per party, X or Y
    Outcome outcomes;              // one per party, Alice first
    bool sifted = false;
    BasisLabel basis_label = BasisLabel::Mixed;
};

struct ProtocolTranscript {
    ProtocolConfig config;
    std::vector<RoundRecord> records;
    std::vector<std::uint8_t> alice_key;
    std::vector<std::uint8_t> bob_product_key;
    std::size_t sift_count = 0;
};

/// Runs `config.rounds` independent rounds. Round r draws from Rng(seed).split(r), so the
/// transcript does not depend on the thread count.
ProtocolTranscript run_protocol(const ProtocolConfig &config);

struct KeyReconstruction {
    std::vector<std::uint8_t> alice_bits;
    std::vector<std::uint8_t> bob_bits;
    double error_rate;
    std::size_t x_rounds;
    std::size_t x_errors;
    std::size_t y_rounds;
    std::size_t y_errors;

    double x_error_rate() const;
    double y_error_rate() const;
};

/// Recomputes both keys from the sifted records. Throws EmptySiftedSet without sifted rounds.
KeyReconstruction reconstruct_key(const ProtocolTranscript &t);

struct MutualInfoEstimate {
    double plug_in;       // empirical-frequency estimate, bits
    double miller_madow;  // plug-in with the first-order bias correction, bits
    std::size_t samples;
};

/// Mutual information between the two columns of (label, symbol) pairs. Needs >= 2 samples.
MutualInfoEstimate estimate_mutual_info(std::span<const std::pair<std::uint64_t, std::uint64_t>> samples);

/// Information a coalition of Bobs (qubit indices in 1..2m-1, not all of them) holds about
/// Alice's sifted bit, from the round basis and the coalition's outcomes.
MutualInfoEstimate coalition_info(const ProtocolTranscript &t, std::span<const std::size_t> subset);

/// The same quantity from the exact Born distribution of the attacked state.
double exact_coalition_info(const AttackScenario &scenario, std::span<const std::size_t> subset);

/// Coalitions {1..k} for k in {1, 2, 4, ...} below 2m-1, plus the largest proper one.
std::vector<std::vector<std::size_t>> default_coalitions(std::size_t m);

/// Fraction of rounds kept by sifting.
double sift_rate(const ProtocolTranscript &t);

}  // namespace qss

#endif  // QSS_PROTOCOL_HPP
