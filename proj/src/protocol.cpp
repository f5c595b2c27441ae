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

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "qss/core.hpp"
#include "qss/error.hpp"
#include "qss/rng.hpp"

namespace qss {

namespace {

// Born tables for every basis combination are cached up to this many parties.
constexpr std::size_t kTableParties = 10;
constexpr std::size_t kMaxProtocolM = 9;

std::vector<std::size_t> party_qubits(std::size_t parties) {
    std::vector<std::size_t> q(parties);
    for (std::size_t k = 0; k < parties; ++k) {
        q[k] = k;
    }
    return q;
}

std::vector<PauliAxis> bases_from_mask(std::size_t mask, std::size_t parties) {
    std::vector<PauliAxis> bases(parties);
    for (std::size_t k = 0; k < parties; ++k) {
        bases[k] = ((mask >> (parties - 1 - k)) & 1u) ? PauliAxis::Y : PauliAxis::X;
    }
    return bases;
}

std::uint8_t bit_of_outcome(int value) { return value == 1 ? 0 : 1; }

// Alice's bit and the Bobs' reconstructed bit for a sifted round.
std::pair<std::uint8_t, std::uint8_t> key_bits(const RoundRecord &r, CarrierFamily carrier, std::size_t m) {
    int bob_product = 1;
    for (std::size_t k = 1; k < r.outcomes.size(); ++k) {
        bob_product *= r.outcomes[k];
    }
    const PauliAxis basis = r.basis_label == BasisLabel::X ? PauliAxis::X : PauliAxis::Y;
    const int predicted = key_parity_sign(carrier, m, basis) * bob_product;
    return {bit_of_outcome(r.outcomes[0]), bit_of_outcome(predicted)};
}

double entropy_of_counts(const std::map<std::uint64_t, std::size_t> &counts, double total) {
    double h = 0.0;
    for (const auto &[key, c] : counts) {
        const double p = static_cast<double>(c) / total;
        h -= p * std::log2(p);
    }
    return h;
}

void check_subset(std::size_t parties, std::span<const std::size_t> subset) {
    require(!subset.empty(), ErrorKind::InvalidArgument, "coalition must contain at least one Bob");
    require(subset.size() < parties - 1, ErrorKind::InvalidArgument,
            "coalition of all Bobs is key reconstruction, not a coalition");
    std::vector<std::size_t> sorted(subset.begin(), subset.end());
    std::sort(sorted.begin(), sorted.end());
    require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), ErrorKind::InvalidArgument,
            "coalition lists a Bob twice");
    require(sorted.front() >= 1 && sorted.back() < parties, ErrorKind::InvalidArgument,
            "coalition members must be Bob indices 1..2m-1");
}

}  // namespace

void ProtocolConfig::validate() const {
    require(m >= 2, ErrorKind::InvalidArgument, "protocol needs m >= 2 (at least four parties)");
    require(m <= kMaxProtocolM, ErrorKind::BudgetExceeded, "protocol limited to m <= 9");
    require(rounds >= 1, ErrorKind::InvalidArgument, "protocol needs at least one round");
    require(scenario.m == m, ErrorKind::InvalidArgument, "scenario and protocol disagree on m");
    scenario.validate();
}

char basis_label_char(BasisLabel label) {
    switch (label) {
        case BasisLabel::X: return 'X';
        case BasisLabel::Y: return 'Y';
        case BasisLabel::Mixed: return 'M';
    }
    return '?';
}

ProtocolTranscript run_protocol(const ProtocolConfig &config) {
    config.validate();
    const std::size_t parties = config.parties();
    const TripartiteState state = attacked_state(config.scenario);
    const std::vector<std::size_t> qubits = party_qubits(parties);

    std::vector<std::vector<double>> table;
    if (parties <= kTableParties) {
        table.resize(std::size_t{1} << parties);
        const auto combos = static_cast<std::int64_t>(table.size());
#pragma omp parallel for schedule(dynamic, 4)
        for (std::int64_t c = 0; c < combos; ++c) {
            const auto mask = static_cast<std::size_t>(c);
            table[mask] = born_distribution(state.psi, qubits, bases_from_mask(mask, parties));
        }
    }

    const Rng master(config.seed);
    ProtocolTranscript t;
    t.config = config;
    t.records.resize(config.rounds);
    const auto rounds = static_cast<std::int64_t>(config.rounds);
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < rounds; ++r) {
        Rng rng = master.split(static_cast<std::uint64_t>(r));
        std::size_t mask = 0;
        for (std::size_t k = 0; k < parties; ++k) {
            mask = (mask << 1) | static_cast<std::size_t>(rng.coin());
        }
        RoundRecord &rec = t.records[static_cast<std::size_t>(r)];
        rec.bases = bases_from_mask(mask, parties);
        const std::size_t index = table.empty() ? sample_index(born_distribution(state.psi, qubits, rec.bases), rng)
                                                : sample_index(table[mask], rng);
        rec.outcomes = outcome_from_index(index, parties);
        const std::size_t all_y = (std::size_t{1} << parties) - 1;
        rec.sifted = mask == 0 || mask == all_y;
        rec.basis_label = mask == 0 ? BasisLabel::X : (mask == all_y ? BasisLabel::Y : BasisLabel::Mixed);
    }

    for (const RoundRecord &rec : t.records) {
        if (!rec.sifted) {
            continue;
        }
        const auto [a, b] = key_bits(rec, config.scenario.carrier, config.m);
        t.alice_key.push_back(a);
        t.bob_product_key.push_back(b);
        ++t.sift_count;
    }
    return t;
}

double KeyReconstruction::x_error_rate() const {
    return x_rounds == 0 ? 0.0 : static_cast<double>(x_errors) / static_cast<double>(x_rounds);
}

double KeyReconstruction::y_error_rate() const {
    return y_rounds == 0 ? 0.0 : static_cast<double>(y_errors) / static_cast<double>(y_rounds);
}

KeyReconstruction reconstruct_key(const ProtocolTranscript &t) {
    KeyReconstruction k{{}, {}, 0.0, 0, 0, 0, 0};
    for (const RoundRecord &rec : t.records) {
        if (!rec.sifted) {
            continue;
        }
        const auto [a, b] = key_bits(rec, t.config.scenario.carrier, t.config.m);
        k.alice_bits.push_back(a);
        k.bob_bits.push_back(b);
        const bool error = a != b;
        if (rec.basis_label == BasisLabel::X) {
            ++k.x_rounds;
            k.x_errors += error;
        } else {
            ++k.y_rounds;
            k.y_errors += error;
        }
    }
    require(!k.alice_bits.empty(), ErrorKind::EmptySiftedSet, "transcript has no sifted rounds");
    k.error_rate = static_cast<double>(k.x_errors + k.y_errors) / static_cast<double>(k.alice_bits.size());
    return k;
}

MutualInfoEstimate estimate_mutual_info(std::span<const std::pair<std::uint64_t, std::uint64_t>> samples) {
    require(samples.size() >= 2, ErrorKind::InvalidArgument, "mutual information needs at least two samples");
    std::map<std::uint64_t, std::size_t> labels;
    std::map<std::uint64_t, std::size_t> symbols;
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> joint;
    for (const auto &s : samples) {
        ++labels[s.first];
        ++symbols[s.second];
        ++joint[s];
    }
    const double n = static_cast<double>(samples.size());
    double h_joint = 0.0;
    for (const auto &[key, c] : joint) {
        const double p = static_cast<double>(c) / n;
        h_joint -= p * std::log2(p);
    }
    const double plug_in = std::max(0.0, entropy_of_counts(labels, n) + entropy_of_counts(symbols, n) - h_joint);
    // Miller-Madow: each entropy gains (K - 1)/(2 n ln 2) for K occupied bins.
    const auto bins = [](std::size_t k) { return static_cast<double>(k) - 1.0; };
    const double correction =
        (bins(labels.size()) + bins(symbols.size()) - bins(joint.size())) / (2.0 * n * std::numbers::ln2);
    return MutualInfoEstimate{plug_in, plug_in + correction, samples.size()};
}

MutualInfoEstimate coalition_info(const ProtocolTranscript &t, std::span<const std::size_t> subset) {
    check_subset(t.config.parties(), subset);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> samples;
    samples.reserve(t.sift_count);
    for (const RoundRecord &rec : t.records) {
        if (!rec.sifted) {
            continue;
        }
        std::uint64_t symbol = rec.basis_label == BasisLabel::Y ? 1 : 0;
        for (std::size_t q : subset) {
            symbol = (symbol << 1) | bit_of_outcome(rec.outcomes[q]);
        }
        samples.emplace_back(bit_of_outcome(rec.outcomes[0]), symbol);
    }
    return estimate_mutual_info(samples);
}

double exact_coalition_info(const AttackScenario &scenario, std::span<const std::size_t> subset) {
    check_subset(scenario.parties(), subset);
    const TripartiteState t = attacked_state(scenario);
    std::vector<std::size_t> qubits{0};
    qubits.insert(qubits.end(), subset.begin(), subset.end());
    const std::size_t k = subset.size();
    // joint[basis][alice][coalition outcome index]
    std::vector<double> p_alice(2, 0.0);
    std::vector<double> p_symbol(2 << k, 0.0);
    std::vector<double> p_joint(4 << k, 0.0);
    for (std::size_t b = 0; b < 2; ++b) {
        const std::vector<PauliAxis> bases(qubits.size(), b == 0 ? PauliAxis::X : PauliAxis::Y);
        const std::vector<double> probs = born_distribution(t.psi, qubits, bases);
        for (std::size_t idx = 0; idx < probs.size(); ++idx) {
            const double p = 0.5 * probs[idx];
            const std::size_t alice = idx >> k;
            const std::size_t symbol = (b << k) | (idx & ((std::size_t{1} << k) - 1));
            p_alice[alice] += p;
            p_symbol[symbol] += p;
            p_joint[(alice << (k + 1)) | symbol] += p;
        }
    }
    const auto h = [](const std::vector<double> &dist) {
        double s = 0.0;
        for (double p : dist) {
            if (p > 0.0) {
                s -= p * std::log2(p);
            }
        }
        return s;
    };
    return std::max(0.0, h(p_alice) + h(p_symbol) - h(p_joint));
}

std::vector<std::vector<std::size_t>> default_coalitions(std::size_t m) {
    require(m >= 2, ErrorKind::InvalidArgument, "coalitions need m >= 2");
    const std::size_t largest = 2 * m - 2;
    std::vector<std::size_t> sizes;
    for (std::size_t s = 1; s < largest; s *= 2) {
        sizes.push_back(s);
    }
    sizes.push_back(largest);
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t s : sizes) {
        std::vector<std::size_t> c(s);
        for (std::size_t j = 0; j < s; ++j) {
            c[j] = j + 1;
        }
        out.push_back(std::move(c));
    }
    return out;
}

double sift_rate(const ProtocolTranscript &t) {
    return t.records.empty() ? 0.0 : static_cast<double>(t.sift_count) / static_cast<double>(t.records.size());
}

}  // namespace qss
