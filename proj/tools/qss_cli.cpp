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

// qss: batch front end. Every command validates its flags, computes, and writes its outputs
// atomically. Exit codes: 0 ok, 2 usage error, 3 numerical invariant failure.

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qss/bell.hpp"
#include "qss/error.hpp"
#include "qss/io.hpp"
#include "qss/kernels.hpp"
#include "qss/protocol.hpp"
#include "qss/rdm.hpp"
#include "qss/states.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

using qss::io::Json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void usage_check(bool ok, const std::string &message) {
    if (!ok) {
        throw UsageError(message);
    }
}

double parse_number(const std::string &text) {
    double value = 0.0;
    const char *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    usage_check(ec == std::errc() && ptr == end && std::isfinite(value), "not a number: '" + text + "'");
    return value;
}

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

// "lo:hi:count" (inclusive, evenly spaced) or "a,b,c".
std::vector<double> parse_grid(const std::string &text, double scale) {
    std::vector<double> grid;
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        usage_check(parts.size() == 3, "grid must look like lo:hi:count");
        const double lo = parse_number(parts[0]) * scale;
        const double hi = parse_number(parts[1]) * scale;
        const double count = parse_number(parts[2]);
        usage_check(count >= 2 && count <= 100000 && count == std::floor(count), "grid count must be an integer >= 2");
        usage_check(lo <= hi, "grid needs lo <= hi");
        const auto k = static_cast<std::size_t>(count);
        for (std::size_t i = 0; i < k; ++i) {
            grid.push_back(i + 1 == k ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(k - 1));
        }
    } else {
        for (const std::string &p : split(text, ',')) {
            grid.push_back(parse_number(p) * scale);
        }
    }
    for (double phi : grid) {
        usage_check(phi >= -1e-12 && phi <= qss::kHalfPi + 1e-12, "grid angle outside [0, pi/2]");
    }
    return grid;
}

qss::CarrierFamily parse_carrier(const std::string &text) {
    usage_check(text == "g" || text == "ghz", "carrier/state must be 'g' or 'ghz'");
    return qss::carrier_from_string(text);
}

void apply_thread_env() {
    if (const char *env = std::getenv("QSS_THREADS")) {
        const std::string text(env);
        int threads = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), threads);
        usage_check(ec == std::errc() && ptr == text.data() + text.size() && threads >= 1,
                    "QSS_THREADS must be a positive integer");
        qss::kernels::set_max_threads(threads);
    }
}

Json frame_to_json(const qss::LocalFrame &frame) {
    Json parties = Json::array();
    for (std::size_t k = 0; k < frame.n(); ++k) {
        const auto &p = frame.plane(k);
        parties.push_back(Json{{"u", {p(0, 0), p(1, 0), p(2, 0)}}, {"v", {p(0, 1), p(1, 1), p(2, 1)}}});
    }
    return parties;
}

struct Options {
    bool degrees = false;

    std::size_t m = 3;
    std::size_t rounds = 100000;
    std::string phi = "0";
    std::string carrier = "g";
    std::uint64_t seed = 0;
    std::string out;

    std::string phi_grid = "0:1.5707963267948966:21";

    std::string state = "g";
    std::size_t n = 6;
    double noise = 1.0;
    std::string frame = "default";
    std::size_t restarts = 64;

    std::size_t n_min = 4;
    std::size_t n_max = 16;
};

double angle_scale(const Options &o) { return o.degrees ? std::numbers::pi / 180.0 : 1.0; }

void cmd_run_protocol(const Options &o) {
    usage_check(o.m >= 2, "--m must be >= 2");
    usage_check(o.m <= 9, "--m must be <= 9");
    usage_check(o.rounds >= 1, "--rounds must be >= 1");
    const double phi = parse_number(o.phi) * angle_scale(o);
    usage_check(phi >= -1e-12 && phi <= qss::kHalfPi + 1e-12, "--phi outside [0, pi/2]");
    const qss::ProtocolConfig config{o.m, o.rounds, qss::AttackScenario{parse_carrier(o.carrier), o.m, phi}, o.seed};

    const qss::ProtocolTranscript t = qss::run_protocol(config);
    const auto coalitions = qss::default_coalitions(o.m);
    const std::string summary = qss::io::dump(qss::io::protocol_summary(t, coalitions));
    qss::io::write_file_atomic(o.out + ".transcript.jsonl", qss::io::transcript_jsonl(t));
    qss::io::write_file_atomic(o.out + ".summary.json", summary);
}

void cmd_sweep_attack(const Options &o) {
    usage_check(o.m >= 1 && o.m <= 9, "--m must lie in 1..9");
    const qss::CarrierFamily carrier = parse_carrier(o.carrier);
    const std::vector<double> grid = parse_grid(o.phi_grid, angle_scale(o));
    const auto rows = qss::sweep_attack(carrier, o.m, grid);
    const std::string csv = qss::io::sweep_csv(rows, qss::margin_crossing(), qss::horodecki_crossing(carrier, o.m));
    qss::io::write_file_atomic(o.out, csv);
}

void cmd_bell(const Options &o) {
    usage_check(o.n >= 2 && o.n <= qss::CorrelationTensor::kMaxParties, "--n must lie in 2..8");
    usage_check(o.noise > 0.0 && o.noise <= 1.0, "--noise (visibility) must lie in (0, 1]");
    usage_check(o.frame == "default" || o.frame == "search", "--frame must be 'default' or 'search'");
    usage_check(o.restarts >= 1, "--restarts must be >= 1");
    const qss::CarrierFamily family = parse_carrier(o.state);

    const qss::PureState pure = qss::carrier_state(family, o.n);
    const qss::CorrelationTensor t = o.noise == 1.0 ? qss::correlation_tensor(pure)
                                                    : qss::correlation_tensor(qss::add_white_noise(pure, o.noise).realized);
    const double plane = qss::plane_sum(t);
    const double full = qss::full_sum(t);
    const qss::LrThresholds lr = qss::lr_sufficiency_thresholds();

    Json doc{{"schema_version", qss::io::kSchemaVersion},
             {"state", o.state},
             {"n", o.n},
             {"visibility", o.noise},
             {"plane_sum", plane},
             {"full_sum", full},
             {"default_frame",
              {{"lr_sufficient", plane <= 1.0}, {"two_setting_criterion_exceeded", plane > 1.0}}},
             {"lr_sufficient_every_frame", full <= 1.0}};
    Json thresholds{{"g6_plane_sqrt_3_16", lr.g6_plane}, {"g6_full_inv_sqrt_23", lr.g6_full}, {"ghz6_inv_sqrt_32", lr.ghz6}};
    if (o.n >= 4) {
        thresholds["p_crit_g"] = qss::crit_noise_g(o.n);
        thresholds["q_crit_ghz"] = qss::crit_noise_ghz(o.n);
    }
    doc["thresholds"] = std::move(thresholds);
    if (o.frame == "search") {
        const qss::FrameSearchResult r = qss::maximize_plane_sum(t, o.restarts, o.seed);
        doc["search"] = Json{{"value", r.value},
                             {"value_is_lower_bound", true},
                             {"restarts", r.restarts},
                             {"seed", o.seed},
                             {"lr_sufficient_in_searched_frames", r.value <= 1.0},
                             {"two_setting_criterion_exceeded", r.value > 1.0},
                             {"frame", frame_to_json(r.frame)}};
    }
    qss::io::write_file_atomic(o.out, qss::io::dump(doc));
}

void cmd_thresholds(const Options &o) {
    usage_check(o.n_min >= 4 && o.n_min <= o.n_max && o.n_max <= 60, "need 4 <= --n-min <= --n-max <= 60");
    const auto rows = qss::crossover_scan(o.n_min, o.n_max);
    std::string csv = qss::io::thresholds_csv(rows);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].g_more_robust != rows[i - 1].g_more_robust) {
            csv += "# crossover_n=" + std::to_string(rows[i].n) + "\n";
        }
    }
    qss::io::write_file_atomic(o.out, csv);
}

void cmd_rdm(const Options &o) {
    usage_check(o.n >= 3 && o.n <= 10, "--n must lie in 3..10");
    Json doc = qss::io::gram_to_json(qss::g_uniqueness_check(o.n, o.seed));
    doc["ghz_counterexample"] = qss::ghz_counterexample_check(o.n);
    const qss::CounterexampleReport g = qss::counterexample_check(qss::g_state(o.n), qss::w_dephased_mixture(o.n));
    doc["g_dephased_counterexample"] =
        Json{{"holds", g.holds}, {"max_marginal_diff", g.max_marginal_diff}, {"trace_distance", g.trace_distance}};
    qss::io::write_file_atomic(o.out, qss::io::dump(doc));
}

void cmd_tensor(const Options &o) {
    usage_check(o.n >= 1 && o.n <= qss::CorrelationTensor::kMaxParties, "--n must lie in 1..8");
    usage_check(o.noise > 0.0 && o.noise <= 1.0, "--noise (visibility) must lie in (0, 1]");
    const qss::CarrierFamily family = parse_carrier(o.state);
    const qss::PureState pure = qss::carrier_state(family, o.n);
    const qss::CorrelationTensor t = o.noise == 1.0 ? qss::correlation_tensor(pure)
                                                    : qss::correlation_tensor(qss::add_white_noise(pure, o.noise).realized);
    Json doc = qss::io::tensor_to_json(t);
    doc["state"] = o.state;
    doc["visibility"] = o.noise;
    qss::io::write_file_atomic(o.out, qss::io::dump(doc));
}

int exit_code_for(qss::ErrorKind kind) {
    switch (kind) {
        case qss::ErrorKind::InvalidArgument:
        case qss::ErrorKind::InvalidDimension:
        case qss::ErrorKind::BudgetExceeded:
            return kExitUsage;
        default:
            return kExitNumerical;
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum secret sharing with G and GHZ carriers: simulation and analysis"};
    app.require_subcommand(1);
    Options o;
    app.add_flag("--deg", o.degrees, "Interpret angles as degrees instead of radians");

    auto *run = app.add_subcommand("run-protocol", "Monte Carlo run of the sharing protocol");
    run->add_option("--m", o.m, "Carrier has 2m qubits (m >= 2)")->capture_default_str();
    run->add_option("--rounds", o.rounds, "Number of rounds")->capture_default_str();
    run->add_option("--phi", o.phi, "Attack angle (0 = honest run)")->capture_default_str();
    run->add_option("--carrier", o.carrier, "g or ghz")->capture_default_str();
    run->add_option("--seed", o.seed, "Master seed")->capture_default_str();
    run->add_option("--out", o.out, "Output prefix; writes PREFIX.transcript.jsonl and PREFIX.summary.json")->required();

    auto *sweep = app.add_subcommand("sweep-attack", "Security quantities over a grid of attack angles (CSV)");
    sweep->add_option("--m", o.m, "Carrier has 2m qubits")->capture_default_str();
    sweep->add_option("--carrier", o.carrier, "g or ghz")->capture_default_str();
    sweep->add_option("--phi-grid", o.phi_grid, "lo:hi:count or a comma-separated list")->capture_default_str();
    sweep->add_option("--out", o.out, "Output CSV")->required();

    auto *bell = app.add_subcommand("bell", "Correlation sums and local-realism thresholds (JSON)");
    bell->add_option("--state", o.state, "g or ghz")->capture_default_str();
    bell->add_option("--n", o.n, "Number of qubits (<= 8)")->capture_default_str();
    bell->add_option("--noise", o.noise, "Visibility p of p|psi><psi| + (1-p) I/2^n")->capture_default_str();
    bell->add_option("--frame", o.frame, "default or search")->capture_default_str();
    bell->add_option("--restarts", o.restarts, "Frame-search restarts")->capture_default_str();
    bell->add_option("--seed", o.seed, "Frame-search seed")->capture_default_str();
    bell->add_option("--out", o.out, "Output JSON")->required();

    auto *thr = app.add_subcommand("thresholds", "Critical visibilities of G_n and GHZ_n (CSV)");
    thr->add_option("--n-min", o.n_min, "Smallest n (>= 4)")->capture_default_str();
    thr->add_option("--n-max", o.n_max, "Largest n")->capture_default_str();
    thr->add_option("--out", o.out, "Output CSV")->required();

    auto *rdm = app.add_subcommand("rdm", "Marginal determination checks (JSON)");
    rdm->add_option("--n", o.n, "Number of qubits (3..10)")->capture_default_str();
    rdm->add_option("--seed", o.seed, "Seed of the alternative-solution search")->capture_default_str();
    rdm->add_option("--out", o.out, "Output JSON")->required();

    auto *tensor = app.add_subcommand("tensor", "Full correlation tensor (JSON)");
    tensor->add_option("--state", o.state, "g or ghz")->capture_default_str();
    tensor->add_option("--n", o.n, "Number of qubits (<= 8)")->capture_default_str();
    tensor->add_option("--noise", o.noise, "Visibility p")->capture_default_str();
    tensor->add_option("--out", o.out, "Output JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        apply_thread_env();
        if (run->parsed()) {
            cmd_run_protocol(o);
        } else if (sweep->parsed()) {
            cmd_sweep_attack(o);
        } else if (bell->parsed()) {
            cmd_bell(o);
        } else if (thr->parsed()) {
            cmd_thresholds(o);
        } else if (rdm->parsed()) {
            cmd_rdm(o);
        } else if (tensor->parsed()) {
            cmd_tensor(o);
        }
    } catch (const UsageError &e) {
        std::cerr << "qss: " << e.what() << '\n';
        return kExitUsage;
    } catch (const qss::Error &e) {
        std::cerr << "qss: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception &e) {
        std::cerr << "qss: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}
