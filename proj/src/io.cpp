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

#include "qss/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qss/error.hpp"

namespace qss::io {

namespace {

Json complex_pair(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx pair_to_complex(const Json &j) {
    require(j.is_array() && j.size() == 2, ErrorKind::InvalidArgument, "complex numbers are [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

Json matrix_to_json(const CMatrix &m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(complex_pair(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string coalition_key(std::span<const std::size_t> subset) {
    std::string key;
    for (std::size_t q : subset) {
        if (!key.empty()) {
            key += ',';
        }
        key += std::to_string(q);
    }
    return key;
}

constexpr const char *kCsvPreamble = "# qss schema_version=";

}  // namespace

std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

Json state_to_json(const PureState &state) {
    Json amps = Json::array();
    for (const cplx &a : state.amplitudes()) {
        amps.push_back(complex_pair(a));
    }
    return Json{{"schema_version", kSchemaVersion}, {"n_qubits", state.n_qubits()}, {"amplitudes", std::move(amps)}};
}

PureState state_from_json(const Json &doc) {
    require(doc.contains("n_qubits") && doc.contains("amplitudes"), ErrorKind::InvalidArgument,
            "state document needs n_qubits and amplitudes");
    std::vector<cplx> amps;
    for (const Json &a : doc.at("amplitudes")) {
        amps.push_back(pair_to_complex(a));
    }
    return PureState(doc.at("n_qubits").get<std::size_t>(), std::move(amps));
}

Json tensor_to_json(const CorrelationTensor &t) {
    return Json{{"schema_version", kSchemaVersion}, {"n", t.n()}, {"ordering", "xyz-row-major"}, {"entries", t.entries()}};
}

CorrelationTensor tensor_from_json(const Json &doc) {
    require(doc.value("ordering", std::string{}) == "xyz-row-major", ErrorKind::InvalidArgument,
            "unsupported tensor ordering");
    return CorrelationTensor(doc.at("n").get<std::size_t>(), doc.at("entries").get<std::vector<double>>());
}

Json gram_to_json(const GramSolution &g) {
    Json doc{{"schema_version", kSchemaVersion},
             {"n", g.n},
             {"labels", Json::array({"e00", "e01", "e10", "e11"})},
             {"gram", matrix_to_json(g.gram)},
             {"residual", g.residual},
             {"forced_product", g.forced_product},
             {"nullspace_dim", g.nullspace_dim},
             {"nullspace_dim_two_marginals", g.nullspace_dim_two_marginals},
             {"nullspace_dim_all_marginals", g.nullspace_dim_all_marginals}};
    doc["alternative"] = g.alternative ? matrix_to_json(*g.alternative) : Json(nullptr);
    return doc;
}

Json round_to_json(std::size_t round, const RoundRecord &r) {
    std::string bases;
    for (PauliAxis a : r.bases) {
        bases += axis_char(a);
    }
    return Json{{"round", round}, {"bases", bases}, {"outcomes", r.outcomes.values()}, {"sifted", r.sifted}};
}

std::string transcript_jsonl(const ProtocolTranscript &t) {
    std::string out;
    for (std::size_t i = 0; i < t.records.size(); ++i) {
        out += round_to_json(i, t.records[i]).dump();
        out += '\n';
    }
    return out;
}

Json protocol_summary(const ProtocolTranscript &t, std::span<const std::vector<std::size_t>> coalitions) {
    const ProtocolConfig &c = t.config;
    Json doc{{"schema_version", kSchemaVersion},
             {"m", c.m},
             {"parties", c.parties()},
             {"rounds", c.rounds},
             {"carrier", std::string(to_string(c.scenario.carrier))},
             {"phi", c.scenario.phi},
             {"seed", c.seed},
             {"sift_count", t.sift_count},
             {"sift_rate", sift_rate(t)}};
    if (t.sift_count == 0) {
        doc["error_rate"] = nullptr;
        doc["x_error_rate"] = nullptr;
        doc["y_error_rate"] = nullptr;
        doc["coalition_info"] = Json::object();
        return doc;
    }
    const KeyReconstruction k = reconstruct_key(t);
    doc["error_rate"] = k.error_rate;
    doc["x_rounds"] = k.x_rounds;
    doc["x_error_rate"] = k.x_error_rate();
    doc["y_rounds"] = k.y_rounds;
    doc["y_error_rate"] = k.y_error_rate();
    Json table = Json::object();
    for (const auto &subset : coalitions) {
        Json entry{{"bits", nullptr}};
        if (t.sift_count >= 2) {
            const MutualInfoEstimate e = coalition_info(t, subset);
            entry = Json{{"bits", e.plug_in}, {"miller_madow_bits", e.miller_madow}, {"samples", e.samples}};
        }
        entry["exact_bits"] = exact_coalition_info(c.scenario, subset);
        table[coalition_key(subset)] = std::move(entry);
    }
    doc["coalition_info"] = std::move(table);
    return doc;
}

std::string sweep_csv(std::span<const SweepRow> rows, double margin_crossing_phi, double horodecki_crossing_phi) {
    std::ostringstream os;
    os << kCsvPreamble << kSchemaVersion << '\n';
    os << "phi,i_ab,i_ae,margin,qber_x,horodecki_ab,horodecki_ae\n";
    for (const SweepRow &r : rows) {
        os << format_double(r.phi) << ',' << format_double(r.i_ab) << ',' << format_double(r.i_ae) << ','
           << format_double(r.margin) << ',' << format_double(r.qber_x) << ',' << format_double(r.horodecki_ab) << ','
           << format_double(r.horodecki_ae) << '\n';
    }
    os << "# crossing_phi=" << format_double(margin_crossing_phi) << '\n';
    os << "# horodecki_crossing_phi=" << format_double(horodecki_crossing_phi) << '\n';
    return os.str();
}

std::string thresholds_csv(std::span<const ThresholdReport> rows) {
    std::ostringstream os;
    os << kCsvPreamble << kSchemaVersion << '\n';
    os << "n,p_crit_g,q_crit_ghz,g_more_robust\n";
    for (const ThresholdReport &r : rows) {
        os << r.n << ',' << format_double(r.p_crit_g) << ',' << format_double(r.q_crit_ghz) << ','
           << (r.g_more_robust ? "true" : "false") << '\n';
    }
    return os.str();
}

std::string dump(const Json &doc) { return doc.dump(2) + "\n"; }

void write_file_atomic(const std::filesystem::path &path, const std::string &content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        require(static_cast<bool>(out), ErrorKind::InvalidArgument, "cannot open " + tmp.string() + " for writing");
        out << content;
        out.close();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            fail(ErrorKind::InvalidArgument, "failed writing " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace qss::io
