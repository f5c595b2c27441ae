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

// Serialization of library results: JSON documents, JSON-lines transcripts and CSV tables.
// Every document carries `schema_version`; CSV files start with a `# qss schema_version=N`
// comment followed by a header row.

#ifndef QSS_IO_HPP
#define QSS_IO_HPP

#include <filesystem>
#include <span>
#include <string>

#include "json.hpp"
#include "qss/bell.hpp"
#include "qss/protocol.hpp"
#include "qss/rdm.hpp"
#include "qss/types.hpp"

namespace qss::io {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

/// %.17g: enough digits to round-trip any double.
std::string format_double(double value);

Json state_to_json(const PureState &state);
PureState state_from_json(const Json &doc);

Json tensor_to_json(const CorrelationTensor &t);
CorrelationTensor tensor_from_json(const Json &doc);

Json gram_to_json(const GramSolution &g);

/// {round, bases: "XXY...", outcomes: [+-1...], sifted}
Json round_to_json(std::size_t round, const RoundRecord &r);
std::string transcript_jsonl(const ProtocolTranscript &t);

/// sift_count, sift_rate, error rates and the coalition-information table.
Json protocol_summary(const ProtocolTranscript &t, std::span<const std::vector<std::size_t>> coalitions);

std::string sweep_csv(std::span<const SweepRow> rows, double margin_crossing_phi, double horodecki_crossing_phi);
std::string thresholds_csv(std::span<const ThresholdReport> rows);

/// Pretty-printed JSON followed by a newline.
std::string dump(const Json &doc);

/// Writes through a temporary sibling and renames, so readers never see a partial file.
void write_file_atomic(const std::filesystem::path &path, const std::string &content);

}  // namespace qss::io

#endif  // QSS_IO_HPP
