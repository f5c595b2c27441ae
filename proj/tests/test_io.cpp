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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qss/protocol.hpp"
#include "qss/states.hpp"
#include "test_util.hpp"

using namespace qss;

namespace {

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

ProtocolConfig small_config(std::size_t rounds, std::uint64_t seed) {
    ProtocolConfig c;
    c.m = 2;
    c.rounds = rounds;
    c.scenario = AttackScenario{CarrierFamily::G, 2, 0.3};
    c.seed = seed;
    return c;
}

}  // namespace

TEST(Io, format_double_round_trips) {
    for (double v : {0.1, 1.0 / 3.0, 0.7853981633974483, 1e-300, -2.5}) {
        EXPECT_EQ(std::strtod(io::format_double(v).c_str(), nullptr), v);
    }
}

TEST(Io, state_round_trip_is_bit_exact) {
    Rng rng(61);
    const PureState s = qss::testing::random_state(4, rng);
    const io::Json doc = io::state_to_json(s);
    EXPECT_EQ(doc.at("schema_version"), io::kSchemaVersion);
    const PureState back = io::state_from_json(io::Json::parse(io::dump(doc)));
    ASSERT_EQ(back.dim(), s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) {
        EXPECT_EQ(back[i], s[i]);
    }
}

TEST(Io, tensor_round_trip_is_bit_exact) {
    const CorrelationTensor t = correlation_tensor(g_state(4));
    const io::Json doc = io::tensor_to_json(t);
    EXPECT_EQ(doc.at("ordering"), "xyz-row-major");
    const CorrelationTensor back = io::tensor_from_json(io::Json::parse(io::dump(doc)));
    EXPECT_EQ(back.entries(), t.entries());
}

TEST(Io, gram_export_fields) {
    const io::Json doc = io::gram_to_json(g_uniqueness_check(5));
    EXPECT_EQ(doc.at("n"), 5);
    EXPECT_EQ(doc.at("forced_product"), true);
    EXPECT_EQ(doc.at("nullspace_dim"), 0);
    ASSERT_EQ(doc.at("gram").size(), 4u);
    EXPECT_EQ(doc.at("gram")[0].size(), 4u);
    EXPECT_EQ(doc.at("gram")[0][0].size(), 2u);  // [re, im]
    EXPECT_TRUE(doc.at("alternative").is_null());
}

TEST(Io, transcript_lines_parse_back) {
    const ProtocolTranscript t = run_protocol(small_config(50, 3));
    std::istringstream lines(io::transcript_jsonl(t));
    std::string line;
    std::size_t count = 0;
    while (std::getline(lines, line)) {
        const io::Json rec = io::Json::parse(line);
        EXPECT_EQ(rec.at("round"), count);
        EXPECT_EQ(rec.at("bases").get<std::string>().size(), 4u);
        EXPECT_EQ(rec.at("outcomes").get<std::vector<int>>(), t.records[count].outcomes.values());
        EXPECT_EQ(rec.at("sifted"), t.records[count].sifted);
        ++count;
    }
    EXPECT_EQ(count, 50u);
}

TEST(Io, protocol_summary_contents) {
    const ProtocolTranscript t = run_protocol(small_config(4000, 5));
    const auto coalitions = default_coalitions(2);
    const io::Json doc = io::protocol_summary(t, coalitions);
    EXPECT_EQ(doc.at("schema_version"), 1);
    EXPECT_EQ(doc.at("carrier"), "g");
    EXPECT_EQ(doc.at("sift_count"), t.sift_count);
    EXPECT_TRUE(doc.at("error_rate").is_number());
    ASSERT_TRUE(doc.at("coalition_info").contains("1"));
    ASSERT_TRUE(doc.at("coalition_info").contains("1,2"));
    EXPECT_TRUE(doc.at("coalition_info").at("1").at("exact_bits").is_number());

    ProtocolTranscript empty;
    empty.config = small_config(1, 0);
    const io::Json none = io::protocol_summary(empty, coalitions);
    EXPECT_TRUE(none.at("error_rate").is_null());
    EXPECT_TRUE(none.at("coalition_info").empty());
}

TEST(Io, sweep_csv_layout) {
    const std::vector<double> phis{0.0, kQuarterPi};
    const auto rows = sweep_attack(CarrierFamily::G, 2, phis);
    const std::string csv = io::sweep_csv(rows, 0.5, 0.6);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "# qss schema_version=1");
    std::getline(in, line);
    EXPECT_EQ(line, "phi,i_ab,i_ae,margin,qber_x,horodecki_ab,horodecki_ae");
    std::getline(in, line);
    EXPECT_EQ(line.substr(0, 2), "0,");
    std::getline(in, line);
    std::getline(in, line);
    EXPECT_EQ(line, "# crossing_phi=0.5");
}

TEST(Io, thresholds_csv_layout) {
    const auto rows = crossover_scan(12, 13);
    const std::string csv = io::thresholds_csv(rows);
    EXPECT_NE(csv.find("n,p_crit_g,q_crit_ghz,g_more_robust\n"), std::string::npos);
    EXPECT_NE(csv.find("\n12,"), std::string::npos);
    EXPECT_NE(csv.find(",false\n13,"), std::string::npos);
    EXPECT_EQ(csv.substr(csv.size() - 5), "true\n");
}

TEST(Io, atomic_write_replaces_contents) {
    const auto dir = std::filesystem::temp_directory_path() / "qss_io_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "out.json";
    io::write_file_atomic(path, "first\n");
    io::write_file_atomic(path, "second\n");
    EXPECT_EQ(slurp(path), "second\n");
    EXPECT_FALSE(std::filesystem::exists(dir / "out.json.tmp"));
    std::filesystem::remove_all(dir);
}
