// Copyright 2026 The Telelab Authors
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

#include <gtest/gtest.h>

#include "telelab/errors.hpp"
#include "telelab/scenario.hpp"
#include "test_util.hpp"

using namespace telelab;
using nlohmann::json;
using telelab::testing::Cx;

namespace {

json base_config() {
    return json::parse(R"({
        "protocol": "single",
        "coefficients": [[0.6, 0.0], [0.0, 0.48], [0.64, 0.0]],
        "mode": "enumerate"
    })");
}

std::string failing_field(const json& j) {
    try {
        parse_config(j);
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "";
}

}  // namespace

TEST(ParseConfig, MinimalSingle) {
    const auto c = parse_config(base_config());
    EXPECT_EQ(c.protocol, ProtocolKind::Single);
    EXPECT_EQ(c.mode, RunMode::Enumerate);
    EXPECT_EQ(c.table, TableChoice::Derived);
    EXPECT_NEAR(std::abs(c.coefficients[1] - Cx(0, 0.48)), 0.0, 1e-15);
}

TEST(ParseConfig, ErrorsNameTheField) {
    json j = base_config();
    j.erase("coefficients");
    EXPECT_EQ(failing_field(j), "coefficients");

    j = base_config();
    j["protocol"] = "triple";
    EXPECT_EQ(failing_field(j), "protocol");

    j = base_config();
    j["protocol"] = "chain";
    j["n"] = 6;
    EXPECT_EQ(failing_field(j), "n");

    j = base_config();
    j["mode"] = "guess";
    EXPECT_EQ(failing_field(j), "mode");

    j = base_config();
    j["mode"] = "force";
    j["forced_outcome"] = {{"l", {0, 1}}, {"m", 0}, {"n", 0}};
    EXPECT_EQ(failing_field(j), "forced_outcome.l");

    j = base_config();
    j["mode"] = "force";
    j["forced_outcome"] = {{"l", {0}}, {"m", 3}, {"n", 0}};
    EXPECT_EQ(failing_field(j), "forced_outcome.m");

    j = base_config();
    j["mode"] = "sample";
    j["trials"] = 0;
    EXPECT_EQ(failing_field(j), "trials");

    j = base_config();
    j["protocol"] = "chain";
    j["n"] = 3;
    j["correction_table"] = "paper";
    EXPECT_EQ(failing_field(j), "correction_table");

    EXPECT_EQ(failing_field(json::array()), "config");
}

TEST(ParseConfig, NormalizesSmallDeviationsOnly) {
    json j = base_config();
    j["coefficients"] = {{0.6 * (1 + 4e-7), 0.0}, {0.0, 0.48}, {0.64, 0.0}};
    const auto c = parse_config(j);
    double norm2 = 0;
    for (const auto& x : c.coefficients) norm2 += std::norm(x);
    EXPECT_NEAR(norm2, 1.0, 1e-14);

    j["coefficients"] = {{0.7, 0.0}, {0.0, 0.48}, {0.64, 0.0}};
    EXPECT_EQ(failing_field(j), "coefficients");
}

TEST(ParseConfig, RoundTrip) {
    json j = base_config();
    j["protocol"] = "chain";
    j["n"] = 3;
    j["mode"] = "force";
    j["forced_outcome"] = {{"l", {2, 1}}, {"m", 1}, {"n", 0}};
    const auto c = parse_config(j);
    EXPECT_EQ(parse_config(to_json(c)), c);

    json s = base_config();
    s["mode"] = "sample";
    s["seed"] = 42;
    s["trials"] = 100;
    s["correction_table"] = "paper";
    const auto cs = parse_config(s);
    EXPECT_EQ(cs.trials, 100u);
    EXPECT_EQ(cs.table, TableChoice::Paper);
    EXPECT_EQ(parse_config(to_json(cs)), cs);
}

TEST(RunRecord, JsonRoundTrip) {
    json j = base_config();
    j["protocol"] = "pair";
    const auto config = parse_config(j);
    std::vector<RunRecord> records;
    run_scenario(config, table_for(config), [&](const RunRecord& r) { records.push_back(r); });
    ASSERT_EQ(records.size(), 27u);
    for (const auto& r : records) {
        const auto back = run_record_from_json(json::parse(to_json(r).dump()));
        EXPECT_EQ(back, r);
        EXPECT_EQ(r.version, kVersion);
        EXPECT_EQ(r.wires.size(), 5u);
    }
}

TEST(Correction, JsonRoundTripPreservesOperator) {
    const auto table = paper_table_pair();
    for (const auto& [key, c] : table.entries()) {
        const auto back = correction_from_json(to_json(c));
        EXPECT_LT((back.dense().matrix() - c.dense().matrix()).cwiseAbs().maxCoeff(), 1e-15) << key.str();
        EXPECT_EQ(back.describe(), c.describe());
    }
}

TEST(RunScenario, SampleModeEmitsOneRecordPerTrial) {
    json j = base_config();
    j["mode"] = "sample";
    j["seed"] = 7;
    j["trials"] = 50;
    const auto config = parse_config(j);
    std::vector<RunRecord> records;
    run_scenario(config, table_for(config), [&](const RunRecord& r) { records.push_back(r); });
    ASSERT_EQ(records.size(), 50u);
    for (std::uint64_t i = 0; i < 50; ++i) {
        ASSERT_TRUE(records[i].trial.has_value());
        EXPECT_EQ(*records[i].trial, i);
        EXPECT_NEAR(records[i].branch_probability, 1.0 / 27.0, 1e-12);
    }
}

TEST(DiscrepancyReportJson, CountsMatch) {
    const auto report = verify_table(ProtocolKind::Single);
    const auto j = to_json(report);
    EXPECT_EQ(j["protocol"], "single");
    EXPECT_EQ(j["keys_checked"], 27);
    EXPECT_EQ(j["flagged_count"], report.flagged.size());
    EXPECT_EQ(j["flagged"].size(), report.flagged.size());
}
