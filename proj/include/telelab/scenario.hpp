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

#pragma once

// JSON scenario configs and JSON Lines run records.
//
// Config schema:
//   {
//     "protocol": "single" | "pair" | "chain",
//     "n": 3,                                  // chain only
//     "coefficients": [[re, im], [re, im], [re, im]],
//     "mode": "enumerate" | "force" | "sample",
//     "forced_outcome": {"l": [0], "m": 0, "n": 2},   // force only
//     "seed": 42,                              // sample only, optional
//     "trials": 27000,                         // sample only
//     "correction_table": "derived" | "paper"  // optional, default derived
//   }
// Coefficients within 1e-6 of unit norm are renormalized; anything further
// off is rejected.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "telelab/protocols.hpp"

namespace telelab {

inline constexpr const char* kVersion = "telelab 0.1.0";

enum class RunMode { Enumerate, Force, Sample };
enum class TableChoice { Derived, Paper };

std::string to_string(RunMode mode);
std::string to_string(TableChoice table);

struct ScenarioConfig {
    ProtocolKind protocol = ProtocolKind::Single;
    int n = 1;
    Coefficients coefficients{1.0, 0.0, 0.0};
    RunMode mode = RunMode::Enumerate;
    std::optional<OutcomeKey> forced_outcome;
    std::uint64_t seed = 0;
    std::uint64_t trials = 1;
    TableChoice table = TableChoice::Derived;

    ProtocolSpec spec() const;
    bool operator==(const ScenarioConfig&) const = default;
};

/// Throws ConfigError naming the offending field.
ScenarioConfig parse_config(const nlohmann::json& j);
ScenarioConfig load_config(const std::string& path);
nlohmann::json to_json(const ScenarioConfig& c);

nlohmann::json to_json(const OutcomeKey& key);
OutcomeKey outcome_key_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Correction& c);
Correction correction_from_json(const nlohmann::json& j);

/// Flattened transcript plus the config echo.
struct RunRecord {
    std::string version = kVersion;
    ScenarioConfig config;
    std::optional<std::uint64_t> trial;
    OutcomeKey outcome;
    double branch_probability = 0;
    nlohmann::json correction;
    std::string correction_text;
    double receiver_purity = 0;
    double final_fidelity = 0;
    std::vector<double> step_norms;
    std::vector<std::string> wires;

    bool operator==(const RunRecord&) const = default;
};

RunRecord make_record(const ScenarioConfig& config, const Transcript& t, std::optional<std::uint64_t> trial);
nlohmann::json to_json(const RunRecord& r);
RunRecord run_record_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DiscrepancyReport& report);

/// Printed or oracle-derived table, per config.
CorrectionTable table_for(const ScenarioConfig& config);

/// Runs the scenario, calling `emit` once per record in order (branch order
/// for enumerate, trial order for sample). Propagates ImpossibleBranch.
void run_scenario(const ScenarioConfig& config, const CorrectionTable& table,
                  const std::function<void(const RunRecord&)>& emit);

}  // namespace telelab
