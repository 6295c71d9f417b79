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

#include "telelab/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "telelab/errors.hpp"

namespace telelab {

using nlohmann::json;

std::string to_string(RunMode mode) {
    switch (mode) {
        case RunMode::Enumerate: return "enumerate";
        case RunMode::Force: return "force";
        case RunMode::Sample: return "sample";
    }
    return "?";
}

std::string to_string(TableChoice table) { return table == TableChoice::Paper ? "paper" : "derived"; }

ProtocolSpec ScenarioConfig::spec() const {
    switch (protocol) {
        case ProtocolKind::Single: return ProtocolSpec::single(coefficients);
        case ProtocolKind::Pair: return ProtocolSpec::pair(coefficients);
        case ProtocolKind::Chain: break;
    }
    return ProtocolSpec::chain(n, coefficients);
}

namespace {

json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ConfigError(field, "expected a complex number as [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

const json& require(const json& j, const std::string& field) {
    if (!j.contains(field)) throw ConfigError(field, "missing");
    return j.at(field);
}

int digit(const json& j, const std::string& field) {
    if (!j.is_number_integer()) throw ConfigError(field, "expected an integer in {0,1,2}");
    const int v = j.get<int>();
    if (v < 0 || v > 2) throw ConfigError(field, "expected an integer in {0,1,2}");
    return v;
}

std::uint64_t unsigned_field(const json& j, const std::string& field) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
        throw ConfigError(field, "expected a non-negative integer");
    }
    return j.get<std::uint64_t>();
}

}  // namespace

json to_json(const OutcomeKey& key) { return {{"l", key.l}, {"m", key.bell.m}, {"n", key.bell.n}}; }

OutcomeKey outcome_key_from_json(const json& j) {
    const std::string field = "forced_outcome";
    if (!j.is_object()) throw ConfigError(field, "expected an object {\"l\": [...], \"m\": .., \"n\": ..}");
    OutcomeKey key;
    const json& l = require(j, "l");
    if (!l.is_array()) throw ConfigError(field + ".l", "expected an array");
    for (const auto& x : l) key.l.push_back(digit(x, field + ".l"));
    key.bell.m = digit(require(j, "m"), field + ".m");
    key.bell.n = digit(require(j, "n"), field + ".n");
    return key;
}

ScenarioConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config", "expected a JSON object");
    ScenarioConfig c;

    const json& protocol = require(j, "protocol");
    if (!protocol.is_string()) throw ConfigError("protocol", "expected a string");
    try {
        c.protocol = protocol_kind_from_string(protocol.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ConfigError("protocol", e.what());
    }

    if (c.protocol == ProtocolKind::Chain) {
        const json& n = require(j, "n");
        if (!n.is_number_integer()) throw ConfigError("n", "expected an integer");
        c.n = n.get<int>();
        if (c.n < 1 || c.n > kMaxChainLength) throw ConfigError("n", "chain length must be in [1, 5]");
    } else {
        c.n = c.protocol == ProtocolKind::Single ? 1 : 2;
    }

    const json& coeffs = require(j, "coefficients");
    if (!coeffs.is_array() || coeffs.size() != 3) throw ConfigError("coefficients", "expected three [re, im] pairs");
    double norm2 = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        c.coefficients[i] = complex_from_json(coeffs[i], "coefficients");
        norm2 += std::norm(c.coefficients[i]);
    }
    if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > 1e-6) {
        throw ConfigError("coefficients", "squared norm " + std::to_string(norm2) + " is not within 1e-6 of 1");
    }
    // Values already normalized to working precision are kept bit-for-bit so
    // that serialize -> load is the identity.
    if (std::abs(norm2 - 1.0) > Tolerance<double>::exact) {
        for (auto& x : c.coefficients) x /= std::sqrt(norm2);
    }

    const json& mode = require(j, "mode");
    const std::string m = mode.is_string() ? mode.get<std::string>() : "";
    if (m == "enumerate") {
        c.mode = RunMode::Enumerate;
    } else if (m == "force") {
        c.mode = RunMode::Force;
    } else if (m == "sample") {
        c.mode = RunMode::Sample;
    } else {
        throw ConfigError("mode", "expected \"enumerate\", \"force\" or \"sample\"");
    }

    if (c.mode == RunMode::Force) {
        c.forced_outcome = outcome_key_from_json(require(j, "forced_outcome"));
        const int expected = c.spec().num_rotated();
        if (static_cast<int>(c.forced_outcome->l.size()) != expected) {
            throw ConfigError("forced_outcome.l", "expected " + std::to_string(expected) + " rotated outcomes");
        }
    }
    if (j.contains("seed")) c.seed = unsigned_field(j.at("seed"), "seed");
    if (c.mode == RunMode::Sample) {
        c.trials = unsigned_field(require(j, "trials"), "trials");
        if (c.trials == 0) throw ConfigError("trials", "must be positive");
    }

    if (j.contains("correction_table")) {
        const json& t = j.at("correction_table");
        const std::string name = t.is_string() ? t.get<std::string>() : "";
        if (name == "derived") {
            c.table = TableChoice::Derived;
        } else if (name == "paper") {
            if (c.protocol == ProtocolKind::Chain) throw ConfigError("correction_table", "no printed table for chains");
            c.table = TableChoice::Paper;
        } else {
            throw ConfigError("correction_table", "expected \"derived\" or \"paper\"");
        }
    }
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config", std::string("invalid JSON: ") + e.what());
    }
    return parse_config(j);
}

json to_json(const ScenarioConfig& c) {
    json j;
    j["protocol"] = to_string(c.protocol);
    if (c.protocol == ProtocolKind::Chain) j["n"] = c.n;
    json coeffs = json::array();
    for (const auto& x : c.coefficients) coeffs.push_back(complex_to_json(x));
    j["coefficients"] = coeffs;
    j["mode"] = to_string(c.mode);
    if (c.forced_outcome) j["forced_outcome"] = to_json(*c.forced_outcome);
    j["seed"] = c.seed;
    if (c.mode == RunMode::Sample) j["trials"] = c.trials;
    j["correction_table"] = to_string(c.table);
    return j;
}

json to_json(const Correction& c) {
    json factors = json::array();
    for (const auto& f : c.factors()) {
        json cols = json::array();
        const auto& m = f.matrix();
        for (Eigen::Index col = 0; col < m.cols(); ++col) {
            json column = json::array();
            for (Eigen::Index row = 0; row < m.rows(); ++row) column.push_back(complex_to_json(m(row, col)));
            cols.push_back(column);
        }
        json entry{{"columns", cols}};
        if (const auto form = monomial_form(f)) entry["permutation"] = form->permutation;
        factors.push_back(entry);
    }
    json j{{"factors", factors}};
    if (c.label()) {
        j["family"] = {{"a", c.label()->a}, {"b", c.label()->b}, {"reflect", c.label()->reflect}};
    } else {
        j["family"] = nullptr;
    }
    return j;
}

Correction correction_from_json(const json& j) {
    std::vector<Unitary> factors;
    for (const auto& entry : j.at("factors")) {
        const auto& cols = entry.at("columns");
        Matrix<double> m(3, 3);
        for (Eigen::Index col = 0; col < 3; ++col) {
            for (Eigen::Index row = 0; row < 3; ++row) {
                m(row, col) = complex_from_json(cols.at(static_cast<std::size_t>(col)).at(static_cast<std::size_t>(row)),
                                                "correction");
            }
        }
        factors.emplace_back(std::move(m));
    }
    std::optional<CorrectionLabel> label;
    if (!j.at("family").is_null()) {
        const auto& f = j.at("family");
        label = CorrectionLabel{f.at("a").get<int>(), f.at("b").get<int>(), f.at("reflect").get<bool>()};
    }
    return Correction(std::move(factors), label);
}

RunRecord make_record(const ScenarioConfig& config, const Transcript& t, std::optional<std::uint64_t> trial) {
    RunRecord r;
    r.config = config;
    r.trial = trial;
    r.outcome = t.outcome;
    r.branch_probability = t.branch_probability;
    r.correction = to_json(t.correction);
    r.correction_text = t.correction.describe();
    r.receiver_purity = t.receiver_purity;
    r.final_fidelity = t.final_fidelity;
    r.step_norms = t.step_norms;
    r.wires = t.wires;
    return r;
}

json to_json(const RunRecord& r) {
    json j;
    j["version"] = r.version;
    j["config"] = to_json(r.config);
    j["trial"] = r.trial ? json(*r.trial) : json(nullptr);
    j["outcome"] = to_json(r.outcome);
    j["branch_probability"] = r.branch_probability;
    j["correction"] = r.correction;
    j["correction_text"] = r.correction_text;
    j["receiver_purity"] = r.receiver_purity;
    j["final_fidelity"] = r.final_fidelity;
    j["step_norms"] = r.step_norms;
    j["wires"] = r.wires;
    return j;
}

RunRecord run_record_from_json(const json& j) {
    RunRecord r;
    r.version = j.at("version").get<std::string>();
    r.config = parse_config(j.at("config"));
    if (!j.at("trial").is_null()) r.trial = j.at("trial").get<std::uint64_t>();
    r.outcome = outcome_key_from_json(j.at("outcome"));
    r.branch_probability = j.at("branch_probability").get<double>();
    r.correction = j.at("correction");
    r.correction_text = j.at("correction_text").get<std::string>();
    r.receiver_purity = j.at("receiver_purity").get<double>();
    r.final_fidelity = j.at("final_fidelity").get<double>();
    r.step_norms = j.at("step_norms").get<std::vector<double>>();
    r.wires = j.at("wires").get<std::vector<std::string>>();
    return r;
}

json to_json(const DiscrepancyReport& report) {
    json flagged = json::array();
    for (const auto& d : report.flagged) {
        flagged.push_back({{"outcome", to_json(d.key)},
                           {"paper_operator", to_json(d.paper)},
                           {"paper_operator_text", d.paper.describe()},
                           {"paper_fidelity", d.paper_fidelity},
                           {"derived_operator", to_json(d.derived)},
                           {"derived_operator_text", d.derived.describe()},
                           {"derived_fidelity", d.derived_fidelity}});
    }
    return {{"version", kVersion},
            {"protocol", to_string(report.kind)},
            {"keys_checked", report.keys_checked},
            {"flagged_count", report.flagged.size()},
            {"flagged", flagged}};
}

CorrectionTable table_for(const ScenarioConfig& config) {
    if (config.table == TableChoice::Paper) {
        return config.protocol == ProtocolKind::Single ? paper_table_single() : paper_table_pair();
    }
    return derive_table(config.spec());
}

void run_scenario(const ScenarioConfig& config, const CorrectionTable& table,
                  const std::function<void(const RunRecord&)>& emit) {
    const ProtocolSpec spec = config.spec();
    switch (config.mode) {
        case RunMode::Enumerate:
            for (const auto& t : run_protocol(spec, Enumerate{}, table)) emit(make_record(config, t, std::nullopt));
            return;
        case RunMode::Force:
            for (const auto& t : run_protocol(spec, Force{*config.forced_outcome}, table)) {
                emit(make_record(config, t, std::nullopt));
            }
            return;
        case RunMode::Sample:
            for (std::uint64_t i = 0; i < config.trials; ++i) {
                for (const auto& t : run_protocol(spec, Sample{config.seed, i}, table)) emit(make_record(config, t, i));
            }
            return;
    }
}

}  // namespace telelab
