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

#include "telelab/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "telelab/errors.hpp"
#include "telelab/scenario.hpp"

namespace telelab {

double acceptance_tolerance() {
    const char* env = std::getenv("TELELAB_TOL");
    if (!env || !*env) return Tolerance<double>::composed;
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0) || v >= 1.0) {
        throw ConfigError("TELELAB_TOL", "expected a number in (0, 1)");
    }
    return v;
}

namespace {

/// Writes to --output when given, else to the caller's stream.
class Sink {
   public:
    Sink(const std::string& path, std::ostream& fallback) {
        if (path.empty()) {
            stream_ = &fallback;
        } else {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw ConfigError("--output", "cannot open '" + path + "' for writing");
            stream_ = file_.get();
        }
    }
    std::ostream& operator*() { return *stream_; }

   private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_ = nullptr;
};

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed, const std::string& output,
            std::ostream& out, std::ostream& err) {
    const double tol = acceptance_tolerance();
    ScenarioConfig config = load_config(config_path);
    if (seed) config.seed = *seed;
    const CorrectionTable table = table_for(config);

    Sink sink(output, out);
    std::size_t below = 0;
    std::size_t count = 0;
    run_scenario(config, table, [&](const RunRecord& r) {
        *sink << to_json(r).dump() << '\n';
        ++count;
        if (r.final_fidelity < 1.0 - tol) ++below;
    });
    (*sink).flush();
    if (below > 0) {
        err << below << " of " << count << " records have fidelity below 1 - " << tol << "\n";
        return kExitFidelityBelowTolerance;
    }
    return kExitOk;
}

int cmd_verify(const std::string& protocol, const std::string& output, std::ostream& out) {
    std::vector<DiscrepancyReport> reports;
    if (protocol.empty()) {
        reports = verify_tables();
    } else {
        reports.push_back(verify_table(protocol_kind_from_string(protocol)));
    }
    Sink sink(output, out);
    for (const auto& r : reports) *sink << to_json(r).dump() << '\n';
    return kExitOk;
}

int cmd_distribution(const std::string& config_path, const std::string& output, std::ostream& out) {
    const ScenarioConfig config = load_config(config_path);
    const ProtocolSpec spec = config.spec();
    Sink sink(output, out);
    for (const auto& [key, p] : outcome_distribution(spec)) {
        nlohmann::json row{{"version", kVersion},
                           {"protocol", to_string(spec.kind())},
                           {"n", spec.n()},
                           {"outcome", to_json(key)},
                           {"probability", p}};
        *sink << row.dump() << '\n';
    }
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Qutrit teleportation through GHZ channels: simulation and table verification", "telelab"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output;
    std::optional<std::uint64_t> seed;
    std::string protocol;

    auto* run = app.add_subcommand("run", "Run a scenario and emit one JSON record per branch or trial");
    run->add_option("config", config_path, "Scenario config (JSON)")->required();
    run->add_option("--seed", seed, "Override the config seed");
    run->add_option("--output", output, "Write records here instead of stdout");

    auto* verify = app.add_subcommand("verify-tables", "Check the printed correction tables against the oracle");
    verify->add_option("--protocol", protocol, "Restrict to one table")->check(CLI::IsMember({"single", "pair"}));
    verify->add_option("--output", output, "Write reports here instead of stdout");

    auto* dist = app.add_subcommand("distribution", "Analytic probability of every outcome key");
    dist->add_option("config", config_path, "Scenario config (JSON)")->required();
    dist->add_option("--output", output, "Write rows here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitBadConfig;
    }

    try {
        if (*run) return cmd_run(config_path, seed, output, out, err);
        if (*verify) return cmd_verify(protocol, output, out);
        return cmd_distribution(config_path, output, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitBadConfig;
    } catch (const ImpossibleBranch& e) {
        err << "impossible outcome: " << e.what() << "\n";
        return kExitImpossibleOutcome;
    } catch (const OracleFailure& e) {
        err << "oracle failure: " << e.what() << "\n";
        return kExitOracleFailure;
    }
}

}  // namespace telelab
