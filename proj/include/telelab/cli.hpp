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

#include <ostream>

namespace telelab {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    kExitOk = 0,
    kExitFidelityBelowTolerance = 1,
    kExitBadConfig = 2,
    kExitImpossibleOutcome = 3,
    kExitOracleFailure = 4,
};

/// Entry point of the `telelab` tool:
///   run <config.json> [--seed N] [--output PATH]
///   verify-tables [--protocol single|pair] [--output PATH]
///   distribution <config.json> [--output PATH]
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Acceptance tolerance for `run`: TELELAB_TOL if set, else 1e-10.
double acceptance_tolerance();

}  // namespace telelab
