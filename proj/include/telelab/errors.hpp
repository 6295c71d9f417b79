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

#include <stdexcept>
#include <string>

namespace telelab {

/// A forced or sampled outcome whose Born probability is below the
/// impossibility threshold.
class ImpossibleBranch : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class OracleFailure : public std::runtime_error {
   public:
    enum class Kind { NoCandidate, Ambiguous };

    OracleFailure(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

   private:
    Kind kind_;
};

/// Malformed scenario configuration; `field()` names the offending key.
class ConfigError : public std::runtime_error {
   public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

   private:
    std::string field_;
};

}  // namespace telelab
