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

// Teleportation of qutrit states through GHZ channels.
//
// Three protocols share one pipeline: the sender adjoins the unknown state to
// a GHZ channel, measures one unknown qutrit together with her channel
// qutrit in the nine-state joint basis, measures the remaining designated
// qutrits in the rotated basis, and the receiver applies a correction chosen
// by the announced outcomes.
//
// Wire orderings (qutrit position = index into the list):
//   single: U, 1, 2, 3           joint (U,1), rotated 2, receiver 3
//   pair:   1, 2, 3, 4, 5        joint (2,3), rotated 1, receiver (4,5)
//   chain:  1..n, 1'..(n+1)'     joint (n,1'), rotated 1..n-1, receiver 2'..(n+1)'

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "telelab/bases.hpp"
#include "telelab/measurement.hpp"
#include "telelab/state.hpp"
#include "telelab/unitary.hpp"

namespace telelab {

using State = StateVector<double>;
using Unitary = UnitaryOp<double>;
using Complex = std::complex<double>;
using Coefficients = std::array<Complex, 3>;

enum class ProtocolKind { Single, Pair, Chain };

std::string to_string(ProtocolKind kind);
ProtocolKind protocol_kind_from_string(const std::string& name);

inline constexpr int kMaxChainLength = 5;

class ProtocolSpec {
   public:
    static ProtocolSpec single(const Coefficients& c) { return ProtocolSpec(ProtocolKind::Single, 1, c); }
    static ProtocolSpec pair(const Coefficients& c) { return ProtocolSpec(ProtocolKind::Pair, 2, c); }
    static ProtocolSpec chain(int n, const Coefficients& c) { return ProtocolSpec(ProtocolKind::Chain, n, c); }

    /// Throws std::invalid_argument unless |a|^2+|b|^2+|c|^2 = 1 within 1e-12
    /// and, for chains, 1 <= n <= 5.
    ProtocolSpec(ProtocolKind kind, int n, const Coefficients& coefficients);

    ProtocolKind kind() const { return kind_; }
    /// Number of unknown-state qutrits (1 for single, 2 for pair).
    int n() const { return n_; }
    const Coefficients& coefficients() const { return coefficients_; }

    int num_qutrits() const;
    int num_receivers() const;
    /// Rotated-basis measurements after the joint one.
    int num_rotated() const;
    std::vector<std::string> wires() const;

    /// Same protocol shape with different input coefficients.
    ProtocolSpec with_coefficients(const Coefficients& c) const { return ProtocolSpec(kind_, n_, c); }

   private:
    ProtocolKind kind_;
    int n_;
    Coefficients coefficients_;
};

/// Announced measurement results: rotated outcomes l (in wire order) and
/// the joint outcome Phi_mn.
struct OutcomeKey {
    std::vector<int> l;
    BellIndex bell;

    auto operator<=>(const OutcomeKey&) const = default;
    bool operator==(const OutcomeKey&) const = default;
    std::string str() const;
};

/// Every key of a protocol shape, ordered by (l, m, n).
std::vector<OutcomeKey> all_keys(const ProtocolSpec& spec);

/// Parameters of one member of the oracle's search family:
/// X^a Z^b R^r on the first receiver qutrit, X^a R^r on every other.
struct CorrectionLabel {
    int a = 0;
    int b = 0;
    bool reflect = false;

    auto operator<=>(const CorrectionLabel&) const = default;
};

/// A receiver-side unitary stored as a tensor product of 3x3 factors, one
/// per receiver qutrit in wire order.
class Correction {
   public:
    explicit Correction(std::vector<Unitary> factors, std::optional<CorrectionLabel> label = std::nullopt);

    static Correction from_label(const CorrectionLabel& label, int num_receivers);

    const std::vector<Unitary>& factors() const { return factors_; }
    const std::optional<CorrectionLabel>& label() const { return label_; }
    int num_qutrits() const { return static_cast<int>(factors_.size()); }

    State apply(const State& receiver) const;
    /// Dense 3^k x 3^k operator.
    Unitary dense() const;
    /// e.g. "|2><0| + w|1><1| + w^2|0><2| (x) ..." per factor.
    std::string describe() const;

   private:
    std::vector<Unitary> factors_;
    std::optional<CorrectionLabel> label_;
};

class CorrectionTable {
   public:
    CorrectionTable(ProtocolKind kind, int n) : kind_(kind), n_(n) {}

    ProtocolKind kind() const { return kind_; }
    int n() const { return n_; }
    void set(const OutcomeKey& key, Correction c);
    const Correction& at(const OutcomeKey& key) const;
    bool contains(const OutcomeKey& key) const { return entries_.count(key) != 0; }
    std::size_t size() const { return entries_.size(); }
    const std::map<OutcomeKey, Correction>& entries() const { return entries_; }

   private:
    ProtocolKind kind_;
    int n_;
    std::map<OutcomeKey, Correction> entries_;
};

struct Enumerate {};
struct Force {
    OutcomeKey key;
};
struct Sample {
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
};
using OutcomePolicy = std::variant<Enumerate, Force, Sample>;

/// Stride between trials in the (seed, draw_index) stream; stage j of trial
/// i uses draw index i * kDrawsPerTrial + j.
inline constexpr std::uint64_t kDrawsPerTrial = 8;

/// One fully-measured branch before the correction is applied.
struct ReceiverBranch {
    OutcomeKey key;
    double probability = 0;
    /// Receiver qutrits, factored out of the collapsed register.
    State receiver;
    /// Purity of the receiver's reduced density matrix.
    double receiver_purity = 0;
    /// Register norm after preparation and after each measurement.
    std::vector<double> step_norms;
};

struct Transcript {
    ProtocolSpec spec;
    OutcomeKey outcome;
    double branch_probability = 0;
    Correction correction;
    double receiver_purity = 0;
    double final_fidelity = 0;
    /// Register norm after preparation, each measurement and the correction.
    std::vector<double> step_norms;
    std::vector<std::string> wires;
};

/// Unknown input state on the sender's n qutrits.
State input_state(const ProtocolSpec& spec);
/// State the receiver's qutrits must end in.
State target_state(const ProtocolSpec& spec);
/// Full register before any measurement.
State initial_state(const ProtocolSpec& spec);

/// Measurement stages per policy. Enumerate skips impossible branches.
/// Throws ImpossibleBranch for a forced zero-probability outcome.
std::vector<ReceiverBranch> receiver_branches(const ProtocolSpec& spec, const OutcomePolicy& policy);

std::vector<Transcript> run_protocol(const ProtocolSpec& spec, const OutcomePolicy& policy,
                                     const CorrectionTable& table);

/// Convenience entry points; without a table the oracle-derived one is used.
std::vector<Transcript> run_single(const Coefficients& c, const OutcomePolicy& policy,
                                   const CorrectionTable* table = nullptr);
std::vector<Transcript> run_pair(const Coefficients& c, const OutcomePolicy& policy,
                                 const CorrectionTable* table = nullptr);
std::vector<Transcript> run_chain(int n, const Coefficients& c, const OutcomePolicy& policy,
                                  const CorrectionTable* table = nullptr);

/// Analytic probability of every key (including zero-probability ones).
std::vector<std::pair<OutcomeKey, double>> outcome_distribution(const ProtocolSpec& spec);

// Printed correction tables. Each row covers three keys: l = 0 with the
// listed outcome, l = 1 with the first parenthesized outcome, l = 2 with the
// second. Pair-table operators, given only on span{|00>,|11>,|22>}, are
// extended as P (x) sigma where sigma is P's permutation without phases.
CorrectionTable paper_table_single();
CorrectionTable paper_table_pair();

/// Probe inputs used to pin down a correction.
std::array<Coefficients, 3> oracle_probes();

/// All 18 members of the search family for k receiver qutrits.
std::vector<CorrectionLabel> candidate_labels();

/// Searches the family for the unique correction mapping the branch state to
/// the target on every probe. Throws OracleFailure (NoCandidate / Ambiguous).
Correction derive_correction(const ProtocolSpec& shape, const OutcomeKey& key);

/// derive_correction for every key, sharing one enumeration per probe.
CorrectionTable derive_table(const ProtocolSpec& shape);

struct Discrepancy {
    OutcomeKey key;
    Correction paper;
    Correction derived;
    /// Worst fidelity of the printed operator over the random probes.
    double paper_fidelity = 0;
    double derived_fidelity = 0;
};

struct DiscrepancyReport {
    ProtocolKind kind = ProtocolKind::Single;
    std::size_t keys_checked = 0;
    std::vector<Discrepancy> flagged;
    bool empty() const { return flagged.empty(); }
};

inline constexpr int kVerifyTrials = 10;
inline constexpr std::uint64_t kVerifySeed = 20260101;

/// Applies every printed operator to its branch state for kVerifyTrials
/// random inputs and records the keys falling short of 1 - 1e-10.
DiscrepancyReport verify_table(ProtocolKind kind);
std::vector<DiscrepancyReport> verify_tables();

/// Normalized triple with complex Gaussian components.
template <typename Rng>
Coefficients random_coefficients(Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Coefficients c;
    double norm2 = 0;
    for (auto& x : c) {
        x = {g(rng), g(rng)};
        norm2 += std::norm(x);
    }
    for (auto& x : c) x /= std::sqrt(norm2);
    return c;
}

}  // namespace telelab
