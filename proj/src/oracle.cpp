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

// Printed correction tables, the candidate-search oracle that derives
// corrections from simulation alone, and the adjudication between the two.

#include <cmath>
#include <map>
#include <random>

#include "telelab/errors.hpp"
#include "telelab/protocols.hpp"

namespace telelab {

namespace {

struct PrintedRow {
    // Joint outcome (m, n) for l = 0, 1, 2.
    std::array<std::array<int, 2>, 3> outcomes;
    std::array<int, 3> permutation;
    std::array<int, 3> phase_exponents;
};

// Charlie's operators; perm[j] is the image of |j>, phases as powers of w.
constexpr std::array<PrintedRow, 9> kSingleRows{{
    {{{{0, 0}, {1, 0}, {2, 0}}}, {2, 1, 0}, {0, 0, 0}},
    {{{{2, 0}, {0, 0}, {1, 0}}}, {2, 1, 0}, {0, 1, 2}},
    {{{{1, 0}, {2, 0}, {0, 0}}}, {2, 1, 0}, {0, 2, 1}},
    {{{{0, 1}, {1, 1}, {2, 1}}}, {1, 0, 2}, {0, 0, 0}},
    {{{{2, 1}, {0, 1}, {1, 1}}}, {1, 0, 2}, {0, 1, 2}},
    {{{{1, 1}, {2, 1}, {0, 1}}}, {1, 0, 2}, {0, 2, 1}},
    {{{{0, 2}, {1, 2}, {2, 2}}}, {0, 2, 1}, {0, 0, 0}},
    {{{{2, 2}, {0, 2}, {1, 2}}}, {0, 2, 1}, {0, 1, 2}},
    {{{{1, 2}, {2, 2}, {0, 2}}}, {0, 2, 1}, {0, 2, 1}},
}};

// Bob's operators on span{|00>,|11>,|22>}: |jj> -> w^e |perm[j] perm[j]>.
constexpr std::array<PrintedRow, 9> kPairRows{{
    {{{{0, 0}, {2, 0}, {1, 0}}}, {2, 1, 0}, {0, 0, 0}},
    {{{{1, 0}, {0, 0}, {2, 0}}}, {2, 1, 0}, {0, 2, 1}},
    {{{{2, 0}, {1, 0}, {0, 0}}}, {2, 1, 0}, {0, 1, 2}},
    {{{{0, 1}, {2, 1}, {1, 1}}}, {1, 0, 2}, {0, 0, 0}},
    {{{{1, 1}, {0, 1}, {2, 1}}}, {1, 0, 2}, {0, 2, 1}},
    {{{{2, 1}, {1, 1}, {0, 1}}}, {1, 0, 2}, {0, 1, 2}},
    {{{{0, 2}, {2, 2}, {1, 2}}}, {0, 2, 1}, {0, 0, 0}},
    {{{{1, 2}, {0, 2}, {2, 2}}}, {0, 2, 1}, {0, 2, 1}},
    {{{{2, 2}, {1, 2}, {0, 2}}}, {0, 2, 1}, {0, 1, 2}},
}};

CorrectionTable printed_table(ProtocolKind kind, const std::array<PrintedRow, 9>& rows) {
    const int receivers = kind == ProtocolKind::Single ? 1 : 2;
    CorrectionTable table(kind, receivers);
    for (const auto& row : rows) {
        std::array<Complex, 3> phases{};
        for (std::size_t j = 0; j < 3; ++j) phases[j] = omega(row.phase_exponents[j]);
        std::vector<Unitary> factors{monomial_unitary(row.permutation, phases)};
        if (receivers == 2) factors.push_back(monomial_unitary<double>(row.permutation, {1.0, 1.0, 1.0}));
        for (int l = 0; l < 3; ++l) {
            const auto& o = row.outcomes[static_cast<std::size_t>(l)];
            table.set({{l}, {o[0], o[1]}}, Correction(factors));
        }
    }
    return table;
}

/// Receiver states of one probe input, keyed by outcome.
std::map<OutcomeKey, State> probe_branches(const ProtocolSpec& spec, const OutcomePolicy& policy) {
    std::map<OutcomeKey, State> out;
    for (auto& rb : receiver_branches(spec, policy)) out.insert_or_assign(rb.key, std::move(rb.receiver));
    return out;
}

Correction select_candidate(const OutcomeKey& key, const std::vector<const State*>& branch_states,
                            const std::vector<State>& targets, int num_receivers) {
    const double threshold = 1.0 - Tolerance<double>::composed;
    std::vector<Correction> passing;
    for (const auto& label : candidate_labels()) {
        Correction c = Correction::from_label(label, num_receivers);
        bool ok = true;
        for (std::size_t p = 0; p < targets.size() && ok; ++p) {
            ok = fidelity_up_to_phase(c.apply(*branch_states[p]), targets[p]) >= threshold;
        }
        if (ok) passing.push_back(std::move(c));
    }
    if (passing.empty()) {
        throw OracleFailure(OracleFailure::Kind::NoCandidate, "no candidate correction for outcome " + key.str());
    }
    if (passing.size() > 1) {
        throw OracleFailure(OracleFailure::Kind::Ambiguous, std::to_string(passing.size()) +
                                                                " candidate corrections pass for outcome " + key.str());
    }
    return std::move(passing.front());
}

}  // namespace

CorrectionTable paper_table_single() { return printed_table(ProtocolKind::Single, kSingleRows); }

CorrectionTable paper_table_pair() { return printed_table(ProtocolKind::Pair, kPairRows); }

std::array<Coefficients, 3> oracle_probes() {
    const double s = 1.0 / std::sqrt(3.0);
    return {{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {s, s, s}}};
}

std::vector<CorrectionLabel> candidate_labels() {
    std::vector<CorrectionLabel> out;
    for (int r = 0; r < 2; ++r) {
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) out.push_back({a, b, r == 1});
        }
    }
    return out;
}

Correction derive_correction(const ProtocolSpec& shape, const OutcomeKey& key) {
    std::vector<State> branch_states;
    std::vector<State> targets;
    for (const auto& probe : oracle_probes()) {
        const ProtocolSpec spec = shape.with_coefficients(probe);
        auto rbs = receiver_branches(spec, Force{key});
        branch_states.push_back(std::move(rbs.front().receiver));
        targets.push_back(target_state(spec));
    }
    std::vector<const State*> ptrs;
    for (const auto& s : branch_states) ptrs.push_back(&s);
    return select_candidate(key, ptrs, targets, shape.num_receivers());
}

CorrectionTable derive_table(const ProtocolSpec& shape) {
    std::vector<std::map<OutcomeKey, State>> per_probe;
    std::vector<State> targets;
    for (const auto& probe : oracle_probes()) {
        const ProtocolSpec spec = shape.with_coefficients(probe);
        per_probe.push_back(probe_branches(spec, Enumerate{}));
        targets.push_back(target_state(spec));
    }
    CorrectionTable table(shape.kind(), shape.n());
    for (const auto& key : all_keys(shape)) {
        std::vector<const State*> states;
        for (const auto& branches : per_probe) {
            const auto it = branches.find(key);
            if (it == branches.end()) {
                throw OracleFailure(OracleFailure::Kind::Ambiguous,
                                    "probe leaves outcome " + key.str() + " unreachable");
            }
            states.push_back(&it->second);
        }
        table.set(key, select_candidate(key, states, targets, shape.num_receivers()));
    }
    return table;
}

DiscrepancyReport verify_table(ProtocolKind kind) {
    if (kind == ProtocolKind::Chain) throw std::invalid_argument("no printed table for chain protocols");
    const Coefficients unit{1.0, 0.0, 0.0};
    const ProtocolSpec shape = kind == ProtocolKind::Single ? ProtocolSpec::single(unit) : ProtocolSpec::pair(unit);
    const CorrectionTable paper = kind == ProtocolKind::Single ? paper_table_single() : paper_table_pair();
    const CorrectionTable derived = derive_table(shape);

    std::map<OutcomeKey, double> worst_paper;
    std::map<OutcomeKey, double> worst_derived;
    for (const auto& key : all_keys(shape)) {
        worst_paper[key] = 1.0;
        worst_derived[key] = 1.0;
    }

    std::mt19937_64 rng(kVerifySeed);
    for (int trial = 0; trial < kVerifyTrials; ++trial) {
        const ProtocolSpec spec = shape.with_coefficients(random_coefficients(rng));
        const State target = target_state(spec);
        for (const auto& rb : receiver_branches(spec, Enumerate{})) {
            auto& wp = worst_paper.at(rb.key);
            auto& wd = worst_derived.at(rb.key);
            wp = std::min(wp, fidelity_up_to_phase(paper.at(rb.key).apply(rb.receiver), target));
            wd = std::min(wd, fidelity_up_to_phase(derived.at(rb.key).apply(rb.receiver), target));
        }
    }

    DiscrepancyReport report;
    report.kind = kind;
    report.keys_checked = paper.size();
    for (const auto& [key, fid] : worst_paper) {
        if (fid < 1.0 - Tolerance<double>::composed) {
            report.flagged.push_back({key, paper.at(key), derived.at(key), fid, worst_derived.at(key)});
        }
    }
    return report;
}

std::vector<DiscrepancyReport> verify_tables() {
    return {verify_table(ProtocolKind::Single), verify_table(ProtocolKind::Pair)};
}

}  // namespace telelab
