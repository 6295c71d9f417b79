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

#include "telelab/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "telelab/errors.hpp"

namespace telelab {

std::string to_string(ProtocolKind kind) {
    switch (kind) {
        case ProtocolKind::Single: return "single";
        case ProtocolKind::Pair: return "pair";
        case ProtocolKind::Chain: return "chain";
    }
    return "?";
}

ProtocolKind protocol_kind_from_string(const std::string& name) {
    if (name == "single") return ProtocolKind::Single;
    if (name == "pair") return ProtocolKind::Pair;
    if (name == "chain") return ProtocolKind::Chain;
    throw std::invalid_argument("unknown protocol '" + name + "'");
}

ProtocolSpec::ProtocolSpec(ProtocolKind kind, int n, const Coefficients& coefficients)
    : kind_(kind), n_(n), coefficients_(coefficients) {
    if (kind == ProtocolKind::Single && n != 1) throw std::invalid_argument("single protocol teleports one qutrit");
    if (kind == ProtocolKind::Pair && n != 2) throw std::invalid_argument("pair protocol teleports two qutrits");
    if (kind == ProtocolKind::Chain && (n < 1 || n > kMaxChainLength)) {
        throw std::invalid_argument("chain length " + std::to_string(n) + " outside [1, 5]");
    }
    double norm2 = 0;
    for (const auto& c : coefficients_) norm2 += std::norm(c);
    if (std::abs(norm2 - 1.0) > Tolerance<double>::exact) {
        throw std::invalid_argument("coefficients are not normalized (|a|^2+|b|^2+|c|^2 = " + std::to_string(norm2) +
                                    ")");
    }
}

int ProtocolSpec::num_qutrits() const {
    switch (kind_) {
        case ProtocolKind::Single: return 4;
        case ProtocolKind::Pair: return 5;
        case ProtocolKind::Chain: return 2 * n_ + 1;
    }
    return 0;
}

int ProtocolSpec::num_receivers() const { return kind_ == ProtocolKind::Single ? 1 : n_; }

int ProtocolSpec::num_rotated() const { return kind_ == ProtocolKind::Chain ? n_ - 1 : 1; }

std::vector<std::string> ProtocolSpec::wires() const {
    switch (kind_) {
        case ProtocolKind::Single: return {"U", "1", "2", "3"};
        case ProtocolKind::Pair: return {"1", "2", "3", "4", "5"};
        case ProtocolKind::Chain: break;
    }
    std::vector<std::string> w;
    for (int i = 1; i <= n_; ++i) w.push_back(std::to_string(i));
    for (int i = 1; i <= n_ + 1; ++i) w.push_back(std::to_string(i) + "'");
    return w;
}

std::string OutcomeKey::str() const {
    std::ostringstream os;
    os << "l=[";
    for (std::size_t i = 0; i < l.size(); ++i) os << (i ? "," : "") << l[i];
    os << "] Phi" << bell.m << bell.n;
    return os.str();
}

std::vector<OutcomeKey> all_keys(const ProtocolSpec& spec) {
    const int r = spec.num_rotated();
    std::vector<OutcomeKey> keys;
    for (std::size_t li = 0; li < pow3(r); ++li) {
        for (std::size_t b = 0; b < 9; ++b) keys.push_back({index_to_digits(li, r), BellIndex::from_flat(b)});
    }
    return keys;
}

// ---------------------------------------------------------------------------
// Correction

namespace {

std::string phase_text(Complex ph) {
    for (int p = 0; p < 3; ++p) {
        if (std::abs(ph - omega(p)) < 1e-9) return p == 0 ? "" : (p == 1 ? "w" : "w^2");
    }
    std::ostringstream os;
    os << "(" << ph.real() << (ph.imag() < 0 ? "-" : "+") << std::abs(ph.imag()) << "i)";
    return os.str();
}

std::string ketbra_text(const Unitary& u) {
    const auto form = monomial_form(u);
    if (!form) return "<dense>";
    std::ostringstream os;
    for (std::size_t j = 0; j < form->permutation.size(); ++j) {
        os << (j ? " + " : "") << phase_text(form->phases[j]) << "|" << form->permutation[j] << "><" << j << "|";
    }
    return os.str();
}

}  // namespace

Correction::Correction(std::vector<Unitary> factors, std::optional<CorrectionLabel> label)
    : factors_(std::move(factors)), label_(label) {
    for (const auto& f : factors_) {
        if (f.num_qutrits() != 1) throw std::invalid_argument("correction factors must be single-qutrit");
    }
}

Correction Correction::from_label(const CorrectionLabel& label, int num_receivers) {
    const Unitary r = label.reflect ? reflection() : Unitary::identity(1);
    std::vector<Unitary> factors;
    factors.push_back(pauli({label.a, label.b}) * r);
    for (int i = 1; i < num_receivers; ++i) factors.push_back(pauli({label.a, 0}) * r);
    return Correction(std::move(factors), label);
}

State Correction::apply(const State& receiver) const {
    if (receiver.num_qutrits() != num_qutrits()) throw std::invalid_argument("correction size mismatch");
    State s = receiver;
    for (std::size_t i = 0; i < factors_.size(); ++i) s = apply_unitary(factors_[i], {static_cast<int>(i)}, s);
    return s;
}

Unitary Correction::dense() const {
    Unitary out = Unitary::identity(0);
    for (const auto& f : factors_) out = kron(out, f);
    return out;
}

std::string Correction::describe() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < factors_.size(); ++i) os << (i ? " (x) " : "") << ketbra_text(factors_[i]);
    return os.str();
}

void CorrectionTable::set(const OutcomeKey& key, Correction c) {
    entries_.insert_or_assign(key, std::move(c));
}

const Correction& CorrectionTable::at(const OutcomeKey& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw std::out_of_range("no correction for outcome " + key.str());
    return it->second;
}

// ---------------------------------------------------------------------------
// States

State input_state(const ProtocolSpec& spec) {
    const auto& c = spec.coefficients();
    switch (spec.kind()) {
        case ProtocolKind::Single: {
            Vector<double> a(3);
            a << c[0], c[1], c[2];
            return State(1, std::move(a));
        }
        case ProtocolKind::Pair: {
            const Vector<double> a = c[0] * basis_ket({0, 0}).amplitudes() + c[1] * basis_ket({1, 1}).amplitudes() +
                                     c[2] * basis_ket({2, 2}).amplitudes();
            return State(2, a);
        }
        case ProtocolKind::Chain: break;
    }
    const int n = spec.n();
    Vector<double> a = Vector<double>::Zero(static_cast<Eigen::Index>(pow3(n)));
    for (int d = 0; d < 3; ++d) {
        a[static_cast<Eigen::Index>(digits_to_index(std::vector<int>(static_cast<std::size_t>(n), d)))] =
            c[static_cast<std::size_t>(d)];
    }
    return State(n, std::move(a));
}

State target_state(const ProtocolSpec& spec) { return input_state(spec); }

State initial_state(const ProtocolSpec& spec) {
    const int channel = spec.kind() == ProtocolKind::Chain ? spec.n() + 1 : 3;
    return tensor(input_state(spec), ghz_state(channel));
}

// ---------------------------------------------------------------------------
// Measurement pipeline

namespace {

struct Stages {
    std::vector<int> joint;
    std::vector<int> rotated;
};

Stages stages_for(const ProtocolSpec& spec) {
    switch (spec.kind()) {
        case ProtocolKind::Single: return {{0, 1}, {2}};
        case ProtocolKind::Pair: return {{1, 2}, {0}};
        case ProtocolKind::Chain: break;
    }
    const int n = spec.n();
    Stages st;
    st.joint = {n - 1, n};
    for (int i = 0; i < n - 1; ++i) st.rotated.push_back(i);
    return st;
}

class BranchWalker {
   public:
    BranchWalker(const ProtocolSpec& spec, const OutcomePolicy& policy)
        : spec_(spec), policy_(policy), stages_(stages_for(spec)), joint_basis_(bell_basis()),
          rotated_basis_(rotated_basis()) {
        if (const auto* f = std::get_if<Force>(&policy_)) {
            f->key.bell.validate();
            if (static_cast<int>(f->key.l.size()) != spec.num_rotated()) {
                throw std::invalid_argument("outcome key " + f->key.str() + " needs " +
                                            std::to_string(spec.num_rotated()) + " rotated outcomes");
            }
            for (int l : f->key.l) RotatedIndex{l}.validate();
        }
    }

    std::vector<ReceiverBranch> run() {
        const State s = initial_state(spec_);
        std::vector<int> live(static_cast<std::size_t>(s.num_qutrits()));
        std::iota(live.begin(), live.end(), 0);
        std::vector<std::size_t> outcomes;
        std::vector<double> norms{std::sqrt(s.squared_norm())};
        walk(s, live, 0, 1.0, outcomes, norms);
        return std::move(out_);
    }

   private:
    std::size_t num_stages() const { return 1 + stages_.rotated.size(); }

    // `s` holds only the unmeasured wires, listed in `live`; the measured ones
    // sit in their announced basis states and are dropped from the register.
    void walk(const State& s, const std::vector<int>& live, std::size_t stage, double prob,
              std::vector<std::size_t>& outcomes, std::vector<double>& norms) {
        if (stage == num_stages()) {
            leaf(s, prob, outcomes, norms);
            return;
        }
        const bool joint = stage == 0;
        const std::vector<int> wires = joint ? stages_.joint : std::vector<int>{stages_.rotated[stage - 1]};
        const auto& basis = joint ? joint_basis_ : rotated_basis_;

        std::vector<int> targets;
        for (int wire : wires) {
            targets.push_back(static_cast<int>(std::find(live.begin(), live.end(), wire) - live.begin()));
        }
        std::vector<int> rest;
        for (int wire : live) {
            if (std::find(wires.begin(), wires.end(), wire) == wires.end()) rest.push_back(wire);
        }

        std::vector<Residual<double>> branches;
        if (std::holds_alternative<Enumerate>(policy_)) {
            branches = enumerate_residuals(s, targets, basis);
        } else if (const auto* f = std::get_if<Force>(&policy_)) {
            const std::size_t idx = joint ? f->key.bell.flat() : static_cast<std::size_t>(f->key.l[stage - 1]);
            branches.push_back(force_residual(s, targets, basis, idx));
        } else {
            const auto& smp = std::get<Sample>(policy_);
            branches.push_back(sample_residual(s, targets, basis, smp.seed, smp.trial * kDrawsPerTrial + stage));
        }

        for (const auto& b : branches) {
            if (!b.rest) continue;
            outcomes.push_back(b.outcome_index);
            norms.push_back(std::sqrt(b.rest->squared_norm()));
            walk(*b.rest, rest, stage + 1, prob * b.probability, outcomes, norms);
            norms.pop_back();
            outcomes.pop_back();
        }
    }

    // Only the receiver wires remain, in ascending order.
    void leaf(const State& s, double prob, const std::vector<std::size_t>& outcomes, const std::vector<double>& norms) {
        OutcomeKey key;
        key.bell = BellIndex::from_flat(outcomes[0]);
        for (std::size_t i = 1; i < outcomes.size(); ++i) key.l.push_back(static_cast<int>(outcomes[i]));

        std::vector<int> all(static_cast<std::size_t>(s.num_qutrits()));
        std::iota(all.begin(), all.end(), 0);
        out_.push_back(ReceiverBranch{key, prob, s, purity(reduced_density(s, all)), norms});
    }

    const ProtocolSpec& spec_;
    const OutcomePolicy& policy_;
    Stages stages_;
    MeasurementBasis<double> joint_basis_;
    MeasurementBasis<double> rotated_basis_;
    std::vector<ReceiverBranch> out_;
};

}  // namespace

std::vector<ReceiverBranch> receiver_branches(const ProtocolSpec& spec, const OutcomePolicy& policy) {
    return BranchWalker(spec, policy).run();
}

std::vector<Transcript> run_protocol(const ProtocolSpec& spec, const OutcomePolicy& policy,
                                     const CorrectionTable& table) {
    const State target = target_state(spec);
    std::vector<Transcript> out;
    for (auto& rb : receiver_branches(spec, policy)) {
        const Correction& corr = table.at(rb.key);
        const State corrected = corr.apply(rb.receiver);
        auto norms = std::move(rb.step_norms);
        norms.push_back(std::sqrt(corrected.squared_norm()));
        out.push_back(Transcript{spec, rb.key, rb.probability, corr, rb.receiver_purity,
                                 fidelity_up_to_phase(corrected, target), std::move(norms), spec.wires()});
    }
    return out;
}

namespace {

std::vector<Transcript> run_with(const ProtocolSpec& spec, const OutcomePolicy& policy,
                                 const CorrectionTable* table) {
    if (table) return run_protocol(spec, policy, *table);
    return run_protocol(spec, policy, derive_table(spec));
}

}  // namespace

std::vector<Transcript> run_single(const Coefficients& c, const OutcomePolicy& policy, const CorrectionTable* table) {
    return run_with(ProtocolSpec::single(c), policy, table);
}

std::vector<Transcript> run_pair(const Coefficients& c, const OutcomePolicy& policy, const CorrectionTable* table) {
    return run_with(ProtocolSpec::pair(c), policy, table);
}

std::vector<Transcript> run_chain(int n, const Coefficients& c, const OutcomePolicy& policy,
                                  const CorrectionTable* table) {
    return run_with(ProtocolSpec::chain(n, c), policy, table);
}

std::vector<std::pair<OutcomeKey, double>> outcome_distribution(const ProtocolSpec& spec) {
    std::map<OutcomeKey, double> probs;
    for (const auto& key : all_keys(spec)) probs[key] = 0.0;
    for (const auto& rb : receiver_branches(spec, Enumerate{})) probs[rb.key] = rb.probability;
    return {probs.begin(), probs.end()};
}

}  // namespace telelab
