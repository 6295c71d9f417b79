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

// Projective measurement of a subset of qutrits onto an orthonormal
// subsystem basis. Collapsed states keep the measured qutrits in the
// register, replaced by the observed basis state, so positions stay stable
// across protocol steps.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "telelab/errors.hpp"
#include "telelab/random.hpp"
#include "telelab/state.hpp"

namespace telelab {

/// Ordered orthonormal basis of 3^k states on k qutrits.
template <typename Scalar = double>
class MeasurementBasis {
   public:
    explicit MeasurementBasis(std::vector<StateVector<Scalar>> states) : states_(std::move(states)) {
        if (states_.empty()) throw std::invalid_argument("measurement basis is empty");
        k_ = states_.front().num_qutrits();
        if (states_.size() != pow3(k_)) {
            throw std::invalid_argument("measurement basis on " + std::to_string(k_) + " qutrits needs " +
                                        std::to_string(pow3(k_)) + " states");
        }
        const auto d = static_cast<Eigen::Index>(states_.size());
        matrix_.resize(d, d);
        for (Eigen::Index i = 0; i < d; ++i) {
            const auto& s = states_[static_cast<std::size_t>(i)];
            if (s.num_qutrits() != k_) throw std::invalid_argument("basis states have mixed sizes");
            matrix_.col(i) = s.amplitudes();
        }
        const Scalar err = (gram() - Matrix<Scalar>::Identity(d, d)).cwiseAbs().maxCoeff();
        if (err > Tolerance<Scalar>::exact) {
            throw std::invalid_argument("measurement basis is not orthonormal (max Gram defect " +
                                        std::to_string(err) + ")");
        }
    }

    int subsystem_qutrits() const { return k_; }
    std::size_t size() const { return states_.size(); }
    const StateVector<Scalar>& state(std::size_t i) const { return states_.at(i); }
    const std::vector<StateVector<Scalar>>& states() const { return states_; }
    /// Columns are the basis states.
    const Matrix<Scalar>& matrix() const { return matrix_; }
    Matrix<Scalar> gram() const { return matrix_.adjoint() * matrix_; }

   private:
    std::vector<StateVector<Scalar>> states_;
    Matrix<Scalar> matrix_;
    int k_ = 0;
};

template <typename Scalar = double>
MeasurementBasis<Scalar> computational_basis(int k) {
    std::vector<StateVector<Scalar>> states;
    for (std::size_t i = 0; i < pow3(k); ++i) states.push_back(basis_ket<Scalar>(index_to_digits(i, k)));
    return MeasurementBasis<Scalar>(std::move(states));
}

template <typename Scalar = double>
struct Branch {
    std::size_t outcome_index = 0;
    Scalar probability = 0;
    /// Empty when the branch is impossible.
    std::optional<StateVector<Scalar>> collapsed;
};

namespace detail {

template <typename Scalar>
void check_measurement(const StateVector<Scalar>& s, const std::vector<int>& targets,
                       const MeasurementBasis<Scalar>& basis) {
    if (static_cast<int>(targets.size()) != basis.subsystem_qutrits()) {
        throw std::invalid_argument("basis acts on " + std::to_string(basis.subsystem_qutrits()) +
                                    " qutrits but " + std::to_string(targets.size()) + " targets were given");
    }
    if (static_cast<int>(targets.size()) > s.num_qutrits()) throw std::invalid_argument("more targets than qutrits");
}

/// Row i: amplitudes of the rest given outcome i.
template <typename Scalar>
Matrix<Scalar> outcome_rows(const StateVector<Scalar>& s, const SubsystemLayout& layout,
                            const MeasurementBasis<Scalar>& basis) {
    return basis.matrix().adjoint() * gather(s.amplitudes(), layout);
}

template <typename Scalar>
Branch<Scalar> make_branch(std::size_t i, const Eigen::Matrix<std::complex<Scalar>, 1, Eigen::Dynamic>& row,
                           const SubsystemLayout& layout, const MeasurementBasis<Scalar>& basis) {
    Branch<Scalar> b;
    b.outcome_index = i;
    b.probability = row.squaredNorm();
    if (b.probability > Tolerance<Scalar>::impossible) {
        const Matrix<Scalar> block =
            basis.matrix().col(static_cast<Eigen::Index>(i)) * (row / std::sqrt(b.probability));
        b.collapsed = StateVector<Scalar>::normalized(layout.num_qutrits(), scatter(block, layout));
    }
    return b;
}

}  // namespace detail

/// Every outcome of measuring `targets` in `basis`, in basis order.
template <typename Scalar>
std::vector<Branch<Scalar>> enumerate_branches(const StateVector<Scalar>& s, const std::vector<int>& targets,
                                               const MeasurementBasis<Scalar>& basis) {
    detail::check_measurement(s, targets, basis);
    const SubsystemLayout layout(s.num_qutrits(), targets);
    const Matrix<Scalar> rows = detail::outcome_rows(s, layout, basis);
    std::vector<Branch<Scalar>> out;
    out.reserve(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        out.push_back(detail::make_branch<Scalar>(i, rows.row(static_cast<Eigen::Index>(i)), layout, basis));
    }
    return out;
}

/// Throws ImpossibleBranch if the outcome has (numerically) zero probability.
template <typename Scalar>
Branch<Scalar> force_outcome(const StateVector<Scalar>& s, const std::vector<int>& targets,
                             const MeasurementBasis<Scalar>& basis, std::size_t outcome_index) {
    detail::check_measurement(s, targets, basis);
    if (outcome_index >= basis.size()) throw std::out_of_range("outcome index outside basis");
    const SubsystemLayout layout(s.num_qutrits(), targets);
    const Eigen::Matrix<std::complex<Scalar>, 1, Eigen::Dynamic> row =
        basis.matrix().col(static_cast<Eigen::Index>(outcome_index)).adjoint() *
        detail::gather(s.amplitudes(), layout);
    auto b = detail::make_branch<Scalar>(outcome_index, row, layout, basis);
    if (!b.collapsed) {
        throw ImpossibleBranch("outcome " + std::to_string(outcome_index) + " has probability " +
                               std::to_string(b.probability));
    }
    return b;
}

namespace detail {

/// Inverse-CDF pick over the row probabilities in basis order. A draw landing
/// exactly on a cumulative boundary resolves to the lower index.
template <typename Scalar>
std::size_t sample_index(const Matrix<Scalar>& rows, Scalar u) {
    Scalar cumulative = 0;
    std::optional<std::size_t> last_possible;
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        const Scalar p = rows.row(i).squaredNorm();
        if (p <= Tolerance<Scalar>::impossible) continue;
        cumulative += p;
        last_possible = static_cast<std::size_t>(i);
        if (u <= cumulative) return *last_possible;
    }
    if (!last_possible) throw ImpossibleBranch("state has no possible outcome");
    // Round-off left the total just under u.
    return *last_possible;
}

}  // namespace detail

/// Inverse-CDF sample over the enumerated probabilities in basis order,
/// driven by uniform_draw(seed, draw_index).
template <typename Scalar>
Branch<Scalar> sample_outcome(const StateVector<Scalar>& s, const std::vector<int>& targets,
                              const MeasurementBasis<Scalar>& basis, std::uint64_t seed,
                              std::uint64_t draw_index) {
    detail::check_measurement(s, targets, basis);
    const SubsystemLayout layout(s.num_qutrits(), targets);
    const Matrix<Scalar> rows = detail::outcome_rows(s, layout, basis);
    const std::size_t i = detail::sample_index(rows, static_cast<Scalar>(uniform_draw(seed, draw_index)));
    return detail::make_branch<Scalar>(i, rows.row(static_cast<Eigen::Index>(i)), layout, basis);
}

// Residual forms. The collapsed register is always basis.state(i) on the
// targets times a state on the remaining qutrits; these return only the
// latter, indexed by the remaining qutrits in ascending position order.

template <typename Scalar = double>
struct Residual {
    std::size_t outcome_index = 0;
    Scalar probability = 0;
    /// Empty when the branch is impossible.
    std::optional<StateVector<Scalar>> rest;
};

namespace detail {

template <typename Scalar>
Residual<Scalar> make_residual(std::size_t i, const Matrix<Scalar>& rows, int rest_qutrits) {
    Residual<Scalar> r;
    r.outcome_index = i;
    const auto row = rows.row(static_cast<Eigen::Index>(i));
    r.probability = row.squaredNorm();
    if (r.probability > Tolerance<Scalar>::impossible) {
        r.rest = StateVector<Scalar>::normalized(rest_qutrits, row.transpose());
    }
    return r;
}

template <typename Scalar>
Matrix<Scalar> residual_rows(const StateVector<Scalar>& s, const std::vector<int>& targets,
                             const MeasurementBasis<Scalar>& basis) {
    check_measurement(s, targets, basis);
    return outcome_rows(s, SubsystemLayout(s.num_qutrits(), targets), basis);
}

}  // namespace detail

template <typename Scalar>
std::vector<Residual<Scalar>> enumerate_residuals(const StateVector<Scalar>& s, const std::vector<int>& targets,
                                                  const MeasurementBasis<Scalar>& basis) {
    const Matrix<Scalar> rows = detail::residual_rows(s, targets, basis);
    const int rest = s.num_qutrits() - static_cast<int>(targets.size());
    std::vector<Residual<Scalar>> out;
    out.reserve(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) out.push_back(detail::make_residual(i, rows, rest));
    return out;
}

/// Throws ImpossibleBranch if the outcome has (numerically) zero probability.
template <typename Scalar>
Residual<Scalar> force_residual(const StateVector<Scalar>& s, const std::vector<int>& targets,
                                const MeasurementBasis<Scalar>& basis, std::size_t outcome_index) {
    if (outcome_index >= basis.size()) throw std::out_of_range("outcome index outside basis");
    const Matrix<Scalar> rows = detail::residual_rows(s, targets, basis);
    auto r = detail::make_residual(outcome_index, rows, s.num_qutrits() - static_cast<int>(targets.size()));
    if (!r.rest) {
        throw ImpossibleBranch("outcome " + std::to_string(outcome_index) + " has probability " +
                               std::to_string(r.probability));
    }
    return r;
}

/// Same draw and outcome as sample_outcome for the same arguments.
template <typename Scalar>
Residual<Scalar> sample_residual(const StateVector<Scalar>& s, const std::vector<int>& targets,
                                 const MeasurementBasis<Scalar>& basis, std::uint64_t seed,
                                 std::uint64_t draw_index) {
    const Matrix<Scalar> rows = detail::residual_rows(s, targets, basis);
    const std::size_t i = detail::sample_index(rows, static_cast<Scalar>(uniform_draw(seed, draw_index)));
    return detail::make_residual(i, rows, s.num_qutrits() - static_cast<int>(targets.size()));
}

}  // namespace telelab
