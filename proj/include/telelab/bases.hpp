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

// Fixed objects of qutrit teleportation: GHZ channels, the nine-state
// joint-measurement basis, the rotated single-qutrit basis and the monomial
// operators used as corrections.
//
// omega = exp(+2 pi i / 3) everywhere; exp(-2 pi i / 3) is omega^2.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "telelab/measurement.hpp"
#include "telelab/state.hpp"
#include "telelab/unitary.hpp"

namespace telelab {

inline int mod3(int x) { return ((x % 3) + 3) % 3; }

/// omega^power, from exact cos/sin values.
template <typename Scalar = double>
std::complex<Scalar> omega(int power = 1) {
    const Scalar half_sqrt3 = std::sqrt(Scalar(3)) / Scalar(2);
    switch (mod3(power)) {
        case 0: return {Scalar(1), Scalar(0)};
        case 1: return {Scalar(-0.5), half_sqrt3};
        default: return {Scalar(-0.5), -half_sqrt3};
    }
}

/// Label of a joint-measurement state |Phi_mn>: m selects the phase row,
/// n the shift column.
struct BellIndex {
    int m = 0;
    int n = 0;

    static BellIndex from_flat(std::size_t i) {
        if (i >= 9) throw std::out_of_range("Bell outcome index " + std::to_string(i) + " outside [0, 9)");
        return {static_cast<int>(i / 3), static_cast<int>(i % 3)};
    }
    /// Row-major position in bell_basis().
    std::size_t flat() const {
        validate();
        return static_cast<std::size_t>(3 * m + n);
    }
    void validate() const {
        if (m < 0 || m > 2 || n < 0 || n > 2) {
            throw std::out_of_range("Bell index (" + std::to_string(m) + "," + std::to_string(n) + ") out of range");
        }
    }
    auto operator<=>(const BellIndex&) const = default;
};

struct RotatedIndex {
    int l = 0;

    void validate() const {
        if (l < 0 || l > 2) throw std::out_of_range("rotated index " + std::to_string(l) + " out of range");
    }
    auto operator<=>(const RotatedIndex&) const = default;
};

/// Exponents of X^a Z^b.
struct GeneralizedPauli {
    int a = 0;
    int b = 0;
};

template <typename Scalar = double>
StateVector<Scalar> ghz_state(int k) {
    if (k < 2 || k > 11) throw std::out_of_range("GHZ size " + std::to_string(k) + " outside [2, 11]");
    Vector<Scalar> a = Vector<Scalar>::Zero(static_cast<Eigen::Index>(pow3(k)));
    const Scalar amp = Scalar(1) / std::sqrt(Scalar(3));
    for (int d = 0; d < 3; ++d) {
        a[static_cast<Eigen::Index>(digits_to_index(std::vector<int>(static_cast<std::size_t>(k), d)))] = amp;
    }
    return StateVector<Scalar>(k, std::move(a));
}

namespace detail {

// The nine joint-measurement states as written out by hand. Column n lists
// three kets |ab>; row m multiplies them by omega^(phase exponent).
inline constexpr std::array<std::array<std::array<int, 2>, 3>, 3> kBellKets{{
    {{{2, 0}, {1, 1}, {0, 2}}},
    {{{1, 0}, {0, 1}, {2, 2}}},
    {{{0, 0}, {2, 1}, {1, 2}}},
}};
inline constexpr std::array<std::array<int, 3>, 3> kBellPhaseExponents{{
    {0, 0, 0},
    {0, 1, 2},
    {0, 2, 1},
}};

}  // namespace detail

template <typename Scalar = double>
StateVector<Scalar> bell_state(BellIndex idx) {
    idx.validate();
    Vector<Scalar> a = Vector<Scalar>::Zero(9);
    const Scalar amp = Scalar(1) / std::sqrt(Scalar(3));
    for (std::size_t j = 0; j < 3; ++j) {
        const auto& ket = detail::kBellKets[static_cast<std::size_t>(idx.n)][j];
        const int phase = detail::kBellPhaseExponents[static_cast<std::size_t>(idx.m)][j];
        a[static_cast<Eigen::Index>(3 * ket[0] + ket[1])] = amp * omega<Scalar>(phase);
    }
    return StateVector<Scalar>(2, std::move(a));
}

/// Ordered (0,0), (0,1), ..., (2,2).
template <typename Scalar = double>
MeasurementBasis<Scalar> bell_basis() {
    std::vector<StateVector<Scalar>> states;
    for (std::size_t i = 0; i < 9; ++i) states.push_back(bell_state<Scalar>(BellIndex::from_flat(i)));
    return MeasurementBasis<Scalar>(std::move(states));
}

/// (|0> + omega^l |1> + omega^(2l) |2>) / sqrt(3).
template <typename Scalar = double>
StateVector<Scalar> rotated_state(RotatedIndex idx) {
    idx.validate();
    Vector<Scalar> a(3);
    const Scalar amp = Scalar(1) / std::sqrt(Scalar(3));
    for (int j = 0; j < 3; ++j) a[j] = amp * omega<Scalar>(idx.l * j);
    return StateVector<Scalar>(1, std::move(a));
}

template <typename Scalar = double>
MeasurementBasis<Scalar> rotated_basis() {
    return MeasurementBasis<Scalar>({rotated_state<Scalar>({0}), rotated_state<Scalar>({1}), rotated_state<Scalar>({2})});
}

/// Sum_j phases[j] |perm[j]><j|.
template <typename Scalar = double>
UnitaryOp<Scalar> monomial_unitary(const std::array<int, 3>& perm, const std::array<std::complex<Scalar>, 3>& phases) {
    std::array<bool, 3> hit{};
    for (int p : perm) {
        if (p < 0 || p > 2 || hit[static_cast<std::size_t>(p)]) {
            throw std::invalid_argument("monomial_unitary: permutation is not a bijection of {0,1,2}");
        }
        hit[static_cast<std::size_t>(p)] = true;
    }
    Matrix<Scalar> m = Matrix<Scalar>::Zero(3, 3);
    for (int j = 0; j < 3; ++j) {
        const auto ph = phases[static_cast<std::size_t>(j)];
        if (std::abs(std::abs(ph) - Scalar(1)) > Tolerance<Scalar>::exact) {
            throw std::invalid_argument("monomial_unitary: phase is not unit modulus");
        }
        m(perm[static_cast<std::size_t>(j)], j) = ph;
    }
    return UnitaryOp<Scalar>(std::move(m));
}

/// X^a Z^b with X|j> = |j+1>, Z|j> = omega^j |j>.
template <typename Scalar = double>
UnitaryOp<Scalar> pauli(GeneralizedPauli p) {
    std::array<int, 3> perm{};
    std::array<std::complex<Scalar>, 3> phases{};
    for (int j = 0; j < 3; ++j) {
        perm[static_cast<std::size_t>(j)] = mod3(j + p.a);
        phases[static_cast<std::size_t>(j)] = omega<Scalar>(p.b * j);
    }
    return monomial_unitary<Scalar>(perm, phases);
}

/// R|j> = |-j mod 3>: the label reflection that, composed with shifts, gives
/// the swaps appearing in the correction tables.
template <typename Scalar = double>
UnitaryOp<Scalar> reflection() {
    return monomial_unitary<Scalar>({0, 2, 1}, {Scalar(1), Scalar(1), Scalar(1)});
}

}  // namespace telelab
