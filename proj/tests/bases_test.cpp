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

#include <gtest/gtest.h>

#include "telelab/bases.hpp"
#include "telelab/measurement.hpp"
#include "test_util.hpp"

using namespace telelab;
using telelab::testing::Cx;
using telelab::testing::w;

namespace {

constexpr double kExact = 1e-12;
const double kAmp = 1.0 / std::sqrt(3.0);

double max_abs(const Matrix<double>& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Omega, ExactCubeRoots) {
    EXPECT_NEAR(std::abs(omega(0) - Cx(1)), 0.0, kExact);
    EXPECT_NEAR(std::abs(omega(1) - Cx(-0.5, std::sqrt(3.0) / 2)), 0.0, kExact);
    EXPECT_NEAR(std::abs(omega(1) * omega(1) * omega(1) - Cx(1)), 0.0, kExact);
    EXPECT_NEAR(std::abs(omega(1) + omega(2) + Cx(1)), 0.0, kExact);
    EXPECT_EQ(omega(-1), omega(2));
    EXPECT_EQ(omega(4), omega(1));
}

TEST(Ghz, AmplitudesOnDiagonalKets) {
    const auto g3 = ghz_state(3);
    for (std::size_t i = 0; i < g3.dim(); ++i) {
        const bool diag = i == 0 || i == 13 || i == 26;
        EXPECT_NEAR(std::abs(g3[i] - Cx(diag ? kAmp : 0.0)), 0.0, kExact) << i;
    }
    const auto g4 = ghz_state(4);
    EXPECT_NEAR(std::abs(g4[40] - Cx(kAmp)), 0.0, kExact);
    EXPECT_NEAR(std::abs(g4[80] - Cx(kAmp)), 0.0, kExact);
    EXPECT_NEAR(g4.squared_norm(), 1.0, kExact);
    EXPECT_THROW(ghz_state(1), std::out_of_range);
    EXPECT_THROW(ghz_state(12), std::out_of_range);
}

TEST(Ghz, EverySingleQutritMarginalIsMaximallyMixed) {
    for (int k = 2; k <= 6; ++k) {
        const auto g = ghz_state(k);
        for (int q = 0; q < k; ++q) {
            const auto r = reduced_density(g, {q});
            EXPECT_LT(max_abs(r.matrix() - Matrix<double>::Identity(3, 3) / 3.0), kExact) << k << "," << q;
        }
    }
}

TEST(Bell, PrintedRows) {
    // Phi_00 = (|20> + |11> + |02>) / sqrt 3
    const auto b00 = bell_state({0, 0});
    EXPECT_NEAR(std::abs(b00[6] - Cx(kAmp)), 0.0, kExact);
    EXPECT_NEAR(std::abs(b00[4] - Cx(kAmp)), 0.0, kExact);
    EXPECT_NEAR(std::abs(b00[2] - Cx(kAmp)), 0.0, kExact);

    // Phi_02 = (|00> + |21> + |12>) / sqrt 3
    const auto b02 = bell_state({0, 2});
    EXPECT_NEAR(std::abs(b02[0] - Cx(kAmp)), 0.0, kExact);
    EXPECT_NEAR(std::abs(b02[7] - Cx(kAmp)), 0.0, kExact);
    EXPECT_NEAR(std::abs(b02[5] - Cx(kAmp)), 0.0, kExact);

    // Phi_12 = (|00> + w |21> + w^2 |12>) / sqrt 3
    const auto b12 = bell_state({1, 2});
    EXPECT_NEAR(std::abs(b12[0] - kAmp * w(0)), 0.0, kExact);
    EXPECT_NEAR(std::abs(b12[7] - kAmp * w(1)), 0.0, kExact);
    EXPECT_NEAR(std::abs(b12[5] - kAmp * w(2)), 0.0, kExact);

    EXPECT_THROW(bell_state({3, 0}), std::out_of_range);
}

TEST(Bell, EncodingEqualsPhaseFormula) {
    // Phi_mn = sum_b w^(m b) |2 - n - b, b> / sqrt 3, independently constructed.
    for (int m = 0; m < 3; ++m) {
        for (int n = 0; n < 3; ++n) {
            Vector<double> expected = Vector<double>::Zero(9);
            for (int b = 0; b < 3; ++b) {
                const int a = ((2 - n - b) % 3 + 3) % 3;
                expected[3 * a + b] = kAmp * w(m * b);
            }
            const auto got = bell_state({m, n});
            EXPECT_LT((got.amplitudes() - expected).cwiseAbs().maxCoeff(), kExact) << m << n;
        }
    }
}

TEST(Bell, BasisIsOrthonormalAndComplete) {
    const auto basis = bell_basis();
    ASSERT_EQ(basis.size(), 9u);
    EXPECT_EQ(basis.subsystem_qutrits(), 2);
    EXPECT_LT(max_abs(basis.gram() - Matrix<double>::Identity(9, 9)), kExact);
    Matrix<double> completeness = Matrix<double>::Zero(9, 9);
    for (const auto& s : basis.states()) completeness += s.amplitudes() * s.amplitudes().adjoint();
    EXPECT_LT(max_abs(completeness - Matrix<double>::Identity(9, 9)), kExact);
}

TEST(Bell, StatesAreMaximallyEntangled) {
    for (std::size_t i = 0; i < 9; ++i) {
        const auto s = bell_state(BellIndex::from_flat(i));
        for (int q = 0; q < 2; ++q) {
            EXPECT_LT(max_abs(reduced_density(s, {q}).matrix() - Matrix<double>::Identity(3, 3) / 3.0), kExact);
        }
    }
}

TEST(BellIndex, FlatRoundTrip) {
    for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(BellIndex::from_flat(i).flat(), i);
    EXPECT_EQ((BellIndex{1, 2}.flat()), 5u);
}

TEST(Rotated, StatesAndBasis) {
    const auto r1 = rotated_state({1});
    EXPECT_NEAR(std::abs(r1[0] - Cx(kAmp)), 0.0, kExact);
    EXPECT_NEAR(std::abs(r1[1] - kAmp * w(1)), 0.0, kExact);
    EXPECT_NEAR(std::abs(r1[2] - kAmp * w(2)), 0.0, kExact);
    const auto basis = rotated_basis();
    EXPECT_LT(max_abs(basis.gram() - Matrix<double>::Identity(3, 3)), kExact);
    EXPECT_THROW(rotated_state({3}), std::out_of_range);
}

TEST(Pauli, GroupRelations) {
    const auto x = pauli({1, 0}).matrix();
    const auto z = pauli({0, 1}).matrix();
    const Matrix<double> id = Matrix<double>::Identity(3, 3);
    EXPECT_LT(max_abs(x * x * x - id), kExact);
    EXPECT_LT(max_abs(z * z * z - id), kExact);
    EXPECT_LT(max_abs(z * x - w(1) * x * z), kExact);
    const auto moved = apply_unitary(pauli({1, 0}), {0}, basis_ket({2}));
    EXPECT_NEAR(std::abs(moved[0] - Cx(1)), 0.0, kExact);
    EXPECT_LT(max_abs(pauli({2, 1}).matrix() - x * x * z), kExact);
}

TEST(Monomial, PrintedRows) {
    // |0><0| + w^2 |1><1| + w |2><2|
    const auto diag = monomial_unitary<double>({0, 1, 2}, {w(0), w(2), w(1)});
    EXPECT_NEAR(std::abs(diag.matrix()(1, 1) - w(2)), 0.0, kExact);
    EXPECT_NEAR(std::abs(diag.matrix()(2, 2) - w(1)), 0.0, kExact);

    // |2><0| + w^2 |1><1| + w |0><2|
    const auto swap = monomial_unitary<double>({2, 1, 0}, {w(0), w(2), w(1)});
    EXPECT_NEAR(std::abs(swap.matrix()(2, 0) - Cx(1)), 0.0, kExact);
    EXPECT_NEAR(std::abs(swap.matrix()(0, 2) - w(1)), 0.0, kExact);
    EXPECT_NEAR(std::abs(swap.matrix()(0, 0)), 0.0, kExact);

    const auto form = monomial_form(swap);
    ASSERT_TRUE(form.has_value());
    EXPECT_EQ(form->permutation, (std::vector<int>{2, 1, 0}));

    EXPECT_THROW(monomial_unitary<double>({0, 0, 1}, {1.0, 1.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(monomial_unitary<double>({0, 1, 2}, {2.0, 1.0, 1.0}), std::invalid_argument);
}

TEST(Reflection, NegatesLabels) {
    const auto r = reflection();
    EXPECT_NEAR(std::abs(apply_unitary(r, {0}, basis_ket({1}))[2] - Cx(1)), 0.0, kExact);
    EXPECT_NEAR(std::abs(apply_unitary(r, {0}, basis_ket({0}))[0] - Cx(1)), 0.0, kExact);
}

TEST(MeasurementBasis, RejectsBadInput) {
    std::vector<State> two{basis_ket({0}), basis_ket({1})};
    EXPECT_THROW(MeasurementBasis<double>{two}, std::invalid_argument);
    std::vector<State> dup{basis_ket({0}), basis_ket({0}), basis_ket({2})};
    EXPECT_THROW(MeasurementBasis<double>{dup}, std::invalid_argument);
}
