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

#include <optional>
#include <stdexcept>
#include <vector>

#include "telelab/state.hpp"

namespace telelab {

/// Square complex matrix acting on 3^k amplitudes, with U^dagger U = I
/// checked at construction.
template <typename Scalar = double>
class UnitaryOp {
   public:
    explicit UnitaryOp(Matrix<Scalar> m) : matrix_(std::move(m)) {
        if (matrix_.rows() != matrix_.cols()) throw std::invalid_argument("unitary must be square");
        num_qutrits_ = -1;
        for (int k = 0; k <= kMaxQutrits; ++k) {
            if (static_cast<Eigen::Index>(pow3(k)) == matrix_.rows()) {
                num_qutrits_ = k;
                break;
            }
        }
        if (num_qutrits_ < 0) throw std::invalid_argument("unitary dimension is not a power of 3");
        const Scalar err = unitarity_error(matrix_);
        if (err > Tolerance<Scalar>::exact) {
            throw std::invalid_argument("matrix is not unitary (max |U^+U - I| = " + std::to_string(err) + ")");
        }
    }

    static UnitaryOp identity(int num_qutrits) {
        const auto d = static_cast<Eigen::Index>(pow3(num_qutrits));
        return UnitaryOp(Matrix<Scalar>::Identity(d, d));
    }

    static Scalar unitarity_error(const Matrix<Scalar>& m) {
        const Matrix<Scalar> defect = m.adjoint() * m - Matrix<Scalar>::Identity(m.rows(), m.cols());
        return defect.cwiseAbs().maxCoeff();
    }

    Eigen::Index dim() const { return matrix_.rows(); }
    int num_qutrits() const { return num_qutrits_; }
    const Matrix<Scalar>& matrix() const { return matrix_; }

    UnitaryOp adjoint() const { return UnitaryOp(matrix_.adjoint()); }
    UnitaryOp operator*(const UnitaryOp& rhs) const { return UnitaryOp(matrix_ * rhs.matrix_); }

   private:
    Matrix<Scalar> matrix_;
    int num_qutrits_ = 0;
};

/// Kronecker product; `a` acts on the more significant qutrits.
template <typename Scalar>
UnitaryOp<Scalar> kron(const UnitaryOp<Scalar>& a, const UnitaryOp<Scalar>& b) {
    const auto& ma = a.matrix();
    const auto& mb = b.matrix();
    Matrix<Scalar> out(ma.rows() * mb.rows(), ma.cols() * mb.cols());
    for (Eigen::Index i = 0; i < ma.rows(); ++i) {
        for (Eigen::Index j = 0; j < ma.cols(); ++j) {
            out.block(i * mb.rows(), j * mb.cols(), mb.rows(), mb.cols()) = ma(i, j) * mb;
        }
    }
    return UnitaryOp<Scalar>(std::move(out));
}

/// Permutation-with-phases view: column j has its single nonzero entry
/// phases[j] in row permutation[j].
template <typename Scalar = double>
struct MonomialForm {
    std::vector<int> permutation;
    std::vector<std::complex<Scalar>> phases;
};

template <typename Scalar>
std::optional<MonomialForm<Scalar>> monomial_form(const UnitaryOp<Scalar>& u, Scalar tol = Tolerance<Scalar>::exact) {
    MonomialForm<Scalar> form;
    const auto& m = u.matrix();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        int row = -1;
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (std::abs(m(i, j)) > tol) {
                if (row >= 0) return std::nullopt;
                row = static_cast<int>(i);
            }
        }
        if (row < 0) return std::nullopt;
        form.permutation.push_back(row);
        form.phases.push_back(m(row, j));
    }
    return form;
}

/// Applies u to the ordered `targets` of s, identity elsewhere.
template <typename Scalar>
StateVector<Scalar> apply_unitary(const UnitaryOp<Scalar>& u, const std::vector<int>& targets,
                                  const StateVector<Scalar>& s) {
    if (u.num_qutrits() != static_cast<int>(targets.size())) {
        throw std::invalid_argument("unitary acts on " + std::to_string(u.num_qutrits()) + " qutrits but " +
                                    std::to_string(targets.size()) + " targets were given");
    }
    const SubsystemLayout layout(s.num_qutrits(), targets);
    const Matrix<Scalar> m = u.matrix() * detail::gather(s.amplitudes(), layout);
    return StateVector<Scalar>(s.num_qutrits(), detail::scatter(m, layout));
}

}  // namespace telelab
