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

// Dense statevectors over qutrits.
//
// Index convention: qutrit 0 is the leftmost ket label, and the flat index of
// |d0 d1 ... d(n-1)> is sum_i d_i * 3^(n-1-i) (big-endian base 3). Amplitude
// dumps therefore read in the same order as the kets are written by hand.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace telelab {

inline constexpr int kQutritDim = 3;

/// Largest register held densely (3^12 = 531441 amplitudes).
inline constexpr int kMaxQutrits = 12;

template <typename Scalar>
using Vector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
struct Tolerance {
    /// Identities that hold exactly in real arithmetic.
    static constexpr Scalar exact = Scalar(1e-12);
    /// Results of multi-step pipelines (measurement chains, corrections).
    static constexpr Scalar composed = Scalar(1e-10);
    /// Below this a measurement branch is impossible rather than round-off.
    static constexpr Scalar impossible = Scalar(1e-14);
};

inline std::size_t pow3(int k) {
    std::size_t r = 1;
    for (int i = 0; i < k; ++i) r *= kQutritDim;
    return r;
}

inline std::size_t digits_to_index(const std::vector<int>& digits) {
    std::size_t index = 0;
    for (int d : digits) {
        if (d < 0 || d >= kQutritDim) {
            throw std::out_of_range("qutrit digit " + std::to_string(d) + " outside {0,1,2}");
        }
        index = index * kQutritDim + static_cast<std::size_t>(d);
    }
    return index;
}

inline std::vector<int> index_to_digits(std::size_t index, int num_qutrits) {
    if (num_qutrits < 0 || index >= pow3(num_qutrits)) {
        throw std::out_of_range("flat index " + std::to_string(index) + " outside register");
    }
    std::vector<int> digits(static_cast<std::size_t>(num_qutrits));
    for (int i = num_qutrits - 1; i >= 0; --i) {
        digits[static_cast<std::size_t>(i)] = static_cast<int>(index % kQutritDim);
        index /= kQutritDim;
    }
    return digits;
}

/// Splits an n-qutrit register into an ordered target subsystem and the
/// remaining qutrits (ascending positions). Flat index of a basis ket is
/// target_offsets()[t] + rest_offsets()[r], where t enumerates the target
/// digits big-endian in the order the targets were given.
class SubsystemLayout {
   public:
    SubsystemLayout(int num_qutrits, const std::vector<int>& targets)
        : num_qutrits_(num_qutrits), targets_(targets) {
        std::vector<bool> used(static_cast<std::size_t>(num_qutrits), false);
        for (int t : targets) {
            if (t < 0 || t >= num_qutrits) {
                throw std::out_of_range("qutrit position " + std::to_string(t) + " out of range");
            }
            if (used[static_cast<std::size_t>(t)]) {
                throw std::invalid_argument("repeated qutrit position " + std::to_string(t));
            }
            used[static_cast<std::size_t>(t)] = true;
        }
        for (int p = 0; p < num_qutrits; ++p) {
            if (!used[static_cast<std::size_t>(p)]) rest_.push_back(p);
        }
        target_offsets_ = offsets_for(targets_);
        rest_offsets_ = offsets_for(rest_);
    }

    int num_qutrits() const { return num_qutrits_; }
    const std::vector<int>& targets() const { return targets_; }
    const std::vector<int>& rest() const { return rest_; }
    const std::vector<std::size_t>& target_offsets() const { return target_offsets_; }
    const std::vector<std::size_t>& rest_offsets() const { return rest_offsets_; }

   private:
    std::vector<std::size_t> offsets_for(const std::vector<int>& positions) const {
        std::vector<std::size_t> offsets{0};
        for (int p : positions) {
            const std::size_t stride = pow3(num_qutrits_ - 1 - p);
            std::vector<std::size_t> next;
            next.reserve(offsets.size() * kQutritDim);
            for (std::size_t o : offsets) {
                for (int d = 0; d < kQutritDim; ++d) next.push_back(o + static_cast<std::size_t>(d) * stride);
            }
            offsets = std::move(next);
        }
        return offsets;
    }

    int num_qutrits_;
    std::vector<int> targets_;
    std::vector<int> rest_;
    std::vector<std::size_t> target_offsets_;
    std::vector<std::size_t> rest_offsets_;
};

namespace detail {

/// Reshapes amplitudes into a (3^k x 3^(n-k)) matrix, rows over the targets.
template <typename Scalar>
Matrix<Scalar> gather(const Vector<Scalar>& amplitudes, const SubsystemLayout& layout) {
    const auto& to = layout.target_offsets();
    const auto& ro = layout.rest_offsets();
    Matrix<Scalar> m(static_cast<Eigen::Index>(to.size()), static_cast<Eigen::Index>(ro.size()));
    for (std::size_t r = 0; r < ro.size(); ++r) {
        for (std::size_t t = 0; t < to.size(); ++t) {
            m(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(r)) = amplitudes[static_cast<Eigen::Index>(ro[r] + to[t])];
        }
    }
    return m;
}

template <typename Scalar>
Vector<Scalar> scatter(const Matrix<Scalar>& m, const SubsystemLayout& layout) {
    const auto& to = layout.target_offsets();
    const auto& ro = layout.rest_offsets();
    Vector<Scalar> out(static_cast<Eigen::Index>(to.size() * ro.size()));
    for (std::size_t r = 0; r < ro.size(); ++r) {
        for (std::size_t t = 0; t < to.size(); ++t) {
            out[static_cast<Eigen::Index>(ro[r] + to[t])] = m(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(r));
        }
    }
    return out;
}

}  // namespace detail

template <typename Scalar = double>
class StateVector {
   public:
    using Amplitudes = Vector<Scalar>;

    /// The zero-qutrit state (the scalar 1); identity for tensor().
    StateVector() : num_qutrits_(0), amplitudes_(Amplitudes::Ones(1)) {}

    /// Requires 3^num_qutrits amplitudes with unit norm (within the composed
    /// tolerance).
    StateVector(int num_qutrits, Amplitudes amplitudes)
        : num_qutrits_(num_qutrits), amplitudes_(std::move(amplitudes)) {
        check_shape();
        const Scalar sq = amplitudes_.squaredNorm();
        if (std::abs(sq - Scalar(1)) > Tolerance<Scalar>::composed) {
            throw std::invalid_argument("state is not normalized (squared norm " + std::to_string(sq) + ")");
        }
    }

    /// Rescales to unit norm; throws on the zero vector.
    static StateVector normalized(int num_qutrits, Amplitudes amplitudes) {
        const Scalar norm = amplitudes.norm();
        if (!(norm > Scalar(0))) throw std::invalid_argument("cannot normalize the zero vector");
        amplitudes /= norm;
        return StateVector(num_qutrits, std::move(amplitudes));
    }

    int num_qutrits() const { return num_qutrits_; }
    std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
    const Amplitudes& amplitudes() const { return amplitudes_; }
    std::complex<Scalar> operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }
    std::complex<Scalar> amplitude(const std::vector<int>& digits) const {
        if (static_cast<int>(digits.size()) != num_qutrits_) throw std::invalid_argument("digit string length mismatch");
        return (*this)[digits_to_index(digits)];
    }
    Scalar squared_norm() const { return amplitudes_.squaredNorm(); }

   private:
    void check_shape() const {
        if (num_qutrits_ < 0 || num_qutrits_ > kMaxQutrits) {
            throw std::out_of_range("qutrit count " + std::to_string(num_qutrits_) + " outside [0, 12]");
        }
        if (static_cast<std::size_t>(amplitudes_.size()) != pow3(num_qutrits_)) {
            throw std::invalid_argument("amplitude count does not match 3^num_qutrits");
        }
    }

    int num_qutrits_;
    Amplitudes amplitudes_;
};

template <typename Scalar = double>
StateVector<Scalar> basis_ket(const std::vector<int>& digits) {
    const int n = static_cast<int>(digits.size());
    if (n > kMaxQutrits) throw std::out_of_range("too many qutrits");
    Vector<Scalar> a = Vector<Scalar>::Zero(static_cast<Eigen::Index>(pow3(n)));
    a[static_cast<Eigen::Index>(digits_to_index(digits))] = Scalar(1);
    return StateVector<Scalar>(n, std::move(a));
}

template <typename Scalar>
StateVector<Scalar> tensor(const StateVector<Scalar>& a, const StateVector<Scalar>& b) {
    const int n = a.num_qutrits() + b.num_qutrits();
    if (n > kMaxQutrits) throw std::out_of_range("tensor product exceeds the dense register limit");
    Vector<Scalar> out(static_cast<Eigen::Index>(a.dim() * b.dim()));
    // Big-endian: a's digits are the most significant block.
    for (std::size_t i = 0; i < a.dim(); ++i) {
        out.segment(static_cast<Eigen::Index>(i * b.dim()), static_cast<Eigen::Index>(b.dim())) = a[i] * b.amplitudes();
    }
    return StateVector<Scalar>(n, std::move(out));
}

template <typename Scalar>
std::complex<Scalar> inner(const StateVector<Scalar>& a, const StateVector<Scalar>& b) {
    if (a.num_qutrits() != b.num_qutrits()) throw std::invalid_argument("inner: dimension mismatch");
    return a.amplitudes().dot(b.amplitudes());  // Eigen's dot conjugates the left operand
}

template <typename Scalar>
Scalar fidelity_up_to_phase(const StateVector<Scalar>& a, const StateVector<Scalar>& b) {
    return std::min(Scalar(1), std::abs(inner(a, b)));
}

/// (<bra| on `positions`) applied to s; the result lives on the remaining
/// qutrits in ascending position order and is not renormalized.
template <typename Scalar>
Vector<Scalar> partial_inner(const StateVector<Scalar>& bra, const std::vector<int>& positions,
                             const StateVector<Scalar>& s) {
    if (bra.num_qutrits() != static_cast<int>(positions.size())) {
        throw std::invalid_argument("partial_inner: bra size does not match positions");
    }
    const SubsystemLayout layout(s.num_qutrits(), positions);
    return (bra.amplitudes().adjoint() * detail::gather(s.amplitudes(), layout)).transpose();
}

/// Density matrix of a k-qutrit subsystem.
template <typename Scalar = double>
class ReducedState {
   public:
    ReducedState(int num_qutrits, Matrix<Scalar> rho) : num_qutrits_(num_qutrits), matrix_(std::move(rho)) {
        const auto dim = static_cast<Eigen::Index>(pow3(num_qutrits));
        if (matrix_.rows() != dim || matrix_.cols() != dim) throw std::invalid_argument("density matrix shape mismatch");
    }

    int num_qutrits() const { return num_qutrits_; }
    const Matrix<Scalar>& matrix() const { return matrix_; }
    std::complex<Scalar> trace() const { return matrix_.trace(); }

   private:
    int num_qutrits_;
    Matrix<Scalar> matrix_;
};

/// Partial trace over every qutrit not in `keep`. Rows of `keep` are ordered
/// big-endian in the order given.
template <typename Scalar>
ReducedState<Scalar> reduced_density(const StateVector<Scalar>& s, const std::vector<int>& keep) {
    const SubsystemLayout layout(s.num_qutrits(), keep);
    const Matrix<Scalar> m = detail::gather(s.amplitudes(), layout);

    // Identically-zero rows contribute nothing; skipping them keeps the
    // product cheap for the sparse branch states the protocols produce.
    std::vector<Eigen::Index> live;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        if (m.row(r).squaredNorm() > Scalar(0)) live.push_back(r);
    }
    Matrix<Scalar> compact(static_cast<Eigen::Index>(live.size()), m.cols());
    for (std::size_t i = 0; i < live.size(); ++i) compact.row(static_cast<Eigen::Index>(i)) = m.row(live[i]);
    const Matrix<Scalar> small = compact * compact.adjoint();

    Matrix<Scalar> rho = Matrix<Scalar>::Zero(m.rows(), m.rows());
    for (std::size_t i = 0; i < live.size(); ++i) {
        for (std::size_t j = 0; j < live.size(); ++j) {
            rho(live[i], live[j]) = small(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return ReducedState<Scalar>(static_cast<int>(keep.size()), std::move(rho));
}

/// tr(rho^2).
template <typename Scalar>
Scalar purity(const ReducedState<Scalar>& r) {
    // rho is Hermitian, so tr(rho^2) is the squared Frobenius norm.
    return r.matrix().squaredNorm();
}

}  // namespace telelab
