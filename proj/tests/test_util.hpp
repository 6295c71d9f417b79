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

// Shared generators and brute-force oracles for the test suites. The oracles
// work digit-by-digit on flat amplitude arrays and deliberately share no code
// with the gather/scatter machinery they check.

#include <Eigen/QR>

#include <algorithm>
#include <complex>
#include <random>
#include <vector>

#include "telelab/protocols.hpp"

namespace telelab::testing {

using Cx = std::complex<double>;

inline Cx w(int p) {
    const double pi = std::acos(-1.0);
    return std::polar(1.0, 2.0 * pi * p / 3.0);
}

inline State random_state(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Vector<double> a(static_cast<Eigen::Index>(pow3(n)));
    for (Eigen::Index i = 0; i < a.size(); ++i) a[i] = Cx(g(rng), g(rng));
    return State::normalized(n, a);
}

/// Haar-ish unitary from the QR decomposition of a complex Gaussian matrix.
inline Unitary random_unitary(int k, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    const auto d = static_cast<Eigen::Index>(pow3(k));
    Matrix<double> m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = Cx(g(rng), g(rng));
    }
    Eigen::HouseholderQR<Matrix<double>> qr(m);
    return Unitary(qr.householderQ() * Matrix<double>::Identity(d, d));
}

inline std::vector<int> digits_of(std::size_t index, int n) {
    std::vector<int> d(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        d[static_cast<std::size_t>(i)] = static_cast<int>(index % 3);
        index /= 3;
    }
    return d;
}

inline std::size_t index_of(const std::vector<int>& d) {
    std::size_t i = 0;
    for (int x : d) i = 3 * i + static_cast<std::size_t>(x);
    return i;
}

/// Brute-force (I (x) u (x) I) s: loop over every output/input index pair.
inline std::vector<Cx> oracle_apply(const Matrix<double>& u, const std::vector<int>& targets, const State& s) {
    const int n = s.num_qutrits();
    const std::size_t dim = s.dim();
    std::vector<Cx> out(dim, Cx(0));
    for (std::size_t row = 0; row < dim; ++row) {
        const auto dr = digits_of(row, n);
        for (std::size_t col = 0; col < dim; ++col) {
            const auto dc = digits_of(col, n);
            bool rest_equal = true;
            for (int p = 0; p < n; ++p) {
                if (std::find(targets.begin(), targets.end(), p) == targets.end() &&
                    dr[static_cast<std::size_t>(p)] != dc[static_cast<std::size_t>(p)]) {
                    rest_equal = false;
                }
            }
            if (!rest_equal) continue;
            std::size_t ti = 0, tj = 0;
            for (int t : targets) {
                ti = 3 * ti + static_cast<std::size_t>(dr[static_cast<std::size_t>(t)]);
                tj = 3 * tj + static_cast<std::size_t>(dc[static_cast<std::size_t>(t)]);
            }
            out[row] += u(static_cast<Eigen::Index>(ti), static_cast<Eigen::Index>(tj)) * s[col];
        }
    }
    return out;
}

/// Brute-force partial trace: rho[i][j] = sum over traced digits.
inline Matrix<double> oracle_partial_trace(const State& s, const std::vector<int>& keep) {
    const int n = s.num_qutrits();
    const auto k = static_cast<Eigen::Index>(pow3(static_cast<int>(keep.size())));
    Matrix<double> rho = Matrix<double>::Zero(k, k);
    for (std::size_t a = 0; a < s.dim(); ++a) {
        const auto da = digits_of(a, n);
        for (std::size_t b = 0; b < s.dim(); ++b) {
            const auto db = digits_of(b, n);
            bool traced_equal = true;
            for (int p = 0; p < n; ++p) {
                if (std::find(keep.begin(), keep.end(), p) == keep.end() &&
                    da[static_cast<std::size_t>(p)] != db[static_cast<std::size_t>(p)]) {
                    traced_equal = false;
                }
            }
            if (!traced_equal) continue;
            std::size_t i = 0, j = 0;
            for (int p : keep) {
                i = 3 * i + static_cast<std::size_t>(da[static_cast<std::size_t>(p)]);
                j = 3 * j + static_cast<std::size_t>(db[static_cast<std::size_t>(p)]);
            }
            rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += s[a] * std::conj(s[b]);
        }
    }
    return rho;
}

/// <s| (|b><b| on targets (x) I) |s>, by explicit double loop.
inline double oracle_born(const State& s, const std::vector<int>& targets, const State& b) {
    const int n = s.num_qutrits();
    Cx total = 0;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        const auto di = digits_of(i, n);
        for (std::size_t j = 0; j < s.dim(); ++j) {
            const auto dj = digits_of(j, n);
            bool rest_equal = true;
            for (int p = 0; p < n; ++p) {
                if (std::find(targets.begin(), targets.end(), p) == targets.end() &&
                    di[static_cast<std::size_t>(p)] != dj[static_cast<std::size_t>(p)]) {
                    rest_equal = false;
                }
            }
            if (!rest_equal) continue;
            std::size_t ti = 0, tj = 0;
            for (int t : targets) {
                ti = 3 * ti + static_cast<std::size_t>(di[static_cast<std::size_t>(t)]);
                tj = 3 * tj + static_cast<std::size_t>(dj[static_cast<std::size_t>(t)]);
            }
            total += std::conj(s[i]) * b[ti] * std::conj(b[tj]) * s[j];
        }
    }
    return total.real();
}

/// (<b| on targets) s, by explicit loop; result indexed by the remaining
/// digits in ascending position order.
inline std::vector<Cx> oracle_project(const State& s, const std::vector<int>& targets, const State& b) {
    const int n = s.num_qutrits();
    const int rest = n - static_cast<int>(targets.size());
    std::vector<Cx> out(pow3(rest), Cx(0));
    for (std::size_t i = 0; i < s.dim(); ++i) {
        const auto d = digits_of(i, n);
        std::size_t ti = 0, ri = 0;
        for (int t : targets) ti = 3 * ti + static_cast<std::size_t>(d[static_cast<std::size_t>(t)]);
        for (int p = 0; p < n; ++p) {
            if (std::find(targets.begin(), targets.end(), p) == targets.end()) {
                ri = 3 * ri + static_cast<std::size_t>(d[static_cast<std::size_t>(p)]);
            }
        }
        out[ri] += std::conj(b[ti]) * s[i];
    }
    return out;
}

inline double max_abs_diff(const Vector<double>& a, const std::vector<Cx>& b) {
    double m = 0;
    for (std::size_t i = 0; i < b.size(); ++i) m = std::max(m, std::abs(a[static_cast<Eigen::Index>(i)] - b[i]));
    return m;
}

/// Largest |a_i - e^{i theta} b_i| after aligning the global phase on the
/// largest component of b.
inline double diff_up_to_phase(const std::vector<Cx>& a, const std::vector<Cx>& b) {
    std::size_t pivot = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (std::abs(b[i]) > std::abs(b[pivot])) pivot = i;
    }
    const Cx phase = std::abs(a[pivot]) > 0 ? (a[pivot] / std::abs(a[pivot])) / (b[pivot] / std::abs(b[pivot])) : Cx(1);
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - phase * b[i]));
    return m;
}

inline std::vector<Cx> to_std(const Vector<double>& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace telelab::testing
