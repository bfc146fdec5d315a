// Copyright 2026 The qpanoise Authors
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

// Test-only generators and brute-force oracles. Nothing here calls into the code paths
// it is used to check.

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qpanoise/qpanoise.hpp"

namespace qpanoise::testing {

inline std::mt19937_64& rng() {
    static std::mt19937_64 engine(0x5eed'2005ULL);
    return engine;
}

inline Matrix random_complex(std::size_t dim) {
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = Complex(g(rng()), g(rng()));
    return m;
}

/// G G^dagger / tr, full rank with probability one.
inline DensityMatrix random_density(std::size_t n_qubits) {
    Matrix g = random_complex(std::size_t{1} << n_qubits);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace();
    return DensityMatrix((rho + rho.adjoint()) / 2.0);
}

inline Vector random_unit_vector(std::size_t dim) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vector v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(g(rng()), g(rng()));
    return v / v.norm();
}

inline Vector3 random_axis() {
    std::normal_distribution<double> g(0.0, 1.0);
    Vector3 v(g(rng()), g(rng()), g(rng()));
    return v / v.norm();
}

/// Uniform on the probability simplex.
inline BellCoeffs random_bell() {
    std::exponential_distribution<double> e(1.0);
    double w[4] = {e(rng()), e(rng()), e(rng()), e(rng())};
    double s = w[0] + w[1] + w[2] + w[3];
    return {w[0] / s, w[1] / s, w[2] / s, w[3] / s};
}

/// Bloch vector read off as (tr rho sx, tr rho sy, tr rho sz).
inline Vector3 bloch_by_trace(const Matrix& rho) {
    Matrix sx(2, 2), sy(2, 2), sz(2, 2);
    sx << 0, 1, 1, 0;
    sy << 0, Complex(0, -1), Complex(0, 1), 0;
    sz << 1, 0, 0, -1;
    return {(rho * sx).trace().real(), (rho * sy).trace().real(), (rho * sz).trace().real()};
}

inline Matrix kraus_sum(const std::vector<Matrix>& kraus, const Matrix& rho) {
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    for (const auto& f : kraus) out += f * rho * f.adjoint();
    return out;
}

/// Bit b of basis index `index` in an n-qubit register, qubit 0 most significant.
inline int bit(std::size_t index, std::size_t q, std::size_t n) { return static_cast<int>((index >> (n - 1 - q)) & 1); }

/// Reference partial trace over the qubits not in `keep`, by explicit summation over
/// all basis labels of the discarded qubits.
inline Matrix brute_partial_trace(const Matrix& rho, std::size_t n, const std::vector<std::size_t>& keep) {
    std::vector<std::size_t> drop;
    for (std::size_t q = 0; q < n; ++q)
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) drop.push_back(q);
    const std::size_t k = keep.size();
    Matrix out = Matrix::Zero(1 << k, 1 << k);
    for (std::size_t i = 0; i < (1u << k); ++i)
        for (std::size_t j = 0; j < (1u << k); ++j)
            for (std::size_t e = 0; e < (1u << drop.size()); ++e) {
                std::size_t r = 0, c = 0;
                for (std::size_t a = 0; a < k; ++a) {
                    r |= ((i >> (k - 1 - a)) & 1) << (n - 1 - keep[a]);
                    c |= ((j >> (k - 1 - a)) & 1) << (n - 1 - keep[a]);
                }
                for (std::size_t a = 0; a < drop.size(); ++a) {
                    std::size_t b = (e >> (drop.size() - 1 - a)) & 1;
                    r |= b << (n - 1 - drop[a]);
                    c |= b << (n - 1 - drop[a]);
                }
                out(i, j) += rho(r, c);
            }
    return out;
}

inline void expect_valid_density(const DensityMatrix& rho) {
    EXPECT_LE(max_abs_diff(rho.matrix(), rho.matrix().adjoint()), 1e-12);
    EXPECT_NEAR(rho.trace(), 1.0, 1e-12);
    EXPECT_GE(rho.min_eigenvalue(), -1e-10);
}

}  // namespace qpanoise::testing
