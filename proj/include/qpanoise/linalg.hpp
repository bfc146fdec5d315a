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

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <limits>

namespace qpanoise {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Matrix3 = Eigen::Matrix3d;
using Vector3 = Eigen::Vector3d;

/// Numeric tolerance policy shared by every module.
namespace tol {
inline constexpr double kStructural = 1e-12;  // hermiticity, trace, norms
inline constexpr double kPositivity = 1e-10;  // smallest allowed eigenvalue is -kPositivity
inline constexpr double kAbort = 1e-14;       // coincidence probability below this aborts
inline constexpr double kUnitAxis = 1e-9;
}  // namespace tol

/// Largest register handled anywhere: two pairs of qubits.
inline constexpr std::size_t kMaxQubits = 4;
inline constexpr std::size_t kMaxDim = std::size_t{1} << kMaxQubits;

inline constexpr Complex kI{0.0, 1.0};

/// Returns log2(dim) when dim is a power of two in [2, kMaxDim], otherwise 0.
inline std::size_t qubits_for_dim(std::size_t dim) {
    for (std::size_t n = 1; n <= kMaxQubits; ++n) {
        if (dim == (std::size_t{1} << n)) return n;
    }
    return 0;
}

/// max |a_ij - b_ij|
inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
    return (a - b).cwiseAbs().maxCoeff();
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

namespace pauli {
inline Matrix identity() { return Matrix::Identity(2, 2); }
inline Matrix x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}
inline Matrix y() {
    Matrix m(2, 2);
    m << 0, -kI, kI, 0;
    return m;
}
inline Matrix z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}
}  // namespace pauli

}  // namespace qpanoise
