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

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qpanoise/errors.hpp"
#include "qpanoise/linalg.hpp"

namespace qpanoise {

/// A square unitary matrix on 1..4 qubits. Construction checks U^dagger U = I.
class Unitary {
   public:
    explicit Unitary(Matrix m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols() || qubits_for_dim(static_cast<std::size_t>(m_.rows())) == 0) {
            throw PreconditionError("unitary must be square with dimension 2, 4, 8 or 16");
        }
        double dev = max_abs_diff(m_.adjoint() * m_, Matrix::Identity(m_.rows(), m_.cols()));
        if (dev > tol::kStructural) {
            throw PreconditionError("matrix is not unitary (max deviation " + std::to_string(dev) + ")");
        }
    }

    static Unitary identity(std::size_t n_qubits) {
        auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
        return Unitary(Matrix::Identity(dim, dim));
    }

    const Matrix& matrix() const { return m_; }
    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    std::size_t n_qubits() const { return qubits_for_dim(dim()); }
    Unitary adjoint() const { return Unitary(m_.adjoint()); }

    friend Unitary operator*(const Unitary& a, const Unitary& b) {
        if (a.dim() != b.dim()) throw PreconditionError("unitary product: dimension mismatch");
        return Unitary(a.m_ * b.m_);
    }

   private:
    Matrix m_;
};

namespace detail {

inline void check_targets(std::span<const std::size_t> targets, std::size_t n_qubits) {
    if (targets.empty()) throw PreconditionError("target list is empty");
    if (n_qubits == 0 || n_qubits > kMaxQubits) {
        throw PreconditionError("register size must be 1.." + std::to_string(kMaxQubits) + " qubits");
    }
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] >= n_qubits) {
            throw PreconditionError("qubit index " + std::to_string(targets[i]) + " out of range for " +
                                    std::to_string(n_qubits) + " qubits");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (targets[i] == targets[j]) {
                throw PreconditionError("qubit index " + std::to_string(targets[i]) + " listed twice");
            }
        }
    }
}

}  // namespace detail

/// Lifts an arbitrary 2^k x 2^k operator acting on `targets` (listed order: the first
/// target is the most significant bit of the operator's index) to an n-qubit register.
/// Qubit 0 is the most significant bit of the register index.
inline Matrix embed_operator(const Matrix& op, std::span<const std::size_t> targets, std::size_t n_qubits) {
    detail::check_targets(targets, n_qubits);
    const std::size_t k = targets.size();
    if (op.rows() != op.cols() || static_cast<std::size_t>(op.rows()) != (std::size_t{1} << k)) {
        throw PreconditionError("operator dimension " + std::to_string(op.rows()) + " does not match " +
                                std::to_string(k) + " target qubit(s)");
    }
    const std::size_t dim = std::size_t{1} << n_qubits;
    const std::size_t sub_dim = std::size_t{1} << k;
    auto bit_of = [n_qubits](std::size_t q) { return std::size_t{1} << (n_qubits - 1 - q); };

    std::size_t target_mask = 0;
    for (auto q : targets) target_mask |= bit_of(q);

    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t sub_col = 0;
        for (auto q : targets) sub_col = (sub_col << 1) | ((col & bit_of(q)) ? 1 : 0);
        const std::size_t rest = col & ~target_mask;
        for (std::size_t sub_row = 0; sub_row < sub_dim; ++sub_row) {
            const Complex amp = op(static_cast<Eigen::Index>(sub_row), static_cast<Eigen::Index>(sub_col));
            if (amp == Complex{}) continue;
            std::size_t row = rest;
            for (std::size_t j = 0; j < k; ++j) {
                if ((sub_row >> (k - 1 - j)) & 1) row |= bit_of(targets[j]);
            }
            out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += amp;
        }
    }
    return out;
}

inline Unitary embed(const Unitary& u, std::span<const std::size_t> targets, std::size_t n_qubits) {
    return Unitary(embed_operator(u.matrix(), targets, n_qubits));
}

inline Unitary embed(const Unitary& u, std::initializer_list<std::size_t> targets, std::size_t n_qubits) {
    return embed(u, std::span<const std::size_t>(targets.begin(), targets.size()), n_qubits);
}

/// R_n(theta) = cos(theta/2) I - i sin(theta/2) n.sigma
inline Unitary rotation(const Vector3& axis, double theta) {
    if (std::abs(axis.norm() - 1.0) > tol::kUnitAxis) {
        throw PreconditionError("rotation axis must be a unit vector (norm " + std::to_string(axis.norm()) + ")");
    }
    const Vector3 n = axis.normalized();
    Matrix n_sigma = n.x() * pauli::x() + n.y() * pauli::y() + n.z() * pauli::z();
    return Unitary(std::cos(theta / 2) * pauli::identity() - kI * std::sin(theta / 2) * n_sigma);
}

inline Unitary rotation_x(double theta) { return rotation(Vector3::UnitX(), theta); }
inline Unitary rotation_y(double theta) { return rotation(Vector3::UnitY(), theta); }
inline Unitary rotation_z(double theta) { return rotation(Vector3::UnitZ(), theta); }

inline Unitary pauli_x() { return Unitary(pauli::x()); }

/// CNOT|x>|y> = |x>|y xor x>, control is the more significant qubit.
inline Unitary cnot() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 1) = 1;
    m(2, 3) = 1;
    m(3, 2) = 1;
    return Unitary(m);
}

/// |0><0| (x) I + |1><1| (x) u, control is the more significant qubit.
inline Unitary controlled(const Unitary& u) {
    if (u.dim() != 2) throw PreconditionError("controlled(): single-qubit unitary expected");
    Matrix m = Matrix::Zero(4, 4);
    m.topLeftCorner(2, 2) = Matrix::Identity(2, 2);
    m.bottomRightCorner(2, 2) = u.matrix();
    return Unitary(m);
}

}  // namespace qpanoise
