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

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qpanoise/errors.hpp"
#include "qpanoise/gates.hpp"
#include "qpanoise/linalg.hpp"

namespace qpanoise {

/// Unit-norm state vector on 1..4 qubits.
class PureState {
   public:
    explicit PureState(Vector amplitudes) : v_(std::move(amplitudes)) {
        if (qubits_for_dim(static_cast<std::size_t>(v_.size())) == 0) {
            throw PreconditionError("pure state dimension must be 2, 4, 8 or 16");
        }
        double norm2 = v_.squaredNorm();
        if (std::abs(norm2 - 1.0) > tol::kStructural) {
            throw PreconditionError("pure state must have unit norm (squared norm " + std::to_string(norm2) + ")");
        }
    }

    static PureState basis(std::size_t n_qubits, std::size_t index) {
        Vector v = Vector::Zero(static_cast<Eigen::Index>(std::size_t{1} << n_qubits));
        if (index >= static_cast<std::size_t>(v.size())) throw PreconditionError("basis index out of range");
        v(static_cast<Eigen::Index>(index)) = 1.0;
        return PureState(std::move(v));
    }

    /// (|00> + |11>) / sqrt(2)
    static PureState phi_plus() {
        Vector v = Vector::Zero(4);
        v(0) = v(3) = 1.0 / std::sqrt(2.0);
        return PureState(std::move(v));
    }

    const Vector& amplitudes() const { return v_; }
    std::size_t dim() const { return static_cast<std::size_t>(v_.size()); }
    std::size_t n_qubits() const { return qubits_for_dim(dim()); }

   private:
    Vector v_;
};

/// Hermitian, unit-trace, positive semidefinite matrix on 1..4 qubits.
/// Every constructor validates the three invariants.
class DensityMatrix {
   public:
    explicit DensityMatrix(Matrix m) : m_(std::move(m)) { validate(); }

    static DensityMatrix from_pure(const PureState& psi) {
        return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
    }
    static DensityMatrix basis(std::size_t n_qubits, std::size_t index) {
        return from_pure(PureState::basis(n_qubits, index));
    }
    static DensityMatrix maximally_mixed(std::size_t n_qubits) {
        auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
        return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
    }

    const Matrix& matrix() const { return m_; }
    Complex operator()(std::size_t i, std::size_t j) const {
        return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    std::size_t n_qubits() const { return qubits_for_dim(dim()); }
    double trace() const { return m_.trace().real(); }
    double min_eigenvalue() const {
        Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff();
    }

   private:
    void validate() const {
        if (m_.rows() != m_.cols() || qubits_for_dim(static_cast<std::size_t>(m_.rows())) == 0) {
            throw PreconditionError("density matrix must be square with dimension 2, 4, 8 or 16");
        }
        double herm = max_abs_diff(m_, m_.adjoint());
        if (herm > tol::kStructural) {
            throw PreconditionError("density matrix is not Hermitian (deviation " + std::to_string(herm) + ")");
        }
        if (std::abs(m_.trace() - Complex{1.0}) > tol::kStructural) {
            throw PreconditionError("density matrix trace is not 1 (" + std::to_string(m_.trace().real()) + ")");
        }
        double lowest = min_eigenvalue();
        if (lowest < -tol::kPositivity) {
            throw PreconditionError("density matrix is not positive (eigenvalue " + std::to_string(lowest) + ")");
        }
    }

    Matrix m_;
};

/// Bloch coordinates under rho = (I + x sx + y sy + z sz) / 2.
struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    Vector3 as_vector() const { return {x, y, z}; }
    static BlochVector from(const Vector3& v) { return {v.x(), v.y(), v.z()}; }
};

namespace detail {

inline Matrix hermitize(const Matrix& m) { return (m + m.adjoint()) / 2.0; }

/// Partial trace on a raw matrix; used for unnormalized measurement branches.
inline Matrix partial_trace_raw(const Matrix& m, std::size_t n_qubits, std::span<const std::size_t> keep) {
    check_targets(keep, n_qubits);
    if (keep.size() >= n_qubits) throw PreconditionError("partial_trace: keep must be a proper subset of the qubits");
    auto bit_of = [n_qubits](std::size_t q) { return std::size_t{1} << (n_qubits - 1 - q); };
    std::size_t keep_mask = 0;
    for (auto q : keep) keep_mask |= bit_of(q);
    auto reduced_index = [&](std::size_t full) {
        std::size_t out = 0;
        for (auto q : keep) out = (out << 1) | ((full & bit_of(q)) ? 1 : 0);
        return out;
    };

    const std::size_t dim = std::size_t{1} << n_qubits;
    const auto out_dim = static_cast<Eigen::Index>(std::size_t{1} << keep.size());
    Matrix out = Matrix::Zero(out_dim, out_dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            if ((r & ~keep_mask) != (c & ~keep_mask)) continue;
            out(static_cast<Eigen::Index>(reduced_index(r)), static_cast<Eigen::Index>(reduced_index(c))) +=
                m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
    }
    return out;
}

}  // namespace detail

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() * b.dim() > kMaxDim) {
        throw PreconditionError("tensor: combined dimension " + std::to_string(a.dim() * b.dim()) + " exceeds " +
                                std::to_string(kMaxDim));
    }
    return DensityMatrix(kron(a.matrix(), b.matrix()));
}

/// Reduced state on `keep`, with the kept qubits ordered as listed.
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
    return DensityMatrix(detail::partial_trace_raw(rho.matrix(), rho.n_qubits(), keep));
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::size_t> keep) {
    return partial_trace(rho, std::span<const std::size_t>(keep.begin(), keep.size()));
}

inline DensityMatrix apply_unitary(const DensityMatrix& rho, const Unitary& u, std::span<const std::size_t> targets) {
    if (u.dim() != (std::size_t{1} << targets.size())) {
        throw PreconditionError("apply_unitary: unitary of dimension " + std::to_string(u.dim()) + " cannot act on " +
                                std::to_string(targets.size()) + " target(s)");
    }
    Matrix full = embed_operator(u.matrix(), targets, rho.n_qubits());
    return DensityMatrix(detail::hermitize(full * rho.matrix() * full.adjoint()));
}

inline DensityMatrix apply_unitary(const DensityMatrix& rho, const Unitary& u, std::initializer_list<std::size_t> targets) {
    return apply_unitary(rho, u, std::span<const std::size_t>(targets.begin(), targets.size()));
}

inline BlochVector bloch_of(const DensityMatrix& rho) {
    if (rho.dim() != 2) throw PreconditionError("bloch_of: single-qubit state expected");
    const Matrix& m = rho.matrix();
    return {2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(), (m(0, 0) - m(1, 1)).real()};
}

inline DensityMatrix state_of(const BlochVector& r) {
    if (r.norm() > 1.0 + tol::kPositivity) {
        throw PreconditionError("state_of: Bloch vector length " + std::to_string(r.norm()) + " exceeds 1");
    }
    Matrix m = (pauli::identity() + r.x * pauli::x() + r.y * pauli::y() + r.z * pauli::z()) / 2.0;
    return DensityMatrix(std::move(m));
}

/// <phi+| rho |phi+>
inline double fidelity_phi_plus(const DensityMatrix& rho) {
    if (rho.dim() != 4) throw PreconditionError("fidelity_phi_plus: two-qubit state expected");
    const Matrix& m = rho.matrix();
    return 0.5 * (m(0, 0) + m(0, 3) + m(3, 0) + m(3, 3)).real();
}

struct CoincidenceResult {
    DensityMatrix state;                       // surviving qubits, renormalized
    double probability;                        // both outcomes equal
    std::array<double, 2> branch_probability;  // outcome 00, outcome 11
};

/// Measures sigma_z on the two `targets` of a 4-qubit state and keeps only coinciding
/// outcomes. Both branches (00 and 11) are summed before the targets are traced out.
/// Throws ProtocolAborted when the coincidence probability is below tol::kAbort.
inline CoincidenceResult postselect_coincide(const DensityMatrix& rho, std::array<std::size_t, 2> targets) {
    constexpr std::size_t n = 4;
    if (rho.n_qubits() != n) throw PreconditionError("postselect_coincide: 4-qubit state expected");
    detail::check_targets(targets, n);

    std::vector<std::size_t> keep;
    for (std::size_t q = 0; q < n; ++q) {
        if (q != targets[0] && q != targets[1]) keep.push_back(q);
    }

    Matrix sum = Matrix::Zero(4, 4);
    std::array<double, 2> branch{};
    for (int outcome = 0; outcome < 2; ++outcome) {
        Matrix proj = Matrix::Zero(2, 2);
        proj(outcome, outcome) = 1.0;
        Matrix p_full = embed_operator(kron(proj, proj), targets, n);
        Matrix reduced = detail::partial_trace_raw(p_full * rho.matrix() * p_full, n, keep);
        branch[static_cast<std::size_t>(outcome)] = reduced.trace().real();
        sum += reduced;
    }
    const double p = sum.trace().real();
    if (!(p >= tol::kAbort)) throw ProtocolAborted(p);
    return {DensityMatrix(detail::hermitize(sum / p)), p, branch};
}

}  // namespace qpanoise
