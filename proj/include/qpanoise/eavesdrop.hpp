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

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "qpanoise/errors.hpp"
#include "qpanoise/gates.hpp"
#include "qpanoise/linalg.hpp"
#include "qpanoise/qstate.hpp"

namespace qpanoise {

/// Amplitudes of Eve's register state alpha|00> + beta|01> + gamma|10> + delta|11>
/// for the isotropic copying machine, plus the resulting Bloch shrink factors.
struct BHParams {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
    double f_alpha = 0.0;
    double r_b = 1.0;  // Bob's Bloch vector = r_b * original
    double r_e = 0.0;  // Eve's Bloch vector = r_e * original
};

/// Coefficients of a Bell-diagonal two-qubit state on phi+, phi-, psi+, psi-.
struct BellCoeffs {
    double a = 1.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;

    std::array<double, 4> as_array() const { return {a, b, c, d}; }
};

namespace bh {
inline const double kAlphaMin = 1.0 / std::sqrt(2.0);  // no intrusion
inline const double kAlphaMax = 2.0 / std::sqrt(6.0);  // symmetric cloning
}  // namespace bh

inline double intrusion_from_alpha(double alpha) {
    return (alpha - bh::kAlphaMin) / (bh::kAlphaMax - bh::kAlphaMin);
}

inline BHParams params_from_intrusion(double f) {
    if (!(f >= 0.0 && f <= 1.0)) {
        throw PreconditionError("f_alpha must be in [0, 1], got " + std::to_string(f));
    }
    const double span = bh::kAlphaMax - bh::kAlphaMin;
    BHParams p;
    p.f_alpha = f;
    p.alpha = bh::kAlphaMin + f * span;
    // 1/2 - 3/4 alpha^2 written as 3/4 (kAlphaMax - alpha)(kAlphaMax + alpha) so that it
    // vanishes exactly at f = 1.
    const double radicand = 0.75 * (1.0 - f) * span * (bh::kAlphaMax + p.alpha);
    const double root = std::sqrt(std::max(0.0, radicand));
    p.beta = p.alpha / 2 - root;
    p.gamma = 0.0;
    p.delta = p.alpha / 2 + root;
    p.r_b = 2 * p.alpha * p.delta;
    p.r_e = 2 * p.alpha * p.beta;
    return p;
}

inline PureState eve_register_state(const BHParams& p) {
    Vector v(4);
    v << p.alpha, p.beta, p.gamma, p.delta;
    return PureState(std::move(v));
}

/// The copying unitary W on (bob, eve, ancilla), defined by its action on basis states:
///   |0>|00> -> |000>, |0>|01> -> |101>, |0>|10> -> |110>, |0>|11> -> |011>
///   |1>|00> -> |111>, |1>|01> -> |010>, |1>|10> -> |001>, |1>|11> -> |100>
inline Unitary bh_unitary() {
    static constexpr std::array<int, 8> image = {0b000, 0b101, 0b110, 0b011, 0b111, 0b010, 0b001, 0b100};
    Matrix m = Matrix::Zero(8, 8);
    for (int in = 0; in < 8; ++in) m(image[static_cast<std::size_t>(in)], in) = 1.0;
    return Unitary(m);
}

/// W as four CNOTs, in application order:
/// bob->eve, bob->ancilla, eve->bob, ancilla->bob.
inline std::vector<Unitary> bh_cnot_decomposition() {
    return {embed(cnot(), {0, 1}, 3), embed(cnot(), {0, 2}, 3), embed(cnot(), {1, 0}, 3), embed(cnot(), {2, 0}, 3)};
}

inline Unitary compose_in_order(const std::vector<Unitary>& gates) {
    Unitary out = Unitary::identity(gates.front().n_qubits());
    for (const auto& g : gates) out = g * out;
    return out;
}

struct CloneResult {
    DensityMatrix joint;  // (bob, eve, ancilla)
    DensityMatrix rho_b;
    DensityMatrix rho_e;
};

/// Attacks a single-qubit state with the copying machine. Mixed inputs are handled
/// directly by linearity.
inline CloneResult clone(const DensityMatrix& input, const BHParams& p) {
    if (input.dim() != 2) throw PreconditionError("clone: single-qubit input expected");
    DensityMatrix joint =
        apply_unitary(tensor(input, DensityMatrix::from_pure(eve_register_state(p))), bh_unitary(), {0, 1, 2});
    DensityMatrix rho_b = partial_trace(joint, {0});
    DensityMatrix rho_e = partial_trace(joint, {1});
    return {std::move(joint), std::move(rho_b), std::move(rho_e)};
}

/// phi+, phi-, psi+, psi- in the computational basis.
inline std::array<Vector, 4> bell_basis() {
    const double h = 1.0 / std::sqrt(2.0);
    std::array<Vector, 4> out;
    for (auto& v : out) v = Vector::Zero(4);
    out[0](0) = h, out[0](3) = h;
    out[1](0) = h, out[1](3) = -h;
    out[2](1) = h, out[2](2) = h;
    out[3](1) = h, out[3](2) = -h;
    return out;
}

inline void check_bell_coeffs(const BellCoeffs& c) {
    for (double w : c.as_array()) {
        if (!(w >= -tol::kStructural)) throw PreconditionError("Bell coefficients must be nonnegative");
    }
    double sum = c.a + c.b + c.c + c.d;
    if (std::abs(sum - 1.0) > tol::kStructural) {
        throw PreconditionError("Bell coefficients must sum to 1, got " + std::to_string(sum));
    }
}

inline DensityMatrix bell_diagonal_state(const BellCoeffs& c) {
    check_bell_coeffs(c);
    auto basis = bell_basis();
    auto w = c.as_array();
    Matrix m = Matrix::Zero(4, 4);
    for (std::size_t k = 0; k < 4; ++k) m += w[k] * basis[k] * basis[k].adjoint();
    return DensityMatrix(std::move(m));
}

/// Diagonal of rho in the Bell basis (exact coefficients when rho is Bell-diagonal).
inline BellCoeffs bell_coefficients_of(const DensityMatrix& rho) {
    if (rho.dim() != 4) throw PreconditionError("bell_coefficients_of: two-qubit state expected");
    auto basis = bell_basis();
    std::array<double, 4> w{};
    for (std::size_t k = 0; k < 4; ++k) w[k] = (basis[k].adjoint() * rho.matrix() * basis[k])(0, 0).real();
    return {w[0], w[1], w[2], w[3]};
}

struct InitialPair {
    DensityMatrix rho_ab;
    BellCoeffs coeffs;
};

/// The pair shared by Alice and Bob after Eve attacks Bob's half of phi+, from the
/// closed-form Bell coefficients.
inline InitialPair initial_pair(double f) {
    BHParams p = params_from_intrusion(f);
    BellCoeffs c{0.5 * (p.alpha + p.delta) * (p.alpha + p.delta), 0.5 * (p.alpha - p.delta) * (p.alpha - p.delta),
                 0.5 * (p.beta + p.gamma) * (p.beta + p.gamma), 0.5 * (p.beta - p.gamma) * (p.beta - p.gamma)};
    Matrix m = Matrix::Zero(4, 4);
    const double outer = p.alpha * p.alpha + p.delta * p.delta;
    const double inner = p.beta * p.beta + p.gamma * p.gamma;
    m(0, 0) = m(3, 3) = outer / 2;
    m(1, 1) = m(2, 2) = inner / 2;
    m(0, 3) = m(3, 0) = p.alpha * p.delta;
    m(1, 2) = m(2, 1) = p.beta * p.gamma;
    return {DensityMatrix(std::move(m)), c};
}

/// Same pair built by simulation: W on (bob, eve, ancilla) of phi+ (x) Eve's register,
/// then Eve's two qubits traced out.
inline DensityMatrix initial_pair_via_circuit(double f) {
    BHParams p = params_from_intrusion(f);
    DensityMatrix start = tensor(DensityMatrix::from_pure(PureState::phi_plus()),
                                 DensityMatrix::from_pure(eve_register_state(p)));
    DensityMatrix attacked = apply_unitary(start, bh_unitary(), {1, 2, 3});
    return partial_trace(attacked, {0, 1});
}

}  // namespace qpanoise
