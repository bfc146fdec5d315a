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
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qpanoise/channels.hpp"
#include "qpanoise/eavesdrop.hpp"
#include "qpanoise/errors.hpp"
#include "qpanoise/gates.hpp"
#include "qpanoise/qstate.hpp"

namespace qpanoise {

// Register layout of one purification step: the two copies of the pair are laid out as
// (alice-control, bob-control, alice-target, bob-target) = qubits (0, 1, 2, 3).
enum class Wire { AliceControl = 0, BobControl = 1, AliceTarget = 2, BobTarget = 3 };

inline std::string to_string(Wire w) {
    switch (w) {
        case Wire::AliceControl: return "alice-control";
        case Wire::BobControl: return "bob-control";
        case Wire::AliceTarget: return "alice-target";
        case Wire::BobTarget: return "bob-target";
    }
    return "unknown";
}

inline std::optional<Wire> parse_wire(std::string_view s) {
    for (Wire w : {Wire::AliceControl, Wire::BobControl, Wire::AliceTarget, Wire::BobTarget}) {
        if (to_string(w) == s) return w;
    }
    return std::nullopt;
}

/// Noise inserted once per step on `location`, after the local x-rotations and before
/// the CNOTs. An empty kind means a noiseless step.
struct NoiseConfig {
    std::optional<ChannelKind> kind;
    double theta = 0.0;
    Wire location = Wire::AliceControl;

    static NoiseConfig none() { return {}; }
    static NoiseConfig of(ChannelKind k, double theta, Wire where = Wire::AliceControl) { return {k, theta, where}; }
};

struct TraceRow {
    int step = 0;
    double fidelity = 1.0;
    double step_probability = 1.0;  // coincidence probability of this step
    double survival = 1.0;          // product of step probabilities so far
    double efficiency = 1.0;        // survival / 2^step
};

/// Row 0 holds the starting pair; row i the state after i purification steps.
struct ProtocolTrace {
    std::vector<TraceRow> rows;
    std::vector<DensityMatrix> states;

    const TraceRow& last() const { return rows.back(); }
    double infidelity(std::size_t step) const { return 1.0 - rows.at(step).fidelity; }
};

struct IdealStepResult {
    BellCoeffs next;
    double probability;
};

/// The Bell-diagonal recurrence:
///   A' = (A^2 + D^2)/N, B' = 2AD/N, C' = (B^2 + C^2)/N, D' = 2BC/N,
///   N = (A + D)^2 + (B + C)^2.
inline IdealStepResult ideal_step(const BellCoeffs& c) {
    check_bell_coeffs(c);
    const double n = (c.a + c.d) * (c.a + c.d) + (c.b + c.c) * (c.b + c.c);
    if (!(n > tol::kAbort)) throw ProtocolAborted(n);
    return {{(c.a * c.a + c.d * c.d) / n, 2 * c.a * c.d / n, (c.b * c.b + c.c * c.c) / n, 2 * c.b * c.c / n}, n};
}

namespace detail {

inline void check_steps(int n) {
    if (n < 1) throw PreconditionError("number of steps must be >= 1, got " + std::to_string(n));
}

inline void push_row(ProtocolTrace& trace, double fidelity, double p) {
    const TraceRow& prev = trace.rows.back();
    TraceRow row;
    row.step = prev.step + 1;
    row.fidelity = fidelity;
    row.step_probability = p;
    row.survival = prev.survival * p;
    row.efficiency = row.survival / std::ldexp(1.0, row.step);
    trace.rows.push_back(row);
}

inline ProtocolTrace start_trace(DensityMatrix initial) {
    ProtocolTrace trace;
    trace.rows.push_back(TraceRow{0, fidelity_phi_plus(initial), 1.0, 1.0, 1.0});
    trace.states.push_back(std::move(initial));
    return trace;
}

/// Rx(pi/2) on Alice's qubits, Rx(-pi/2) on Bob's.
inline const Matrix& rotation_layer() {
    static const Matrix layer = [] {
        const Unitary u = rotation_x(std::numbers::pi / 2);
        const Unitary v = rotation_x(-std::numbers::pi / 2);
        return (embed(u, {0}, 4) * embed(v, {1}, 4) * embed(u, {2}, 4) * embed(v, {3}, 4)).matrix();
    }();
    return layer;
}

/// CNOT(alice-control -> alice-target) and CNOT(bob-control -> bob-target).
inline const Matrix& cnot_layer() {
    static const Matrix layer = (embed(cnot(), {0, 2}, 4) * embed(cnot(), {1, 3}, 4)).matrix();
    return layer;
}

inline std::vector<Matrix> embedded_kraus(const NoiseChannel& ch, Wire where) {
    std::vector<Matrix> out;
    const std::size_t targets[] = {static_cast<std::size_t>(where)};
    for (const auto& f : ch.kraus()) out.push_back(embed_operator(f, targets, 4));
    return out;
}

/// One purification step. `noise` holds the Kraus operators already lifted to the
/// 4-qubit register; empty means noiseless.
inline CoincidenceResult purification_step(const DensityMatrix& pair, const std::vector<Matrix>& noise) {
    if (pair.dim() != 4) throw PreconditionError("purification step: two-qubit pair state expected");
    Matrix r = kron(pair.matrix(), pair.matrix());
    r = rotation_layer() * r * rotation_layer().adjoint();
    if (!noise.empty()) {
        Matrix acc = Matrix::Zero(16, 16);
        for (const auto& f : noise) acc += f * r * f.adjoint();
        r = std::move(acc);
    }
    r = cnot_layer() * r * cnot_layer().adjoint();
    return postselect_coincide(DensityMatrix(hermitize(r)), {2, 3});
}

inline std::vector<Matrix> lifted_noise(const NoiseConfig& noise) {
    if (!noise.kind) return {};
    return embedded_kraus(make_channel(*noise.kind, noise.theta), noise.location);
}

}  // namespace detail

struct StepResult {
    DensityMatrix state;
    double probability;
};

/// One step of the exact four-qubit map on rho (x) rho. Returns the surviving control
/// pair and the coincidence probability; throws ProtocolAborted when nothing survives.
inline StepResult noisy_step(const DensityMatrix& pair, const NoiseConfig& noise) {
    auto res = detail::purification_step(pair, detail::lifted_noise(noise));
    return {std::move(res.state), res.probability};
}

/// Iterates the Bell-diagonal recurrence from arbitrary coefficients.
inline ProtocolTrace run_ideal_from(const BellCoeffs& start, int n) {
    detail::check_steps(n);
    ProtocolTrace trace = detail::start_trace(bell_diagonal_state(start));
    BellCoeffs c = start;
    for (int i = 0; i < n; ++i) {
        auto [next, p] = ideal_step(c);
        c = next;
        DensityMatrix rho = bell_diagonal_state(c);
        detail::push_row(trace, c.a, p);
        trace.states.push_back(std::move(rho));
    }
    return trace;
}

inline ProtocolTrace run_ideal(double f, int n) { return run_ideal_from(initial_pair(f).coeffs, n); }

/// Iterates noisy_step from the attacked pair; each step consumes two copies of the
/// current state. The state is kept as a full 4x4 matrix since noise breaks
/// Bell-diagonality.
inline ProtocolTrace run_noisy(double f, const NoiseConfig& noise, int n) {
    detail::check_steps(n);
    const auto lifted = detail::lifted_noise(noise);
    ProtocolTrace trace = detail::start_trace(initial_pair(f).rho_ab);
    for (int i = 0; i < n; ++i) {
        auto res = detail::purification_step(trace.states.back(), lifted);
        detail::push_row(trace, fidelity_phi_plus(res.state), res.probability);
        trace.states.push_back(std::move(res.state));
    }
    return trace;
}

struct ThresholdOptions {
    int grid_points = 32;
    double relative_tolerance = 1e-3;
    int max_bisections = 200;
    Wire location = Wire::AliceControl;
};

struct ThresholdResult {
    double theta;
    double infidelity;  // 1 - F(n) at theta
    int evaluations;
};

/// Noise strength at which 1 - F(n) reaches `target`.
///
/// A pre-pass samples `grid_points` strengths on [0, theta_max(kind)] and locates the
/// first sample at or above the target. The samples up to that point must be
/// nondecreasing, otherwise NonMonotoneResponse is thrown. Bisection then runs inside
/// that grid cell.
inline ThresholdResult threshold_theta(ChannelKind kind, double f, int n, double target,
                                       const ThresholdOptions& opt = {}) {
    detail::check_steps(n);
    if (!(target > 0.0 && target < 1.0)) throw PreconditionError("target infidelity must be in (0, 1)");
    if (opt.grid_points < 2) throw PreconditionError("threshold pre-pass needs at least 2 grid points");

    int evaluations = 0;
    auto infidelity = [&](double theta) {
        ++evaluations;
        return run_noisy(f, NoiseConfig::of(kind, theta, opt.location), n).infidelity(static_cast<std::size_t>(n));
    };

    const double noiseless = infidelity(0.0);
    if (noiseless >= target) {
        throw TargetUnreachable("target unreachable: noiseless 1-F(" + std::to_string(n) + ") = " +
                                std::to_string(noiseless) + " is not below " + std::to_string(target));
    }
    double upper = theta_max(kind);
    if (kind.is_displacement()) upper = std::nextafter(upper, 0.0);

    std::vector<double> grid(static_cast<std::size_t>(opt.grid_points));
    std::vector<double> value(grid.size());
    std::size_t crossing = grid.size();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid[i] = upper * static_cast<double>(i) / static_cast<double>(grid.size() - 1);
        value[i] = i == 0 ? noiseless : infidelity(grid[i]);
        if (value[i] >= target) {
            crossing = i;
            break;
        }
    }
    if (crossing == grid.size()) {
        throw RootNotBracketed("not bracketed: 1-F(" + std::to_string(n) + ") at theta_max = " +
                               std::to_string(value.back()) + " stays below target " + std::to_string(target));
    }
    for (std::size_t i = 1; i <= crossing; ++i) {
        if (value[i] < value[i - 1]) {
            throw NonMonotoneResponse("1-F is not monotone in theta below the first crossing (theta " +
                                      std::to_string(grid[i - 1]) + " -> " + std::to_string(grid[i]) + ")");
        }
    }

    double lo = grid[crossing - 1];
    double hi = grid[crossing];
    for (int it = 0; it < opt.max_bisections && hi - lo > 4 * std::numeric_limits<double>::epsilon() * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (infidelity(mid) < target ? lo : hi) = mid;
    }
    const double theta = 0.5 * (lo + hi);
    const double at_root = infidelity(theta);
    if (std::abs(at_root - target) > opt.relative_tolerance * target) {
        throw NonMonotoneResponse("bisection converged to theta " + std::to_string(theta) + " with 1-F " +
                                  std::to_string(at_root) + ", not within tolerance of the target");
    }
    return {theta, at_root, evaluations};
}

}  // namespace qpanoise
