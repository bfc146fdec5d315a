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
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qpanoise/errors.hpp"
#include "qpanoise/gates.hpp"
#include "qpanoise/linalg.hpp"
#include "qpanoise/qstate.hpp"

namespace qpanoise {

// Single-qubit noise channels: rotations, deformations (flips) and displacements of the
// Bloch sphere along x, y, z. Each channel is held simultaneously as a Kraus set, an
// affine map on Bloch coordinates and a unitary dilation with a one-qubit ancilla.

enum class ChannelFamily {
    RotationX,
    RotationY,
    RotationZ,
    BitFlip,
    BitPhaseFlip,
    PhaseFlip,
    DisplaceX,
    DisplaceY,
    DisplaceZ,
};

/// Family plus direction. The sign reverses the rotation angle or the displacement
/// direction; flips ignore it.
struct ChannelKind {
    ChannelFamily family = ChannelFamily::BitFlip;
    int sign = +1;

    bool is_rotation() const {
        return family == ChannelFamily::RotationX || family == ChannelFamily::RotationY ||
               family == ChannelFamily::RotationZ;
    }
    bool is_flip() const {
        return family == ChannelFamily::BitFlip || family == ChannelFamily::BitPhaseFlip ||
               family == ChannelFamily::PhaseFlip;
    }
    bool is_displacement() const { return !is_rotation() && !is_flip(); }

    friend bool operator==(const ChannelKind& a, const ChannelKind& b) {
        if (a.family != b.family) return false;
        return a.is_flip() || a.sign == b.sign;
    }
};

namespace kinds {
inline constexpr ChannelKind rot_x{ChannelFamily::RotationX, +1};
inline constexpr ChannelKind rot_y{ChannelFamily::RotationY, +1};
inline constexpr ChannelKind rot_z{ChannelFamily::RotationZ, +1};
inline constexpr ChannelKind bit_flip{ChannelFamily::BitFlip, +1};
inline constexpr ChannelKind bit_phase_flip{ChannelFamily::BitPhaseFlip, +1};
inline constexpr ChannelKind phase_flip{ChannelFamily::PhaseFlip, +1};
inline constexpr ChannelKind disp_x{ChannelFamily::DisplaceX, +1};
inline constexpr ChannelKind disp_y{ChannelFamily::DisplaceY, +1};
inline constexpr ChannelKind disp_z_plus{ChannelFamily::DisplaceZ, +1};   // amplitude damping
inline constexpr ChannelKind disp_z_minus{ChannelFamily::DisplaceZ, -1};  // thermal excitation

/// The nine studied channels, one per family, positive direction.
inline constexpr std::array<ChannelKind, 9> all = {rot_x,      rot_y,  rot_z,  bit_flip,   bit_phase_flip,
                                                   phase_flip, disp_x, disp_y, disp_z_plus};
}  // namespace kinds

inline std::string to_string(const ChannelKind& k) {
    const char* dir = k.sign < 0 ? "-" : "+";
    switch (k.family) {
        case ChannelFamily::RotationX: return k.sign < 0 ? "rot-x-" : "rot-x";
        case ChannelFamily::RotationY: return k.sign < 0 ? "rot-y-" : "rot-y";
        case ChannelFamily::RotationZ: return k.sign < 0 ? "rot-z-" : "rot-z";
        case ChannelFamily::BitFlip: return "bit-flip";
        case ChannelFamily::BitPhaseFlip: return "bit-phase-flip";
        case ChannelFamily::PhaseFlip: return "phase-flip";
        case ChannelFamily::DisplaceX: return k.sign < 0 ? "disp-x-" : "disp-x";
        case ChannelFamily::DisplaceY: return k.sign < 0 ? "disp-y-" : "disp-y";
        case ChannelFamily::DisplaceZ: return std::string("disp-z") + dir;
    }
    return "unknown";
}

/// Accepts the canonical names plus explicit-direction aliases ("disp-x+", "disp-y-",
/// "rot-z-") and the Unicode minus sign in "disp-z−".
inline std::optional<ChannelKind> parse_channel_kind(std::string_view name) {
    std::string s(name);
    const std::string unicode_minus = "\xE2\x88\x92";
    if (auto pos = s.find(unicode_minus); pos != std::string::npos) s.replace(pos, unicode_minus.size(), "-");

    struct Entry {
        std::string_view name;
        ChannelKind kind;
    };
    static constexpr Entry table[] = {
        {"rot-x", kinds::rot_x},
        {"rot-x+", kinds::rot_x},
        {"rot-x-", {ChannelFamily::RotationX, -1}},
        {"rot-y", kinds::rot_y},
        {"rot-y+", kinds::rot_y},
        {"rot-y-", {ChannelFamily::RotationY, -1}},
        {"rot-z", kinds::rot_z},
        {"rot-z+", kinds::rot_z},
        {"rot-z-", {ChannelFamily::RotationZ, -1}},
        {"bit-flip", kinds::bit_flip},
        {"bit-phase-flip", kinds::bit_phase_flip},
        {"phase-flip", kinds::phase_flip},
        {"disp-x", kinds::disp_x},
        {"disp-x+", kinds::disp_x},
        {"disp-x-", {ChannelFamily::DisplaceX, -1}},
        {"disp-y", kinds::disp_y},
        {"disp-y+", kinds::disp_y},
        {"disp-y-", {ChannelFamily::DisplaceY, -1}},
        {"disp-z+", kinds::disp_z_plus},
        {"disp-z-", kinds::disp_z_minus},
    };
    for (const auto& e : table) {
        if (e.name == s) return e.kind;
    }
    return std::nullopt;
}

/// Largest admissible noise strength for the kind (inclusive for flips and rotations,
/// exclusive for displacements).
inline double theta_max(const ChannelKind& k) {
    if (k.is_displacement()) return std::numbers::pi / 2;
    return std::numbers::pi;
}

inline void check_theta(const ChannelKind& k, double theta) {
    if (!std::isfinite(theta)) throw PreconditionError("theta must be finite");
    if (k.is_rotation()) return;
    if (k.is_flip() && (theta < 0.0 || theta > std::numbers::pi)) {
        throw PreconditionError("theta for " + to_string(k) + " must be in [0, pi], got " + std::to_string(theta));
    }
    if (k.is_displacement() && (theta < 0.0 || theta >= std::numbers::pi / 2)) {
        throw PreconditionError("theta for " + to_string(k) + " must be in [0, pi/2), got " + std::to_string(theta));
    }
}

struct BlochAffine {
    Matrix3 m = Matrix3::Identity();
    Vector3 t = Vector3::Zero();

    Vector3 operator()(const Vector3& r) const { return m * r + t; }
};

struct Dilation {
    PureState ancilla;  // prepared state of the auxiliary qubit
    Unitary joint;      // acts on (system = qubit 0, ancilla = qubit 1)
};

class NoiseChannel {
   public:
    /// Assembles a channel from already computed representations. No consistency check
    /// is made here; make_channel() is the validated entry point and
    /// kraus_completeness_deviation()/representation_deviation() audit the result.
    NoiseChannel(ChannelKind kind, double theta, std::vector<Matrix> kraus, BlochAffine affine, Dilation dilation)
        : kind_(kind),
          theta_(theta),
          kraus_(std::move(kraus)),
          affine_(std::move(affine)),
          dilation_(std::move(dilation)) {}

    const ChannelKind& kind() const { return kind_; }
    double theta() const { return theta_; }
    const std::vector<Matrix>& kraus() const { return kraus_; }
    const BlochAffine& affine() const { return affine_; }
    const Dilation& dilation() const { return dilation_; }

   private:
    ChannelKind kind_;
    double theta_;
    std::vector<Matrix> kraus_;
    BlochAffine affine_;
    Dilation dilation_;
};

namespace detail {

inline Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

/// Rodrigues formula; right-handed, matches R_n(theta) acting on Bloch vectors.
inline Matrix3 bloch_rotation(const Vector3& n, double phi) {
    Matrix3 cross;
    cross << 0, -n.z(), n.y(), n.z(), 0, -n.x(), -n.y(), n.x(), 0;
    return std::cos(phi) * Matrix3::Identity() + std::sin(phi) * cross + (1 - std::cos(phi)) * n * n.transpose();
}

inline Vector3 family_axis(ChannelFamily f) {
    switch (f) {
        case ChannelFamily::RotationX:
        case ChannelFamily::BitFlip:
        case ChannelFamily::DisplaceX: return Vector3::UnitX();
        case ChannelFamily::RotationY:
        case ChannelFamily::BitPhaseFlip:
        case ChannelFamily::DisplaceY: return Vector3::UnitY();
        default: return Vector3::UnitZ();
    }
}

inline Matrix family_pauli(ChannelFamily f) {
    Vector3 n = family_axis(f);
    if (n.x() == 1.0) return pauli::x();
    if (n.y() == 1.0) return pauli::y();
    return pauli::z();
}

/// Zero-temperature dissipation block on (system, ancilla): |1,0> -> cos|1,0> + sin|0,1>.
/// Controlled-Ry(2 theta) from system to ancilla, then CNOT back onto the system.
inline Unitary damping_block(double theta) {
    Unitary cry = embed(controlled(rotation_y(2 * theta)), {0, 1}, 2);
    Unitary back = embed(cnot(), {1, 0}, 2);
    return back * cry;
}

/// Basis change that turns z-displacement into x-displacement (sign s) and y-displacement.
inline Unitary displacement_frame_x(int s) {
    const double h = 1.0 / std::sqrt(2.0);
    return Unitary(mat2(h, s * h, -s * h, h));
}
inline Unitary displacement_frame_y(int s) {
    const double h = 1.0 / std::sqrt(2.0);
    return Unitary(mat2(h, s * h * kI, s * h * kI, h));
}

inline PureState ancilla_zero() { return PureState::basis(1, 0); }

}  // namespace detail

/// Builds the channel with all three representations. Throws PreconditionError when theta
/// is outside the kind's admissible range.
inline NoiseChannel make_channel(ChannelKind kind, double theta) {
    check_theta(kind, theta);
    if (kind.sign != 1 && kind.sign != -1) throw PreconditionError("channel sign must be +1 or -1");
    if (kind.is_flip()) kind.sign = +1;

    using detail::mat2;
    const int s = kind.sign;
    const double c = std::cos(theta);
    const double sn = std::sin(theta);
    const Vector3 axis = detail::family_axis(kind.family);

    std::vector<Matrix> kraus;
    BlochAffine affine;
    std::optional<Dilation> dil;

    if (kind.is_rotation()) {
        const double phi = s * theta;
        Unitary r = rotation(axis, phi);
        kraus = {r.matrix()};
        affine.m = detail::bloch_rotation(axis, phi);
        dil.emplace(Dilation{detail::ancilla_zero(), embed(r, {0}, 2)});
    } else if (kind.is_flip()) {
        const Matrix sigma = detail::family_pauli(kind.family);
        kraus = {std::cos(theta / 2) * pauli::identity(), std::sin(theta / 2) * sigma};
        affine.m = Matrix3::Identity() * c;
        affine.m += (1 - c) * axis * axis.transpose();
        Vector anc(2);
        anc << std::cos(theta / 2), std::sin(theta / 2);
        // ancilla controls sigma on the system
        dil.emplace(Dilation{PureState(anc), embed(controlled(Unitary(sigma)), {1, 0}, 2)});
    } else {
        const Unitary d = detail::damping_block(theta);
        affine.m = Matrix3::Identity() * c;
        affine.m += (c * c - c) * axis * axis.transpose();
        affine.t = s * sn * sn * axis;
        switch (kind.family) {
            case ChannelFamily::DisplaceZ: {
                if (s > 0) {
                    kraus = {mat2(1, 0, 0, c), mat2(0, sn, 0, 0)};
                    dil.emplace(Dilation{detail::ancilla_zero(), d});
                } else {
                    kraus = {mat2(c, 0, 0, 1), mat2(0, 0, sn, 0)};
                    Unitary flip = embed(pauli_x(), {0}, 2);
                    dil.emplace(Dilation{detail::ancilla_zero(), flip * d * flip});
                }
                break;
            }
            case ChannelFamily::DisplaceX: {
                kraus = {0.5 * mat2(1 + c, s * (1 - c), s * (1 - c), 1 + c),
                         0.5 * mat2(-s * sn, sn, -sn, s * sn)};
                Unitary u = embed(detail::displacement_frame_x(s), {0}, 2);
                dil.emplace(Dilation{detail::ancilla_zero(), u.adjoint() * d * u});
                break;
            }
            case ChannelFamily::DisplaceY: {
                // The y-displacement operators written with the upper sign move the centre
                // towards -y, so a +y displacement uses the lower sign (e = -s).
                const double e = -s;
                kraus = {0.5 * mat2(1 + c, e * kI * (1 - c), -e * kI * (1 - c), 1 + c),
                         0.5 * mat2(e * kI * sn, sn, sn, -e * kI * sn)};
                Unitary u = embed(detail::displacement_frame_y(e), {0}, 2);
                dil.emplace(Dilation{detail::ancilla_zero(), u.adjoint() * d * u});
                break;
            }
            default: break;
        }
    }
    std::erase_if(kraus, [](const Matrix& f) { return f.cwiseAbs().maxCoeff() == 0.0; });
    return NoiseChannel(kind, theta, std::move(kraus), affine, std::move(*dil));
}

/// rho' = sum_k F_k rho F_k^dagger with F_k acting on `qubit`.
inline DensityMatrix apply(const NoiseChannel& ch, const DensityMatrix& rho, std::size_t qubit) {
    const std::size_t targets[] = {qubit};
    Matrix out = Matrix::Zero(rho.matrix().rows(), rho.matrix().cols());
    for (const auto& f : ch.kraus()) {
        Matrix full = embed_operator(f, targets, rho.n_qubits());
        out += full * rho.matrix() * full.adjoint();
    }
    return DensityMatrix(detail::hermitize(out));
}

inline Dilation dilate(const NoiseChannel& ch) { return ch.dilation(); }

inline BlochAffine bloch_affine(const NoiseChannel& ch) { return ch.affine(); }

/// Runs a single-qubit state through the dilation and discards the ancilla.
inline DensityMatrix apply_via_dilation(const NoiseChannel& ch, const DensityMatrix& rho) {
    if (rho.dim() != 2) throw PreconditionError("apply_via_dilation: single-qubit state expected");
    const Dilation& d = ch.dilation();
    Matrix joint_in = kron(rho.matrix(), d.ancilla.amplitudes() * d.ancilla.amplitudes().adjoint());
    Matrix joint_out = d.joint.matrix() * joint_in * d.joint.matrix().adjoint();
    const std::size_t keep[] = {0};
    return DensityMatrix(detail::hermitize(detail::partial_trace_raw(joint_out, 2, keep)));
}

inline DensityMatrix apply_via_affine(const NoiseChannel& ch, const DensityMatrix& rho) {
    return state_of(BlochVector::from(ch.affine()(bloch_of(rho).as_vector())));
}

/// F_k = (I (x) <k|) J (I (x) |ancilla>), with the ancilla read out in the computational basis.
inline std::vector<Matrix> kraus_from_dilation(const Dilation& d) {
    std::vector<Matrix> out;
    const Matrix& j = d.joint.matrix();
    const Vector& a = d.ancilla.amplitudes();
    for (Eigen::Index k = 0; k < 2; ++k) {
        Matrix f = Matrix::Zero(2, 2);
        for (Eigen::Index i = 0; i < 2; ++i) {
            for (Eigen::Index col = 0; col < 2; ++col) {
                for (Eigen::Index anc = 0; anc < 2; ++anc) f(i, col) += j(2 * i + k, 2 * col + anc) * a(anc);
            }
        }
        if (f.cwiseAbs().maxCoeff() > 0.0) out.push_back(std::move(f));
    }
    return out;
}

/// max |sum_k F_k^dagger F_k - I|
inline double kraus_completeness_deviation(const NoiseChannel& ch) {
    Matrix sum = Matrix::Zero(2, 2);
    for (const auto& f : ch.kraus()) sum += f.adjoint() * f;
    return max_abs_diff(sum, Matrix::Identity(2, 2));
}

/// Fixed set of Bloch points: the six poles, the centre, a ring on the equator and
/// Fibonacci spirals on the surface and at radius 1/2.
inline std::vector<BlochVector> bloch_probe_points(std::size_t spiral = 48) {
    std::vector<BlochVector> pts = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}, {0, 0, 0}};
    for (int i = 0; i < 12; ++i) {
        double phi = 2 * std::numbers::pi * i / 12.0;
        pts.push_back({std::cos(phi), std::sin(phi), 0});
    }
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (double radius : {1.0, 0.5}) {
        for (std::size_t i = 0; i < spiral; ++i) {
            double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(spiral);
            double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
            double phi = golden * static_cast<double>(i);
            pts.push_back({radius * rho * std::cos(phi), radius * rho * std::sin(phi), radius * z});
        }
    }
    return pts;
}

struct RepresentationDeviation {
    double kraus_vs_affine = 0.0;
    double kraus_vs_dilation = 0.0;
    double completeness = 0.0;

    double max() const { return std::max({kraus_vs_affine, kraus_vs_dilation}); }
};

/// Entrywise disagreement between the three representations over `points`.
inline RepresentationDeviation representation_deviation(const NoiseChannel& ch,
                                                         const std::vector<BlochVector>& points) {
    RepresentationDeviation dev;
    dev.completeness = kraus_completeness_deviation(ch);
    for (const auto& r : points) {
        DensityMatrix rho = state_of(r);
        Matrix by_kraus = Matrix::Zero(2, 2);
        for (const auto& f : ch.kraus()) by_kraus += f * rho.matrix() * f.adjoint();
        Vector3 image = ch.affine()(r.as_vector());
        Matrix by_affine =
            (pauli::identity() + image.x() * pauli::x() + image.y() * pauli::y() + image.z() * pauli::z()) / 2.0;
        dev.kraus_vs_affine = std::max(dev.kraus_vs_affine, max_abs_diff(by_kraus, by_affine));
        dev.kraus_vs_dilation =
            std::max(dev.kraus_vs_dilation, max_abs_diff(by_kraus, apply_via_dilation(ch, rho).matrix()));
    }
    return dev;
}

}  // namespace qpanoise
