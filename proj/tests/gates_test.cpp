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

#include "qpanoise/gates.hpp"

#include <gtest/gtest.h>

#include <numbers>

#include "qpanoise/qstate.hpp"
#include "test_util.hpp"

using namespace qpanoise;
using namespace qpanoise::testing;

TEST(Rotation, quarter_turn_about_x) {
    Matrix expected(2, 2);
    expected << 1, Complex(0, -1), Complex(0, -1), 1;
    expected /= std::sqrt(2.0);
    EXPECT_LE(max_abs_diff(rotation_x(std::numbers::pi / 2).matrix(), expected), 1e-15);
    EXPECT_LE(max_abs_diff(rotation_x(-std::numbers::pi / 2).matrix(), expected.adjoint()), 1e-15);
}

TEST(Rotation, zero_angle_is_identity) {
    for (int i = 0; i < 5; ++i) EXPECT_LE(max_abs_diff(rotation(random_axis(), 0.0).matrix(), Matrix::Identity(2, 2)), 0.0);
}

TEST(Rotation, z_axis_turns_bloch_vectors_counterclockwise) {
    for (double theta : {0.1, 1.0, 2.5, -0.7}) {
        for (int trial = 0; trial < 10; ++trial) {
            Vector3 r = 0.9 * random_axis();
            auto out = apply_unitary(state_of(BlochVector::from(r)), rotation_z(theta), {0});
            Vector3 expected(std::cos(theta) * r.x() - std::sin(theta) * r.y(),
                             std::sin(theta) * r.x() + std::cos(theta) * r.y(), r.z());
            EXPECT_LE((bloch_by_trace(out.matrix()) - expected).norm(), 1e-13);
        }
    }
}

TEST(Rotation, rejects_non_unit_axis) {
    EXPECT_THROW(rotation(Vector3(1, 1, 0), 0.3), PreconditionError);
    EXPECT_NO_THROW(rotation(Vector3(1 + 1e-10, 0, 0), 0.3));
}

TEST(Rotation, inverse_and_full_turn) {
    for (int trial = 0; trial < 50; ++trial) {
        Vector3 n = random_axis();
        double theta = 6.0 * (static_cast<double>(trial) / 50.0) - 3.0;
        EXPECT_LE(max_abs_diff((rotation(n, theta) * rotation(n, -theta)).matrix(), Matrix::Identity(2, 2)), 1e-14);

        Unitary full = rotation(n, 2 * std::numbers::pi);
        EXPECT_LE(max_abs_diff(full.matrix(), -Matrix::Identity(2, 2)), 1e-14);
        auto rho = random_density(1);
        EXPECT_LE(max_abs_diff(apply_unitary(rho, full, {0}).matrix(), rho.matrix()), 1e-14);
    }
}

TEST(Unitary, rejects_non_unitary) {
    Matrix m = Matrix::Identity(2, 2);
    m(0, 1) = 0.1;
    EXPECT_THROW(Unitary{m}, PreconditionError);
    EXPECT_THROW(Unitary{Matrix::Identity(3, 3)}, PreconditionError);
}

TEST(Cnot, truth_table) {
    const Unitary gate = cnot();
    const Matrix& c = gate.matrix();
    // column = input basis state, row = output
    EXPECT_EQ(c(0, 0), Complex(1));
    EXPECT_EQ(c(1, 1), Complex(1));
    EXPECT_EQ(c(3, 2), Complex(1));  // |10> -> |11>
    EXPECT_EQ(c(2, 3), Complex(1));  // |11> -> |10>
    EXPECT_LE(max_abs_diff(c * c, Matrix::Identity(4, 4)), 0.0);
}

TEST(Embed, single_qubit_and_identity_embedding) {
    Vector in = PureState::basis(2, 0b00).amplitudes();
    Vector out = embed(pauli_x(), {1}, 2).matrix() * in;
    EXPECT_LE((out - PureState::basis(2, 0b01).amplitudes()).norm(), 0.0);
    EXPECT_LE(max_abs_diff(embed(cnot(), {0, 1}, 2).matrix(), cnot().matrix()), 0.0);
}

TEST(Embed, reversed_cnot_on_three_qubits_matches_permutation) {
    // control = qubit 2, target = qubit 0, built bit by bit over all 8 inputs
    Matrix expected = Matrix::Zero(8, 8);
    for (std::size_t in = 0; in < 8; ++in) {
        int b0 = bit(in, 0, 3), b1 = bit(in, 1, 3), b2 = bit(in, 2, 3);
        std::size_t out = static_cast<std::size_t>(((b0 ^ b2) << 2) | (b1 << 1) | b2);
        expected(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in)) = 1;
    }
    Matrix got = embed(cnot(), {2, 0}, 3).matrix();
    EXPECT_LE(max_abs_diff(got, expected), 0.0);
    EXPECT_EQ(got(0b101, 0b100), Complex(0));
    EXPECT_EQ(got(0b000, 0b101), Complex(0));
    EXPECT_EQ(got(0b101, 0b001), Complex(1));  // |001> -> |101>
}

TEST(Embed, random_embeddings_stay_unitary) {
    for (int trial = 0; trial < 20; ++trial) {
        Unitary two = cnot() * embed(rotation(random_axis(), trial * 0.37), {1}, 2);
        std::vector<std::size_t> targets = {static_cast<std::size_t>(trial % 4), static_cast<std::size_t>((trial + 2) % 4)};
        Unitary big = embed(two, targets, 4);
        EXPECT_LE(max_abs_diff(big.matrix().adjoint() * big.matrix(), Matrix::Identity(16, 16)), 1e-13);
    }
}

TEST(Embed, rejects_collisions_and_range) {
    EXPECT_THROW(embed(cnot(), {1, 1}, 3), PreconditionError);
    EXPECT_THROW(embed(cnot(), {0, 3}, 3), PreconditionError);
    EXPECT_THROW(embed(cnot(), {0}, 3), PreconditionError);
    EXPECT_THROW(embed(pauli_x(), {0}, 5), PreconditionError);
}
