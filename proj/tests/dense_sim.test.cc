// Copyright 2026 The QMAC Authors
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


#include "qmac/dense_sim.h"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "gtest/gtest.h"

#include "qmac/builder.h"
#include "qmac/error.h"

using namespace qmac;

TEST(dense_sim, identity_circuit) {
    HybridCircuit c(3, 0);
    DenseState s = simulate(c, DenseState::basis(3, 6));
    ASSERT_EQ(s.amplitudes, DenseState::basis(3, 6).amplitudes);
}

TEST(dense_sim, hadamard_on_zero) {
    HybridCircuit c(1, 0);
    c.append_layer({GateOp::hadamard(0)});
    DenseState s = simulate(c, DenseState::basis(1, 0));
    ASSERT_NEAR(std::abs(s.amplitudes[0] - Amplitude(std::sqrt(0.5), 0)), 0.0, 1e-12);
    ASSERT_NEAR(std::abs(s.amplitudes[1] - Amplitude(std::sqrt(0.5), 0)), 0.0, 1e-12);
}

TEST(dense_sim, exact_chain_single_outcome) {
    QmacProgram prog = build_chain({3, 1, Variant::Exact, {}}, {1, {{3, 2}}, false});
    DenseState s = simulate_program(prog);
    auto dist = measure_register(s, prog.layout);
    ASSERT_EQ(dist.size(), 1);
    ASSERT_EQ(dist[0].value, 7);
    ASSERT_NEAR(dist[0].probability, 1.0, 1e-10);
    ASSERT_NEAR(std::abs(s.amplitudes[7]), 1.0, 1e-10);
}

TEST(dense_sim, approx_chain_top_outcome) {
    MacInput in{5, {{3, 7}, {2, 9}}, false};
    QmacProgram prog = build_chain({4, 2, Variant::Approximate, 1e-3}, in);
    auto dist = measure_register(simulate_program(prog), prog.layout);
    ASSERT_EQ(dist[0].value, integer_mac(4, in.z, in.pairs));
    ASSERT_GE(dist[0].probability, 0.99);
}

TEST(dense_sim, uniform_distribution) {
    HybridCircuit c(2, 0);
    c.append_layer({GateOp::hadamard(0), GateOp::hadamard(1)});
    auto dist = register_distribution(simulate(c, DenseState::basis(2, 0)), 2);
    ASSERT_EQ(dist.size(), 4);
    for (const auto &o : dist) {
        ASSERT_NEAR(o.probability, 0.25, 1e-12);
    }
}

TEST(dense_sim, residual_entanglement_detected) {
    QubitLayout layout = QubitLayout::canonical(2);
    HybridCircuit c(layout.num_qubits(), 0);
    c.append_layer({GateOp::hadamard(layout.register_qubit(2))});
    c.append_circuit(build_fanout(layout));
    DenseState s = simulate(c, DenseState::basis(layout.num_qubits(), 0));
    try {
        measure_register(s, layout);
        FAIL() << "expected ResidualEntanglement";
    } catch (const Error &e) {
        ASSERT_EQ(e.code(), ErrorCode::ResidualEntanglement);
    }
}

TEST(dense_sim, too_wide) {
    QmacProgram prog = build_chain({5, 0, Variant::Exact, {}}, {0, {}, false});
    try {
        simulate_program(prog);
        FAIL() << "expected TooWide";
    } catch (const Error &e) {
        ASSERT_EQ(e.code(), ErrorCode::TooWide);
    }
}

TEST(dense_sim, register_mismatch) {
    HybridCircuit c(2, 0);
    ASSERT_THROW(simulate(c, DenseState::basis(3, 0)), Error);
}

TEST(dense_sim, unitary_of_empty_and_r1) {
    auto u0 = unitary_of(HybridCircuit(2, 0));
    ASSERT_TRUE(u0.isApprox(Eigen::MatrixXcd::Identity(4, 4)));
    HybridCircuit r(1, 0);
    r.append_layer({GateOp::phase(0, 1)});
    auto u = unitary_of(r);
    ASSERT_NEAR(std::abs(u(0, 0) - Amplitude(1, 0)), 0.0, 1e-12);
    ASSERT_NEAR(std::abs(u(1, 1) - Amplitude(-1, 0)), 0.0, 1e-12);
    ASSERT_NEAR(std::abs(u(0, 1)) + std::abs(u(1, 0)), 0.0, 1e-12);
}

TEST(dense_sim, unitary_of_qft2_is_dft) {
    auto u = unitary_of(build_qft(2));
    const Amplitude w(0, 1);
    for (int s = 0; s < 4; s++) {
        for (int t = 0; t < 4; t++) {
            ASSERT_NEAR(std::abs(u(t, s) - std::pow(w, s * t) / 2.0), 0.0, 1e-12);
        }
    }
}

TEST(dense_sim, unitary_rejects_classical_ops) {
    QubitLayout layout = QubitLayout::canonical(1);
    ClassicalLayout bits{1, 1, 1};
    try {
        unitary_of(build_m_block(layout, bits, 0));
        FAIL();
    } catch (const Error &e) {
        ASSERT_EQ(e.code(), ErrorCode::HasClassicalOps);
    }
}

TEST(dense_sim, norm_preserved_every_layer) {
    QmacProgram prog = build_chain({3, 2, Variant::Approximate, 1e-2}, {3, {{5, 6}, {7, 7}}, false});
    DenseState s = DenseState::basis(prog.circuit.num_qubits(), prog.initial_register, prog.initial_bits);
    for (const auto &layer : prog.circuit.layers()) {
        HybridCircuit one(prog.circuit.num_qubits(), prog.circuit.num_classical_bits());
        one.append_layer(layer.ops);
        s = simulate(one, s);
        ASSERT_NEAR(s.norm_squared(), 1.0, kNormTolerance);
    }
}

TEST(dense_sim, deterministic) {
    QmacProgram prog = build_chain({3, 1, Variant::Approximate, 1e-1}, {3, {{5, 6}}, false});
    ASSERT_EQ(simulate_program(prog).amplitudes, simulate_program(prog).amplitudes);
}

TEST(dense_sim, cap_from_env) {
    unsetenv("QMAC_DENSE_CAP");
    ASSERT_EQ(dense_cap_from_env(), kDefaultDenseCap);
    setenv("QMAC_DENSE_CAP", "12", 1);
    ASSERT_EQ(dense_cap_from_env(), 12);
    unsetenv("QMAC_DENSE_CAP");
}

TEST(dense_sim, csv_and_json_output) {
    HybridCircuit r(1, 0);
    r.append_layer({GateOp::hadamard(0)});
    std::string csv = matrix_to_csv(unitary_of(r));
    ASSERT_EQ(csv.substr(0, csv.find('\n')), "row,col,re,im");
    ASSERT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
    ASSERT_NE(distribution_to_json({{3, 1.0}}).find("\"value\":3"), std::string::npos);
}
