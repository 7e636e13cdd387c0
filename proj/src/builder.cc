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

#include "qmac/builder.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmac/error.h"

namespace qmac {

Layer classical_and_layer(const QubitLayout &layout, const ClassicalLayout &bits, uint32_t step) {
    Layer layer;
    const auto &sites = layout.sites();
    layer.ops.reserve(sites.size());
    for (uint32_t s = 0; s < sites.size(); s++) {
        layer.ops.push_back(GateOp::classical_and(
            bits.y_bit(step, sites[s].y_bit()), bits.x_bit(step, sites[s].x_bit()), bits.scratch(s)));
    }
    return layer;
}

Layer build_q_layer(uint32_t l, std::span<const uint32_t> copies, std::span<const uint32_t> controls) {
    if (copies.size() != l || controls.size() != l) {
        throw Error(ErrorCode::InvalidInput, "Q_" + std::to_string(l) + " needs exactly l copies and l controls");
    }
    Layer layer;
    for (uint32_t p = 1; p <= l; p++) {
        layer.ops.push_back(GateOp::classically_controlled_phase(controls[p - 1], copies[p - 1], l + 1 - p));
    }
    return layer;
}

HybridCircuit build_m_block(const QubitLayout &layout, const ClassicalLayout &bits, uint32_t step) {
    HybridCircuit c(layout.num_qubits(), bits.num_bits());
    c.begin_block(Stage::MacStep);
    c.append_layer(classical_and_layer(layout, bits, step).ops);

    // Sites of one (j, l) pair are contiguous; each run is one Q_l.
    const auto &sites = layout.sites();
    std::vector<GateOp> rotations;
    rotations.reserve(sites.size());
    std::vector<uint32_t> copies;
    std::vector<uint32_t> controls;
    for (size_t s = 0; s < sites.size();) {
        const GateSite &head = sites[s];
        copies.clear();
        controls.clear();
        size_t e = s;
        while (e < sites.size() && sites[e].logical == head.logical && sites[e].sub_block == head.sub_block) {
            copies.push_back(sites[e].qubit);
            controls.push_back(bits.scratch(static_cast<uint32_t>(e)));
            e++;
        }
        if (copies.size() == head.sub_block) {
            auto q = build_q_layer(head.sub_block, copies, controls);
            rotations.insert(rotations.end(), q.ops.begin(), q.ops.end());
        } else {
            // Only reachable with a fault-injected layout missing a site.
            for (size_t i = s; i < e; i++) {
                rotations.push_back(GateOp::classically_controlled_phase(
                    bits.scratch(static_cast<uint32_t>(i)), sites[i].qubit, sites[i].rotation()));
            }
        }
        s = e;
    }
    c.append_layer(std::move(rotations));
    return c;
}

namespace {

std::vector<Layer> fanout_layers(const QubitLayout &layout) {
    std::vector<Layer> layers;
    for (const auto &g : layout.groups()) {
        // Doubling tree: every holder copies into one fresh member per round.
        size_t holders = 1;
        size_t round = 0;
        while (holders < g.size()) {
            if (layers.size() <= round) {
                layers.emplace_back();
            }
            size_t fresh = std::min(holders, g.size() - holders);
            for (size_t i = 0; i < fresh; i++) {
                layers[round].ops.push_back(GateOp::cnot(g.member(i), g.member(holders + i)));
            }
            holders += fresh;
            round++;
        }
    }
    return layers;
}

uint32_t width_or(uint32_t num_qubits, uint32_t k) {
    if (num_qubits == 0) {
        return k;
    }
    if (num_qubits < k) {
        throw Error(ErrorCode::OutOfRange, "QFT register wider than circuit");
    }
    return num_qubits;
}

std::vector<GateOp> qft_gates(uint32_t k) {
    std::vector<GateOp> gates;
    for (uint32_t q = k; q-- > 0;) {
        gates.push_back(GateOp::hadamard(q));
        for (uint32_t p = q; p-- > 0;) {
            gates.push_back(GateOp::controlled_phase(p, q, q - p + 1));
        }
    }
    for (uint32_t q = 0; q < k / 2; q++) {
        gates.push_back(GateOp::swap(q, k - 1 - q));
    }
    return gates;
}

HybridCircuit from_gates(std::span<const GateOp> gates, Stage stage, uint32_t num_qubits, uint32_t num_bits) {
    HybridCircuit c(num_qubits, num_bits);
    c.begin_block(stage);
    for (auto &layer : schedule_asap(gates, num_qubits, num_bits)) {
        c.append_layer(std::move(layer.ops));
    }
    return c;
}

}  // namespace

HybridCircuit build_fanout(const QubitLayout &layout, uint32_t num_classical_bits, uint32_t group) {
    HybridCircuit c(layout.num_qubits(), num_classical_bits);
    c.begin_block(Stage::FanOut, group);
    for (auto &layer : fanout_layers(layout)) {
        c.append_layer(std::move(layer.ops));
    }
    return c;
}

HybridCircuit build_fanout_inverse(const QubitLayout &layout, uint32_t num_classical_bits, uint32_t group) {
    HybridCircuit c(layout.num_qubits(), num_classical_bits);
    c.begin_block(Stage::FanOutInverse, group);
    auto layers = fanout_layers(layout);
    for (auto it = layers.rbegin(); it != layers.rend(); ++it) {
        c.append_layer(std::move(it->ops));
    }
    return c;
}

uint32_t fanout_depth(uint32_t k) {
    return ceil_log2(uint64_t{k} * (k + 1) / 2);
}

HybridCircuit build_qft(uint32_t k, uint32_t num_qubits, uint32_t num_classical_bits) {
    num_qubits = width_or(num_qubits, k);
    auto gates = qft_gates(k);
    return from_gates(gates, Stage::Qft, num_qubits, num_classical_bits);
}

HybridCircuit build_banded_qft_dagger(uint32_t k, uint32_t bandwidth, uint32_t num_qubits, uint32_t num_classical_bits) {
    num_qubits = width_or(num_qubits, k);
    auto forward = qft_gates(k);
    std::vector<GateOp> gates;
    gates.reserve(forward.size());
    for (auto it = forward.rbegin(); it != forward.rend(); ++it) {
        GateOp g = *it;
        if (g.kind == GateKind::PhaseR) {
            if (g.m > bandwidth) {
                continue;
            }
            g.adjoint = !g.adjoint;
        }
        gates.push_back(g);
    }
    return from_gates(gates, Stage::QftDagger, num_qubits, num_classical_bits);
}

HybridCircuit build_qft_dagger(uint32_t k, uint32_t num_qubits, uint32_t num_classical_bits) {
    return build_banded_qft_dagger(k, k, num_qubits, num_classical_bits);
}

uint32_t approx_bandwidth(uint32_t k, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw Error(ErrorCode::InvalidInput, "epsilon must be in (0, 1)");
    }
    double bits = std::log2(static_cast<double>(k)) + std::log2(1.0 / epsilon);
    return static_cast<uint32_t>(std::ceil(bits)) + 2;
}

HybridCircuit build_approx_qft_dagger(uint32_t k, double epsilon, uint32_t num_qubits, uint32_t num_classical_bits) {
    return build_banded_qft_dagger(k, approx_bandwidth(k, epsilon), num_qubits, num_classical_bits);
}

HybridCircuit build_chain_circuit(const QmacParams &params, const QubitLayout &layout, uint32_t num_steps) {
    params.validate();
    if (layout.k() != params.k) {
        throw Error(ErrorCode::RegisterMismatch, "layout width differs from k");
    }
    uint32_t k = params.k;
    ClassicalLayout bits{k, num_steps, static_cast<uint32_t>(layout.sites().size())};
    uint32_t nq = layout.num_qubits();
    uint32_t nc = bits.num_bits();

    HybridCircuit chain(nq, nc);
    if (params.variant == Variant::Exact) {
        chain.append_circuit(build_qft(k, nq, nc));
    } else {
        chain.begin_block(Stage::HadamardInit);
        std::vector<GateOp> hs;
        for (uint32_t q = 0; q < k; q++) {
            hs.push_back(GateOp::hadamard(q));
        }
        chain.append_layer(std::move(hs));
    }

    HybridCircuit fanout = build_fanout(layout, nc);
    HybridCircuit unfan = build_fanout_inverse(layout, nc);
    HybridCircuit body(nq, nc);
    if (num_steps == 0) {
        body = compose(fanout, unfan);
    } else {
        for (uint32_t s = 0; s < num_steps; s++) {
            body.append_circuit(fanout);
            body.append_circuit(build_m_block(layout, bits, s));
            body.append_circuit(unfan);
        }
        body = cancel_adjacent_fanouts(body);
    }
    chain.append_circuit(body);

    uint32_t bandwidth = params.variant == Variant::Exact ? k : approx_bandwidth(k, *params.epsilon);
    chain.append_circuit(build_banded_qft_dagger(k, bandwidth, nq, nc));
    return chain;
}

QmacProgram build_chain(const QmacParams &params, const MacInput &input) {
    params.validate();
    return build_chain(params, input, QubitLayout::canonical(params.k));
}

QmacProgram build_chain(const QmacParams &params, const MacInput &input, const QubitLayout &layout) {
    params.validate();
    input.validate(params.k);
    if (input.pairs.size() != params.n) {
        throw Error(
            ErrorCode::InvalidInput,
            "params.n = " + std::to_string(params.n) + " but " + std::to_string(input.pairs.size()) + " pairs given");
    }
    uint32_t k = params.k;

    QmacProgram prog;
    prog.params = params;
    prog.layout = layout;
    if (params.variant == Variant::Approximate) {
        prog.steps.push_back(MacPair{1, input.z});
        prog.initial_register = 0;
        prog.bandwidth = approx_bandwidth(k, *params.epsilon);
    } else {
        prog.initial_register = input.z;
        prog.bandwidth = k;
    }
    prog.steps.insert(prog.steps.end(), input.pairs.begin(), input.pairs.end());

    auto num_steps = static_cast<uint32_t>(prog.steps.size());
    prog.bits = ClassicalLayout{k, num_steps, static_cast<uint32_t>(layout.sites().size())};
    prog.circuit = build_chain_circuit(params, layout, num_steps);

    prog.initial_bits.assign(prog.bits.num_bits(), 0);
    for (uint32_t s = 0; s < num_steps; s++) {
        for (uint32_t b = 1; b <= k; b++) {
            prog.initial_bits[prog.bits.x_bit(s, b)] = (prog.steps[s].x >> (b - 1)) & 1;
            prog.initial_bits[prog.bits.y_bit(s, b)] = (prog.steps[s].y >> (b - 1)) & 1;
        }
    }
    return prog;
}

}  // namespace qmac
