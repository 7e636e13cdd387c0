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

#include "qmac/circuit_ir.h"

#include <algorithm>
#include <utility>

#include "qmac/error.h"

namespace qmac {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::OverlappingTargets:
            return "OverlappingTargets";
        case ErrorCode::OutOfRange:
            return "OutOfRange";
        case ErrorCode::RegisterMismatch:
            return "RegisterMismatch";
        case ErrorCode::InvalidInput:
            return "InvalidInput";
        case ErrorCode::TooWide:
            return "TooWide";
        case ErrorCode::HasClassicalOps:
            return "HasClassicalOps";
        case ErrorCode::ResidualEntanglement:
            return "ResidualEntanglement";
        case ErrorCode::InconsistentState:
            return "InconsistentState";
        case ErrorCode::NoCrossover:
            return "NoCrossover";
        case ErrorCode::BackendMismatch:
            return "BackendMismatch";
        case ErrorCode::ParseError:
            return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {
}

std::string BitRef::str() const {
    return (is_quantum() ? "q" : "c") + std::to_string(index);
}

std::string_view gate_kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::PhaseR:
            return "R";
        case GateKind::CNOT:
            return "CNOT";
        case GateKind::Hadamard:
            return "H";
        case GateKind::Swap:
            return "SWAP";
        case GateKind::ClassicalAND:
            return "AND";
    }
    return "?";
}

GateOp GateOp::phase(uint32_t qubit, uint32_t m, bool adjoint) {
    GateOp op;
    op.kind = GateKind::PhaseR;
    op.m = m;
    op.adjoint = adjoint;
    op.refs[0] = BitRef::qubit(qubit);
    op.arity = 1;
    return op;
}

GateOp GateOp::classically_controlled_phase(uint32_t control_bit, uint32_t qubit, uint32_t m) {
    GateOp op = phase(qubit, m);
    op.control = BitRef::bit(control_bit);
    return op;
}

GateOp GateOp::controlled_phase(uint32_t control_qubit, uint32_t qubit, uint32_t m, bool adjoint) {
    GateOp op = phase(qubit, m, adjoint);
    op.control = BitRef::qubit(control_qubit);
    return op;
}

GateOp GateOp::cnot(uint32_t control, uint32_t target) {
    GateOp op;
    op.kind = GateKind::CNOT;
    op.refs[0] = BitRef::qubit(control);
    op.refs[1] = BitRef::qubit(target);
    op.arity = 2;
    return op;
}

GateOp GateOp::hadamard(uint32_t qubit) {
    GateOp op;
    op.kind = GateKind::Hadamard;
    op.refs[0] = BitRef::qubit(qubit);
    op.arity = 1;
    return op;
}

GateOp GateOp::swap(uint32_t a, uint32_t b) {
    GateOp op;
    op.kind = GateKind::Swap;
    op.refs[0] = BitRef::qubit(a);
    op.refs[1] = BitRef::qubit(b);
    op.arity = 2;
    return op;
}

GateOp GateOp::classical_and(uint32_t in_a, uint32_t in_b, uint32_t out) {
    GateOp op;
    op.kind = GateKind::ClassicalAND;
    op.refs[0] = BitRef::bit(in_a);
    op.refs[1] = BitRef::bit(in_b);
    op.refs[2] = BitRef::bit(out);
    op.arity = 3;
    return op;
}

std::string GateOp::str() const {
    std::string out(gate_kind_name(kind));
    if (kind == GateKind::PhaseR) {
        out += "_" + std::to_string(m);
        if (adjoint) {
            out += "^dag";
        }
    }
    out += "(";
    if (control.has_value()) {
        out += control->str() + " -> ";
    }
    for (size_t i = 0; i < arity; i++) {
        if (i) {
            out += ",";
        }
        out += refs[i].str();
    }
    out += ")";
    return out;
}

namespace {

constexpr std::string_view kStageNames[] = {
    "generic", "qft", "qft_dagger", "hadamard_init", "fanout", "fanout_inverse", "mac_step",
};

// Quantum refs plus written classical bits are exclusive; everything else a
// gate touches is a classical read.
template <typename Fn>
void for_each_exclusive(const GateOp &op, Fn &&fn) {
    if (op.kind == GateKind::ClassicalAND) {
        fn(op.refs[2]);
        return;
    }
    for (const auto &r : op.targets()) {
        fn(r);
    }
    if (op.control.has_value() && op.control->is_quantum()) {
        fn(*op.control);
    }
}

template <typename Fn>
void for_each_classical_read(const GateOp &op, Fn &&fn) {
    if (op.kind == GateKind::ClassicalAND) {
        fn(op.refs[0]);
        fn(op.refs[1]);
        return;
    }
    if (op.control.has_value() && !op.control->is_quantum()) {
        fn(*op.control);
    }
}

bool well_formed(const GateOp &op) {
    switch (op.kind) {
        case GateKind::PhaseR:
            return op.arity == 1 && op.refs[0].is_quantum() && op.m >= 1;
        case GateKind::Hadamard:
            return op.arity == 1 && op.refs[0].is_quantum() && !op.control.has_value();
        case GateKind::CNOT:
        case GateKind::Swap:
            return op.arity == 2 && op.refs[0].is_quantum() && op.refs[1].is_quantum() && op.refs[0] != op.refs[1] &&
                   !op.control.has_value();
        case GateKind::ClassicalAND:
            return op.arity == 3 && !op.refs[0].is_quantum() && !op.refs[1].is_quantum() &&
                   !op.refs[2].is_quantum() && !op.control.has_value();
    }
    return false;
}

}  // namespace

std::string_view stage_name(Stage stage) {
    return kStageNames[static_cast<size_t>(stage)];
}

std::optional<Stage> parse_stage(std::string_view name) {
    for (size_t i = 0; i < std::size(kStageNames); i++) {
        if (kStageNames[i] == name) {
            return static_cast<Stage>(i);
        }
    }
    return std::nullopt;
}

HybridCircuit::HybridCircuit(uint32_t num_qubits, uint32_t num_classical_bits)
    : num_qubits_(num_qubits), num_classical_bits_(num_classical_bits) {
}

void HybridCircuit::begin_block(Stage stage, uint32_t group) {
    blocks_.push_back(Block{stage, group, layers_.size(), 0});
}

void HybridCircuit::validate_layer(const std::vector<GateOp> &ops) const {
    // 0 = untouched, 1 = exclusive use, 2 = classical read.
    std::vector<uint8_t> qubit_use(num_qubits_, 0);
    std::vector<uint8_t> bit_use(num_classical_bits_, 0);
    auto check_range = [&](const BitRef &r, const GateOp &op) {
        uint32_t limit = r.is_quantum() ? num_qubits_ : num_classical_bits_;
        if (r.index >= limit) {
            throw Error(ErrorCode::OutOfRange, op.str() + " references " + r.str());
        }
    };
    for (const auto &op : ops) {
        if (!well_formed(op)) {
            throw Error(ErrorCode::InvalidInput, "malformed gate " + op.str());
        }
        for_each_exclusive(op, [&](const BitRef &r) {
            check_range(r, op);
            uint8_t &slot = r.is_quantum() ? qubit_use[r.index] : bit_use[r.index];
            if (slot != 0) {
                throw Error(ErrorCode::OverlappingTargets, op.str() + " reuses " + r.str());
            }
            slot = 1;
        });
    }
    for (const auto &op : ops) {
        for_each_classical_read(op, [&](const BitRef &r) {
            check_range(r, op);
            if (bit_use[r.index] == 1) {
                throw Error(ErrorCode::OverlappingTargets, op.str() + " reads " + r.str() + " written in same layer");
            }
            bit_use[r.index] = 2;
        });
    }
}

void HybridCircuit::append_layer(std::vector<GateOp> ops) {
    validate_layer(ops);
    if (blocks_.empty()) {
        begin_block(Stage::Generic);
    }
    layers_.push_back(Layer{std::move(ops)});
    blocks_.back().num_layers++;
}

void HybridCircuit::append_circuit(const HybridCircuit &other) {
    if (other.num_qubits_ != num_qubits_ || other.num_classical_bits_ != num_classical_bits_) {
        throw Error(
            ErrorCode::RegisterMismatch,
            "cannot compose circuits over (" + std::to_string(num_qubits_) + "q," +
                std::to_string(num_classical_bits_) + "c) and (" + std::to_string(other.num_qubits_) + "q," +
                std::to_string(other.num_classical_bits_) + "c)");
    }
    size_t offset = layers_.size();
    layers_.insert(layers_.end(), other.layers_.begin(), other.layers_.end());
    for (Block b : other.blocks_) {
        b.first_layer += offset;
        blocks_.push_back(b);
    }
}

CircuitMetrics metrics(const HybridCircuit &circuit) {
    CircuitMetrics m;
    m.depth = circuit.depth();
    m.qubit_count = circuit.num_qubits();
    for (const auto &layer : circuit.layers()) {
        for (const auto &op : layer.ops) {
            if (op.is_quantum()) {
                m.quantum_gate_count++;
            } else {
                m.classical_gate_count++;
            }
        }
    }
    return m;
}

HybridCircuit compose(const HybridCircuit &a, const HybridCircuit &b) {
    HybridCircuit out = a;
    out.append_circuit(b);
    return out;
}

HybridCircuit cancel_adjacent_fanouts(const HybridCircuit &circuit) {
    auto cancels = [](const Block &x, const Block &y) {
        bool opposite = (x.stage == Stage::FanOut && y.stage == Stage::FanOutInverse) ||
                        (x.stage == Stage::FanOutInverse && y.stage == Stage::FanOut);
        return opposite && x.group == y.group;
    };
    std::vector<Block> kept;
    for (const auto &b : circuit.blocks()) {
        if (!kept.empty() && cancels(kept.back(), b)) {
            kept.pop_back();
        } else {
            kept.push_back(b);
        }
    }
    HybridCircuit out(circuit.num_qubits(), circuit.num_classical_bits());
    for (const auto &b : kept) {
        out.begin_block(b.stage, b.group);
        for (size_t i = 0; i < b.num_layers; i++) {
            out.append_layer(circuit.layers()[b.first_layer + i].ops);
        }
    }
    return out;
}

std::vector<Layer> schedule_asap(std::span<const GateOp> ops, uint32_t num_qubits, uint32_t num_classical_bits) {
    std::vector<size_t> qubit_ready(num_qubits, 0);
    std::vector<size_t> bit_ready(num_classical_bits, 0);
    std::vector<Layer> layers;
    auto slot = [&](const BitRef &r) -> size_t & {
        if (r.is_quantum()) {
            if (r.index >= num_qubits) {
                throw Error(ErrorCode::OutOfRange, "schedule_asap: " + r.str());
            }
            return qubit_ready[r.index];
        }
        if (r.index >= num_classical_bits) {
            throw Error(ErrorCode::OutOfRange, "schedule_asap: " + r.str());
        }
        return bit_ready[r.index];
    };
    for (const auto &op : ops) {
        size_t t = 0;
        auto visit = [&](const BitRef &r) {
            t = std::max(t, slot(r));
        };
        for_each_exclusive(op, visit);
        for_each_classical_read(op, visit);
        if (t == layers.size()) {
            layers.emplace_back();
        }
        layers[t].ops.push_back(op);
        auto claim = [&](const BitRef &r) {
            slot(r) = t + 1;
        };
        for_each_exclusive(op, claim);
        for_each_classical_read(op, claim);
    }
    return layers;
}

}  // namespace qmac
