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

#ifndef QMAC_CIRCUIT_IR_H
#define QMAC_CIRCUIT_IR_H

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qmac {

enum class BitKind : uint8_t { Classical, Quantum };

struct BitRef {
    BitKind kind = BitKind::Quantum;
    uint32_t index = 0;

    static constexpr BitRef qubit(uint32_t index) {
        return {BitKind::Quantum, index};
    }
    static constexpr BitRef bit(uint32_t index) {
        return {BitKind::Classical, index};
    }
    constexpr bool is_quantum() const {
        return kind == BitKind::Quantum;
    }

    auto operator<=>(const BitRef &) const = default;
    std::string str() const;
};

enum class GateKind : uint8_t { PhaseR, CNOT, Hadamard, Swap, ClassicalAND };

std::string_view gate_kind_name(GateKind kind);

/// One primitive operation.
///
/// Target layout per kind:
///   PhaseR        [q]                 (optional control: classical bit or qubit)
///   CNOT          [control, target]
///   Hadamard      [q]
///   Swap          [a, b]
///   ClassicalAND  [in_a, in_b, out]
///
/// A PhaseR angle is always 2*pi/2^m (negated when `adjoint`), stored as the
/// integer m.
struct GateOp {
    GateKind kind = GateKind::Hadamard;
    uint32_t m = 0;
    bool adjoint = false;
    std::array<BitRef, 3> refs{};
    uint8_t arity = 0;
    std::optional<BitRef> control;

    static GateOp phase(uint32_t qubit, uint32_t m, bool adjoint = false);
    static GateOp classically_controlled_phase(uint32_t control_bit, uint32_t qubit, uint32_t m);
    static GateOp controlled_phase(uint32_t control_qubit, uint32_t qubit, uint32_t m, bool adjoint = false);
    static GateOp cnot(uint32_t control, uint32_t target);
    static GateOp hadamard(uint32_t qubit);
    static GateOp swap(uint32_t a, uint32_t b);
    static GateOp classical_and(uint32_t in_a, uint32_t in_b, uint32_t out);

    std::span<const BitRef> targets() const {
        return {refs.data(), arity};
    }
    bool is_quantum() const {
        return kind != GateKind::ClassicalAND;
    }
    bool operator==(const GateOp &) const = default;
    std::string str() const;
};

struct Layer {
    std::vector<GateOp> ops;
    bool operator==(const Layer &) const = default;
};

/// Structural tag carried by a contiguous run of layers. Fan-out blocks are
/// identified by (group, direction) so that cancellation is purely syntactic.
enum class Stage : uint8_t {
    Generic,
    Qft,
    QftDagger,
    HadamardInit,
    FanOut,
    FanOutInverse,
    MacStep,
};

std::string_view stage_name(Stage stage);
std::optional<Stage> parse_stage(std::string_view name);

struct Block {
    Stage stage = Stage::Generic;
    uint32_t group = 0;
    size_t first_layer = 0;
    size_t num_layers = 0;
    bool operator==(const Block &) const = default;
};

struct CircuitMetrics {
    size_t depth = 0;
    size_t quantum_gate_count = 0;
    size_t classical_gate_count = 0;
    size_t qubit_count = 0;
    bool operator==(const CircuitMetrics &) const = default;
};

/// Layered hybrid circuit over `num_qubits` qubits and `num_classical_bits`
/// classical bits.
///
/// Layer validity: within one layer every qubit and every written classical
/// bit is used by at most one op, and no classical bit is both read and
/// written. Classical bits may be read by several ops of the same layer
/// (a classical wire can feed any number of gates).
class HybridCircuit {
   public:
    HybridCircuit() = default;
    HybridCircuit(uint32_t num_qubits, uint32_t num_classical_bits);

    uint32_t num_qubits() const {
        return num_qubits_;
    }
    uint32_t num_classical_bits() const {
        return num_classical_bits_;
    }
    const std::vector<Layer> &layers() const {
        return layers_;
    }
    const std::vector<Block> &blocks() const {
        return blocks_;
    }
    size_t depth() const {
        return layers_.size();
    }

    /// Opens a new (possibly empty) tagged block; later layers join it.
    void begin_block(Stage stage, uint32_t group = 0);

    /// Validates and appends one parallel step. Throws OverlappingTargets or
    /// OutOfRange.
    void append_layer(std::vector<GateOp> ops);

    /// Appends every block of `other` after this circuit's blocks.
    void append_circuit(const HybridCircuit &other);

    bool operator==(const HybridCircuit &) const = default;

   private:
    void validate_layer(const std::vector<GateOp> &ops) const;

    uint32_t num_qubits_ = 0;
    uint32_t num_classical_bits_ = 0;
    std::vector<Layer> layers_;
    std::vector<Block> blocks_;
};

CircuitMetrics metrics(const HybridCircuit &circuit);

/// Layers of b after layers of a. Throws RegisterMismatch.
HybridCircuit compose(const HybridCircuit &a, const HybridCircuit &b);

/// Removes every adjacent (FanOut, FanOutInverse) or (FanOutInverse, FanOut)
/// pair with the same group, repeatedly, so F M F' F M F' becomes F M M F'.
HybridCircuit cancel_adjacent_fanouts(const HybridCircuit &circuit);

/// As-soon-as-possible packing of an ordered gate list into layers. Ops that
/// share any bit keep their relative order.
std::vector<Layer> schedule_asap(std::span<const GateOp> ops, uint32_t num_qubits, uint32_t num_classical_bits);

}  // namespace qmac

#endif
