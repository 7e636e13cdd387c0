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

#ifndef QMAC_BUILDER_H
#define QMAC_BUILDER_H

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qmac/circuit_ir.h"
#include "qmac/layout.h"
#include "qmac/mac_input.h"

namespace qmac {

/// One AND per gate site: scratch(site) <- y_{p} AND x_{i} for the given step.
Layer classical_and_layer(const QubitLayout &layout, const ClassicalLayout &bits, uint32_t step);

/// Q_l on l copies: copy p-1 gets R_{l+1-p} controlled by controls[p-1].
/// Returned as a single layer; all rotations act on distinct copies.
Layer build_q_layer(uint32_t l, std::span<const uint32_t> copies, std::span<const uint32_t> controls);

/// The two-layer M block for one MAC step: the AND layer, then every
/// controlled rotation of every Q_l of every M_j in parallel.
HybridCircuit build_m_block(const QubitLayout &layout, const ClassicalLayout &bits, uint32_t step);

/// CNOT doubling tree per copy group, all groups in parallel. Depth is
/// max_j ceil(log2(j(j+1)/2)). Valid as the fan-out map when the auxiliary
/// copies start in |0>.
HybridCircuit build_fanout(const QubitLayout &layout, uint32_t num_classical_bits = 0, uint32_t group = 0);

/// Mirror of build_fanout; exact inverse on every basis state.
HybridCircuit build_fanout_inverse(const QubitLayout &layout, uint32_t num_classical_bits = 0, uint32_t group = 0);

/// Depth of build_fanout for width k.
uint32_t fanout_depth(uint32_t k);

/// Textbook QFT on qubits [0, k) of a `num_qubits`-wide circuit: for each
/// qubit from the most significant down, H then controlled rotations, then
/// the bit-reversal swaps. Maps |z> to 2^{-k/2} sum_t e^{2 pi i z t / 2^k} |t>.
HybridCircuit build_qft(uint32_t k, uint32_t num_qubits = 0, uint32_t num_classical_bits = 0);
HybridCircuit build_qft_dagger(uint32_t k, uint32_t num_qubits = 0, uint32_t num_classical_bits = 0);

/// Inverse QFT keeping only rotations R_m with m <= bandwidth.
HybridCircuit build_banded_qft_dagger(
    uint32_t k, uint32_t bandwidth, uint32_t num_qubits = 0, uint32_t num_classical_bits = 0);

/// ceil(log2(k) + log2(1/epsilon)) + 2
uint32_t approx_bandwidth(uint32_t k, double epsilon);

HybridCircuit build_approx_qft_dagger(
    uint32_t k, double epsilon, uint32_t num_qubits = 0, uint32_t num_classical_bits = 0);

/// Everything needed to execute one chain: the (input independent) circuit
/// plus the initial register value and classical bits that encode the input.
struct QmacProgram {
    QmacParams params;
    QubitLayout layout;
    ClassicalLayout bits;
    HybridCircuit circuit;
    /// Operand pair fed to each M block, in order. The approximate variant's
    /// first entry is (x=1, y=z).
    std::vector<MacPair> steps;
    /// Initial computational basis value of the register qubits.
    uint64_t initial_register = 0;
    std::vector<uint8_t> initial_bits;
    /// Rotation cutoff of the final inverse QFT (k for the exact variant).
    uint32_t bandwidth = 0;
};

/// Exact:  QFT . F . M(x_1,y_1) ... M(x_n,y_n) . F' . QFT'
/// Approx: H^k . F . M(1,z) . M(x_1,y_1) ... . F' . banded QFT'
/// The body is assembled from per-step F M F' blocks with the interior
/// fan-out pairs cancelled. Throws InvalidInput for out-of-range values.
QmacProgram build_chain(const QmacParams &params, const MacInput &input);
QmacProgram build_chain(const QmacParams &params, const MacInput &input, const QubitLayout &layout);

/// Input-independent circuit structure for `num_steps` M blocks.
HybridCircuit build_chain_circuit(const QmacParams &params, const QubitLayout &layout, uint32_t num_steps);

}  // namespace qmac

#endif
