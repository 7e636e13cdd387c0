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

#ifndef QMAC_DENSE_SIM_H
#define QMAC_DENSE_SIM_H

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qmac/builder.h"
#include "qmac/circuit_ir.h"
#include "qmac/layout.h"

namespace qmac {

using Amplitude = std::complex<double>;

constexpr uint32_t kDefaultDenseCap = 22;
constexpr double kNormTolerance = 1e-10;
constexpr double kDisentangleTolerance = 1e-8;

/// Full statevector. Qubit i is bit i of the basis index.
struct DenseState {
    uint32_t num_qubits = 0;
    std::vector<Amplitude> amplitudes;
    std::vector<uint8_t> classical_bits;

    static DenseState basis(uint32_t num_qubits, uint64_t index, std::vector<uint8_t> classical_bits = {});
    double norm_squared() const;
};

struct DenseOptions {
    uint32_t max_qubits = kDefaultDenseCap;
    /// Verify sum |a|^2 = 1 after every layer.
    bool check_norm = true;
};

/// Reads QMAC_DENSE_CAP, falling back to kDefaultDenseCap.
uint32_t dense_cap_from_env();

/// Applies every layer in order. Classically controlled rotations fire iff
/// their control bit is 1 at that point. Throws TooWide above the cap.
DenseState simulate(const HybridCircuit &circuit, DenseState initial, const DenseOptions &options = {});

/// Runs a built chain from its prepared input.
DenseState simulate_program(const QmacProgram &program, const DenseOptions &options = {});

struct Outcome {
    uint64_t value = 0;
    double probability = 0.0;
};

/// Marginal distribution over the k register qubits, most probable first.
/// Throws ResidualEntanglement when auxiliary qubits carry more than 1e-8
/// probability away from |0>.
std::vector<Outcome> measure_register(const DenseState &state, const QubitLayout &layout);

/// Marginal distribution over the first k qubits of any state, no auxiliary
/// check.
std::vector<Outcome> register_distribution(const DenseState &state, uint32_t k);

/// Dense matrix of a purely quantum fragment on at most 10 qubits, built one
/// column per basis state.
Eigen::MatrixXcd unitary_of(const HybridCircuit &fragment);

/// Largest singular value of a - b.
double operator_distance(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b);

std::string distribution_to_json(const std::vector<Outcome> &outcomes);
std::string state_to_json(const DenseState &state);
/// (row, col, re, im) rows for every nonzero entry.
std::string matrix_to_csv(const Eigen::MatrixXcd &m);

}  // namespace qmac

#endif
