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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

#include <json.hpp>

#include "qmac/error.h"

namespace qmac {

DenseState DenseState::basis(uint32_t num_qubits, uint64_t index, std::vector<uint8_t> classical_bits) {
    if (num_qubits >= 63) {
        throw Error(ErrorCode::TooWide, std::to_string(num_qubits) + " qubits");
    }
    uint64_t dim = uint64_t{1} << num_qubits;
    if (index >= dim) {
        throw Error(ErrorCode::OutOfRange, "basis index " + std::to_string(index));
    }
    DenseState s;
    s.num_qubits = num_qubits;
    s.amplitudes.assign(dim, Amplitude{0.0, 0.0});
    s.amplitudes[index] = 1.0;
    s.classical_bits = std::move(classical_bits);
    return s;
}

double DenseState::norm_squared() const {
    double total = 0.0;
    for (const auto &a : amplitudes) {
        total += std::norm(a);
    }
    return total;
}

uint32_t dense_cap_from_env() {
    const char *raw = std::getenv("QMAC_DENSE_CAP");
    if (raw == nullptr || *raw == '\0') {
        return kDefaultDenseCap;
    }
    char *end = nullptr;
    unsigned long v = std::strtoul(raw, &end, 10);
    if (end == raw || *end != '\0' || v == 0 || v > 40) {
        throw Error(ErrorCode::InvalidInput, std::string("QMAC_DENSE_CAP must be an integer in 1..40, got ") + raw);
    }
    return static_cast<uint32_t>(v);
}

namespace {

Amplitude rotation_phase(uint32_t m, bool adjoint) {
    double angle = std::ldexp(2.0 * std::numbers::pi, -static_cast<int>(m));
    return std::polar(1.0, adjoint ? -angle : angle);
}

void apply_op(const GateOp &op, std::vector<Amplitude> &amp, std::vector<uint8_t> &bits) {
    const uint64_t dim = amp.size();
    switch (op.kind) {
        case GateKind::ClassicalAND:
            bits[op.refs[2].index] = bits[op.refs[0].index] & bits[op.refs[1].index];
            return;
        case GateKind::Hadamard: {
            const uint64_t s = uint64_t{1} << op.refs[0].index;
            const double h = std::numbers::sqrt2 / 2.0;
            for (uint64_t i = 0; i < dim; i++) {
                if (i & s) {
                    continue;
                }
                Amplitude a = amp[i];
                Amplitude b = amp[i | s];
                amp[i] = h * (a + b);
                amp[i | s] = h * (a - b);
            }
            return;
        }
        case GateKind::PhaseR: {
            uint64_t mask = uint64_t{1} << op.refs[0].index;
            if (op.control.has_value()) {
                if (op.control->is_quantum()) {
                    mask |= uint64_t{1} << op.control->index;
                } else if (!bits[op.control->index]) {
                    return;
                }
            }
            const Amplitude phase = rotation_phase(op.m, op.adjoint);
            for (uint64_t i = 0; i < dim; i++) {
                if ((i & mask) == mask) {
                    amp[i] *= phase;
                }
            }
            return;
        }
        case GateKind::CNOT: {
            const uint64_t c = uint64_t{1} << op.refs[0].index;
            const uint64_t t = uint64_t{1} << op.refs[1].index;
            for (uint64_t i = 0; i < dim; i++) {
                if ((i & c) && !(i & t)) {
                    std::swap(amp[i], amp[i | t]);
                }
            }
            return;
        }
        case GateKind::Swap: {
            const uint64_t a = uint64_t{1} << op.refs[0].index;
            const uint64_t b = uint64_t{1} << op.refs[1].index;
            for (uint64_t i = 0; i < dim; i++) {
                if ((i & a) && !(i & b)) {
                    std::swap(amp[i], amp[(i ^ a) | b]);
                }
            }
            return;
        }
    }
}

}  // namespace

DenseState simulate(const HybridCircuit &circuit, DenseState state, const DenseOptions &options) {
    if (circuit.num_qubits() > options.max_qubits) {
        throw Error(
            ErrorCode::TooWide, std::to_string(circuit.num_qubits()) + " qubits exceeds the dense cap of " +
                                    std::to_string(options.max_qubits));
    }
    if (state.num_qubits != circuit.num_qubits()) {
        throw Error(ErrorCode::RegisterMismatch, "initial state width differs from circuit");
    }
    if (state.classical_bits.size() < circuit.num_classical_bits()) {
        state.classical_bits.resize(circuit.num_classical_bits(), 0);
    }
    for (const auto &layer : circuit.layers()) {
        bool quantum = false;
        for (const auto &op : layer.ops) {
            apply_op(op, state.amplitudes, state.classical_bits);
            quantum |= op.is_quantum();
        }
        if (options.check_norm && quantum) {
            double drift = std::abs(state.norm_squared() - 1.0);
            if (drift > kNormTolerance) {
                throw Error(ErrorCode::InconsistentState, "norm drifted by " + std::to_string(drift));
            }
        }
    }
    return state;
}

DenseState simulate_program(const QmacProgram &program, const DenseOptions &options) {
    if (program.circuit.num_qubits() > options.max_qubits) {
        throw Error(
            ErrorCode::TooWide, std::to_string(program.circuit.num_qubits()) + " qubits exceeds the dense cap of " +
                                    std::to_string(options.max_qubits));
    }
    return simulate(
        program.circuit, DenseState::basis(program.circuit.num_qubits(), program.initial_register, program.initial_bits),
        options);
}

std::vector<Outcome> register_distribution(const DenseState &state, uint32_t k) {
    std::vector<double> probs(uint64_t{1} << k, 0.0);
    const uint64_t mask = (uint64_t{1} << k) - 1;
    for (uint64_t i = 0; i < state.amplitudes.size(); i++) {
        probs[i & mask] += std::norm(state.amplitudes[i]);
    }
    std::vector<Outcome> out;
    for (uint64_t v = 0; v < probs.size(); v++) {
        if (probs[v] > 1e-15) {
            out.push_back(Outcome{v, probs[v]});
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const Outcome &a, const Outcome &b) {
        return a.probability > b.probability;
    });
    return out;
}

std::vector<Outcome> measure_register(const DenseState &state, const QubitLayout &layout) {
    const uint64_t aux_mask = ~((uint64_t{1} << layout.k()) - 1);
    double leaked = 0.0;
    for (uint64_t i = 0; i < state.amplitudes.size(); i++) {
        if (i & aux_mask) {
            leaked += std::norm(state.amplitudes[i]);
        }
    }
    if (leaked > kDisentangleTolerance) {
        throw Error(
            ErrorCode::ResidualEntanglement,
            "auxiliary qubits hold probability " + std::to_string(leaked) + " away from |0>");
    }
    return register_distribution(state, layout.k());
}

Eigen::MatrixXcd unitary_of(const HybridCircuit &fragment) {
    constexpr uint32_t kMaxUnitaryQubits = 10;
    if (fragment.num_qubits() > kMaxUnitaryQubits) {
        throw Error(ErrorCode::TooWide, "unitary_of supports at most 10 qubits");
    }
    for (const auto &layer : fragment.layers()) {
        for (const auto &op : layer.ops) {
            if (!op.is_quantum() || (op.control.has_value() && !op.control->is_quantum())) {
                throw Error(ErrorCode::HasClassicalOps, op.str());
            }
        }
    }
    const uint64_t dim = uint64_t{1} << fragment.num_qubits();
    Eigen::MatrixXcd u(dim, dim);
    for (uint64_t col = 0; col < dim; col++) {
        DenseState s = simulate(fragment, DenseState::basis(fragment.num_qubits(), col));
        for (uint64_t row = 0; row < dim; row++) {
            u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = s.amplitudes[row];
        }
    }
    return u;
}

double operator_distance(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::RegisterMismatch, "matrix shapes differ");
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a - b);
    return svd.singularValues()(0);
}

std::string distribution_to_json(const std::vector<Outcome> &outcomes) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto &o : outcomes) {
        j.push_back({{"value", o.value}, {"probability", o.probability}});
    }
    return j.dump();
}

std::string state_to_json(const DenseState &state) {
    nlohmann::json amps = nlohmann::json::array();
    for (uint64_t i = 0; i < state.amplitudes.size(); i++) {
        const auto &a = state.amplitudes[i];
        if (std::norm(a) > 1e-30) {
            amps.push_back({i, a.real(), a.imag()});
        }
    }
    nlohmann::json j;
    j["num_qubits"] = state.num_qubits;
    j["amplitudes"] = std::move(amps);
    j["classical_bits"] = state.classical_bits;
    return j.dump();
}

std::string matrix_to_csv(const Eigen::MatrixXcd &m) {
    std::string out = "row,col,re,im\n";
    char buf[128];
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            auto v = m(r, c);
            if (std::abs(v) <= 1e-15) {
                continue;
            }
            std::snprintf(buf, sizeof(buf), "%ld,%ld,%.17g,%.17g\n", static_cast<long>(r), static_cast<long>(c),
                          v.real(), v.imag());
            out += buf;
        }
    }
    return out;
}

}  // namespace qmac
