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

#include "qmac/phase_sim.h"

#include <string>

#include <json.hpp>

#include "qmac/error.h"
#include "qmac/mac_input.h"

namespace qmac {

PhaseState PhaseState::init_from(uint32_t k, uint64_t z) {
    if (k < 1 || k > kMaxWidth) {
        throw Error(ErrorCode::InvalidInput, "k must be in 1..64");
    }
    if ((z & ~register_mask(k)) != 0) {
        throw Error(ErrorCode::OutOfRange, std::to_string(z) + " does not fit in " + std::to_string(k) + " bits");
    }
    PhaseState s;
    s.acc_.resize(k);
    for (uint32_t j = 1; j <= k; j++) {
        s.acc_[j - 1] = z & register_mask(j);
    }
    return s;
}

PhaseState PhaseState::from_accumulators(std::vector<uint64_t> accumulators) {
    if (accumulators.empty() || accumulators.size() > kMaxWidth) {
        throw Error(ErrorCode::InvalidInput, "k must be in 1..64");
    }
    for (uint32_t j = 1; j <= accumulators.size(); j++) {
        if ((accumulators[j - 1] & ~register_mask(j)) != 0) {
            throw Error(ErrorCode::OutOfRange, "a_" + std::to_string(j) + " must be below 2^" + std::to_string(j));
        }
    }
    PhaseState s;
    s.acc_ = std::move(accumulators);
    return s;
}

void PhaseState::apply_rotation(uint32_t logical, uint32_t m, bool adjoint) {
    if (logical < 1 || logical > k()) {
        throw Error(ErrorCode::OutOfRange, "logical qubit " + std::to_string(logical));
    }
    if (m < 1 || m > logical) {
        throw Error(
            ErrorCode::InconsistentState,
            "R_" + std::to_string(m) + " on logical qubit " + std::to_string(logical) + " is not representable");
    }
    uint64_t delta = uint64_t{1} << (logical - m);
    uint64_t &a = acc_[logical - 1];
    a = (adjoint ? a - delta : a + delta) & register_mask(logical);
}

uint64_t PhaseState::decode() const {
    const uint64_t top = acc_.back();
    for (uint32_t j = 1; j <= k(); j++) {
        if (acc_[j - 1] != (top & register_mask(j))) {
            throw Error(
                ErrorCode::InconsistentState,
                "a_" + std::to_string(j) + " = " + std::to_string(acc_[j - 1]) + " disagrees with a_k = " +
                    std::to_string(top));
        }
    }
    return top;
}

PhaseState apply_mac_step(PhaseState state, const QubitLayout &layout, uint64_t x, uint64_t y) {
    if (layout.k() != state.k()) {
        throw Error(ErrorCode::RegisterMismatch, "layout width differs from state width");
    }
    const uint64_t mask = register_mask(state.k());
    if ((x & ~mask) || (y & ~mask)) {
        throw Error(ErrorCode::OutOfRange, "operands must fit in k bits");
    }
    for (const auto &site : layout.sites()) {
        bool control = ((y >> (site.y_bit() - 1)) & 1) && ((x >> (site.x_bit() - 1)) & 1);
        if (control) {
            state.apply_rotation(site.logical, site.rotation());
        }
    }
    return state;
}

PhaseState apply_mac_step_closed_form(PhaseState state, uint64_t x, uint64_t y) {
    const uint32_t k = state.k();
    const uint64_t mask = register_mask(k);
    if ((x & ~mask) || (y & ~mask)) {
        throw Error(ErrorCode::OutOfRange, "operands must fit in k bits");
    }
    std::vector<uint64_t> acc = state.accumulators();
    for (uint32_t j = 1; j <= k; j++) {
        const uint64_t mj = register_mask(j);
        acc[j - 1] = (acc[j - 1] + (y & mj) * x) & mj;
    }
    return PhaseState::from_accumulators(std::move(acc));
}

uint64_t run_mac_chain(const QubitLayout &layout, uint64_t z, const std::vector<MacPair> &pairs) {
    PhaseState s = PhaseState::init_from(layout.k(), z);
    for (const auto &p : pairs) {
        s = apply_mac_step(std::move(s), layout, p.x, p.y);
    }
    return s.decode();
}

PhaseRun run_program(const QmacProgram &program) {
    const auto &circuit = program.circuit;
    const auto &layout = program.layout;
    const uint32_t k = layout.k();
    std::vector<uint8_t> bits = program.initial_bits;
    bits.resize(circuit.num_classical_bits(), 0);

    PhaseRun run;
    bool prepared = false;
    bool decoded = false;
    PhaseState state;
    for (const auto &block : circuit.blocks()) {
        switch (block.stage) {
            case Stage::Qft:
                state = PhaseState::init_from(k, program.initial_register);
                prepared = true;
                run.trace.push_back(state.accumulators());
                break;
            case Stage::HadamardInit:
                state = PhaseState::init_from(k, 0);
                prepared = true;
                run.trace.push_back(state.accumulators());
                break;
            case Stage::FanOut:
            case Stage::FanOutInverse:
                break;
            case Stage::MacStep: {
                if (!prepared) {
                    throw Error(ErrorCode::InconsistentState, "MAC block before register preparation");
                }
                for (size_t i = 0; i < block.num_layers; i++) {
                    for (const auto &op : circuit.layers()[block.first_layer + i].ops) {
                        if (op.kind == GateKind::ClassicalAND) {
                            bits[op.refs[2].index] = bits[op.refs[0].index] & bits[op.refs[1].index];
                            continue;
                        }
                        if (op.kind != GateKind::PhaseR || !op.control.has_value() || op.control->is_quantum()) {
                            throw Error(ErrorCode::InconsistentState, "non-diagonal op in MAC block: " + op.str());
                        }
                        if (bits[op.control->index]) {
                            state.apply_rotation(layout.logical_of(op.refs[0].index), op.m, op.adjoint);
                        }
                    }
                }
                run.trace.push_back(state.accumulators());
                break;
            }
            case Stage::QftDagger:
                if (!prepared) {
                    throw Error(ErrorCode::InconsistentState, "inverse QFT before register preparation");
                }
                run.result = state.decode();
                decoded = true;
                break;
            case Stage::Generic:
                throw Error(ErrorCode::InconsistentState, "untagged block in chain");
        }
    }
    if (!decoded) {
        throw Error(ErrorCode::InconsistentState, "chain has no inverse QFT stage");
    }
    return run;
}

std::string phase_run_to_json(const PhaseRun &run, bool verbose) {
    nlohmann::json j;
    j["result"] = run.result;
    if (verbose) {
        j["trace"] = run.trace;
    }
    return j.dump();
}

}  // namespace qmac
