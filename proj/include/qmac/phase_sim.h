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

#ifndef QMAC_PHASE_SIM_H
#define QMAC_PHASE_SIM_H

#include <cstdint>
#include <string>
#include <vector>

#include "qmac/builder.h"
#include "qmac/layout.h"

namespace qmac {

/// Structured state of a register in the Fourier basis.
///
/// Logical qubit j carries |0> + exp(2 pi i a_j / 2^j)|1>, with a_j kept as an
/// exact integer mod 2^j. After fan-out every gate of the M block is diagonal
/// and acts on a copy of exactly one logical qubit, so adding to a_j is all a
/// rotation does. Fan-out itself is the identity here.
class PhaseState {
   public:
    /// The state QFT|z>: a_j = z mod 2^j. Throws OutOfRange if z >= 2^k.
    static PhaseState init_from(uint32_t k, uint64_t z);

    /// Arbitrary accumulators (not necessarily consistent). Throws OutOfRange
    /// if some a_j >= 2^j.
    static PhaseState from_accumulators(std::vector<uint64_t> accumulators);

    uint32_t k() const {
        return static_cast<uint32_t>(acc_.size());
    }
    uint64_t accumulator(uint32_t logical) const {
        return acc_[logical - 1];
    }
    const std::vector<uint64_t> &accumulators() const {
        return acc_;
    }

    /// R_m (or its adjoint) on some copy of logical qubit j: a_j += 2^{j-m}.
    /// Throws InconsistentState if m > j (the phase is not a multiple of
    /// 2 pi / 2^j).
    void apply_rotation(uint32_t logical, uint32_t m, bool adjoint = false);

    /// Returns a_k. Throws InconsistentState unless a_j = a_k mod 2^j for all j.
    uint64_t decode() const;

    bool operator==(const PhaseState &) const = default;

   private:
    std::vector<uint64_t> acc_;
};

/// One M block applied rotation by rotation over the layout's gate sites.
PhaseState apply_mac_step(PhaseState state, const QubitLayout &layout, uint64_t x, uint64_t y);

/// Closed form of the same step: a_j <- (a_j + (y mod 2^j) * x) mod 2^j.
PhaseState apply_mac_step_closed_form(PhaseState state, uint64_t x, uint64_t y);

/// Chain result computed with apply_mac_step; no circuit is built.
uint64_t run_mac_chain(const QubitLayout &layout, uint64_t z, const std::vector<MacPair> &pairs);

struct PhaseRun {
    uint64_t result = 0;
    /// Accumulators after the register is prepared and after each M block.
    std::vector<std::vector<uint64_t>> trace;
};

/// Interprets a built chain block by block: the preparation stage seeds the
/// accumulators, fan-out stages are skipped, MAC stages execute their AND
/// layer and classically controlled rotations, and the final inverse QFT
/// decodes.
PhaseRun run_program(const QmacProgram &program);

std::string phase_run_to_json(const PhaseRun &run, bool verbose);

}  // namespace qmac

#endif
