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

#ifndef QMAC_COST_MODEL_H
#define QMAC_COST_MODEL_H

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qmac/mac_input.h"

namespace qmac {

struct StageDepth {
    std::string stage;
    uint64_t layers = 0;
    bool operator==(const StageDepth &) const = default;
};

struct DepthReport {
    QmacParams params;
    uint64_t measured_depth = 0;
    uint64_t measured_quantum_gates = 0;
    uint64_t measured_classical_gates = 0;
    uint64_t measured_qubits = 0;
    /// Measured layers per stage, in circuit order:
    /// preparation, fanout, mac_steps, fanout_inverse, qft_dagger.
    std::vector<StageDepth> breakdown;
    uint64_t predicted_depth = 0;
    std::vector<StageDepth> predicted_breakdown;
};

/// Closed-form depth of the (banded) QFT or inverse QFT built by the builder:
/// 1 for k = 1, 2 when the band keeps no rotations, else 2k.
uint64_t qft_depth(uint32_t k, uint32_t bandwidth);

/// Stage-by-stage closed-form prediction for the chain.
std::vector<StageDepth> predicted_breakdown(const QmacParams &params);

/// Builds the chain for `params` and measures it against the prediction.
DepthReport hybrid_depth(const QmacParams &params);

std::string depth_report_to_json(const DepthReport &report);

enum class AdderKind : uint8_t { Ripple, CarryLookahead };
enum class MultiplierKind : uint8_t { WallaceDadda };

std::string_view adder_kind_name(AdderKind kind);
AdderKind parse_adder_kind(std::string_view name);

/// Parametric classical MAC pipeline. Coefficients are model inputs, not
/// measured data: per step the depth is
///   multiplier_coeff * ceil(log2 k) + adder_coeff * (k or ceil(log2 k)),
/// where log terms are floored at 1.
struct ClassicalModel {
    AdderKind adder = AdderKind::CarryLookahead;
    MultiplierKind multiplier = MultiplierKind::WallaceDadda;
    uint32_t multiplier_coeff = 1;
    uint32_t adder_coeff = 1;

    void validate() const;
};

uint64_t classical_step_depth(const ClassicalModel &model, uint32_t k);
uint64_t classical_depth(const ClassicalModel &model, uint32_t k, uint64_t n);

struct Crossover {
    uint32_t k = 0;
    /// Chain depth with zero MAC steps.
    uint64_t hybrid_overhead = 0;
    /// Layers added by each extra MAC step (2).
    uint64_t hybrid_slope = 0;
    uint64_t classical_slope = 0;
    /// Smallest n with hybrid depth < classical depth, if found within the
    /// search bound.
    std::optional<uint64_t> n_star;
};

constexpr uint64_t kDefaultCrossoverBound = 1'000'000;

/// Throws NoCrossover when the classical per-step depth does not exceed the
/// hybrid slope.
Crossover crossover_for_step_depth(
    uint64_t classical_step, const QmacParams &params_template, uint32_t k, uint64_t bound = kDefaultCrossoverBound);

Crossover crossover(
    const ClassicalModel &model, const QmacParams &params_template, uint32_t k,
    uint64_t bound = kDefaultCrossoverBound);

struct SweepRow {
    uint32_t k = 0;
    uint32_t n = 0;
    Variant variant = Variant::Exact;
    uint64_t measured_depth = 0;
    uint64_t predicted_depth = 0;
    uint64_t classical_depth = 0;
    /// n* for this k, or empty when there is none (NoCrossover or beyond the
    /// bound); `crossover_note` says which.
    std::optional<uint64_t> crossover;
    std::string crossover_note;
};

std::vector<SweepRow> sweep(
    const ClassicalModel &model, Variant variant, std::optional<double> epsilon, uint32_t k_min, uint32_t k_max,
    uint32_t n_min, uint32_t n_max);

std::string sweep_to_csv(const std::vector<SweepRow> &rows);
std::string crossover_table_to_csv(const std::vector<Crossover> &rows, const std::vector<std::string> &notes);

}  // namespace qmac

#endif
