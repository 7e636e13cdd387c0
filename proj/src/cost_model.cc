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

#include "qmac/cost_model.h"

#include <algorithm>

#include <json.hpp>

#include "qmac/builder.h"
#include "qmac/error.h"
#include "qmac/layout.h"

namespace qmac {

namespace {

uint32_t num_m_blocks(const QmacParams &params) {
    return params.variant == Variant::Exact ? params.n : params.n + 1;
}

uint32_t final_bandwidth(const QmacParams &params) {
    return params.variant == Variant::Exact ? params.k : approx_bandwidth(params.k, *params.epsilon);
}

std::string breakdown_key(Stage stage) {
    switch (stage) {
        case Stage::Qft:
        case Stage::HadamardInit:
            return "preparation";
        case Stage::FanOut:
            return "fanout";
        case Stage::MacStep:
            return "mac_steps";
        case Stage::FanOutInverse:
            return "fanout_inverse";
        case Stage::QftDagger:
            return "qft_dagger";
        case Stage::Generic:
            return "other";
    }
    return "other";
}

uint64_t log_term(uint32_t k) {
    return std::max<uint64_t>(1, ceil_log2(k));
}

}  // namespace

uint64_t qft_depth(uint32_t k, uint32_t bandwidth) {
    if (k == 1) {
        return 1;
    }
    if (bandwidth < 2) {
        return 2;
    }
    return 2 * uint64_t{k};
}

std::vector<StageDepth> predicted_breakdown(const QmacParams &params) {
    params.validate();
    const uint32_t k = params.k;
    return {
        {"preparation", params.variant == Variant::Exact ? qft_depth(k, k) : 1},
        {"fanout", fanout_depth(k)},
        {"mac_steps", 2 * uint64_t{num_m_blocks(params)}},
        {"fanout_inverse", fanout_depth(k)},
        {"qft_dagger", qft_depth(k, final_bandwidth(params))},
    };
}

DepthReport hybrid_depth(const QmacParams &params) {
    params.validate();
    QubitLayout layout = QubitLayout::canonical(params.k);
    HybridCircuit circuit = build_chain_circuit(params, layout, num_m_blocks(params));
    CircuitMetrics m = metrics(circuit);

    DepthReport r;
    r.params = params;
    r.measured_depth = m.depth;
    r.measured_quantum_gates = m.quantum_gate_count;
    r.measured_classical_gates = m.classical_gate_count;
    r.measured_qubits = m.qubit_count;
    for (const char *key : {"preparation", "fanout", "mac_steps", "fanout_inverse", "qft_dagger"}) {
        r.breakdown.push_back({key, 0});
    }
    for (const auto &b : circuit.blocks()) {
        std::string key = breakdown_key(b.stage);
        auto it = std::find_if(r.breakdown.begin(), r.breakdown.end(), [&](const StageDepth &s) {
            return s.stage == key;
        });
        if (it == r.breakdown.end()) {
            r.breakdown.push_back({key, b.num_layers});
        } else {
            it->layers += b.num_layers;
        }
    }
    r.predicted_breakdown = predicted_breakdown(params);
    for (const auto &s : r.predicted_breakdown) {
        r.predicted_depth += s.layers;
    }
    return r;
}

std::string depth_report_to_json(const DepthReport &report) {
    nlohmann::json j;
    j["k"] = report.params.k;
    j["n"] = report.params.n;
    j["variant"] = std::string(variant_name(report.params.variant));
    if (report.params.epsilon.has_value()) {
        j["epsilon"] = *report.params.epsilon;
    }
    j["measured_depth"] = report.measured_depth;
    j["predicted_depth"] = report.predicted_depth;
    j["measured_quantum_gates"] = report.measured_quantum_gates;
    j["measured_classical_gates"] = report.measured_classical_gates;
    j["measured_qubits"] = report.measured_qubits;
    auto stages = [](const std::vector<StageDepth> &v) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto &s : v) {
            a.push_back({{"stage", s.stage}, {"layers", s.layers}});
        }
        return a;
    };
    j["breakdown"] = stages(report.breakdown);
    j["predicted_breakdown"] = stages(report.predicted_breakdown);
    return j.dump();
}

std::string_view adder_kind_name(AdderKind kind) {
    return kind == AdderKind::Ripple ? "ripple" : "carry_lookahead";
}

AdderKind parse_adder_kind(std::string_view name) {
    if (name == "ripple") {
        return AdderKind::Ripple;
    }
    if (name == "carry_lookahead" || name == "cla") {
        return AdderKind::CarryLookahead;
    }
    throw Error(ErrorCode::InvalidInput, "unknown adder kind '" + std::string(name) + "'");
}

void ClassicalModel::validate() const {
    if (multiplier_coeff < 1 || adder_coeff < 1) {
        throw Error(ErrorCode::InvalidInput, "classical model coefficients must be >= 1");
    }
}

uint64_t classical_step_depth(const ClassicalModel &model, uint32_t k) {
    model.validate();
    if (k < 1) {
        throw Error(ErrorCode::InvalidInput, "k must be >= 1");
    }
    uint64_t mult = uint64_t{model.multiplier_coeff} * log_term(k);
    uint64_t add = model.adder == AdderKind::Ripple ? uint64_t{model.adder_coeff} * k
                                                    : uint64_t{model.adder_coeff} * log_term(k);
    return mult + add;
}

uint64_t classical_depth(const ClassicalModel &model, uint32_t k, uint64_t n) {
    return n * classical_step_depth(model, k);
}

Crossover crossover_for_step_depth(
    uint64_t classical_step, const QmacParams &params_template, uint32_t k, uint64_t bound) {
    QmacParams p = params_template;
    p.k = k;
    p.n = 0;
    const uint64_t d0 = hybrid_depth(p).measured_depth;
    p.n = 1;
    const uint64_t d1 = hybrid_depth(p).measured_depth;

    Crossover c;
    c.k = k;
    c.hybrid_overhead = d0;
    c.hybrid_slope = d1 - d0;
    c.classical_slope = classical_step;
    if (classical_step <= c.hybrid_slope) {
        throw Error(
            ErrorCode::NoCrossover, "classical per-step depth " + std::to_string(classical_step) +
                                        " does not exceed the hybrid per-step depth " + std::to_string(c.hybrid_slope));
    }
    for (uint64_t n = 1; n <= bound; n++) {
        if (d0 + c.hybrid_slope * n < classical_step * n) {
            c.n_star = n;
            break;
        }
    }
    return c;
}

Crossover crossover(const ClassicalModel &model, const QmacParams &params_template, uint32_t k, uint64_t bound) {
    return crossover_for_step_depth(classical_step_depth(model, k), params_template, k, bound);
}

std::vector<SweepRow> sweep(
    const ClassicalModel &model, Variant variant, std::optional<double> epsilon, uint32_t k_min, uint32_t k_max,
    uint32_t n_min, uint32_t n_max) {
    if (k_min > k_max || n_min > n_max) {
        throw Error(ErrorCode::InvalidInput, "empty sweep range");
    }
    std::vector<SweepRow> rows;
    for (uint32_t k = k_min; k <= k_max; k++) {
        QmacParams tmpl{k, 0, variant, epsilon};
        std::optional<uint64_t> n_star;
        std::string note;
        try {
            Crossover c = crossover(model, tmpl, k);
            n_star = c.n_star;
            note = n_star ? "" : "beyond_bound";
        } catch (const Error &e) {
            if (e.code() != ErrorCode::NoCrossover) {
                throw;
            }
            note = "NoCrossover";
        }
        for (uint32_t n = n_min; n <= n_max; n++) {
            DepthReport r = hybrid_depth(QmacParams{k, n, variant, epsilon});
            rows.push_back(SweepRow{
                k, n, variant, r.measured_depth, r.predicted_depth, classical_depth(model, k, n), n_star, note});
        }
    }
    return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow> &rows) {
    std::string out = "k,n,variant,measured_depth,predicted_depth,classical_depth,crossover\n";
    for (const auto &r : rows) {
        out += std::to_string(r.k) + "," + std::to_string(r.n) + "," + std::string(variant_name(r.variant)) + "," +
               std::to_string(r.measured_depth) + "," + std::to_string(r.predicted_depth) + "," +
               std::to_string(r.classical_depth) + "," +
               (r.crossover ? std::to_string(*r.crossover) : r.crossover_note) + "\n";
    }
    return out;
}

std::string crossover_table_to_csv(const std::vector<Crossover> &rows, const std::vector<std::string> &notes) {
    std::string out = "k,hybrid_overhead,hybrid_slope,classical_slope,crossover\n";
    for (size_t i = 0; i < rows.size(); i++) {
        const auto &c = rows[i];
        std::string cell = c.n_star ? std::to_string(*c.n_star) : (i < notes.size() ? notes[i] : "beyond_bound");
        out += std::to_string(c.k) + "," + std::to_string(c.hybrid_overhead) + "," + std::to_string(c.hybrid_slope) +
               "," + std::to_string(c.classical_slope) + "," + cell + "\n";
    }
    return out;
}

}  // namespace qmac
