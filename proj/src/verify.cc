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

#include "qmac/verify.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "qmac/builder.h"
#include "qmac/cost_model.h"
#include "qmac/dense_sim.h"
#include "qmac/error.h"
#include "qmac/phase_sim.h"

namespace qmac {

namespace {

// Returns an empty string on success, otherwise what went wrong.
std::string check_exact_case(const QmacParams &params, const MacInput &input, const QubitLayout &layout,
                             bool use_dense, const DenseOptions &dense) {
    const uint64_t expected = integer_mac(params.k, input.z, input.pairs);
    QmacProgram prog = build_chain(params, input, layout);
    if (use_dense) {
        auto dist = measure_register(simulate_program(prog, dense), layout);
        if (dist.empty() || dist[0].value != expected || std::abs(dist[0].probability - 1.0) > kNormTolerance) {
            if (dist.empty()) {
                return "dense produced no outcome, expected " + std::to_string(expected);
            }
            return "dense top outcome " + std::to_string(dist[0].value) + " with p=" +
                   std::to_string(dist[0].probability) + ", expected " + std::to_string(expected) + " with p=1";
        }
    }
    try {
        uint64_t got = run_program(prog).result;
        if (got != expected) {
            return "phase result " + std::to_string(got) + " vs " + std::to_string(expected);
        }
    } catch (const Error &e) {
        return std::string("phase sim: ") + e.what();
    }
    return {};
}

std::string describe(uint32_t k, const MacInput &in) {
    std::string s = "k=" + std::to_string(k) + " z=" + std::to_string(in.z);
    for (const auto &p : in.pairs) {
        s += " (" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
    }
    return s;
}

SuiteResult exhaustive(const VerifyOptions &opt) {
    DenseOptions dense{opt.dense_cap, true};
    size_t cases = 0;
    for (uint32_t k = 1; k <= 3; k++) {
        QubitLayout layout = verification_layout(k, opt);
        uint64_t limit = uint64_t{1} << k;
        for (uint64_t z = 0; z < limit; z++) {
            for (uint64_t x = 0; x < limit; x++) {
                for (uint64_t y = 0; y < limit; y++) {
                    MacInput in{z, {{x, y}}, false};
                    std::string err = check_exact_case({k, 1, Variant::Exact, {}}, in, layout, true, dense);
                    cases++;
                    if (!err.empty()) {
                        return {"exhaustive", false, describe(k, in) + ": " + err};
                    }
                }
            }
        }
    }
    return {"exhaustive", true, std::to_string(cases) + " single-step cases, k=1..3, dense and phase agree"};
}

SuiteResult sampled(const VerifyOptions &opt) {
    std::mt19937_64 rng(opt.seed);
    DenseOptions dense{opt.dense_cap, true};
    size_t cases = 0;
    for (uint32_t k : {4u, 8u, 16u, 32u, 64u}) {
        QubitLayout layout = verification_layout(k, opt);
        const bool use_dense = layout.num_qubits() <= opt.dense_cap;
        const size_t count = use_dense ? 5 : 100;
        for (size_t c = 0; c < count; c++) {
            MacInput in;
            in.z = rng() & register_mask(k);
            size_t n = use_dense ? 1 + rng() % 3 : rng() % 33;
            for (size_t i = 0; i < n; i++) {
                in.pairs.push_back({rng() & register_mask(k), rng() & register_mask(k)});
            }
            uint64_t expected = integer_mac(k, in.z, in.pairs);
            std::string err;
            if (use_dense) {
                err = check_exact_case({k, static_cast<uint32_t>(n), Variant::Exact, {}}, in, layout, true, dense);
            } else {
                uint64_t got = run_mac_chain(layout, in.z, in.pairs);
                if (got != expected) {
                    err = "phase result " + std::to_string(got) + " vs " + std::to_string(expected);
                }
            }
            cases++;
            if (!err.empty()) {
                return {"sampled", false, describe(k, in) + ": " + err};
            }
        }
    }
    return {"sampled", true, std::to_string(cases) + " random multi-step cases"};
}

SuiteResult lemma1(const VerifyOptions &) {
    for (uint32_t k = 1; k <= 8; k++) {
        QubitLayout layout = QubitLayout::canonical(k);
        ClassicalLayout bits{k, 1, static_cast<uint32_t>(layout.sites().size())};
        HybridCircuit m = build_m_block(layout, bits, 0);
        const auto &layers = m.layers();
        bool and_layer =
            layers.size() == 2 && std::all_of(layers[0].ops.begin(), layers[0].ops.end(), [](const GateOp &op) {
                return op.kind == GateKind::ClassicalAND;
            });
        bool r_layer = layers.size() == 2 && std::all_of(layers[1].ops.begin(), layers[1].ops.end(), [](const GateOp &op) {
                           return op.kind == GateKind::PhaseR;
                       });
        if (m.depth() != 2 || !and_layer || !r_layer) {
            return {"lemma1", false, "k=" + std::to_string(k) + ": M block depth " + std::to_string(m.depth())};
        }
    }
    return {"lemma1", true, "M block depth == 2 (AND layer + R layer) for k = 1..8"};
}

SuiteResult lemma2(const VerifyOptions &) {
    for (uint32_t k = 1; k <= 10; k++) {
        QubitLayout layout = QubitLayout::canonical(k);
        ClassicalLayout bits{k, 1, static_cast<uint32_t>(layout.sites().size())};
        auto m = metrics(build_m_block(layout, bits, 0));
        if (m.quantum_gate_count != tetrahedral(k) || m.qubit_count != tetrahedral(k)) {
            return {"lemma2", false, "k=" + std::to_string(k) + ": " + std::to_string(m.quantum_gate_count) + " gates"};
        }
    }
    return {"lemma2", true, "M block gate count == k(k+1)(k+2)/6 for k = 1..10"};
}

SuiteResult theorem1(const VerifyOptions &) {
    for (Variant v : {Variant::Exact, Variant::Approximate}) {
        for (uint32_t k = 1; k <= 8; k++) {
            uint64_t prev = 0;
            for (uint32_t n = 0; n <= 16; n++) {
                std::optional<double> eps;
                if (v == Variant::Approximate) {
                    eps = 1e-3;
                }
                DepthReport r = hybrid_depth({k, n, v, eps});
                std::string where = std::string(variant_name(v)) + " k=" + std::to_string(k) + " n=" + std::to_string(n);
                if (r.measured_depth != r.predicted_depth || r.breakdown != r.predicted_breakdown) {
                    return {"theorem1", false, where + ": measured " + std::to_string(r.measured_depth) +
                                                   " predicted " + std::to_string(r.predicted_depth)};
                }
                if (n > 0 && r.measured_depth - prev != 2) {
                    return {"theorem1", false, where + ": slope " + std::to_string(r.measured_depth - prev)};
                }
                prev = r.measured_depth;
            }
        }
    }
    return {"theorem1", true, "measured == closed-form depth and slope 2 for k <= 8, n <= 16, both variants"};
}

SuiteResult qft(const VerifyOptions &) {
    for (uint32_t k = 1; k <= 4; k++) {
        auto u = unitary_of(build_qft(k));
        auto ud = unitary_of(build_qft_dagger(k));
        const auto dim = u.rows();
        double err = (ud * u - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
        Eigen::MatrixXcd dft(dim, dim);
        for (Eigen::Index s = 0; s < dim; s++) {
            for (Eigen::Index t = 0; t < dim; t++) {
                dft(t, s) = std::polar(1.0 / std::sqrt(static_cast<double>(dim)),
                                       2.0 * std::numbers::pi * static_cast<double>(s * t) / static_cast<double>(dim));
            }
        }
        double dft_err = (u - dft).cwiseAbs().maxCoeff();
        if (err > 1e-9 || dft_err > 1e-9) {
            return {"qft", false, "k=" + std::to_string(k) + ": unitarity error " + std::to_string(err)};
        }
    }
    return {"qft", true, "QFT equals the DFT matrix and QFT' QFT = I for k <= 4"};
}

SuiteResult epsilon(const VerifyOptions &) {
    for (double eps : {1e-2, 1e-4}) {
        for (uint32_t k = 1; k <= 8; k++) {
            double d = operator_distance(unitary_of(build_approx_qft_dagger(k, eps)), unitary_of(build_qft_dagger(k)));
            if (d > eps) {
                return {"epsilon", false, "k=" + std::to_string(k) + " distance " + std::to_string(d)};
            }
        }
    }
    return {"epsilon", true, "banded inverse QFT within epsilon of exact for k <= 8, eps in {1e-2, 1e-4}"};
}

SuiteResult fanout(const VerifyOptions &) {
    for (uint32_t k = 1; k <= 3; k++) {
        QubitLayout layout = QubitLayout::canonical(k);
        auto ff = unitary_of(compose(build_fanout(layout), build_fanout_inverse(layout)));
        const auto dim = ff.rows();
        if ((ff - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-12) {
            return {"fanout", false, "F F' != I at k=" + std::to_string(k)};
        }
        ClassicalLayout bits{k, 2, static_cast<uint32_t>(layout.sites().size())};
        HybridCircuit fmf1 = compose(compose(build_fanout(layout, bits.num_bits()), build_m_block(layout, bits, 0)),
                                     build_fanout_inverse(layout, bits.num_bits()));
        HybridCircuit fmf2 = compose(compose(build_fanout(layout, bits.num_bits()), build_m_block(layout, bits, 1)),
                                     build_fanout_inverse(layout, bits.num_bits()));
        HybridCircuit chained = compose(fmf1, fmf2);
        HybridCircuit cancelled = cancel_adjacent_fanouts(chained);
        if (cancelled.depth() + 2 * fanout_depth(k) != chained.depth()) {
            return {"fanout", false, "cancellation removed the wrong layers at k=" + std::to_string(k)};
        }
        std::mt19937_64 rng(k);
        for (int trial = 0; trial < 4; trial++) {
            std::vector<uint8_t> cbits(bits.num_bits(), 0);
            for (uint32_t i = 0; i < 4 * k; i++) {
                cbits[i] = rng() & 1;
            }
            for (uint64_t basis = 0; basis < (uint64_t{1} << layout.num_qubits()); basis++) {
                auto a = simulate(chained, DenseState::basis(layout.num_qubits(), basis, cbits));
                auto b = simulate(cancelled, DenseState::basis(layout.num_qubits(), basis, cbits));
                for (size_t i = 0; i < a.amplitudes.size(); i++) {
                    if (std::abs(a.amplitudes[i] - b.amplitudes[i]) > 1e-12) {
                        return {"fanout", false, "(FMF')(FMF') != FMMF' at k=" + std::to_string(k)};
                    }
                }
            }
        }
    }
    return {"fanout", true, "F F' = I and (FMF')(FMF') = FMMF' on every basis state, k <= 3"};
}

}  // namespace

QubitLayout verification_layout(uint32_t k, const VerifyOptions &options) {
    QubitLayout layout = QubitLayout::canonical(k);
    if (!options.drop_gate) {
        return layout;
    }
    std::mt19937_64 rng(options.seed ^ (uint64_t{k} * 0x9E3779B97F4A7C15ull));
    return layout.without_site(rng() % layout.sites().size());
}

const std::vector<std::string> &suite_names() {
    static const std::vector<std::string> names = {
        "exhaustive", "sampled", "lemma1", "lemma2", "theorem1", "qft", "epsilon", "fanout",
    };
    return names;
}

SuiteResult run_suite(std::string_view name, const VerifyOptions &options) {
    if (name == "exhaustive") return exhaustive(options);
    if (name == "sampled") return sampled(options);
    if (name == "lemma1") return lemma1(options);
    if (name == "lemma2") return lemma2(options);
    if (name == "theorem1") return theorem1(options);
    if (name == "qft") return qft(options);
    if (name == "epsilon") return epsilon(options);
    if (name == "fanout") return fanout(options);
    throw Error(ErrorCode::InvalidInput, "unknown suite '" + std::string(name) + "'");
}

std::vector<SuiteResult> run_all_suites(const VerifyOptions &options) {
    std::vector<SuiteResult> out;
    for (const auto &name : suite_names()) {
        out.push_back(run_suite(name, options));
    }
    return out;
}

}  // namespace qmac
