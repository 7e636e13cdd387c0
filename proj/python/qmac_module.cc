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


#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qmac/builder.h"
#include "qmac/circuit_io.h"
#include "qmac/cost_model.h"
#include "qmac/dense_sim.h"
#include "qmac/error.h"
#include "qmac/mac_input.h"
#include "qmac/phase_sim.h"
#include "qmac/verify.h"

namespace py = pybind11;
using namespace qmac;

namespace {

using PairList = std::vector<std::pair<int64_t, int64_t>>;

MacRequest make_request(uint32_t k, int64_t z, const PairList &pairs, const std::string &variant,
                        std::optional<double> epsilon, bool signed_mode) {
    MacRequest r;
    r.params.k = k;
    r.params.variant = parse_variant(variant);
    r.params.epsilon = epsilon;
    r.params.validate();
    r.input.signed_mode = signed_mode;
    r.input.z = encode_operand(z, k, signed_mode);
    for (const auto &[x, y] : pairs) {
        r.input.pairs.push_back({encode_operand(x, k, signed_mode), encode_operand(y, k, signed_mode)});
    }
    r.params.n = static_cast<uint32_t>(r.input.pairs.size());
    return r;
}

py::object as_user_value(uint64_t v, const MacRequest &r) {
    if (r.input.signed_mode) {
        return py::int_(as_signed(v, r.params.k));
    }
    return py::int_(v);
}

py::dict run(uint32_t k, int64_t z, const PairList &pairs, const std::string &variant, std::optional<double> epsilon,
             const std::string &backend, bool signed_mode) {
    if (backend != "dense" && backend != "phase" && backend != "both") {
        throw Error(ErrorCode::InvalidInput, "backend must be dense, phase or both");
    }
    MacRequest r = make_request(k, z, pairs, variant, epsilon, signed_mode);
    QmacProgram prog = build_chain(r.params, r.input);
    py::dict out;
    out["depth"] = prog.circuit.depth();
    out["qubits"] = prog.circuit.num_qubits();
    std::optional<uint64_t> dense_value, phase_value;
    if (backend != "phase") {
        DenseOptions opts;
        opts.max_qubits = dense_cap_from_env();
        auto dist = measure_register(simulate_program(prog, opts), prog.layout);
        dense_value = dist.at(0).value;
        py::list d;
        for (const auto &o : dist) {
            d.append(py::make_tuple(as_user_value(o.value, r), o.probability));
        }
        out["distribution"] = d;
        out["probability"] = dist[0].probability;
    }
    if (backend != "dense") {
        PhaseRun pr = run_program(prog);
        phase_value = pr.result;
        out["trace"] = pr.trace;
    }
    if (dense_value && phase_value && *dense_value != *phase_value) {
        throw Error(ErrorCode::BackendMismatch, "dense " + std::to_string(*dense_value) + " vs phase " +
                                                    std::to_string(*phase_value));
    }
    out["result"] = as_user_value(dense_value ? *dense_value : *phase_value, r);
    return out;
}

}  // namespace

PYBIND11_MODULE(qmac, m) {
    m.doc() = "Hybrid quantum-classical multiply-accumulate circuits";

    static PyObject *error_type = PyErr_NewException("qmac.QmacError", PyExc_RuntimeError, nullptr);
    m.attr("QmacError") = py::handle(error_type);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const Error &e) {
            py::tuple args = py::make_tuple(std::string(error_code_name(e.code())), std::string(e.what()));
            PyErr_SetObject(error_type, args.ptr());
        }
    });

    m.def("integer_mac",
          [](uint32_t k, uint64_t z, const std::vector<std::pair<uint64_t, uint64_t>> &pairs) {
              std::vector<MacPair> p;
              for (const auto &[x, y] : pairs) {
                  p.push_back({x, y});
              }
              return integer_mac(k, z, p);
          },
          py::arg("k"), py::arg("z"), py::arg("pairs"), "(z + sum x*y) mod 2^k");

    m.def("run", &run, py::arg("k"), py::arg("z"), py::arg("pairs"), py::arg("variant") = "exact",
          py::arg("epsilon") = py::none(), py::arg("backend") = "both", py::arg("signed") = false,
          "Build a MAC chain and simulate it. Returns a dict with result, depth, qubits and backend details.");

    m.def("build",
          [](uint32_t k, int64_t z, const PairList &pairs, const std::string &variant, std::optional<double> epsilon,
             bool signed_mode) {
              MacRequest r = make_request(k, z, pairs, variant, epsilon, signed_mode);
              return serialize_circuit(build_chain(r.params, r.input).circuit);
          },
          py::arg("k"), py::arg("z"), py::arg("pairs"), py::arg("variant") = "exact", py::arg("epsilon") = py::none(),
          py::arg("signed") = false, "Serialized circuit (line-oriented JSON).");

    m.def("circuit_metrics",
          [](const std::string &text) {
              CircuitMetrics c = metrics(parse_circuit(text));
              py::dict d;
              d["depth"] = c.depth;
              d["quantum_gates"] = c.quantum_gate_count;
              d["classical_gates"] = c.classical_gate_count;
              d["qubits"] = c.qubit_count;
              return d;
          },
          py::arg("circuit"));

    m.def("phase_chain",
          [](uint32_t k, uint64_t z, const std::vector<std::pair<uint64_t, uint64_t>> &pairs) {
              std::vector<MacPair> p;
              for (const auto &[x, y] : pairs) {
                  p.push_back({x, y});
              }
              return run_mac_chain(QubitLayout::canonical(k), z, p);
          },
          py::arg("k"), py::arg("z"), py::arg("pairs"), "Structured phase simulation of an exact chain.");

    m.def("hybrid_depth",
          [](uint32_t k, uint32_t n, const std::string &variant, std::optional<double> epsilon) {
              DepthReport r = hybrid_depth({k, n, parse_variant(variant), epsilon});
              py::dict d;
              d["measured_depth"] = r.measured_depth;
              d["predicted_depth"] = r.predicted_depth;
              d["quantum_gates"] = r.measured_quantum_gates;
              d["classical_gates"] = r.measured_classical_gates;
              d["qubits"] = r.measured_qubits;
              py::dict b;
              for (const auto &s : r.breakdown) {
                  b[py::str(s.stage)] = s.layers;
              }
              d["breakdown"] = b;
              return d;
          },
          py::arg("k"), py::arg("n"), py::arg("variant") = "exact", py::arg("epsilon") = py::none());

    m.def("classical_depth",
          [](uint32_t k, uint64_t n, const std::string &adder, uint32_t mult_coeff, uint32_t adder_coeff) {
              return classical_depth({parse_adder_kind(adder), MultiplierKind::WallaceDadda, mult_coeff, adder_coeff},
                                     k, n);
          },
          py::arg("k"), py::arg("n"), py::arg("adder") = "carry_lookahead", py::arg("mult_coeff") = 1,
          py::arg("adder_coeff") = 1);

    m.def("crossover",
          [](uint32_t k, uint64_t classical_step, const std::string &variant, std::optional<double> epsilon,
             uint64_t bound) -> std::optional<uint64_t> {
              return crossover_for_step_depth(classical_step, {k, 0, parse_variant(variant), epsilon}, k, bound)
                  .n_star;
          },
          py::arg("k"), py::arg("classical_step"), py::arg("variant") = "exact", py::arg("epsilon") = py::none(),
          py::arg("bound") = kDefaultCrossoverBound,
          "Smallest n where the hybrid chain is shallower, None beyond the bound. Raises on NoCrossover.");

    m.def("sweep_csv",
          [](uint32_t k_min, uint32_t k_max, uint32_t n_min, uint32_t n_max, const std::string &variant,
             std::optional<double> epsilon, const std::string &adder) {
              ClassicalModel model;
              model.adder = parse_adder_kind(adder);
              return sweep_to_csv(sweep(model, parse_variant(variant), epsilon, k_min, k_max, n_min, n_max));
          },
          py::arg("k_min"), py::arg("k_max"), py::arg("n_min"), py::arg("n_max"), py::arg("variant") = "exact",
          py::arg("epsilon") = py::none(), py::arg("adder") = "carry_lookahead");

    m.def("qft_dagger_distance",
          [](uint32_t k, double epsilon) {
              return operator_distance(unitary_of(build_approx_qft_dagger(k, epsilon)),
                                       unitary_of(build_qft_dagger(k)));
          },
          py::arg("k"), py::arg("epsilon"), "Spectral-norm distance between banded and exact inverse QFT.");

    m.def("verify",
          [](std::optional<std::string> suite, bool drop_gate, uint64_t seed) {
              VerifyOptions opt;
              opt.drop_gate = drop_gate;
              opt.seed = seed;
              opt.dense_cap = dense_cap_from_env();
              std::vector<SuiteResult> results;
              if (suite) {
                  results.push_back(run_suite(*suite, opt));
              } else {
                  results = run_all_suites(opt);
              }
              py::list out;
              for (const auto &r : results) {
                  out.append(py::make_tuple(r.name, r.passed, r.detail));
              }
              return out;
          },
          py::arg("suite") = py::none(), py::arg("drop_gate") = false, py::arg("seed") = 12345);

    m.attr("suite_names") = suite_names();
}
