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

// qmac: build, simulate, verify and cost hybrid multiply-accumulate circuits.
//
// Exit codes: 0 success, 1 verification failure or backend mismatch,
// 2 usage error, 3 the dense backend cannot hold the circuit.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmac/builder.h"
#include "qmac/circuit_io.h"
#include "qmac/cost_model.h"
#include "qmac/dense_sim.h"
#include "qmac/error.h"
#include "qmac/mac_input.h"
#include "qmac/phase_sim.h"
#include "qmac/verify.h"

namespace {

using nlohmann::json;
using namespace qmac;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;
constexpr const char *kVersion = "0.1.0";

struct InputFlags {
    std::string k = "3";
    std::string n;
    std::string z = "0";
    std::vector<std::string> pairs;
    std::string variant = "exact";
    bool approx = false;
    std::optional<double> epsilon;
    bool is_signed = false;
    std::string input_file;
};

struct OutputFlags {
    std::string out;
    std::string format = "json";
};

struct ModelFlags {
    std::string adder = "carry_lookahead";
    uint32_t multiplier_coeff = 1;
    uint32_t adder_coeff = 1;
};

void add_input_flags(CLI::App *cmd, InputFlags &f) {
    cmd->add_option("--k", f.k, "Register width in bits (1..64)");
    cmd->add_option("--n", f.n, "Number of MAC steps (must match --pairs when given)");
    cmd->add_option("--z", f.z, "Initial accumulator");
    cmd->add_option("--pairs", f.pairs, "Multiplicand pairs as x,y (repeatable)");
    cmd->add_option("--variant", f.variant, "exact | approx")->check(CLI::IsMember({"exact", "approx"}));
    cmd->add_flag("--approx", f.approx, "Shorthand for --variant approx");
    cmd->add_option("--epsilon", f.epsilon, "Precision of the approximate inverse QFT");
    cmd->add_flag("--signed", f.is_signed, "Two's-complement operands and result");
    cmd->add_option("--input", f.input_file, "JSON MAC request {k, z, pairs, variant, epsilon?, signed?}");
}

void add_output_flags(CLI::App *cmd, OutputFlags &f, std::vector<std::string> formats) {
    cmd->add_option("--out", f.out, "Write output to this file instead of stdout");
    cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember(formats));
}

void add_model_flags(CLI::App *cmd, ModelFlags &f) {
    cmd->add_option("--adder", f.adder, "Classical adder: ripple | carry_lookahead")
        ->check(CLI::IsMember({"ripple", "carry_lookahead", "cla"}));
    cmd->add_option("--mult-coeff", f.multiplier_coeff, "Classical multiplier depth coefficient (>= 1)");
    cmd->add_option("--adder-coeff", f.adder_coeff, "Classical adder depth coefficient (>= 1)");
}

uint32_t parse_u32(const std::string &text, const char *what) {
    try {
        size_t used = 0;
        unsigned long v = std::stoul(text, &used);
        if (used != text.size() || v > UINT32_MAX) {
            throw std::invalid_argument(text);
        }
        return static_cast<uint32_t>(v);
    } catch (const std::exception &) {
        throw Error(ErrorCode::InvalidInput, std::string("bad value for ") + what + ": '" + text + "'");
    }
}

/// "a" or "a..b"
std::pair<uint32_t, uint32_t> parse_range(const std::string &text, const char *what) {
    auto dots = text.find("..");
    if (dots == std::string::npos) {
        uint32_t v = parse_u32(text, what);
        return {v, v};
    }
    return {parse_u32(text.substr(0, dots), what), parse_u32(text.substr(dots + 2), what)};
}

MacRequest request_from_flags(const InputFlags &f) {
    if (!f.input_file.empty()) {
        std::ifstream in(f.input_file);
        if (!in) {
            throw Error(ErrorCode::InvalidInput, "cannot read " + f.input_file);
        }
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_mac_request(ss.str());
    }
    MacRequest r;
    r.params.k = parse_u32(f.k, "--k");
    r.params.variant = f.approx ? Variant::Approximate : parse_variant(f.variant);
    r.params.epsilon = f.epsilon;
    r.params.validate();
    r.input.signed_mode = f.is_signed;
    const uint32_t k = r.params.k;
    r.input.z = parse_operand(f.z, k, f.is_signed);
    for (const auto &p : f.pairs) {
        auto comma = p.find(',');
        if (comma == std::string::npos) {
            throw Error(ErrorCode::InvalidInput, "pair '" + p + "' must look like x,y");
        }
        r.input.pairs.push_back(
            {parse_operand(p.substr(0, comma), k, f.is_signed), parse_operand(p.substr(comma + 1), k, f.is_signed)});
    }
    r.params.n = static_cast<uint32_t>(r.input.pairs.size());
    if (!f.n.empty() && parse_u32(f.n, "--n") != r.params.n) {
        throw Error(ErrorCode::InvalidInput, "--n does not match the number of --pairs");
    }
    return r;
}

ClassicalModel model_from_flags(const ModelFlags &f) {
    ClassicalModel m;
    m.adder = parse_adder_kind(f.adder);
    m.multiplier_coeff = f.multiplier_coeff;
    m.adder_coeff = f.adder_coeff;
    m.validate();
    return m;
}

json metadata(const std::string &command) {
    return {{"tool", "qmac"}, {"version", kVersion}, {"command", command}};
}

void emit(const OutputFlags &f, const std::string &payload) {
    if (f.out.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(f.out, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::InvalidInput, "cannot write " + f.out);
    }
    out << payload;
}

json value_json(uint64_t v, const MacRequest &r) {
    if (r.input.signed_mode) {
        return as_signed(v, r.params.k);
    }
    return v;
}

int cmd_build(const InputFlags &in, const OutputFlags &out) {
    MacRequest r = request_from_flags(in);
    QmacProgram prog = build_chain(r.params, r.input);
    emit(out, serialize_circuit(prog.circuit));
    return kExitOk;
}

int cmd_run(const InputFlags &in, const OutputFlags &out, const std::string &backend, bool verbose) {
    MacRequest r = request_from_flags(in);
    QmacProgram prog = build_chain(r.params, r.input);
    const uint64_t oracle = integer_mac(r.params.k, r.input.z, r.input.pairs);

    json report;
    report["metadata"] = metadata("run");
    report["request"] = json::parse(mac_request_to_json(r));
    report["qubits"] = prog.circuit.num_qubits();
    report["depth"] = prog.circuit.depth();
    report["integer_oracle"] = value_json(oracle, r);

    std::optional<uint64_t> dense_value;
    std::optional<uint64_t> phase_value;
    PhaseRun phase_run;
    DenseState dense_state;
    if (backend == "dense" || backend == "both") {
        DenseOptions opts;
        opts.max_qubits = dense_cap_from_env();
        dense_state = simulate_program(prog, opts);
        auto dist = measure_register(dense_state, prog.layout);
        dense_value = dist.at(0).value;
        json d;
        d["top"] = value_json(dist[0].value, r);
        d["probability"] = dist[0].probability;
        d["distribution"] = json::parse(distribution_to_json(dist));
        report["dense"] = std::move(d);
    }
    if (backend == "phase" || backend == "both") {
        phase_run = run_program(prog);
        phase_value = phase_run.result;
        report["phase"] = json::parse(phase_run_to_json(phase_run, verbose));
    }
    const uint64_t result = dense_value ? *dense_value : *phase_value;
    report["result"] = value_json(result, r);
    if (dense_value && phase_value) {
        const bool agree = *dense_value == *phase_value;
        report["agree"] = agree;
        if (!agree) {
            std::cerr << "BackendMismatch: dense " << *dense_value << " vs phase " << *phase_value << "\n";
            std::cerr << "dense state: " << state_to_json(dense_state) << "\n";
            std::cerr << "phase trace: " << phase_run_to_json(phase_run, true) << "\n";
            emit(out, report.dump(2) + "\n");
            return kExitFailure;
        }
    }
    emit(out, report.dump(2) + "\n");
    return kExitOk;
}

int cmd_verify(const std::vector<std::string> &suites, const std::string &mutate, uint64_t seed,
               const OutputFlags &out) {
    VerifyOptions opt;
    opt.drop_gate = mutate == "drop-gate";
    opt.seed = seed;
    opt.dense_cap = dense_cap_from_env();
    std::vector<SuiteResult> results;
    if (suites.empty()) {
        results = run_all_suites(opt);
    } else {
        for (const auto &s : suites) {
            results.push_back(run_suite(s, opt));
        }
    }
    bool ok = true;
    std::string text;
    json j;
    j["metadata"] = metadata("verify");
    j["mutate"] = mutate.empty() ? "none" : mutate;
    j["suites"] = json::array();
    for (const auto &r : results) {
        ok &= r.passed;
        text += std::string(r.passed ? "PASS " : "FAIL ") + r.name + ": " + r.detail + "\n";
        j["suites"].push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    }
    j["passed"] = ok;
    emit(out, out.format == "json" ? j.dump(2) + "\n" : text);
    return ok ? kExitOk : kExitFailure;
}

int cmd_sweep(const InputFlags &in, const ModelFlags &mf, const OutputFlags &out) {
    auto [k_min, k_max] = parse_range(in.k, "--k");
    auto [n_min, n_max] = parse_range(in.n.empty() ? std::string("1..8") : in.n, "--n");
    Variant v = in.approx ? Variant::Approximate : parse_variant(in.variant);
    auto rows = sweep(model_from_flags(mf), v, in.epsilon, k_min, k_max, n_min, n_max);
    if (out.format == "csv") {
        emit(out, sweep_to_csv(rows));
        return kExitOk;
    }
    json j;
    j["metadata"] = metadata("sweep");
    j["rows"] = json::array();
    for (const auto &r : rows) {
        j["rows"].push_back({{"k", r.k},
                             {"n", r.n},
                             {"variant", std::string(variant_name(r.variant))},
                             {"measured_depth", r.measured_depth},
                             {"predicted_depth", r.predicted_depth},
                             {"classical_depth", r.classical_depth},
                             {"crossover", r.crossover ? json(*r.crossover) : json(r.crossover_note)}});
    }
    emit(out, j.dump(2) + "\n");
    return kExitOk;
}

int cmd_crossover(const InputFlags &in, const ModelFlags &mf, const OutputFlags &out,
                  std::optional<uint64_t> classical_step, uint64_t bound) {
    auto [k_min, k_max] = parse_range(in.k, "--k");
    Variant v = in.approx ? Variant::Approximate : parse_variant(in.variant);
    ClassicalModel model = model_from_flags(mf);
    std::vector<Crossover> rows;
    std::vector<std::string> notes;
    for (uint32_t k = k_min; k <= k_max; k++) {
        QmacParams tmpl{k, 0, v, in.epsilon};
        uint64_t step = classical_step ? *classical_step : classical_step_depth(model, k);
        try {
            rows.push_back(crossover_for_step_depth(step, tmpl, k, bound));
            notes.push_back(rows.back().n_star ? "" : "beyond_bound");
        } catch (const Error &e) {
            if (e.code() != ErrorCode::NoCrossover) {
                throw;
            }
            QmacParams p = tmpl;
            Crossover c;
            c.k = k;
            c.hybrid_overhead = hybrid_depth(p).measured_depth;
            p.n = 1;
            c.hybrid_slope = hybrid_depth(p).measured_depth - c.hybrid_overhead;
            c.classical_slope = step;
            rows.push_back(c);
            notes.push_back("NoCrossover");
        }
    }
    if (out.format == "csv") {
        emit(out, crossover_table_to_csv(rows, notes));
        return kExitOk;
    }
    json j;
    j["metadata"] = metadata("crossover");
    j["rows"] = json::array();
    for (size_t i = 0; i < rows.size(); i++) {
        const auto &c = rows[i];
        j["rows"].push_back({{"k", c.k},
                             {"hybrid_overhead", c.hybrid_overhead},
                             {"hybrid_slope", c.hybrid_slope},
                             {"classical_slope", c.classical_slope},
                             {"crossover", c.n_star ? json(*c.n_star) : json(notes[i])}});
    }
    emit(out, j.dump(2) + "\n");
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Hybrid quantum-classical multiply-accumulate circuits"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    InputFlags build_in;
    OutputFlags build_out;
    auto *build = app.add_subcommand("build", "Emit the circuit for a MAC request as line-oriented JSON");
    add_input_flags(build, build_in);
    add_output_flags(build, build_out, {"json"});

    InputFlags run_in;
    OutputFlags run_out;
    std::string backend = "both";
    bool verbose = false;
    auto *run = app.add_subcommand("run", "Build and simulate a MAC chain");
    add_input_flags(run, run_in);
    add_output_flags(run, run_out, {"json"});
    run->add_option("--backend", backend, "dense | phase | both")->check(CLI::IsMember({"dense", "phase", "both"}));
    run->add_flag("--verbose", verbose, "Include per-step phase accumulators");

    std::vector<std::string> suites;
    std::string mutate;
    uint64_t seed = 12345;
    OutputFlags verify_out;
    auto *verify = app.add_subcommand("verify", "Run the verification suites");
    verify->add_option("--suite", suites, "Suite name (repeatable); default all")
        ->check(CLI::IsMember(suite_names()));
    verify->add_option("--mutate", mutate, "Fault injection mode")->check(CLI::IsMember({"drop-gate"}));
    verify->add_option("--seed", seed, "Seed for fault injection and sampled suites");
    add_output_flags(verify, verify_out, {"json", "text"});
    verify_out.format = "text";

    InputFlags sweep_in;
    sweep_in.k = "2..8";
    ModelFlags sweep_model;
    OutputFlags sweep_out;
    sweep_out.format = "csv";
    auto *sweep_cmd = app.add_subcommand("sweep", "Depth table over a (k, n) grid");
    sweep_cmd->add_option("--k", sweep_in.k, "Width or range a..b");
    sweep_cmd->add_option("--n", sweep_in.n, "Steps or range a..b (default 1..8)");
    sweep_cmd->add_option("--variant", sweep_in.variant, "exact | approx")->check(CLI::IsMember({"exact", "approx"}));
    sweep_cmd->add_flag("--approx", sweep_in.approx, "Shorthand for --variant approx");
    sweep_cmd->add_option("--epsilon", sweep_in.epsilon, "Precision for the approximate variant");
    add_model_flags(sweep_cmd, sweep_model);
    add_output_flags(sweep_cmd, sweep_out, {"csv", "json"});

    InputFlags cross_in;
    cross_in.k = "2..8";
    ModelFlags cross_model;
    OutputFlags cross_out;
    cross_out.format = "csv";
    std::optional<uint64_t> classical_step;
    uint64_t bound = kDefaultCrossoverBound;
    auto *cross = app.add_subcommand("crossover", "Smallest n where the hybrid chain is shallower");
    cross->add_option("--k", cross_in.k, "Width or range a..b");
    cross->add_option("--variant", cross_in.variant, "exact | approx")->check(CLI::IsMember({"exact", "approx"}));
    cross->add_flag("--approx", cross_in.approx, "Shorthand for --variant approx");
    cross->add_option("--epsilon", cross_in.epsilon, "Precision for the approximate variant");
    cross->add_option("--classical-step", classical_step, "Override the classical per-step depth");
    cross->add_option("--bound", bound, "Search bound on n");
    add_model_flags(cross, cross_model);
    add_output_flags(cross, cross_out, {"csv", "json"});

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*build) {
            return cmd_build(build_in, build_out);
        }
        if (*run) {
            return cmd_run(run_in, run_out, backend, verbose);
        }
        if (*verify) {
            return cmd_verify(suites, mutate, seed, verify_out);
        }
        if (*sweep_cmd) {
            return cmd_sweep(sweep_in, sweep_model, sweep_out);
        }
        if (*cross) {
            return cmd_crossover(cross_in, cross_model, cross_out, classical_step, bound);
        }
    } catch (const Error &e) {
        std::cerr << "qmac: " << e.what() << "\n";
        switch (e.code()) {
            case ErrorCode::TooWide:
                return kExitCapacity;
            case ErrorCode::InvalidInput:
            case ErrorCode::ParseError:
            case ErrorCode::OutOfRange:
                return kExitUsage;
            default:
                return kExitFailure;
        }
    }
    return kExitUsage;
}
