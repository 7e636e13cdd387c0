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

#include "qmac/circuit_io.h"

#include <charconv>
#include <vector>

#include <json.hpp>

#include "qmac/error.h"

namespace qmac {

namespace {

using nlohmann::json;

constexpr std::string_view kFormat = "qmac-circuit";
constexpr int kVersion = 1;

BitRef parse_ref(const json &j) {
    if (!j.is_string()) {
        throw Error(ErrorCode::ParseError, "bit reference must be a string like \"q3\" or \"c0\"");
    }
    const std::string &s = j.get_ref<const std::string &>();
    if (s.size() < 2 || (s[0] != 'q' && s[0] != 'c')) {
        throw Error(ErrorCode::ParseError, "bad bit reference '" + s + "'");
    }
    uint32_t index = 0;
    auto [ptr, ec] = std::from_chars(s.data() + 1, s.data() + s.size(), index);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw Error(ErrorCode::ParseError, "bad bit reference '" + s + "'");
    }
    return s[0] == 'q' ? BitRef::qubit(index) : BitRef::bit(index);
}

GateKind parse_kind(const std::string &name) {
    for (GateKind k : {GateKind::PhaseR, GateKind::CNOT, GateKind::Hadamard, GateKind::Swap, GateKind::ClassicalAND}) {
        if (gate_kind_name(k) == name) {
            return k;
        }
    }
    throw Error(ErrorCode::ParseError, "unknown gate kind '" + name + "'");
}

json op_to_json(const GateOp &op) {
    json j;
    j["kind"] = std::string(gate_kind_name(op.kind));
    if (op.kind == GateKind::PhaseR) {
        j["m"] = op.m;
        if (op.adjoint) {
            j["adjoint"] = true;
        }
    }
    json targets = json::array();
    for (const auto &r : op.targets()) {
        targets.push_back(r.str());
    }
    j["targets"] = std::move(targets);
    if (op.control.has_value()) {
        j["control"] = op.control->str();
    }
    return j;
}

GateOp op_from_json(const json &j) {
    if (!j.is_object()) {
        throw Error(ErrorCode::ParseError, "op must be an object");
    }
    GateOp op;
    op.kind = parse_kind(j.at("kind").get<std::string>());
    const auto &targets = j.at("targets");
    if (!targets.is_array() || targets.size() > op.refs.size()) {
        throw Error(ErrorCode::ParseError, "targets must be an array of at most 3 refs");
    }
    for (size_t i = 0; i < targets.size(); i++) {
        op.refs[i] = parse_ref(targets[i]);
    }
    op.arity = static_cast<uint8_t>(targets.size());
    if (op.kind == GateKind::PhaseR) {
        op.m = j.at("m").get<uint32_t>();
        op.adjoint = j.value("adjoint", false);
    } else if (j.contains("m") || j.contains("adjoint")) {
        throw Error(ErrorCode::ParseError, "only R ops carry m/adjoint");
    }
    if (j.contains("control")) {
        op.control = parse_ref(j["control"]);
    }
    return op;
}

}  // namespace

std::string serialize_circuit(const HybridCircuit &circuit) {
    json header;
    header["format"] = std::string(kFormat);
    header["version"] = kVersion;
    header["num_qubits"] = circuit.num_qubits();
    header["num_classical_bits"] = circuit.num_classical_bits();
    json blocks = json::array();
    for (const auto &b : circuit.blocks()) {
        blocks.push_back({{"stage", std::string(stage_name(b.stage))}, {"group", b.group}, {"layers", b.num_layers}});
    }
    header["blocks"] = std::move(blocks);

    std::string out = header.dump();
    out += '\n';
    for (const auto &layer : circuit.layers()) {
        json ops = json::array();
        for (const auto &op : layer.ops) {
            ops.push_back(op_to_json(op));
        }
        json line;
        line["ops"] = std::move(ops);
        out += line.dump();
        out += '\n';
    }
    return out;
}

HybridCircuit parse_circuit(std::string_view text) {
    std::vector<std::string_view> lines;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        if (end > pos) {
            lines.push_back(text.substr(pos, end - pos));
        }
        pos = end + 1;
    }
    if (lines.empty()) {
        throw Error(ErrorCode::ParseError, "empty circuit text");
    }
    try {
        json header = json::parse(lines[0]);
        if (header.value("format", std::string()) != kFormat || header.value("version", 0) != kVersion) {
            throw Error(ErrorCode::ParseError, "not a qmac-circuit v1 stream");
        }
        HybridCircuit c(header.at("num_qubits").get<uint32_t>(), header.at("num_classical_bits").get<uint32_t>());
        size_t next_line = 1;
        for (const auto &b : header.at("blocks")) {
            auto stage = parse_stage(b.at("stage").get<std::string>());
            if (!stage.has_value()) {
                throw Error(ErrorCode::ParseError, "unknown stage " + b.at("stage").dump());
            }
            c.begin_block(*stage, b.value("group", 0u));
            auto count = b.at("layers").get<size_t>();
            for (size_t i = 0; i < count; i++, next_line++) {
                if (next_line >= lines.size()) {
                    throw Error(ErrorCode::ParseError, "fewer layer lines than the header declares");
                }
                json line = json::parse(lines[next_line]);
                std::vector<GateOp> ops;
                for (const auto &o : line.at("ops")) {
                    ops.push_back(op_from_json(o));
                }
                c.append_layer(std::move(ops));
            }
        }
        if (next_line != lines.size()) {
            throw Error(ErrorCode::ParseError, "more layer lines than the header declares");
        }
        return c;
    } catch (const json::exception &e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

}  // namespace qmac
