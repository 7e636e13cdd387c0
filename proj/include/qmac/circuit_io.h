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

#ifndef QMAC_CIRCUIT_IO_H
#define QMAC_CIRCUIT_IO_H

#include <string>
#include <string_view>

#include "qmac/circuit_ir.h"

namespace qmac {

/// Line-oriented JSON.
///
/// Line 1 is a header:
///   {"format":"qmac-circuit","version":1,"num_qubits":N,"num_classical_bits":C,
///    "blocks":[{"stage":"fanout","group":0,"layers":3},...]}
/// followed by one object per layer:
///   {"ops":[{"kind":"R","m":2,"targets":["q4"],"control":"c7"},
///           {"kind":"CNOT","targets":["q0","q5"]}, ...]}
/// PhaseR ops may carry "adjoint":true. Parsing the output of serialize
/// reproduces the circuit exactly, and re-serializing it gives the same bytes.
std::string serialize_circuit(const HybridCircuit &circuit);

/// Throws ParseError on malformed input and the usual layer errors
/// (OverlappingTargets, OutOfRange) on invalid content.
HybridCircuit parse_circuit(std::string_view text);

}  // namespace qmac

#endif
