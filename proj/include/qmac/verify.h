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

#ifndef QMAC_VERIFY_H
#define QMAC_VERIFY_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qmac/layout.h"

namespace qmac {

struct VerifyOptions {
    /// Remove one pseudo-randomly chosen gate site from every layout used by
    /// the correctness suites.
    bool drop_gate = false;
    uint64_t seed = 12345;
    uint32_t dense_cap = 22;
};

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// exhaustive, sampled, lemma1, lemma2, theorem1, qft, epsilon, fanout
const std::vector<std::string> &suite_names();

/// Throws InvalidInput for an unknown suite name.
SuiteResult run_suite(std::string_view name, const VerifyOptions &options);

std::vector<SuiteResult> run_all_suites(const VerifyOptions &options);

/// Layout used by the correctness suites: canonical, or with one site removed
/// when fault injection is on.
QubitLayout verification_layout(uint32_t k, const VerifyOptions &options);

}  // namespace qmac

#endif
