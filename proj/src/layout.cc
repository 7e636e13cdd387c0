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

#include "qmac/layout.h"

#include <string>

#include "qmac/error.h"

namespace qmac {

QubitLayout QubitLayout::canonical(uint32_t k) {
    if (k < 1 || k > kMaxWidth) {
        throw Error(ErrorCode::InvalidInput, "register width must be in 1.." + std::to_string(kMaxWidth));
    }
    QubitLayout layout;
    layout.k_ = k;
    layout.num_qubits_ = static_cast<uint32_t>(tetrahedral(k));
    layout.owner_.assign(layout.num_qubits_, 0);

    uint32_t next_aux = k;
    for (uint32_t j = 1; j <= k; j++) {
        CopyGroup g;
        g.logical = j;
        g.source = k - j;
        uint32_t size = j * (j + 1) / 2;
        for (uint32_t c = 1; c < size; c++) {
            g.copies.push_back(next_aux++);
        }
        for (size_t i = 0; i < g.size(); i++) {
            layout.owner_[g.member(i)] = j;
        }
        size_t member = 0;
        for (uint32_t l = 1; l <= j; l++) {
            for (uint32_t p = 1; p <= l; p++) {
                layout.sites_.push_back(GateSite{j, l, p, g.member(member++)});
            }
        }
        layout.groups_.push_back(std::move(g));
    }
    return layout;
}

QubitLayout QubitLayout::without_site(size_t site_index) const {
    if (site_index >= sites_.size()) {
        throw Error(ErrorCode::OutOfRange, "no gate site " + std::to_string(site_index));
    }
    QubitLayout out = *this;
    out.sites_.erase(out.sites_.begin() + static_cast<std::ptrdiff_t>(site_index));
    return out;
}

}  // namespace qmac
