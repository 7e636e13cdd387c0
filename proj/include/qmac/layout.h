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

#ifndef QMAC_LAYOUT_H
#define QMAC_LAYOUT_H

#include <cstddef>
#include <cstdint>
#include <vector>

namespace qmac {

constexpr uint32_t kMaxWidth = 64;

/// One classically controlled rotation of the M block.
///
/// Logical qubit j receives M_j = Q_1(y*x_j) ... Q_j(y*x_1); the sub-block
/// Q_l uses input bit x_i with i = j - l + 1 and, at position p (1..l),
/// applies R_{l+1-p} controlled by y_p AND x_i.
struct GateSite {
    uint32_t logical = 0;    // j, 1-based
    uint32_t sub_block = 0;  // l, 1-based
    uint32_t position = 0;   // p, 1-based index of the y bit
    uint32_t qubit = 0;      // physical copy carrying the gate

    uint32_t x_bit() const {
        return logical - sub_block + 1;
    }
    uint32_t y_bit() const {
        return position;
    }
    uint32_t rotation() const {
        return sub_block + 1 - position;
    }
    bool operator==(const GateSite &) const = default;
};

struct CopyGroup {
    uint32_t logical = 0;
    uint32_t source = 0;
    std::vector<uint32_t> copies;  // auxiliary qubits, excluding the source

    size_t size() const {
        return copies.size() + 1;
    }
    uint32_t member(size_t i) const {
        return i == 0 ? source : copies[i - 1];
    }
};

/// Physical placement of the k register qubits and their fan-out copies.
///
/// Register qubit b (bit b of the basis index) carries logical qubit k - b,
/// i.e. the factor with phase 2*pi*(z mod 2^j)/2^j of QFT|z>. Auxiliary
/// qubits follow the register, group by group for j = 1..k. Group j holds
/// j(j+1)/2 qubits, one per gate site.
class QubitLayout {
   public:
    static QubitLayout canonical(uint32_t k);

    uint32_t k() const {
        return k_;
    }
    uint32_t num_qubits() const {
        return num_qubits_;
    }
    const std::vector<CopyGroup> &groups() const {
        return groups_;
    }
    const CopyGroup &group(uint32_t logical) const {
        return groups_[logical - 1];
    }
    /// Sites in canonical order: j ascending, then l, then position.
    const std::vector<GateSite> &sites() const {
        return sites_;
    }
    /// 1-based logical qubit owning a physical qubit.
    uint32_t logical_of(uint32_t qubit) const {
        return owner_[qubit];
    }
    uint32_t register_qubit(uint32_t logical) const {
        return k_ - logical;
    }

    /// Fault injection: same layout with one gate site removed.
    QubitLayout without_site(size_t site_index) const;

   private:
    uint32_t k_ = 0;
    uint32_t num_qubits_ = 0;
    std::vector<CopyGroup> groups_;
    std::vector<GateSite> sites_;
    std::vector<uint32_t> owner_;
};

/// Classical bit addresses for a chain of MAC steps.
///
/// Step s owns x bits [2ks, 2ks + k) and y bits [2ks + k, 2ks + 2k), bit
/// index = (bit number - 1). Control scratch bits, one per gate site, follow
/// all steps and are reused by every M block.
struct ClassicalLayout {
    uint32_t k = 0;
    uint32_t num_steps = 0;
    uint32_t num_sites = 0;

    uint32_t x_bit(uint32_t step, uint32_t bit) const {
        return 2 * k * step + (bit - 1);
    }
    uint32_t y_bit(uint32_t step, uint32_t bit) const {
        return 2 * k * step + k + (bit - 1);
    }
    uint32_t scratch(uint32_t site) const {
        return 2 * k * num_steps + site;
    }
    uint32_t num_bits() const {
        return 2 * k * num_steps + num_sites;
    }
};

/// k(k+1)(k+2)/6
constexpr uint64_t tetrahedral(uint64_t k) {
    return k * (k + 1) * (k + 2) / 6;
}

/// ceil(log2(x)) for x >= 1.
constexpr uint32_t ceil_log2(uint64_t x) {
    uint32_t r = 0;
    while ((uint64_t{1} << r) < x) {
        r++;
    }
    return r;
}

}  // namespace qmac

#endif
