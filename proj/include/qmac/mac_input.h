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

#ifndef QMAC_MAC_INPUT_H
#define QMAC_MAC_INPUT_H

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qmac {

enum class Variant : uint8_t { Exact, Approximate };

std::string_view variant_name(Variant v);
Variant parse_variant(std::string_view name);

struct QmacParams {
    uint32_t k = 1;
    uint32_t n = 0;
    Variant variant = Variant::Exact;
    std::optional<double> epsilon;

    /// Throws InvalidInput unless 1 <= k <= 64 and, for the approximate
    /// variant, 0 < epsilon < 1.
    void validate() const;
};

struct MacPair {
    uint64_t x = 0;
    uint64_t y = 0;
    bool operator==(const MacPair &) const = default;
};

struct MacInput {
    uint64_t z = 0;
    std::vector<MacPair> pairs;
    bool signed_mode = false;

    /// Throws InvalidInput if any stored value is >= 2^k.
    void validate(uint32_t k) const;
};

/// 2^k - 1 (all ones for k = 64).
constexpr uint64_t register_mask(uint32_t k) {
    return k >= 64 ? ~uint64_t{0} : (uint64_t{1} << k) - 1;
}

/// Reduces an arbitrary integer into the k-bit register (two's complement
/// for negative values).
constexpr uint64_t wrap_to_register(int64_t value, uint32_t k) {
    return static_cast<uint64_t>(value) & register_mask(k);
}

/// Reads a register value as a two's-complement k-bit integer.
constexpr int64_t as_signed(uint64_t value, uint32_t k) {
    if (k >= 64) {
        return static_cast<int64_t>(value);
    }
    uint64_t sign = uint64_t{1} << (k - 1);
    return (value & sign) ? static_cast<int64_t>(value) - static_cast<int64_t>(uint64_t{1} << k)
                          : static_cast<int64_t>(value);
}

/// Encodes a user-level operand into the register, rejecting values that do
/// not fit: unsigned mode takes [0, 2^k), signed mode [-2^{k-1}, 2^{k-1}).
uint64_t encode_operand(int64_t value, uint32_t k, bool signed_mode);

/// Parses a decimal operand ("-3", "200", "18446744073709551615") and encodes
/// it as encode_operand does. Throws InvalidInput.
uint64_t parse_operand(std::string_view text, uint32_t k, bool signed_mode);

/// (z + sum x_i * y_i) mod 2^k, computed with plain integer arithmetic.
uint64_t integer_mac(uint32_t k, uint64_t z, const std::vector<MacPair> &pairs);

struct MacRequest {
    QmacParams params;
    MacInput input;
};

/// {k, z, pairs:[[x,y],...], variant, epsilon?, signed?}
MacRequest parse_mac_request(std::string_view json_text);
std::string mac_request_to_json(const MacRequest &request);

}  // namespace qmac

#endif
