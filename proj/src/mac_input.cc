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

#include "qmac/mac_input.h"

#include <charconv>
#include <cstdint>

#include <json.hpp>

#include "qmac/error.h"
#include "qmac/layout.h"

namespace qmac {

std::string_view variant_name(Variant v) {
    return v == Variant::Exact ? "exact" : "approx";
}

Variant parse_variant(std::string_view name) {
    if (name == "exact") {
        return Variant::Exact;
    }
    if (name == "approx" || name == "approximate") {
        return Variant::Approximate;
    }
    throw Error(ErrorCode::InvalidInput, "unknown variant '" + std::string(name) + "'");
}

void QmacParams::validate() const {
    if (k < 1 || k > kMaxWidth) {
        throw Error(ErrorCode::InvalidInput, "k must be in 1..64, got " + std::to_string(k));
    }
    if (variant == Variant::Approximate) {
        if (!epsilon.has_value() || !(*epsilon > 0.0 && *epsilon < 1.0)) {
            throw Error(ErrorCode::InvalidInput, "approximate variant requires 0 < epsilon < 1");
        }
    }
}

void MacInput::validate(uint32_t k) const {
    uint64_t mask = register_mask(k);
    auto check = [&](uint64_t v, const char *what) {
        if ((v & ~mask) != 0) {
            throw Error(
                ErrorCode::InvalidInput,
                std::string(what) + " = " + std::to_string(v) + " does not fit in " + std::to_string(k) + " bits");
        }
    };
    check(z, "z");
    for (const auto &p : pairs) {
        check(p.x, "x");
        check(p.y, "y");
    }
}

uint64_t encode_operand(int64_t value, uint32_t k, bool signed_mode) {
    bool fits;
    if (signed_mode) {
        if (k >= 64) {
            fits = true;
        } else {
            int64_t half = int64_t{1} << (k - 1);
            fits = value >= -half && value < half;
        }
    } else {
        fits = value >= 0 && (k >= 64 || static_cast<uint64_t>(value) <= register_mask(k));
    }
    if (!fits) {
        throw Error(
            ErrorCode::InvalidInput, std::to_string(value) + " does not fit in a " + std::to_string(k) + "-bit " +
                                         (signed_mode ? "signed" : "unsigned") + " register");
    }
    return wrap_to_register(value, k);
}

uint64_t parse_operand(std::string_view text, uint32_t k, bool signed_mode) {
    if (text.empty()) {
        throw Error(ErrorCode::InvalidInput, "empty operand");
    }
    const char *first = text.data();
    const char *last = text.data() + text.size();
    if (text[0] == '-') {
        int64_t v = 0;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last) {
            throw Error(ErrorCode::InvalidInput, "bad operand '" + std::string(text) + "'");
        }
        return encode_operand(v, k, signed_mode);
    }
    uint64_t u = 0;
    auto [ptr, ec] = std::from_chars(first, last, u);
    if (ec != std::errc() || ptr != last) {
        throw Error(ErrorCode::InvalidInput, "bad operand '" + std::string(text) + "'");
    }
    if (!signed_mode) {
        if ((u & ~register_mask(k)) != 0) {
            throw Error(ErrorCode::InvalidInput, std::string(text) + " does not fit in " + std::to_string(k) + " bits");
        }
        return u;
    }
    if (u > static_cast<uint64_t>(INT64_MAX)) {
        throw Error(ErrorCode::InvalidInput, std::string(text) + " out of range");
    }
    return encode_operand(static_cast<int64_t>(u), k, signed_mode);
}

uint64_t integer_mac(uint32_t k, uint64_t z, const std::vector<MacPair> &pairs) {
    // Unsigned 64-bit arithmetic already wraps mod 2^64.
    uint64_t acc = z;
    for (const auto &p : pairs) {
        acc += p.x * p.y;
    }
    return acc & register_mask(k);
}

namespace {

uint64_t json_operand(const nlohmann::json &v, uint32_t k, bool signed_mode) {
    if (v.is_number_unsigned()) {
        uint64_t u = v.get<uint64_t>();
        if (!signed_mode && (u & ~register_mask(k)) == 0) {
            return u;
        }
        if (u > static_cast<uint64_t>(INT64_MAX)) {
            throw Error(ErrorCode::InvalidInput, std::to_string(u) + " out of range");
        }
        return encode_operand(static_cast<int64_t>(u), k, signed_mode);
    }
    if (v.is_number_integer()) {
        return encode_operand(v.get<int64_t>(), k, signed_mode);
    }
    throw Error(ErrorCode::ParseError, "operands must be integers");
}

}  // namespace

MacRequest parse_mac_request(std::string_view json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error &e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    if (!j.is_object() || !j.contains("k")) {
        throw Error(ErrorCode::ParseError, "MAC request must be an object with at least 'k'");
    }
    MacRequest r;
    try {
        r.params.k = j.at("k").get<uint32_t>();
        r.params.variant = parse_variant(j.value("variant", std::string("exact")));
        if (j.contains("epsilon") && !j["epsilon"].is_null()) {
            r.params.epsilon = j["epsilon"].get<double>();
        }
        r.input.signed_mode = j.value("signed", false);
        r.params.validate();
        uint32_t k = r.params.k;
        r.input.z = j.contains("z") ? json_operand(j["z"], k, r.input.signed_mode) : 0;
        if (j.contains("pairs")) {
            for (const auto &p : j["pairs"]) {
                if (!p.is_array() || p.size() != 2) {
                    throw Error(ErrorCode::ParseError, "each pair must be [x, y]");
                }
                r.input.pairs.push_back(
                    MacPair{json_operand(p[0], k, r.input.signed_mode), json_operand(p[1], k, r.input.signed_mode)});
            }
        }
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    r.params.n = static_cast<uint32_t>(r.input.pairs.size());
    return r;
}

std::string mac_request_to_json(const MacRequest &request) {
    nlohmann::json j;
    j["k"] = request.params.k;
    j["variant"] = std::string(variant_name(request.params.variant));
    if (request.params.epsilon.has_value()) {
        j["epsilon"] = *request.params.epsilon;
    }
    j["signed"] = request.input.signed_mode;
    uint32_t k = request.params.k;
    auto out = [&](uint64_t v) -> nlohmann::json {
        if (request.input.signed_mode) {
            return as_signed(v, k);
        }
        return v;
    };
    j["z"] = out(request.input.z);
    j["pairs"] = nlohmann::json::array();
    for (const auto &p : request.input.pairs) {
        j["pairs"].push_back({out(p.x), out(p.y)});
    }
    return j.dump();
}

}  // namespace qmac
