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

#include "gtest/gtest.h"

#include "qmac/error.h"

using namespace qmac;

TEST(mac_input, params_validation) {
    ASSERT_NO_THROW((QmacParams{1, 0, Variant::Exact, {}}.validate()));
    ASSERT_THROW((QmacParams{0, 0, Variant::Exact, {}}.validate()), Error);
    ASSERT_THROW((QmacParams{65, 0, Variant::Exact, {}}.validate()), Error);
    ASSERT_THROW((QmacParams{4, 0, Variant::Approximate, {}}.validate()), Error);
    ASSERT_THROW((QmacParams{4, 0, Variant::Approximate, 1.0}.validate()), Error);
    ASSERT_NO_THROW((QmacParams{4, 0, Variant::Approximate, 1e-3}.validate()));
}

TEST(mac_input, operand_encoding) {
    ASSERT_EQ(encode_operand(5, 3, false), 5);
    ASSERT_EQ(encode_operand(-1, 3, true), 7);
    ASSERT_EQ(encode_operand(-4, 3, true), 4);
    ASSERT_THROW(encode_operand(4, 3, true), Error);
    ASSERT_THROW(encode_operand(8, 3, false), Error);
    ASSERT_THROW(encode_operand(-1, 3, false), Error);
    ASSERT_EQ(as_signed(7, 3), -1);
    ASSERT_EQ(as_signed(3, 3), 3);
    ASSERT_EQ(wrap_to_register(-1, 64), ~uint64_t{0});
    ASSERT_EQ(wrap_to_register(21, 4), 5);
}

TEST(mac_input, parse_operand) {
    ASSERT_EQ(parse_operand("18446744073709551615", 64, false), ~uint64_t{0});
    ASSERT_EQ(parse_operand("-2", 8, true), 254);
    ASSERT_THROW(parse_operand("3x", 8, false), Error);
    ASSERT_THROW(parse_operand("", 8, false), Error);
    ASSERT_THROW(parse_operand("256", 8, false), Error);
}

TEST(mac_input, integer_oracle) {
    ASSERT_EQ(integer_mac(3, 1, {{3, 2}}), 7);
    ASSERT_EQ(integer_mac(3, 7, {{3, 3}}), 0);
    ASSERT_EQ(integer_mac(64, ~uint64_t{0}, {{1, 1}}), 0);
}

TEST(mac_input, request_json_round_trip) {
    MacRequest r = parse_mac_request(R"({"k": 4, "z": -3, "pairs": [[1, -1], [2, 3]], "signed": true})");
    ASSERT_EQ(r.params.k, 4);
    ASSERT_EQ(r.params.n, 2);
    ASSERT_EQ(r.input.z, 13);
    ASSERT_EQ(r.input.pairs[0], (MacPair{1, 15}));
    MacRequest back = parse_mac_request(mac_request_to_json(r));
    ASSERT_EQ(back.input.pairs, r.input.pairs);
    ASSERT_EQ(back.input.z, r.input.z);
    ASSERT_TRUE(back.input.signed_mode);
}

TEST(mac_input, request_json_errors) {
    ASSERT_THROW(parse_mac_request("[1,2]"), Error);
    ASSERT_THROW(parse_mac_request(R"({"k": 3, "pairs": [[1]]})"), Error);
    ASSERT_THROW(parse_mac_request(R"({"k": 3, "z": 9})"), Error);
    ASSERT_THROW(parse_mac_request(R"({"k": 3, "variant": "approx"})"), Error);
    ASSERT_THROW(parse_mac_request("{"), Error);
}
