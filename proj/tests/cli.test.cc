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


#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gtest/gtest.h"

namespace {

struct Result {
    int exit_code = -1;
    std::string out;
};

Result run_qmac(const std::string &args, const std::string &env = "") {
    std::string cmd = env + std::string(QMAC_BIN) + " " + args + " 2>/dev/null";
    Result r;
    FILE *pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        return r;
    }
    std::array<char, 4096> buf{};
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.out.append(buf.data(), got);
    }
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

nlohmann::json run_json(const std::string &args) {
    Result r = run_qmac(args);
    EXPECT_EQ(r.exit_code, 0) << args;
    return nlohmann::json::parse(r.out);
}

}  // namespace

TEST(cli, run_both_backends_agree) {
    auto j = run_json("run --k 3 --z 1 --pairs 3,2 --backend both");
    ASSERT_EQ(j["result"], 7);
    ASSERT_EQ(j["agree"], true);
}

TEST(cli, run_phase_wide) {
    auto j = run_json("run --k 16 --z 0 --pairs 100,200 --backend phase");
    ASSERT_EQ(j["result"], 20000);
    ASSERT_FALSE(j.contains("dense"));
}

TEST(cli, run_dense_approx) {
    auto j = run_json("run --k 3 --z 2 --pairs 3,1 --backend dense --approx --epsilon 1e-3");
    ASSERT_EQ(j["result"], 5);
    ASSERT_GE(j["dense"]["probability"].get<double>(), 0.99);
}

TEST(cli, run_signed) {
    auto j = run_json("run --k 4 --z -3 --pairs -2,2 --signed --backend both");
    ASSERT_EQ(j["result"], -7);
}

TEST(cli, run_from_input_file) {
    std::string path = std::string(QMAC_TEST_TMP) + "/cli_request.json";
    FILE *f = fopen(path.c_str(), "w");
    ASSERT_NE(f, nullptr);
    fputs(R"({"k": 4, "z": 3, "pairs": [[1, 1], [2, 3]]})", f);
    fclose(f);
    auto j = run_json("run --input " + path + " --backend phase");
    ASSERT_EQ(j["result"], 10);
}

TEST(cli, exit_codes) {
    ASSERT_EQ(run_qmac("run --k 3 --z 9 --pairs 1,1").exit_code, 2);
    ASSERT_EQ(run_qmac("run --k 3 --pairs 1").exit_code, 2);
    ASSERT_EQ(run_qmac("run --k 3 --n 2 --pairs 1,1").exit_code, 2);
    ASSERT_EQ(run_qmac("frobnicate").exit_code, 2);
    ASSERT_EQ(run_qmac("run --k 3 --approx --pairs 1,1").exit_code, 2);
    ASSERT_EQ(run_qmac("run --k 5 --pairs 1,1 --backend dense").exit_code, 3);
    ASSERT_EQ(run_qmac("run --k 5 --pairs 1,1 --backend phase").exit_code, 0);
}

TEST(cli, dense_cap_env_override) {
    ASSERT_EQ(run_qmac("run --k 3 --pairs 1,1 --backend dense").exit_code, 0);
    ASSERT_EQ(run_qmac("run --k 3 --pairs 1,1 --backend dense", "QMAC_DENSE_CAP=8 ").exit_code, 3);
}

TEST(cli, verify_default_and_mutated) {
    Result ok = run_qmac("verify");
    ASSERT_EQ(ok.exit_code, 0) << ok.out;
    ASSERT_EQ(ok.out.find("FAIL"), std::string::npos);
    Result bad = run_qmac("verify --mutate drop-gate");
    ASSERT_EQ(bad.exit_code, 1);
    ASSERT_NE(bad.out.find("FAIL"), std::string::npos);
    Result lemma = run_qmac("verify --suite lemma1");
    ASSERT_EQ(lemma.exit_code, 0);
    ASSERT_NE(lemma.out.find("PASS lemma1"), std::string::npos);
}

TEST(cli, sweep_csv) {
    Result r = run_qmac("sweep --k 2..8 --n 1..8 --adder ripple");
    ASSERT_EQ(r.exit_code, 0);
    ASSERT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 57);
    std::stringstream ss(r.out);
    std::string line;
    std::getline(ss, line);
    while (std::getline(ss, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        ASSERT_EQ(cells.size(), 7);
        ASSERT_EQ(cells[3], cells[4]) << line;
    }
}

TEST(cli, crossover_table) {
    Result r = run_qmac("crossover --k 2..8 --classical-step 3");
    ASSERT_EQ(r.exit_code, 0);
    ASSERT_EQ(r.out.find("NoCrossover"), std::string::npos);
    ASSERT_EQ(r.out.find("beyond_bound"), std::string::npos);
    Result none = run_qmac("crossover --k 2..3 --classical-step 2");
    ASSERT_EQ(none.exit_code, 0);
    ASSERT_NE(none.out.find("NoCrossover"), std::string::npos);
}

TEST(cli, deterministic_output) {
    for (const char *args : {"run --k 3 --z 1 --pairs 3,2 --pairs 1,1", "build --k 2 --z 1 --pairs 1,1",
                             "sweep --k 2..4 --n 0..3", "crossover --k 2..6 --format json"}) {
        Result a = run_qmac(args);
        Result b = run_qmac(args);
        ASSERT_EQ(a.exit_code, 0) << args;
        ASSERT_EQ(a.out, b.out) << args;
    }
    auto j = run_json("run --k 3 --z 1 --pairs 3,2");
    ASSERT_TRUE(j.contains("metadata"));
}

TEST(cli, build_writes_file) {
    std::string path = std::string(QMAC_TEST_TMP) + "/cli_circuit.jsonl";
    ASSERT_EQ(run_qmac("build --k 3 --z 1 --pairs 3,2 --out " + path).exit_code, 0);
    FILE *f = fopen(path.c_str(), "r");
    ASSERT_NE(f, nullptr);
    char head[32] = {};
    ASSERT_GT(fread(head, 1, sizeof(head) - 1, f), 0u);
    fclose(f);
    ASSERT_EQ(std::string(head).rfind("{\"blocks\"", 0), 0u);
}
