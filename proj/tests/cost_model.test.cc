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


#include "qmac/cost_model.h"

#include <cmath>

#include <Eigen/Dense>

#include "gtest/gtest.h"

#include "qmac/builder.h"
#include "qmac/error.h"
#include "qmac/layout.h"

using namespace qmac;

namespace {

uint64_t stage(const std::vector<StageDepth> &v, const std::string &name) {
    for (const auto &s : v) {
        if (s.stage == name) {
            return s.layers;
        }
    }
    ADD_FAILURE() << "no stage " << name;
    return 0;
}

}  // namespace

TEST(cost_model, breakdown_examples) {
    DepthReport r = hybrid_depth({3, 5, Variant::Exact, {}});
    ASSERT_EQ(stage(r.breakdown, "mac_steps"), 10);
    ASSERT_EQ(stage(r.breakdown, "fanout") + stage(r.breakdown, "fanout_inverse"), 6);
    ASSERT_EQ(hybrid_depth({4, 1, Variant::Exact, {}}).measured_qubits, 20);
}

TEST(cost_model, measured_equals_predicted) {
    for (Variant v : {Variant::Exact, Variant::Approximate}) {
        for (uint32_t k = 1; k <= 8; k++) {
            for (uint32_t n = 0; n <= 16; n++) {
                std::optional<double> eps;
                if (v == Variant::Approximate) {
                    eps = 1e-3;
                }
                DepthReport r = hybrid_depth({k, n, v, eps});
                ASSERT_EQ(r.measured_depth, r.predicted_depth) << k << " " << n;
                ASSERT_EQ(r.breakdown, r.predicted_breakdown) << k << " " << n;
                uint64_t sum = 0;
                for (const auto &s : r.breakdown) {
                    sum += s.layers;
                }
                ASSERT_EQ(sum, r.measured_depth);
            }
        }
    }
}

TEST(cost_model, slope_is_two) {
    for (uint32_t k = 1; k <= 12; k++) {
        for (uint32_t n = 0; n < 16; n++) {
            uint64_t a = hybrid_depth({k, n, Variant::Exact, {}}).measured_depth;
            uint64_t b = hybrid_depth({k, n + 1, Variant::Exact, {}}).measured_depth;
            ASSERT_EQ(b - a, 2);
        }
    }
}

TEST(cost_model, approx_depth_log_fit) {
    const uint32_t n = 4;
    const double eps = 1e-3;
    std::vector<uint32_t> ks{2, 4, 8, 16, 32, 64};
    Eigen::MatrixXd a(ks.size(), 2);
    Eigen::VectorXd d(ks.size());
    for (size_t i = 0; i < ks.size(); i++) {
        a(i, 0) = std::log2(static_cast<double>(ks[i]));
        a(i, 1) = 1.0;
        d(i) = static_cast<double>(hybrid_depth({ks[i], n, Variant::Approximate, eps}).measured_depth);
    }
    Eigen::VectorXd c = a.colPivHouseholderQr().solve(d);
    Eigen::VectorXd residual = a * c - d;
    double worst = 0.0;
    for (Eigen::Index i = 0; i < residual.size(); i++) {
        worst = std::max(worst, std::abs(residual(i)) / d(i));
    }
    EXPECT_LE(worst, 0.05) << "depth(k) = " << d.transpose() << "; fit c1=" << c(0) << " c2=" << c(1);
}

TEST(cost_model, classical_depth_examples) {
    ClassicalModel m;
    ASSERT_EQ(classical_depth(m, 8, 0), 0);
    ClassicalModel custom{AdderKind::CarryLookahead, MultiplierKind::WallaceDadda, 3, 2};
    ASSERT_EQ(classical_depth(custom, 64, 10), 300);
    ASSERT_EQ(classical_depth(custom, 64, 20), 2 * classical_depth(custom, 64, 10));
    ClassicalModel ripple{AdderKind::Ripple, MultiplierKind::WallaceDadda, 1, 1};
    ASSERT_EQ(classical_step_depth(ripple, 16), 4 + 16);
    ASSERT_EQ(classical_step_depth(m, 1), 2);
    ClassicalModel bad{AdderKind::Ripple, MultiplierKind::WallaceDadda, 0, 1};
    ASSERT_THROW(bad.validate(), Error);
    ASSERT_EQ(parse_adder_kind("cla"), AdderKind::CarryLookahead);
    ASSERT_THROW(parse_adder_kind("kogge"), Error);
}

TEST(cost_model, no_crossover_for_equal_slopes) {
    try {
        crossover_for_step_depth(2, {4, 0, Variant::Exact, {}}, 4);
        FAIL();
    } catch (const Error &e) {
        ASSERT_EQ(e.code(), ErrorCode::NoCrossover);
    }
}

TEST(cost_model, crossover_k64_approx) {
    Crossover c = crossover_for_step_depth(30, {64, 0, Variant::Approximate, 1e-3}, 64);
    ASSERT_EQ(c.hybrid_slope, 2);
    uint64_t d0 = c.hybrid_overhead;
    ASSERT_EQ(d0, hybrid_depth({64, 0, Variant::Approximate, 1e-3}).measured_depth);
    // Smallest n with 2n + d0 < 30n.
    uint64_t expected = d0 / 28 + 1;
    ASSERT_EQ(c.n_star, expected);
}

TEST(cost_model, crossover_monotone_in_classical_step) {
    for (uint32_t k : {2u, 5u, 8u}) {
        std::optional<uint64_t> prev;
        for (uint64_t step = 3; step <= 40; step++) {
            Crossover c = crossover_for_step_depth(step, {k, 0, Variant::Exact, {}}, k);
            ASSERT_TRUE(c.n_star.has_value());
            if (prev) {
                ASSERT_LE(*c.n_star, *prev);
            }
            prev = c.n_star;
        }
    }
}

TEST(cost_model, crossover_beyond_bound) {
    Crossover c = crossover_for_step_depth(3, {8, 0, Variant::Exact, {}}, 8, 5);
    ASSERT_FALSE(c.n_star.has_value());
}

TEST(cost_model, sweep_table) {
    ClassicalModel m{AdderKind::Ripple, MultiplierKind::WallaceDadda, 1, 1};
    auto rows = sweep(m, Variant::Exact, {}, 2, 8, 1, 8);
    ASSERT_EQ(rows.size(), 56);
    for (const auto &r : rows) {
        ASSERT_EQ(r.measured_depth, r.predicted_depth);
        ASSERT_EQ(r.classical_depth, classical_depth(m, r.k, r.n));
        ASSERT_TRUE(r.crossover.has_value());
    }
    std::string csv = sweep_to_csv(rows);
    ASSERT_EQ(csv.substr(0, csv.find('\n')), "k,n,variant,measured_depth,predicted_depth,classical_depth,crossover");
    ASSERT_EQ(std::count(csv.begin(), csv.end(), '\n'), 57);
}

TEST(cost_model, sweep_reports_no_crossover_as_cell) {
    // Carry-lookahead at k = 2: 1 + 1 = 2 layers per step, equal to the hybrid slope.
    auto rows = sweep(ClassicalModel{}, Variant::Exact, {}, 2, 2, 1, 2);
    ASSERT_EQ(rows.size(), 2);
    ASSERT_FALSE(rows[0].crossover.has_value());
    ASSERT_EQ(rows[0].crossover_note, "NoCrossover");
    ASSERT_NE(sweep_to_csv(rows).find("NoCrossover"), std::string::npos);
}

TEST(cost_model, crossover_exists_for_step_three_and_tracks_overhead) {
    std::vector<Crossover> rows;
    for (uint32_t k = 2; k <= 8; k++) {
        rows.push_back(crossover_for_step_depth(3, {k, 0, Variant::Exact, {}}, k));
        ASSERT_TRUE(rows.back().n_star.has_value());
    }
    for (size_t i = 0; i < rows.size(); i++) {
        for (size_t j = 0; j < rows.size(); j++) {
            if (rows[i].hybrid_overhead <= rows[j].hybrid_overhead) {
                ASSERT_LE(*rows[i].n_star, *rows[j].n_star);
            }
        }
    }
}

TEST(cost_model, depth_report_json) {
    std::string j = depth_report_to_json(hybrid_depth({3, 2, Variant::Exact, {}}));
    ASSERT_NE(j.find("\"measured_depth\""), std::string::npos);
    ASSERT_NE(j.find("\"breakdown\""), std::string::npos);
}
