// Copyright 2026 The mixqec Authors
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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "json.hpp"
#include "mixqec/mixqec.h"

namespace {

struct Code {
    mixqec_code *h = nullptr;
    explicit Code(const char *label) { EXPECT_EQ(mixqec_code_create(label, &h), MIXQEC_OK) << mixqec_last_error(); }
    ~Code() { mixqec_code_destroy(h); }
    Code(const Code &) = delete;
    Code &operator=(const Code &) = delete;
};

std::string take(mixqec_text *t) {
    std::string s(mixqec_text_data(t), mixqec_text_size(t));
    mixqec_text_destroy(t);
    return s;
}

}  // namespace

TEST(CApi, VersionAndStatusNames) {
    EXPECT_STREQ(mixqec_version(), "0.1.0");
    EXPECT_STREQ(mixqec_status_name(MIXQEC_OK), "ok");
    EXPECT_STREQ(mixqec_status_name(MIXQEC_UNKNOWN_CODE), "unknown code");
    EXPECT_STREQ(mixqec_status_name(MIXQEC_BUFFER_TOO_SMALL), "buffer too small");
}

TEST(CApi, StandardLabels) {
    ASSERT_EQ(mixqec_standard_label_count(), 13u);
    EXPECT_STREQ(mixqec_standard_label(0), "rep3");
    EXPECT_EQ(mixqec_standard_label(13), nullptr);
    for (size_t i = 0; i < mixqec_standard_label_count(); i++) {
        Code c(mixqec_standard_label(i));
        EXPECT_NE(c.h, nullptr);
    }
}

TEST(CApi, UnknownCodeAndLastError) {
    mixqec_code *h = reinterpret_cast<mixqec_code *>(0x1);
    EXPECT_EQ(mixqec_code_create("nosuch", &h), MIXQEC_UNKNOWN_CODE);
    EXPECT_EQ(h, nullptr);
    EXPECT_NE(std::string(mixqec_last_error()).find("nosuch"), std::string::npos);
    EXPECT_EQ(mixqec_code_create(nullptr, &h), MIXQEC_INVALID_ARGUMENT);
    EXPECT_NE(std::string(mixqec_last_error()).find("null"), std::string::npos);
}

TEST(CApi, InfoAndAugment) {
    Code c("rep5");
    int n = 0, aug = -1;
    mixqec_channel ch = MIXQEC_DEPOLARIZING;
    ASSERT_EQ(mixqec_code_info(c.h, &n, &aug, &ch), MIXQEC_OK);
    EXPECT_EQ(n, 5);
    EXPECT_EQ(aug, 0);
    EXPECT_EQ(ch, MIXQEC_BITFLIP);
    mixqec_code *a = nullptr;
    ASSERT_EQ(mixqec_code_augment(c.h, &a), MIXQEC_OK);
    ASSERT_EQ(mixqec_code_info(a, &n, &aug, &ch), MIXQEC_OK);
    EXPECT_EQ(aug, 1);
    mixqec_code *twice = nullptr;
    EXPECT_EQ(mixqec_code_augment(a, &twice), MIXQEC_INVALID_ARGUMENT);
    EXPECT_EQ(twice, nullptr);
    mixqec_code_destroy(a);
    mixqec_code_destroy(nullptr);
}

TEST(CApi, LabelBufferProtocol) {
    Code c("perfect5+aug");
    size_t needed = 0;
    ASSERT_EQ(mixqec_code_label(c.h, nullptr, 0, &needed), MIXQEC_OK);
    EXPECT_EQ(needed, 13u);
    char small[4];
    EXPECT_EQ(mixqec_code_label(c.h, small, sizeof(small), &needed), MIXQEC_BUFFER_TOO_SMALL);
    std::vector<char> buf(needed);
    ASSERT_EQ(mixqec_code_label(c.h, buf.data(), buf.size(), nullptr), MIXQEC_OK);
    EXPECT_STREQ(buf.data(), "perfect5+aug");
    EXPECT_EQ(mixqec_code_label(nullptr, buf.data(), buf.size(), nullptr), MIXQEC_INVALID_ARGUMENT);
}

TEST(CApi, PolynomialTermsMatchClosedForm) {
    Code c("rep3");
    mixqec_poly *poly = nullptr;
    ASSERT_EQ(mixqec_code_fidelity(c.h, &poly), MIXQEC_OK);
    double f = 0;
    ASSERT_EQ(mixqec_poly_eval(poly, 0.1, 0.0, &f), MIXQEC_OK);
    EXPECT_NEAR(f, 1 - 3 * 0.01 + 2 * 0.001, 1e-12);
    size_t count = 0;
    ASSERT_EQ(mixqec_poly_term_count(poly, &count), MIXQEC_OK);
    ASSERT_GT(count, 0u);
    int p_pow = -1, q_pow = -1;
    double coeff = 0;
    ASSERT_EQ(mixqec_poly_term(poly, 0, &p_pow, &q_pow, &coeff), MIXQEC_OK);
    EXPECT_EQ(p_pow, 0);
    EXPECT_EQ(q_pow, 0);
    EXPECT_NEAR(coeff, 1, 1e-12);
    EXPECT_EQ(mixqec_poly_term(poly, count, &p_pow, &q_pow, &coeff), MIXQEC_INVALID_ARGUMENT);
    int dp = 0, dq = 0;
    ASSERT_EQ(mixqec_poly_degrees(poly, &dp, &dq), MIXQEC_OK);
    EXPECT_LE(dp, 3);
    EXPECT_LE(dq, 2);

    // Summing the listed terms reproduces the evaluation.
    double sum = 0;
    for (size_t i = 0; i < count; i++) {
        ASSERT_EQ(mixqec_poly_term(poly, i, &p_pow, &q_pow, &coeff), MIXQEC_OK);
        sum += coeff * std::pow(0.3, p_pow) * std::pow(0.6, q_pow);
    }
    ASSERT_EQ(mixqec_poly_eval(poly, 0.3, 0.6, &f), MIXQEC_OK);
    EXPECT_NEAR(sum, f, 1e-12);

    mixqec_text *json = nullptr;
    ASSERT_EQ(mixqec_poly_json(poly, &json), MIXQEC_OK);
    auto j = nlohmann::json::parse(take(json));
    ASSERT_TRUE(j.is_array());
    EXPECT_EQ(j.size(), count);
    mixqec_poly_destroy(poly);
}

TEST(CApi, ChannelSwitchChangesPolynomial) {
    Code c("perfect5");
    ASSERT_EQ(mixqec_code_set_channel(c.h, MIXQEC_BITFLIP), MIXQEC_OK);
    mixqec_poly *bit = nullptr;
    ASSERT_EQ(mixqec_code_fidelity(c.h, &bit), MIXQEC_OK);
    ASSERT_EQ(mixqec_code_set_channel(c.h, MIXQEC_DEPOLARIZING), MIXQEC_OK);
    mixqec_poly *dep = nullptr;
    ASSERT_EQ(mixqec_code_fidelity(c.h, &dep), MIXQEC_OK);
    double fb = 0, fd = 0;
    mixqec_poly_eval(bit, 0.2, 0.1, &fb);
    mixqec_poly_eval(dep, 0.2, 0.1, &fd);
    EXPECT_GT(std::abs(fb - fd), 1e-6);
    mixqec_poly_destroy(bit);
    mixqec_poly_destroy(dep);
    EXPECT_EQ(mixqec_code_set_channel(c.h, static_cast<mixqec_channel>(7)), MIXQEC_INVALID_ARGUMENT);
    EXPECT_EQ(mixqec_code_set_workers(c.h, 0), MIXQEC_INVALID_ARGUMENT);
}

TEST(CApi, CoefficientTableJson) {
    Code c("rep3+aug");
    mixqec_text *t = nullptr;
    ASSERT_EQ(mixqec_coefficient_table_json(c.h, 1, &t), MIXQEC_OK);
    std::string s = take(t);
    EXPECT_EQ(s.back(), '\n');
    auto j = nlohmann::json::parse(s);
    EXPECT_EQ(j["code"], "rep3+aug");
    ASSERT_EQ(j["coefficients"].size(), 2u);
    EXPECT_EQ(mixqec_coefficient_table_json(c.h, 4, &t), MIXQEC_INVALID_ARGUMENT);
    EXPECT_EQ(t, nullptr);
}

TEST(CApi, OracleBaselineUsefulness) {
    Code c("rep3+aug");
    double oracle = 0, base = 0;
    mixqec_poly *poly = nullptr;
    ASSERT_EQ(mixqec_code_fidelity(c.h, &poly), MIXQEC_OK);
    double f = 0;
    mixqec_poly_eval(poly, 0.05, 0.2, &f);
    mixqec_poly_destroy(poly);
    ASSERT_EQ(mixqec_oracle_fidelity(c.h, 0.05, 0.2, &oracle), MIXQEC_OK);
    EXPECT_NEAR(oracle, f, 1e-10);
    ASSERT_EQ(mixqec_baseline(MIXQEC_DEPOLARIZING, 0.4, &base), MIXQEC_OK);
    EXPECT_DOUBLE_EQ(base, 0.7);
    int useful = -1;
    ASSERT_EQ(mixqec_usefulness(c.h, 0.05, 0.2, &useful), MIXQEC_OK);
    EXPECT_EQ(useful, 1);
    EXPECT_EQ(mixqec_oracle_fidelity(c.h, 1.5, 0.2, &oracle), MIXQEC_INVALID_ARGUMENT);
    EXPECT_EQ(mixqec_oracle_fidelity(c.h, 0.1, 0.2, nullptr), MIXQEC_INVALID_ARGUMENT);
}

TEST(CApi, TolerableQAndCurves) {
    Code aug("rep3+aug");
    Code plain("rep3");
    double qs = 0;
    ASSERT_EQ(mixqec_tolerable_q(aug.h, 1e-4, &qs), MIXQEC_OK);
    EXPECT_NEAR(qs, 2 - std::sqrt(2.0), 1e-3);
    EXPECT_EQ(mixqec_tolerable_q(aug.h, 0.0, &qs), MIXQEC_INVALID_ARGUMENT);

    double grid[3] = {0.01, 0.05, 0.1};
    double out[3] = {};
    ASSERT_EQ(mixqec_curve_sweep(aug.h, grid, 3, 2, out), MIXQEC_OK);
    for (int i = 0; i < 3; i++) {
        double single = 0;
        mixqec_tolerable_q(aug.h, grid[i], &single);
        EXPECT_EQ(out[i], single);
    }

    mixqec_code *codes[2] = {plain.h, aug.h};
    mixqec_text *csv = nullptr;
    ASSERT_EQ(mixqec_curves_csv(codes, 2, grid, 3, 1, &csv), MIXQEC_OK);
    std::string s = take(csv);
    EXPECT_EQ(s.rfind("p,q_star,code\n", 0), 0u);
    EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 7);
}

TEST(CApi, ParseGrid) {
    size_t count = 0;
    double buf[2];
    ASSERT_EQ(mixqec_parse_grid("0.1:0.3:3", buf, 2, &count), MIXQEC_OK);
    EXPECT_EQ(count, 3u);
    EXPECT_DOUBLE_EQ(buf[0], 0.1);
    EXPECT_DOUBLE_EQ(buf[1], 0.2);
    ASSERT_EQ(mixqec_parse_grid("0.1:0.3:3", nullptr, 0, &count), MIXQEC_OK);
    EXPECT_EQ(mixqec_parse_grid("0:0.3:3", buf, 2, &count), MIXQEC_INVALID_ARGUMENT);
    EXPECT_EQ(mixqec_parse_grid("junk", buf, 2, &count), MIXQEC_INVALID_ARGUMENT);
}

TEST(CApi, ZeroToleranceCrossover) {
    Code c("perfect5");
    int found = 0;
    double p = 0;
    ASSERT_EQ(mixqec_zero_tolerance_crossover(c.h, 0.15, 0.21, 0.005, &found, &p), MIXQEC_OK);
    ASSERT_EQ(found, 1);
    EXPECT_GE(p, 0.17);
    EXPECT_LE(p, 0.19);
}

TEST(CApi, OptimizeAndJson) {
    Code c("rep3");
    mixqec_opt_options opts;
    mixqec_opt_options_default(&opts);
    EXPECT_EQ(opts.restarts, 8);
    mixqec_opt_result *r = nullptr;
    ASSERT_EQ(mixqec_optimize(c.h, 0.05, 0.2, &opts, &r), MIXQEC_OK) << mixqec_last_error();
    double best = 0, aug = 0, plain = 0;
    ASSERT_EQ(mixqec_opt_result_fidelity(r, &best, &aug, &plain), MIXQEC_OK);
    EXPECT_NEAR(best, aug, 1e-4);
    EXPECT_GE(best, plain - 1e-9);
    size_t count = 0;
    ASSERT_EQ(mixqec_opt_result_angles(r, nullptr, 0, &count), MIXQEC_OK);
    EXPECT_EQ(count, 12u);
    mixqec_text *t = nullptr;
    ASSERT_EQ(mixqec_opt_result_json(r, &t), MIXQEC_OK);
    auto j = nlohmann::json::parse(take(t));
    EXPECT_EQ(j["code"], "rep3");
    EXPECT_EQ(j["restarts"], 8);
    EXPECT_EQ(j["angles"].size(), 4u);
    EXPECT_EQ(j["angles"][3]["ancilla"], "11");
    EXPECT_NEAR(j["gap_to_augmented"].get<double>(), aug - best, 1e-15);
    mixqec_opt_result_destroy(r);

    Code a("rep3+aug");
    EXPECT_EQ(mixqec_optimize(a.h, 0.05, 0.2, &opts, &r), MIXQEC_INVALID_ARGUMENT);
    opts.restarts = 0;
    EXPECT_EQ(mixqec_optimize(c.h, 0.05, 0.2, &opts, &r), MIXQEC_INVALID_ARGUMENT);
    EXPECT_EQ(mixqec_optimize(c.h, 0.05, 0.2, &opts, nullptr), MIXQEC_INVALID_ARGUMENT);
    ASSERT_EQ(mixqec_optimize(c.h, 0.05, 0.0, nullptr, &r), MIXQEC_OK);
    ASSERT_EQ(mixqec_opt_result_fidelity(r, &best, &aug, &plain), MIXQEC_OK);
    EXPECT_NEAR(best, plain, 1e-6);
    mixqec_opt_result_destroy(r);
}

namespace {

struct Tally {
    int total = 0;
    int failed = 0;
};

void tally(const char *name, int passed, const char *detail, void *user) {
    auto *t = static_cast<Tally *>(user);
    t->total++;
    t->failed += passed ? 0 : 1;
    EXPECT_NE(name, nullptr);
    EXPECT_NE(detail, nullptr);
}

}  // namespace

TEST(CApi, VerifyCallbackAndCorruptionHook) {
    mixqec_verify_options opts;
    mixqec_verify_options_default(&opts);
    EXPECT_EQ(opts.oracle_points, 20);
    opts.oracle_points = 1;
    opts.grid = 5;
    opts.inject_corruption = 1;
    Tally t;
    int all = -1;
    ASSERT_EQ(mixqec_verify(&opts, tally, &t, &all), MIXQEC_OK);
    EXPECT_EQ(all, 0);
    EXPECT_GT(t.total, 50);
    EXPECT_GE(t.failed, 1);
}
