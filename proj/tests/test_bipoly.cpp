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

#include <cmath>
#include <random>

#include "mixqec/bipoly.hpp"

using namespace mixqec;

namespace {

const BiPoly P = BiPoly::p();
const BiPoly Q = BiPoly::q();
const BiPoly ONE = BiPoly::constant(1);

BiPoly random_poly(std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> deg(0, 3);
    std::uniform_real_distribution<double> c(-2, 2);
    BiPoly f;
    for (int t = 0; t < 4; t++) {
        f = f + BiPoly::monomial(deg(rng), deg(rng), c(rng));
    }
    return f;
}

// Direct sum of c * p^i * q^j, independent of the Horner path.
double naive_eval(const BiPoly &f, double p, double q) {
    double s = 0;
    for (const auto &[m, c] : f.terms()) {
        s += c * std::pow(p, m.p_pow) * std::pow(q, m.q_pow);
    }
    return s;
}

}  // namespace

TEST(BiPoly, AdditiveInverseIsZero) {
    EXPECT_TRUE((ONE + BiPoly::constant(-1)).is_zero());
    EXPECT_TRUE((P * Q - Q * P).is_zero());
}

TEST(BiPoly, ExpansionExample) {
    BiPoly f = (ONE - P) * (ONE - Q * 0.5);
    BiPoly expected = ONE - P - Q * 0.5 + P * Q * 0.5;
    EXPECT_EQ(f, expected);
    EXPECT_EQ(f.coeff(1, 1), 0.5);
    EXPECT_EQ(f.coeff(0, 1), -0.5);
    EXPECT_EQ(f.coeff(2, 0), 0.0);
}

TEST(BiPoly, PrunesTinyCoefficients) {
    BiPoly f = BiPoly::monomial(1, 0, 1.0) + BiPoly::monomial(1, 0, -1.0 + 1e-16);
    EXPECT_TRUE(f.is_zero());
    EXPECT_TRUE(BiPoly::monomial(2, 2, 5e-15).is_zero());
    EXPECT_FALSE(BiPoly::monomial(2, 2, 5e-14).is_zero());
}

TEST(BiPoly, RingAxiomsOnRandomTriples) {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 50; i++) {
        BiPoly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        EXPECT_LE((a * b).max_abs_diff(b * a), 1e-12);
        EXPECT_LE(((a * b) * c).max_abs_diff(a * (b * c)), 1e-12);
        EXPECT_LE((a * (b + c)).max_abs_diff(a * b + a * c), 1e-12);
    }
}

TEST(BiPoly, EvalExamples) {
    BiPoly c0 = ONE - Q * Q * 0.25;
    EXPECT_EQ(c0.eval(0.3, 0), 1.0);
    EXPECT_EQ(c0.eval(0.9, 1), 0.75);
    EXPECT_EQ(BiPoly().eval(0.5, 0.5), 0.0);
}

TEST(BiPoly, EvalIsHomomorphismAndMatchesNaiveSum) {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 50; i++) {
        BiPoly f = random_poly(rng), g = random_poly(rng);
        double p = u(rng), q = u(rng);
        EXPECT_NEAR((f * g).eval(p, q), f.eval(p, q) * g.eval(p, q), 1e-12);
        EXPECT_NEAR(f.eval(p, q), naive_eval(f, p, q), 1e-12);
    }
}

TEST(BiPoly, CoefficientInP) {
    BiPoly f = ONE - Q * Q * 0.25 - P * Q * 2 + P * Q * Q * 1.5;
    EXPECT_EQ(f.coefficient_in_p(0), ONE - Q * Q * 0.25);
    EXPECT_EQ(f.coefficient_in_p(1), Q * -2 + Q * Q * 1.5);
    EXPECT_TRUE(f.coefficient_in_p(2).is_zero());
    EXPECT_TRUE(BiPoly().coefficient_in_p(3).is_zero());
}

TEST(BiPoly, Degrees) {
    BiPoly f = P.pow(3) * Q + Q.pow(5) * 2;
    EXPECT_EQ(f.degree_p(), 3);
    EXPECT_EQ(f.degree_q(), 5);
    EXPECT_EQ(BiPoly().degree_p(), 0);
    EXPECT_EQ(P.pow(0), ONE);
}

TEST(BiPoly, PowMatchesRepeatedProduct) {
    BiPoly base = ONE - Q * 0.5;
    BiPoly r = ONE;
    for (int k = 0; k < 6; k++) {
        EXPECT_LE(base.pow(k).max_abs_diff(r), 1e-15);
        r = r * base;
    }
}

TEST(BiPoly, CanonicalOrderIsGradedWithPFirst) {
    BiPoly f = Q * Q + P * Q + P * P + Q + P + ONE;
    std::vector<std::pair<int, int>> order;
    for (const auto &[m, c] : f.terms()) {
        order.emplace_back(m.p_pow, m.q_pow);
    }
    std::vector<std::pair<int, int>> expected = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
    EXPECT_EQ(order, expected);
}

TEST(BiPoly, JsonRoundTripAndSchema) {
    BiPoly f = ONE - Q * Q * 0.25 - P * Q * 2;
    nlohmann::json j = to_json(f);
    ASSERT_TRUE(j.is_array());
    ASSERT_EQ(j.size(), 3u);
    for (const auto &t : j) {
        EXPECT_TRUE(t.contains("p_pow") && t.contains("q_pow") && t.contains("coeff"));
    }
    EXPECT_EQ(j[0]["p_pow"], 0);
    EXPECT_EQ(j[0]["q_pow"], 0);
    EXPECT_EQ(bipoly_from_json(j), f);
    EXPECT_THROW(bipoly_from_json(nlohmann::json::object()), std::invalid_argument);
}

TEST(BiPoly, ToString) {
    EXPECT_EQ(BiPoly().to_string(), "0");
    BiPoly f = ONE - Q * 2 + P * Q * Q * 0.5;
    EXPECT_EQ(f.to_string(), "1 - 2*q + 0.5*p*q^2");
}
