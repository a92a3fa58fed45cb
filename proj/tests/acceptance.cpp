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

// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "mixqec/analysis.hpp"
#include "mixqec/encoder_opt.hpp"
#include "mixqec/verification.hpp"

using namespace mixqec;

namespace {

constexpr double kCoeffTol = 1e-9;
constexpr double kOracleTol = 1e-10;
constexpr double kExactTol = 1e-12;
constexpr double kLimitTol = 1e-3;
constexpr double kCurveTol = 1e-4;
constexpr double kOptimizerTol = 1e-4;
constexpr double kTable1Seconds = 300;
constexpr double kTable2Seconds = 60;
constexpr double kOptimizerSeconds = 600;

int failures = 0;

void verdict(int criterion, bool ok, const std::string &what, const std::string &detail) {
    std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", criterion, what.c_str(), detail.c_str());
    std::fflush(stdout);
    failures += ok ? 0 : 1;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, v);
    return buf;
}

// A displayed table entry: the listed q-monomials of c_k. When `complete` the
// entry has no trailing ellipsis, so every other monomial must vanish. Without
// it, monomials below the highest displayed power must still vanish.
struct Entry {
    const char *label;
    int k;
    std::map<int, double> shown;
    bool complete;
};

struct Mismatch {
    std::string where;
    double got;
    double want;
};

std::vector<Mismatch> compare(const BiPoly &fidelity, const Entry &e) {
    std::vector<Mismatch> out;
    BiPoly c = fidelity.coefficient_in_p(e.k);
    int top = e.shown.empty() ? 0 : e.shown.rbegin()->first;
    int limit = e.complete ? std::max(top, c.degree_q()) : top;
    for (int j = 0; j <= limit; j++) {
        auto it = e.shown.find(j);
        double want = it == e.shown.end() ? 0.0 : it->second;
        double got = c.coeff(0, j);
        if (std::abs(got - want) > kCoeffTol) {
            out.push_back({std::string(e.label) + " c" + std::to_string(e.k) + " q^" + std::to_string(j), got, want});
        }
    }
    return out;
}

std::string describe(const std::vector<Mismatch> &ms) {
    std::string s;
    for (const auto &m : ms) {
        if (!s.empty()) s += "; ";
        s += m.where + " computed " + fmt("%.6g", m.got) + " vs table " + fmt("%.6g", m.want);
    }
    return s;
}

double max_oracle_gap(const AnalyzedCode &a, const std::vector<std::pair<double, double>> &points) {
    double worst = 0;
    for (auto [p, q] : points) {
        worst = std::max(worst, std::abs(a.fidelity.eval(p, q) - oracle_fidelity(a.code, p, q)));
    }
    return worst;
}

std::map<std::string, AnalyzedCode> analyzed;

const AnalyzedCode &get(const std::string &label) {
    auto it = analyzed.find(label);
    if (it == analyzed.end()) {
        it = analyzed.emplace(label, analyze(code_from_label(label))).first;
    }
    return it->second;
}

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    for (const char *l : {"rep3", "rep5", "rep7", "rep9", "rep3+aug", "rep5+aug", "rep7+aug", "rep9+aug"}) {
        get(l);
    }
    double elapsed = seconds_since(t0);
    bool perm = permutation_path_applicable(code_from_label("rep9")) &&
                permutation_path_applicable(code_from_label("rep9+aug"));

    std::vector<Entry> table = {
        {"rep3", 0, {{0, 1}, {2, -0.25}}, true},
        {"rep3", 1, {{1, -2}, {2, 1.5}}, true},
        {"rep5", 0, {{0, 1}, {3, -0.5}}, false},
        {"rep5", 1, {{2, -4.5}, {3, 6}}, false},
        {"rep7", 0, {{0, 1}, {4, -15.0 / 16}}, false},
        {"rep7", 1, {{3, -10}}, false},
        {"rep9", 0, {{0, 1}, {5, -1.75}}, false},
        {"rep9", 1, {{4, -175.0 / 8}}, false},
        {"rep3+aug", 0, {{0, 1}}, true},
        {"rep3+aug", 1, {{1, -2}, {2, 0.5}}, true},
        {"rep5+aug", 0, {{0, 1}}, true},
        {"rep5+aug", 1, {{2, -4.5}, {3, 3}}, false},
        {"rep7+aug", 0, {{0, 1}}, true},
        {"rep9+aug", 0, {{0, 1}}, true},
        {"rep9+aug", 1, {{4, -175.0 / 8}}, false},
    };
    std::vector<Mismatch> bad;
    for (const auto &e : table) {
        auto ms = compare(get(e.label).fidelity, e);
        bad.insert(bad.end(), ms.begin(), ms.end());
    }

    // The 7-qubit augmented c_1 entry is compared separately: a mismatch is
    // acceptable only if the polynomial agrees with the density-matrix oracle.
    Entry rep7aug{"rep7+aug", 1, {{3, -5.0 / 16}}, false};
    auto ms7 = compare(get("rep7+aug").fidelity, rep7aug);
    double gap7 = max_oracle_gap(get("rep7+aug"), seeded_points(7, 8));
    bool rep7_ok = ms7.empty() || gap7 <= kOracleTol;

    bool ok = bad.empty() && rep7_ok && perm && elapsed <= kTable1Seconds;
    std::string detail = bad.empty() ? "all other displayed monomials within 1e-9" : describe(bad);
    if (!ms7.empty()) {
        detail += "; documented discrepancy: " + describe(ms7) + ", oracle-validated to " + fmt("%.1e", gap7);
    }
    detail += "; rep9 permutation path " + std::string(perm ? "used" : "NOT available");
    detail += "; " + fmt("%.2f", elapsed) + " s <= " + fmt("%.0f", kTable1Seconds) + " s";
    verdict(1, ok, "repetition-code coefficients", detail);
}

void criterion2() {
    auto t0 = std::chrono::steady_clock::now();
    get("perfect5");
    get("perfect5+aug");
    double elapsed = seconds_since(t0);
    bool depol = get("perfect5").code.family == ChannelFamily::depolarizing;
    std::vector<Entry> table = {
        {"perfect5", 0, {{0, 1}, {2, -1.5}, {3, 1}}, false},
        {"perfect5", 1, {{1, -6}, {2, 10.5}, {3, -5.5}}, false},
        {"perfect5+aug", 0, {{0, 1}}, true},
        {"perfect5+aug", 1, {{1, -6}, {2, 4.5}, {3, -1.5}}, false},
    };
    std::vector<Mismatch> bad;
    for (const auto &e : table) {
        auto ms = compare(get(e.label).fidelity, e);
        bad.insert(bad.end(), ms.begin(), ms.end());
    }
    bool ok = bad.empty() && depol && elapsed <= kTable2Seconds;
    std::string detail = bad.empty() ? "all displayed monomials within 1e-9" : describe(bad);
    detail += "; " + std::to_string(pattern_count(get("perfect5").code)) + " patterns";
    detail += "; " + fmt("%.2f", elapsed) + " s <= " + fmt("%.0f", kTable2Seconds) + " s";
    verdict(2, ok, "perfect-code coefficients under depolarization", detail);
}

void criterion3() {
    std::vector<Entry> table = {
        {"concat3-unaug", 0, {{0, 1}, {2, -0.25}, {3, 0.5}}, false},
        {"concat3-unaug", 1, {{2, -4}, {3, 3}}, false},
        {"concat3-top", 0, {{0, 1}, {3, -0.5}}, false},
        {"concat3-top", 1, {{2, -4}, {3, 1}}, false},
        {"concat3-full", 0, {{0, 1}}, true},
        {"concat3-full", 1, {{2, -4}, {3, 2}}, false},
    };
    std::vector<Mismatch> bad;
    for (const auto &e : table) {
        auto ms = compare(get(e.label).fidelity, e);
        bad.insert(bad.end(), ms.begin(), ms.end());
    }
    double gap = max_oracle_gap(get("concat3-unaug"), seeded_points(3, 3));
    std::string detail = bad.empty() ? "all displayed monomials within 1e-9" : describe(bad);
    detail += "; concat3-unaug polynomial vs oracle " + fmt("%.1e", gap);
    verdict(3, bad.empty(), "concatenated-code coefficients", detail);
}

void criterion4() {
    double limit = 2 - std::sqrt(2.0);
    double rep3 = tolerable_q(get("rep3+aug"), 1e-4);
    double full = tolerable_q(get("concat3-full"), 1e-4);
    std::vector<double> grid = parse_grid("0.0001:0.3:50");
    TolerableQCurve concat = curve_sweep(get("concat3-unaug"), grid);
    TolerableQCurve plain = curve_sweep(get("rep3"), grid);
    double worst = 0;
    for (size_t i = 0; i < grid.size(); i++) {
        worst = std::max(worst, std::abs(concat.samples[i].second - plain.samples[i].second));
    }
    bool ok = std::abs(rep3 - limit) <= kLimitTol && std::abs(full - limit) <= kLimitTol && worst <= kCurveTol;
    std::string detail = "q*(rep3+aug) = " + fmt("%.6f", rep3) + ", q*(concat3-full) = " + fmt("%.6f", full) +
                         ", 2-sqrt(2) = " + fmt("%.6f", limit) + "; max |q*(concat3-unaug) - q*(rep3)| over " +
                         std::to_string(grid.size()) + " points = " + fmt("%.2e", worst);
    verdict(4, ok, "tolerable-q limits and curve identity", detail);
}

void criterion5() {
    std::optional<double> p = zero_tolerance_crossover(get("perfect5"), 1e-4, 0.3, 1e-3);
    bool ok = p.has_value() && *p >= 0.17 && *p <= 0.19;
    verdict(5, ok, "perfect-code zero-tolerance crossover in [0.17, 0.19]",
            p ? "smallest p with q* = 0 is " + fmt("%.6f", *p) : std::string("no crossover found"));
}

void criterion6() {
    auto points = seeded_points(20110, 20);
    double worst = 0;
    std::string worst_label;
    int instances = 0;
    for (const auto &label : standard_labels()) {
        double gap = max_oracle_gap(get(label), points);
        instances++;
        if (gap >= worst) {
            worst = gap;
            worst_label = label;
        }
    }
    verdict(6, worst <= kOracleTol, "polynomial equals density-matrix oracle",
            std::to_string(instances) + " instances x " + std::to_string(points.size()) +
                " seeded points, max gap " + fmt("%.2e", worst) + " (" + worst_label + ")");
}

BiPoly terms_without_q(const BiPoly &f) {
    BiPoly out;
    for (const auto &[m, c] : f.terms()) {
        if (m.q_pow == 0) out = out + BiPoly::monomial(m.p_pow, 0, c);
    }
    return out;
}

void criterion7() {
    std::vector<std::pair<std::string, std::string>> pairs = {
        {"rep3", "rep3+aug"},         {"rep5", "rep5+aug"},         {"rep7", "rep7+aug"},
        {"rep9", "rep9+aug"},         {"perfect5", "perfect5+aug"}, {"concat3-unaug", "concat3-top"},
        {"concat3-unaug", "concat3-full"}};
    double dominance = 0, full_square = 0, collapse = 0;
    for (const auto &[plain, aug] : pairs) {
        const BiPoly &fu = get(plain).fidelity;
        const BiPoly &fa = get(aug).fidelity;
        double p_max = dominance_p_max(get(plain).code.family);
        for (int i = 0; i <= 20; i++) {
            for (int j = 0; j <= 20; j++) {
                double q = j / 20.0;
                dominance = std::min(dominance, fa.eval(p_max * i / 20.0, q) - fu.eval(p_max * i / 20.0, q));
                full_square = std::min(full_square, fa.eval(i / 20.0, q) - fu.eval(i / 20.0, q));
            }
        }
        collapse = std::max(collapse, terms_without_q(fa).max_abs_diff(terms_without_q(fu)));
    }

    double c0 = 0;
    for (const char *l : {"rep3+aug", "rep5+aug", "rep7+aug", "rep9+aug", "perfect5+aug", "concat3-full"}) {
        c0 = std::max(c0, get(l).fidelity.coefficient_in_p(0).max_abs_diff(BiPoly::constant(1)));
    }

    double mixed = -1;
    for (const auto &label : standard_labels()) {
        const AnalyzedCode &a = get(label);
        for (int i = 1; i <= 30; i++) {
            double p = 0.01 * i;
            mixed = std::max(mixed, a.fidelity.eval(p, 1.0) - unencoded_baseline(a.code.family, p));
        }
    }

    bool ok = dominance >= -kExactTol && c0 <= kExactTol && collapse <= kExactTol && mixed <= kExactTol;
    std::string detail = "min(aug - unaug) on 21x21 grid (bit-flip p <= 1/2, depolarizing p <= 1) = " +
                         fmt("%.2e", dominance) + " [full unit square: " + fmt("%.3f", full_square) +
                         "]; max |c0 - 1| over fully augmented codes = " + fmt("%.2e", c0) +
                         "; q=0 collapse = " + fmt("%.2e", collapse) + "; max F(p,1) - baseline = " + fmt("%.2e", mixed);
    verdict(7, ok, "dominance, c0 = 1, pure-ancilla collapse, maximally mixed not useful", detail);
}

void criterion8() {
    BiPoly f = terms_without_q(get("rep3").fidelity);
    BiPoly expected = BiPoly::constant(1) - BiPoly::monomial(2, 0, 3) + BiPoly::monomial(3, 0, 2);
    double dev = f.max_abs_diff(expected);
    verdict(8, dev <= kExactTol, "rep3 at q=0 is 1 - 3p^2 + 2p^3", "max coefficient deviation " + fmt("%.2e", dev));
}

void criterion9() {
    struct Case {
        const char *label;
        double p, q;
    };
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (const Case &c : {Case{"rep3", 0.05, 0.2}, Case{"perfect5", 0.02, 0.1}}) {
        CodeSpec code = code_from_label(c.label);
        OptimizationResult r = optimize(code, c.p, c.q, {.restarts = 8, .seed = 1});
        double aug = get(std::string(c.label) + "+aug").fidelity.eval(c.p, c.q);
        double gap = aug - r.fidelity;
        ok = ok && std::abs(gap) <= kOptimizerTol;
        if (!detail.empty()) detail += "; ";
        detail += std::string(c.label) + " gap " + fmt("%.2e", gap);
    }
    double elapsed = seconds_since(t0);
    ok = ok && elapsed <= kOptimizerSeconds;
    detail += "; 8 restarts each, " + fmt("%.2f", elapsed) + " s <= " + fmt("%.0f", kOptimizerSeconds) + " s";
    verdict(9, ok, "optimized encoder prefix matches the augmented code", detail);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    std::printf("%d of 9 criteria passed\n", 9 - failures);
    return failures == 0 ? 0 : 1;
}
