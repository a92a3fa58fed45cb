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

#include "mixqec/verification.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <thread>

namespace mixqec {

namespace {

std::string format_double(const char *fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

// Terms of f with q_pow == 0, i.e. f(p, 0).
BiPoly at_q_zero(const BiPoly &f) {
    BiPoly out;
    for (const auto &[m, c] : f.terms()) {
        if (m.q_pow == 0) {
            out = out + BiPoly::monomial(m.p_pow, 0, c);
        }
    }
    return out;
}

}  // namespace

double dominance_p_max(ChannelFamily family) {
    return family == ChannelFamily::bitflip ? 0.5 : 1.0;
}

CodeSpec corrupted_augmented_rep3() {
    CodeSpec code = augment(repetition_code(1));
    Circuit enc(code.n_qubits);
    enc.append(Gate::x(0));
    enc.append(repetition_code(1).encoder);
    code.encoder = enc;
    return code;
}

std::vector<std::pair<double, double>> seeded_points(uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < count; i++) {
        double p = u(rng);
        double q = u(rng);
        pts.emplace_back(p, q);
    }
    return pts;
}

std::vector<PropertyResult> run_verification(const VerifyOptions &options,
                                             const std::function<void(const PropertyResult &)> &on_result) {
    std::vector<PropertyResult> results;
    auto report = [&](PropertyResult r) {
        if (on_result) {
            on_result(r);
        }
        results.push_back(std::move(r));
    };

    std::vector<std::string> labels = standard_labels();
    std::map<std::string, AnalyzedCode> codes;
    EngineOptions engine{options.workers, PropagationPath::automatic};
    for (const auto &label : labels) {
        CodeSpec code = (options.inject_corruption && label == "rep3+aug") ? corrupted_augmented_rep3()
                                                                           : code_from_label(label);
        codes.emplace(label, analyze(code, engine));
    }

    // Oracle equivalence.
    auto points = seeded_points(options.seed, options.oracle_points);
    for (const auto &label : labels) {
        const AnalyzedCode &a = codes.at(label);
        std::vector<double> diffs(points.size());
        std::atomic<size_t> next{0};
        auto work = [&] {
            for (size_t i = next++; i < points.size(); i = next++) {
                auto [p, q] = points[i];
                diffs[i] = std::abs(a.fidelity.eval(p, q) - oracle_fidelity(a.code, p, q));
            }
        };
        int threads = std::clamp(options.workers, 1, static_cast<int>(std::max<size_t>(1, points.size())));
        if (threads == 1) {
            work();
        } else {
            std::vector<std::jthread> pool;
            for (int t = 0; t < threads; t++) {
                pool.emplace_back(work);
            }
        }
        double worst = diffs.empty() ? 0 : *std::max_element(diffs.begin(), diffs.end());
        report({"oracle-equivalence[" + label + "]", worst <= 1e-10, "max |poly - oracle| = " + format_double("%.3e", worst)});
    }

    // Degree bounds.
    for (const auto &label : labels) {
        const AnalyzedCode &a = codes.at(label);
        int n = a.code.n_qubits;
        int dp = a.fidelity.degree_p();
        int dq = a.fidelity.degree_q();
        report({"degree-bounds[" + label + "]", dp <= n && dq <= n - 1,
                "deg_p = " + std::to_string(dp) + " <= " + std::to_string(n) + ", deg_q = " + std::to_string(dq) +
                    " <= " + std::to_string(n - 1)});
    }

    // Fidelity stays within [0, 1] over the whole square.
    for (const auto &label : labels) {
        const BiPoly &f = codes.at(label).fidelity;
        double lo = 1, hi = 0;
        for (int i = 0; i < options.grid; i++) {
            for (int j = 0; j < options.grid; j++) {
                double p = options.grid == 1 ? 0 : static_cast<double>(i) / (options.grid - 1);
                double q = options.grid == 1 ? 0 : static_cast<double>(j) / (options.grid - 1);
                double v = f.eval(p, q);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        char buf[96];
        std::snprintf(buf, sizeof(buf), "range [%.6f, %.15f]", lo, hi);
        report({"fidelity-range[" + label + "]", lo >= -1e-10 && hi <= 1 + 1e-10, buf});
    }

    // Augmented versus unaugmented pairs.
    std::vector<std::pair<std::string, std::string>> pairs = {
        {"rep3", "rep3+aug"},           {"rep5", "rep5+aug"},          {"rep7", "rep7+aug"},
        {"rep9", "rep9+aug"},           {"perfect5", "perfect5+aug"},  {"concat3-unaug", "concat3-top"},
        {"concat3-unaug", "concat3-full"}};
    int g = options.grid;
    for (const auto &[plain, aug] : pairs) {
        const BiPoly &fu = codes.at(plain).fidelity;
        const BiPoly &fa = codes.at(aug).fidelity;
        double p_max = dominance_p_max(codes.at(plain).code.family);
        double worst = 0;
        for (int i = 0; i < g; i++) {
            for (int j = 0; j < g; j++) {
                double p = g == 1 ? 0 : p_max * static_cast<double>(i) / (g - 1);
                double q = g == 1 ? 0 : static_cast<double>(j) / (g - 1);
                worst = std::min(worst, fa.eval(p, q) - fu.eval(p, q));
            }
        }
        report({"dominance[" + aug + " >= " + plain + "]", worst >= -1e-12,
                "min (aug - unaug) over p <= " + format_double("%g", p_max) + " = " + format_double("%.3e", worst)});

        double collapse = at_q_zero(fa).max_abs_diff(at_q_zero(fu));
        report({"pure-ancilla-collapse[" + aug + " == " + plain + " at q=0]", collapse <= 1e-12,
                "max coefficient diff = " + format_double("%.3e", collapse)});
    }

    for (const auto &label : labels) {
        const AnalyzedCode &a = codes.at(label);
        // Top-level-only augmentation leaves inner false syndromes uncorrected.
        if (!a.code.augmented || label == "concat3-top") {
            continue;
        }
        BiPoly c0 = a.fidelity.coefficient_in_p(0);
        double dev = c0.max_abs_diff(BiPoly::constant(1));
        report({"augmented-c0-is-one[" + label + "]", dev <= 1e-12, "max |c0 - 1| coefficient = " + format_double("%.3e", dev)});

        // Zero main errors: only the k = 0 column of the histogram contributes.
        WeightHistogram w = weight_histogram(a.code, engine);
        BiPoly init_only;
        int na = w.ancillas();
        BiPoly flip = BiPoly::q() * 0.5;
        BiPoly keep = BiPoly::constant(1) - flip;
        for (int j = 0; j <= na; j++) {
            init_only = init_only + flip.pow(j) * keep.pow(na - j) * w.at(j, 0);
        }
        double tdev = init_only.max_abs_diff(BiPoly::constant(1));
        report({"trivial-error-identity[" + label + "]", tdev <= 1e-12,
                "max |sum_j W[j][0] P(j) - 1| coefficient = " + format_double("%.3e", tdev)});
    }

    // Maximally mixed ancillas are never useful.
    for (const auto &label : labels) {
        const AnalyzedCode &a = codes.at(label);
        double worst = -1;
        for (int i = 1; i <= 30; i++) {
            double p = 0.01 * i;
            worst = std::max(worst, a.fidelity.eval(p, 1.0) - unencoded_baseline(a.code.family, p));
        }
        report({"maximally-mixed-not-useful[" + label + "]", worst <= 1e-12,
                "max (F(p,1) - baseline) on (0, 0.3] = " + format_double("%.3e", worst)});
    }

    // Both propagation paths agree.
    for (const std::string label : {"rep3", "rep3+aug", "concat3-unaug", "concat3-full"}) {
        const AnalyzedCode &a = codes.at(label);
        BiPoly generic = fidelity_polynomial(a.code, {options.workers, PropagationPath::generic});
        BiPoly perm = fidelity_polynomial(a.code, {options.workers, PropagationPath::permutation});
        double dev = generic.max_abs_diff(perm);
        report({"permutation-path[" + label + "]", dev <= 1e-12, "max coefficient diff = " + format_double("%.3e", dev)});
    }
    return results;
}

}  // namespace mixqec
