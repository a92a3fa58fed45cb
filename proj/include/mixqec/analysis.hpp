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

#ifndef MIXQEC_ANALYSIS_HPP
#define MIXQEC_ANALYSIS_HPP

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mixqec/bipoly.hpp"
#include "mixqec/codes.hpp"
#include "mixqec/fidelity_engine.hpp"

namespace mixqec {

/// A code together with its fidelity polynomial.
struct AnalyzedCode {
    CodeSpec code;
    BiPoly fidelity;
};

AnalyzedCode analyze(const CodeSpec &code, const EngineOptions &options = {});

struct CoefficientTable {
    std::string label;
    std::vector<std::pair<int, BiPoly>> coefficients;

    /// sum_k c_k(q) p^k
    BiPoly reassemble() const;
};

struct TolerableQCurve {
    std::string label;
    std::vector<std::pair<double, double>> samples;  // (p, q*)
    double resolution = 1e-6;
};

/// F_C(p, q) >= unencoded baseline - 1e-12
bool usefulness(const AnalyzedCode &a, double p, double q);

/// Largest q in [0, 1] at which the code stays useful: a 1e-3 scan for the last
/// useful grid point, then bisection to 1e-6 across the following step.
/// No monotonicity in q is assumed. Throws for p outside (0, 1].
double tolerable_q(const AnalyzedCode &a, double p);

CoefficientTable coefficient_table(const AnalyzedCode &a, int max_k);

TolerableQCurve curve_sweep(const AnalyzedCode &a, std::span<const double> p_grid, int workers = 1);

/// Smallest p in [p_lo, p_hi] at which tolerable_q is 0, located by a scan with
/// `step` and refined by bisection to 1e-6. Empty if tolerable_q never reaches 0.
std::optional<double> zero_tolerance_crossover(const AnalyzedCode &a, double p_lo, double p_hi, double step = 1e-3);

/// Linear grid start:stop:count (inclusive). Requires 0 < start <= stop <= 1.
std::vector<double> parse_grid(const std::string &spec);

nlohmann::json to_json(const CoefficientTable &t);
/// "p,q_star,code" header plus one row per sample.
std::string to_csv(std::span<const TolerableQCurve> curves);

}  // namespace mixqec

#endif
