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

#include "mixqec/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <stdexcept>
#include <thread>

namespace mixqec {

namespace {

constexpr double kUsefulSlack = 1e-12;
constexpr int kScanSteps = 1000;
constexpr double kBisectionTol = 1e-6;

}  // namespace

AnalyzedCode analyze(const CodeSpec &code, const EngineOptions &options) {
    return AnalyzedCode{code, fidelity_polynomial(code, options)};
}

BiPoly CoefficientTable::reassemble() const {
    BiPoly f;
    for (const auto &[k, c] : coefficients) {
        f = f + c * BiPoly::monomial(k, 0);
    }
    return f;
}

bool usefulness(const AnalyzedCode &a, double p, double q) {
    return a.fidelity.eval(p, q) >= unencoded_baseline(a.code.family, p) - kUsefulSlack;
}

double tolerable_q(const AnalyzedCode &a, double p) {
    if (!(p > 0 && p <= 1)) {
        throw std::invalid_argument("tolerable q requires p in (0, 1]");
    }
    int last = -1;
    for (int i = 0; i <= kScanSteps; i++) {
        if (usefulness(a, p, static_cast<double>(i) / kScanSteps)) {
            last = i;
        }
    }
    if (last < 0) {
        return 0;
    }
    if (last == kScanSteps) {
        return 1;
    }
    double lo = static_cast<double>(last) / kScanSteps;
    double hi = static_cast<double>(last + 1) / kScanSteps;
    while (hi - lo > kBisectionTol) {
        double mid = 0.5 * (lo + hi);
        if (usefulness(a, p, mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

CoefficientTable coefficient_table(const AnalyzedCode &a, int max_k) {
    if (max_k < 0) {
        throw std::invalid_argument("max order must be non-negative");
    }
    if (max_k > a.code.n_qubits) {
        throw std::invalid_argument("max order exceeds the p-degree bound of the code");
    }
    CoefficientTable t{a.code.label, {}};
    for (int k = 0; k <= max_k; k++) {
        t.coefficients.emplace_back(k, a.fidelity.coefficient_in_p(k));
    }
    return t;
}

TolerableQCurve curve_sweep(const AnalyzedCode &a, std::span<const double> p_grid, int workers) {
    for (double p : p_grid) {
        if (!(p > 0 && p <= 1)) {
            throw std::invalid_argument("curve grid values must lie in (0, 1]");
        }
    }
    TolerableQCurve curve{a.code.label, std::vector<std::pair<double, double>>(p_grid.size()), kBisectionTol};
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t i = next++; i < p_grid.size(); i = next++) {
            curve.samples[i] = {p_grid[i], tolerable_q(a, p_grid[i])};
        }
    };
    int threads = std::clamp(workers, 1, std::max(1, static_cast<int>(p_grid.size())));
    if (threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; t++) {
            pool.emplace_back(work);
        }
    }
    return curve;
}

std::optional<double> zero_tolerance_crossover(const AnalyzedCode &a, double p_lo, double p_hi, double step) {
    if (!(p_lo > 0 && p_lo <= p_hi && p_hi <= 1 && step > 0)) {
        throw std::invalid_argument("crossover search needs 0 < p_lo <= p_hi <= 1 and step > 0");
    }
    auto zero = [&](double p) { return tolerable_q(a, p) == 0.0; };
    if (zero(p_lo)) {
        return p_lo;
    }
    double prev = p_lo;
    for (int i = 1;; i++) {
        double p = std::min(p_hi, p_lo + step * i);
        if (zero(p)) {
            double lo = prev, hi = p;
            while (hi - lo > kBisectionTol) {
                double mid = 0.5 * (lo + hi);
                (zero(mid) ? hi : lo) = mid;
            }
            return hi;
        }
        if (p >= p_hi) {
            return std::nullopt;
        }
        prev = p;
    }
}

std::vector<double> parse_grid(const std::string &spec) {
    double start = 0, stop = 0;
    long count = 0;
    char tail = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%ld%c", &start, &stop, &count, &tail) != 3) {
        throw std::invalid_argument("grid must look like start:stop:count, got '" + spec + "'");
    }
    if (!(start > 0 && start <= stop && stop <= 1)) {
        throw std::invalid_argument("grid requires 0 < start <= stop <= 1");
    }
    if (count < 1 || count > 1000000) {
        throw std::invalid_argument("grid count must be in [1, 1e6]");
    }
    std::vector<double> grid;
    for (long i = 0; i < count; i++) {
        grid.push_back(count == 1 ? start : start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1));
    }
    return grid;
}

nlohmann::json to_json(const CoefficientTable &t) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto &[k, c] : t.coefficients) {
        coeffs.push_back({{"k", k}, {"terms", to_json(c)}});
    }
    return {{"code", t.label}, {"coefficients", coeffs}};
}

std::string to_csv(std::span<const TolerableQCurve> curves) {
    std::string out = "p,q_star,code\n";
    char buf[96];
    for (const auto &c : curves) {
        for (const auto &[p, qs] : c.samples) {
            std::snprintf(buf, sizeof(buf), "%.10g,%.9f,", p, qs);
            out += buf;
            out += c.label;
            out += '\n';
        }
    }
    return out;
}

}  // namespace mixqec
