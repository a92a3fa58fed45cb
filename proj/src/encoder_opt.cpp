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

#include "mixqec/encoder_opt.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

#include "mixqec/fidelity_engine.hpp"

namespace mixqec {

namespace {

constexpr int kMaxOptimizeQubits = 7;

}  // namespace

ComplexMatrix zyz_unitary(const EulerAngles &a) {
    double c = std::cos(a.beta / 2);
    double s = std::sin(a.beta / 2);
    auto e = [](double phi) { return std::polar(1.0, phi); };
    return ComplexMatrix::from_2x2(e(-(a.alpha + a.gamma) / 2) * c, -e(-(a.alpha - a.gamma) / 2) * s,
                                   e((a.alpha - a.gamma) / 2) * s, e((a.alpha + a.gamma) / 2) * c);
}

EulerAngles zyz_angles(const ComplexMatrix &u) {
    if (u.rows() != 2 || u.cols() != 2) {
        throw std::invalid_argument("ZYZ decomposition needs a 2x2 matrix");
    }
    // Strip the global phase so that u = [[a, -conj(b)], [b, conj(a)]].
    Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    Complex phase = std::sqrt(det);
    Complex a = u(0, 0) / phase;
    Complex b = u(1, 0) / phase;
    double beta = 2 * std::atan2(std::abs(b), std::abs(a));
    double sum = 0, diff = 0;
    constexpr double eps = 1e-12;
    if (std::abs(a) > eps) {
        sum = -2 * std::arg(a);
    }
    if (std::abs(b) > eps) {
        diff = 2 * std::arg(b);
    }
    return {(sum + diff) / 2, beta, (sum - diff) / 2};
}

ControlledUnitaryFamily::ControlledUnitaryFamily(int n_qubits)
    : n_qubits_(n_qubits), angles_(size_t{1} << (n_qubits - 1)) {
    if (n_qubits < 2) {
        throw std::invalid_argument("family needs at least one ancilla");
    }
}

ControlledUnitaryFamily::ControlledUnitaryFamily(int n_qubits, std::vector<EulerAngles> angles)
    : n_qubits_(n_qubits), angles_(std::move(angles)) {
    if (n_qubits < 2 || angles_.size() != (size_t{1} << (n_qubits - 1))) {
        throw std::invalid_argument("family needs one angle triple per ancilla string");
    }
}

ControlledUnitaryFamily ControlledUnitaryFamily::from_parameters(int n_qubits, std::span<const double> params) {
    if (params.size() != 3 * (size_t{1} << (n_qubits - 1))) {
        throw std::invalid_argument("parameter count must be 3 * 2^(n-1)");
    }
    std::vector<EulerAngles> angles(params.size() / 3);
    for (size_t k = 0; k < angles.size(); k++) {
        angles[k] = {params[3 * k], params[3 * k + 1], params[3 * k + 2]};
    }
    return ControlledUnitaryFamily(n_qubits, std::move(angles));
}

std::vector<double> ControlledUnitaryFamily::parameters() const {
    std::vector<double> out;
    out.reserve(parameter_count());
    for (const auto &a : angles_) {
        out.insert(out.end(), {a.alpha, a.beta, a.gamma});
    }
    return out;
}

Circuit family_to_circuit(const ControlledUnitaryFamily &f) {
    Circuit c(f.n_qubits());
    for (uint32_t s = 0; s < f.angles().size(); s++) {
        c.append(Gate{0, zyz_unitary(f.angles()[s]), syndrome_controls(f.n_qubits(), s)});
    }
    return c;
}

ControlledUnitaryFamily inverse_recovery_family(const CodeSpec &code) {
    RecoveryTable table = recovery_table_of(code.recovery);
    std::vector<EulerAngles> angles(size_t{1} << code.ancilla_count());
    for (const auto &[s, u] : table.corrections) {
        angles[s] = zyz_angles(u.adjoint());
    }
    return ControlledUnitaryFamily(code.n_qubits, std::move(angles));
}

CodeSpec with_family_prefix(const CodeSpec &code, const ControlledUnitaryFamily &f) {
    if (code.augmented) {
        throw std::invalid_argument("encoder optimization starts from an unaugmented code");
    }
    if (f.n_qubits() != code.n_qubits) {
        throw std::invalid_argument("family and code sizes differ");
    }
    CodeSpec out = code;
    out.encoder = family_to_circuit(f);
    out.encoder.append(code.encoder);
    return out;
}

double objective(const CodeSpec &code, const ControlledUnitaryFamily &f, double p, double q) {
    return oracle_fidelity(with_family_prefix(code, f), p, q);
}

CompiledObjective::CompiledObjective(const CodeSpec &code, double p, double q) : n_qubits_(code.n_qubits) {
    if (!(p >= 0 && p <= 1 && q >= 0 && q <= 1)) {
        throw std::invalid_argument("p and q must lie in [0, 1]");
    }
    if (code.augmented) {
        throw std::invalid_argument("encoder optimization starts from an unaugmented code");
    }
    if (code.n_qubits > kMaxOptimizeQubits) {
        throw std::invalid_argument("encoder optimization supports at most 7 qubits");
    }
    code.validate();
    int n = code.n_qubits;
    int na = code.ancilla_count();
    size_t branches = size_t{1} << na;
    size_t dim = size_t{1} << n;
    size_t msb = dim >> 1;

    branch_weight_.resize(branches);
    for (size_t a = 0; a < branches; a++) {
        double w = 1;
        for (int k = 0; k < na; k++) {
            w *= ((a >> k) & 1) ? q / 2 : 1 - q / 2;
        }
        branch_weight_[a] = w;
    }

    auto enc = code.encoder.compile();
    Circuit post = code.decoder;
    post.append(code.recovery);
    auto post_ops = post.compile();
    KrausChannel channel =
        code.family == ChannelFamily::bitflip ? main_bitflip_channel(p) : depolarizing_channel(p);
    const int keep[] = {0};

    transfer_.assign(branches * 16, Complex{});
    for (size_t a = 0; a < branches; a++) {
        StateVector encoded[2] = {StateVector::basis(n, a), StateVector::basis(n, msb | a)};
        for (auto &s : encoded) {
            for (const auto &op : enc) {
                s.apply(op);
            }
        }
        for (size_t xp = 0; xp < 2; xp++) {
            for (size_t yp = 0; yp < 2; yp++) {
                ComplexMatrix m(dim, dim);
                for (size_t r = 0; r < dim; r++) {
                    for (size_t c = 0; c < dim; c++) {
                        m(r, c) = encoded[xp][r] * std::conj(encoded[yp][c]);
                    }
                }
                for (int qb = 0; qb < n; qb++) {
                    apply_local_channel(channel, n, qb, m);
                }
                for (const auto &op : post_ops) {
                    op.conjugate(m);
                }
                DensityMatrix reduced = partial_trace(DensityMatrix::trusted(std::move(m)), keep);
                for (size_t x = 0; x < 2; x++) {
                    for (size_t y = 0; y < 2; y++) {
                        transfer_[a * 16 + xp * 8 + yp * 4 + x * 2 + y] = reduced(x, y);
                    }
                }
            }
        }
    }
}

double CompiledObjective::operator()(const ControlledUnitaryFamily &f) const {
    if (f.n_qubits() != n_qubits_) {
        throw std::invalid_argument("family and code sizes differ");
    }
    Complex total = 0;
    for (size_t a = 0; a < branch_weight_.size(); a++) {
        ComplexMatrix u = zyz_unitary(f.angles()[a]);
        const Complex *t = &transfer_[a * 16];
        Complex branch = 0;
        for (size_t xp = 0; xp < 2; xp++) {
            for (size_t yp = 0; yp < 2; yp++) {
                for (size_t x = 0; x < 2; x++) {
                    for (size_t y = 0; y < 2; y++) {
                        branch += u(xp, x) * std::conj(u(yp, y)) * t[xp * 8 + yp * 4 + x * 2 + y];
                    }
                }
            }
        }
        total += branch * branch_weight_[a];
    }
    return total.real() / 4;
}

double CompiledObjective::operator()(std::span<const double> params) const {
    return (*this)(ControlledUnitaryFamily::from_parameters(n_qubits_, params));
}

SimplexResult nelder_mead(const std::function<double(std::span<const double>)> &f, std::vector<double> x0,
                          double step, double diameter_tol, long max_evaluations) {
    // Dimension-adaptive coefficients (Gao & Han) behave better than the
    // classic ones beyond a handful of parameters.
    const size_t dim = x0.size();
    const double nd = static_cast<double>(dim);
    const double reflect = 1.0;
    const double expand = 1.0 + 2.0 / nd;
    const double contract = 0.75 - 1.0 / (2.0 * nd);
    const double shrink = 1.0 - 1.0 / nd;

    long evals = 0;
    auto eval = [&](const std::vector<double> &x) {
        evals++;
        return f(x);
    };

    std::vector<std::vector<double>> simplex(dim + 1, x0);
    std::vector<double> values(dim + 1);
    for (size_t k = 0; k < dim; k++) {
        simplex[k + 1][k] += step;
    }
    for (size_t k = 0; k <= dim; k++) {
        values[k] = eval(simplex[k]);
    }

    std::vector<size_t> order(dim + 1);
    std::vector<double> centroid(dim), trial(dim), trial2(dim);
    auto point = [&](const std::vector<double> &from, double t, std::vector<double> &out) {
        for (size_t k = 0; k < dim; k++) {
            out[k] = centroid[k] + t * (from[k] - centroid[k]);
        }
    };

    while (evals < max_evaluations) {
        std::iota(order.begin(), order.end(), size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return values[a] < values[b]; });
        size_t best = order.front(), worst = order.back(), second = order[dim - 1];

        double spread = 0;
        for (size_t k = 0; k <= dim; k++) {
            double d2 = 0;
            for (size_t c = 0; c < dim; c++) {
                double d = simplex[k][c] - simplex[best][c];
                d2 += d * d;
            }
            spread = std::max(spread, std::sqrt(d2));
        }
        if (spread < diameter_tol) {
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (size_t k = 0; k <= dim; k++) {
            if (k == worst) continue;
            for (size_t c = 0; c < dim; c++) {
                centroid[c] += simplex[k][c] / nd;
            }
        }

        point(simplex[worst], -reflect, trial);
        double fr = eval(trial);
        if (fr < values[best]) {
            point(simplex[worst], -reflect * expand, trial2);
            double fe = eval(trial2);
            if (fe < fr) {
                simplex[worst] = trial2;
                values[worst] = fe;
            } else {
                simplex[worst] = trial;
                values[worst] = fr;
            }
            continue;
        }
        if (fr < values[second]) {
            simplex[worst] = trial;
            values[worst] = fr;
            continue;
        }
        bool outside = fr < values[worst];
        point(simplex[worst], outside ? -reflect * contract : contract, trial2);
        double fc = eval(trial2);
        if (fc < (outside ? fr : values[worst])) {
            simplex[worst] = trial2;
            values[worst] = fc;
            continue;
        }
        for (size_t k = 0; k <= dim; k++) {
            if (k == best) continue;
            for (size_t c = 0; c < dim; c++) {
                simplex[k][c] = simplex[best][c] + shrink * (simplex[k][c] - simplex[best][c]);
            }
            values[k] = eval(simplex[k]);
        }
    }

    size_t best = static_cast<size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    return {simplex[best], values[best], evals};
}

OptimizationResult optimize(const CodeSpec &code, double p, double q, const OptimizeOptions &options) {
    if (options.restarts < 1) {
        throw std::invalid_argument("restarts must be at least 1");
    }
    CompiledObjective compiled(code, p, q);
    int n = code.n_qubits;
    std::vector<double> zero = ControlledUnitaryFamily(n).parameters();
    std::vector<double> inverse_rec = inverse_recovery_family(code).parameters();

    struct Outcome {
        std::vector<double> x;
        double value;
        long evals;
    };
    std::vector<Outcome> outcomes(static_cast<size_t>(options.restarts));

    auto run = [&](int r) {
        std::vector<double> x0;
        if (r == 0) {
            x0 = zero;
        } else if (r == 1) {
            x0 = inverse_rec;
        } else {
            std::seed_seq seq{options.seed, static_cast<uint64_t>(r)};
            std::mt19937_64 rng(seq);
            std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
            x0.resize(zero.size());
            for (auto &v : x0) {
                v = angle(rng);
            }
        }
        auto neg = [&](std::span<const double> x) { return -compiled(x); };
        double start_value = -neg(x0);
        long budget = options.max_evaluations;
        long used = 1;
        Outcome best{x0, start_value, 0};
        // Re-seat the simplex at the incumbent until a pass stops improving.
        while (used < budget) {
            SimplexResult res = nelder_mead(neg, best.x, options.initial_step, options.diameter_tol, budget - used);
            used += res.evaluations;
            if (-res.value > best.value + 1e-15) {
                best.x = res.x;
                best.value = -res.value;
            } else {
                break;
            }
        }
        best.evals = used;
        outcomes[static_cast<size_t>(r)] = std::move(best);
    };

    std::atomic<int> next{0};
    auto work = [&] {
        for (int r = next++; r < options.restarts; r = next++) {
            run(r);
        }
    };
    int threads = std::clamp(options.workers, 1, options.restarts);
    if (threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; t++) {
            pool.emplace_back(work);
        }
    }

    OptimizationResult result{ControlledUnitaryFamily(n), -1, 0, 0, {}};
    for (int r = 0; r < options.restarts; r++) {
        const auto &o = outcomes[static_cast<size_t>(r)];
        result.restart_fidelities.push_back(o.value);
        result.evaluations += o.evals;
        if (o.value > result.fidelity) {
            result.fidelity = o.value;
            result.best_restart = r;
            result.best = ControlledUnitaryFamily::from_parameters(n, o.x);
        }
    }
    return result;
}

}  // namespace mixqec
