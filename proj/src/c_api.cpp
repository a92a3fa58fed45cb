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

#include "mixqec/mixqec.h"

#include <cstring>
#include <exception>
#include <iterator>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "mixqec/analysis.hpp"
#include "mixqec/encoder_opt.hpp"
#include "mixqec/verification.hpp"

struct mixqec_code {
    mixqec::CodeSpec spec;
    int workers = 1;
    std::optional<mixqec::AnalyzedCode> analyzed;

    const mixqec::AnalyzedCode &analysis() {
        if (!analyzed) {
            analyzed = mixqec::analyze(spec, {workers, mixqec::PropagationPath::automatic});
        }
        return *analyzed;
    }
};

struct mixqec_poly {
    mixqec::BiPoly poly;
};

struct mixqec_text {
    std::string data;
};

struct mixqec_opt_result {
    std::string label;
    double p = 0;
    double q = 0;
    mixqec_opt_options options{};
    mixqec::OptimizationResult result;
    double augmented = 0;
    double unaugmented = 0;
};

namespace {

thread_local std::string last_error;

class UnknownCode : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NullArgument : std::invalid_argument {
    explicit NullArgument(const char *what) : std::invalid_argument(std::string(what) + " must not be null") {}
};

template <typename F>
mixqec_status guarded(F &&body) {
    try {
        body();
        return MIXQEC_OK;
    } catch (const UnknownCode &e) {
        last_error = e.what();
        return MIXQEC_UNKNOWN_CODE;
    } catch (const std::invalid_argument &e) {
        last_error = e.what();
        return MIXQEC_INVALID_ARGUMENT;
    } catch (const std::out_of_range &e) {
        last_error = e.what();
        return MIXQEC_INVALID_ARGUMENT;
    } catch (const std::exception &e) {
        last_error = e.what();
        return MIXQEC_INTERNAL;
    } catch (...) {
        last_error = "unknown failure";
        return MIXQEC_INTERNAL;
    }
}

template <typename T>
void require(const T *ptr, const char *name) {
    if (ptr == nullptr) {
        throw NullArgument(name);
    }
}

mixqec::ChannelFamily to_family(mixqec_channel c) {
    switch (c) {
        case MIXQEC_BITFLIP:
            return mixqec::ChannelFamily::bitflip;
        case MIXQEC_DEPOLARIZING:
            return mixqec::ChannelFamily::depolarizing;
    }
    throw std::invalid_argument("unknown channel value");
}

mixqec_channel from_family(mixqec::ChannelFamily f) {
    return f == mixqec::ChannelFamily::bitflip ? MIXQEC_BITFLIP : MIXQEC_DEPOLARIZING;
}

void check_unit(double v, const char *name) {
    if (!(v >= 0 && v <= 1)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    }
}

mixqec_text *make_text(std::string s) {
    return new mixqec_text{std::move(s)};
}

std::string bit_string(uint32_t value, int width) {
    std::string s;
    for (int b = width - 1; b >= 0; b--) {
        s += ((value >> b) & 1U) ? '1' : '0';
    }
    return s;
}

}  // namespace

extern "C" {

const char *mixqec_version(void) {
    return "0.1.0";
}

const char *mixqec_last_error(void) {
    return last_error.c_str();
}

const char *mixqec_status_name(mixqec_status status) {
    switch (status) {
        case MIXQEC_OK:
            return "ok";
        case MIXQEC_INVALID_ARGUMENT:
            return "invalid argument";
        case MIXQEC_UNKNOWN_CODE:
            return "unknown code";
        case MIXQEC_BUFFER_TOO_SMALL:
            return "buffer too small";
        case MIXQEC_INTERNAL:
            return "internal error";
    }
    return "unrecognized status";
}

const char *mixqec_text_data(const mixqec_text *text) {
    return text ? text->data.c_str() : "";
}

size_t mixqec_text_size(const mixqec_text *text) {
    return text ? text->data.size() : 0;
}

void mixqec_text_destroy(mixqec_text *text) {
    delete text;
}

size_t mixqec_standard_label_count(void) {
    return mixqec::standard_labels().size();
}

const char *mixqec_standard_label(size_t index) {
    static const std::vector<std::string> labels = mixqec::standard_labels();
    return index < labels.size() ? labels[index].c_str() : nullptr;
}

mixqec_status mixqec_code_create(const char *label, mixqec_code **out) {
    return guarded([&] {
        require(label, "label");
        require(out, "out");
        *out = nullptr;
        mixqec::CodeSpec spec;
        try {
            spec = mixqec::code_from_label(label);
        } catch (const std::invalid_argument &e) {
            throw UnknownCode(e.what());
        }
        *out = new mixqec_code{std::move(spec), 1, std::nullopt};
    });
}

mixqec_status mixqec_code_augment(const mixqec_code *code, mixqec_code **out) {
    return guarded([&] {
        require(code, "code");
        require(out, "out");
        *out = nullptr;
        *out = new mixqec_code{mixqec::augment(code->spec), code->workers, std::nullopt};
    });
}

mixqec_status mixqec_code_set_channel(mixqec_code *code, mixqec_channel channel) {
    return guarded([&] {
        require(code, "code");
        mixqec::ChannelFamily f = to_family(channel);
        if (f != code->spec.family) {
            code->spec.family = f;
            code->analyzed.reset();
        }
    });
}

mixqec_status mixqec_code_set_workers(mixqec_code *code, int workers) {
    return guarded([&] {
        require(code, "code");
        if (workers < 1) {
            throw std::invalid_argument("workers must be at least 1");
        }
        code->workers = workers;
    });
}

void mixqec_code_destroy(mixqec_code *code) {
    delete code;
}

mixqec_status mixqec_code_info(const mixqec_code *code, int *n_qubits, int *augmented, mixqec_channel *channel) {
    return guarded([&] {
        require(code, "code");
        if (n_qubits) *n_qubits = code->spec.n_qubits;
        if (augmented) *augmented = code->spec.augmented ? 1 : 0;
        if (channel) *channel = from_family(code->spec.family);
    });
}

mixqec_status mixqec_code_label(const mixqec_code *code, char *buffer, size_t capacity, size_t *needed) {
    if (code == nullptr) {
        last_error = "code must not be null";
        return MIXQEC_INVALID_ARGUMENT;
    }
    const std::string &label = code->spec.label;
    size_t size = label.size() + 1;
    if (needed) *needed = size;
    if (buffer == nullptr && capacity == 0) {
        return MIXQEC_OK;
    }
    if (buffer == nullptr || capacity < size) {
        last_error = "label needs " + std::to_string(size) + " bytes";
        return MIXQEC_BUFFER_TOO_SMALL;
    }
    std::memcpy(buffer, label.c_str(), size);
    return MIXQEC_OK;
}

mixqec_status mixqec_code_fidelity(mixqec_code *code, mixqec_poly **out) {
    return guarded([&] {
        require(code, "code");
        require(out, "out");
        *out = nullptr;
        *out = new mixqec_poly{code->analysis().fidelity};
    });
}

void mixqec_poly_destroy(mixqec_poly *poly) {
    delete poly;
}

mixqec_status mixqec_poly_eval(const mixqec_poly *poly, double p, double q, double *out) {
    return guarded([&] {
        require(poly, "poly");
        require(out, "out");
        *out = poly->poly.eval(p, q);
    });
}

mixqec_status mixqec_poly_term_count(const mixqec_poly *poly, size_t *out) {
    return guarded([&] {
        require(poly, "poly");
        require(out, "out");
        *out = poly->poly.terms().size();
    });
}

mixqec_status mixqec_poly_term(const mixqec_poly *poly, size_t index, int *p_pow, int *q_pow, double *coeff) {
    return guarded([&] {
        require(poly, "poly");
        const auto &terms = poly->poly.terms();
        if (index >= terms.size()) {
            throw std::out_of_range("term index " + std::to_string(index) + " out of range");
        }
        auto it = std::next(terms.begin(), static_cast<long>(index));
        if (p_pow) *p_pow = it->first.p_pow;
        if (q_pow) *q_pow = it->first.q_pow;
        if (coeff) *coeff = it->second;
    });
}

mixqec_status mixqec_poly_degrees(const mixqec_poly *poly, int *degree_p, int *degree_q) {
    return guarded([&] {
        require(poly, "poly");
        if (degree_p) *degree_p = poly->poly.degree_p();
        if (degree_q) *degree_q = poly->poly.degree_q();
    });
}

mixqec_status mixqec_poly_json(const mixqec_poly *poly, mixqec_text **out) {
    return guarded([&] {
        require(poly, "poly");
        require(out, "out");
        *out = nullptr;
        *out = make_text(mixqec::to_json(poly->poly).dump(2) + "\n");
    });
}

mixqec_status mixqec_coefficient_table_json(mixqec_code *code, int max_k, mixqec_text **out) {
    return guarded([&] {
        require(code, "code");
        require(out, "out");
        *out = nullptr;
        auto table = mixqec::coefficient_table(code->analysis(), max_k);
        *out = make_text(mixqec::to_json(table).dump(2) + "\n");
    });
}

mixqec_status mixqec_oracle_fidelity(const mixqec_code *code, double p, double q, double *out) {
    return guarded([&] {
        require(code, "code");
        require(out, "out");
        check_unit(p, "p");
        check_unit(q, "q");
        *out = mixqec::oracle_fidelity(code->spec, p, q);
    });
}

mixqec_status mixqec_baseline(mixqec_channel channel, double p, double *out) {
    return guarded([&] {
        require(out, "out");
        check_unit(p, "p");
        *out = mixqec::unencoded_baseline(to_family(channel), p);
    });
}

mixqec_status mixqec_usefulness(mixqec_code *code, double p, double q, int *out) {
    return guarded([&] {
        require(code, "code");
        require(out, "out");
        check_unit(p, "p");
        check_unit(q, "q");
        *out = mixqec::usefulness(code->analysis(), p, q) ? 1 : 0;
    });
}

mixqec_status mixqec_tolerable_q(mixqec_code *code, double p, double *out) {
    return guarded([&] {
        require(code, "code");
        require(out, "out");
        *out = mixqec::tolerable_q(code->analysis(), p);
    });
}

mixqec_status mixqec_curve_sweep(mixqec_code *code, const double *p_grid, size_t count, int workers, double *q_out) {
    return guarded([&] {
        require(code, "code");
        if (count > 0) {
            require(p_grid, "p_grid");
            require(q_out, "q_out");
        }
        auto curve = mixqec::curve_sweep(code->analysis(), std::span<const double>(p_grid, count), workers);
        for (size_t i = 0; i < count; i++) {
            q_out[i] = curve.samples[i].second;
        }
    });
}

mixqec_status mixqec_curves_csv(mixqec_code *const *codes, size_t code_count, const double *p_grid, size_t count,
                                int workers, mixqec_text **out) {
    return guarded([&] {
        require(out, "out");
        *out = nullptr;
        if (code_count > 0) require(codes, "codes");
        if (count > 0) require(p_grid, "p_grid");
        std::vector<mixqec::TolerableQCurve> curves;
        for (size_t c = 0; c < code_count; c++) {
            require(codes[c], "codes[i]");
            curves.push_back(mixqec::curve_sweep(codes[c]->analysis(), std::span<const double>(p_grid, count), workers));
        }
        *out = make_text(mixqec::to_csv(curves));
    });
}

mixqec_status mixqec_parse_grid(const char *spec, double *out, size_t capacity, size_t *count) {
    return guarded([&] {
        require(spec, "spec");
        require(count, "count");
        auto grid = mixqec::parse_grid(spec);
        *count = grid.size();
        if (capacity > 0) require(out, "out");
        for (size_t i = 0; i < grid.size() && i < capacity; i++) {
            out[i] = grid[i];
        }
    });
}

mixqec_status mixqec_zero_tolerance_crossover(mixqec_code *code, double p_lo, double p_hi, double step, int *found,
                                              double *out) {
    return guarded([&] {
        require(code, "code");
        require(found, "found");
        require(out, "out");
        auto r = mixqec::zero_tolerance_crossover(code->analysis(), p_lo, p_hi, step);
        *found = r.has_value() ? 1 : 0;
        *out = r.value_or(0.0);
    });
}

void mixqec_opt_options_default(mixqec_opt_options *options) {
    if (options == nullptr) {
        return;
    }
    mixqec::OptimizeOptions d;
    *options = {d.restarts, d.seed, d.workers, d.max_evaluations, d.diameter_tol, d.initial_step};
}

mixqec_status mixqec_optimize(const mixqec_code *code, double p, double q, const mixqec_opt_options *options,
                              mixqec_opt_result **out) {
    return guarded([&] {
        require(code, "code");
        require(out, "out");
        *out = nullptr;
        check_unit(p, "p");
        check_unit(q, "q");
        if (code->spec.augmented) {
            throw std::invalid_argument("optimization starts from an unaugmented code");
        }
        mixqec_opt_options o;
        mixqec_opt_options_default(&o);
        if (options) o = *options;
        if (o.restarts < 1) throw std::invalid_argument("restarts must be at least 1");
        if (o.workers < 1) throw std::invalid_argument("workers must be at least 1");
        if (o.max_evaluations < 1) throw std::invalid_argument("max evaluations must be at least 1");
        if (!(o.diameter_tol > 0)) throw std::invalid_argument("diameter tolerance must be positive");
        if (!(o.initial_step > 0)) throw std::invalid_argument("initial step must be positive");

        mixqec::OptimizeOptions opt{o.restarts, o.seed, o.workers, o.max_evaluations, o.diameter_tol, o.initial_step};
        auto res = mixqec::optimize(code->spec, p, q, opt);
        auto result = std::make_unique<mixqec_opt_result>(mixqec_opt_result{code->spec.label, p, q, o, std::move(res), 0, 0});
        mixqec::EngineOptions eng{o.workers, mixqec::PropagationPath::automatic};
        result->augmented = mixqec::fidelity_polynomial(mixqec::augment(code->spec), eng).eval(p, q);
        result->unaugmented = mixqec::fidelity_polynomial(code->spec, eng).eval(p, q);
        *out = result.release();
    });
}

void mixqec_opt_result_destroy(mixqec_opt_result *result) {
    delete result;
}

mixqec_status mixqec_opt_result_fidelity(const mixqec_opt_result *result, double *optimized, double *augmented,
                                         double *unaugmented) {
    return guarded([&] {
        require(result, "result");
        if (optimized) *optimized = result->result.fidelity;
        if (augmented) *augmented = result->augmented;
        if (unaugmented) *unaugmented = result->unaugmented;
    });
}

mixqec_status mixqec_opt_result_angles(const mixqec_opt_result *result, double *out, size_t capacity, size_t *count) {
    return guarded([&] {
        require(result, "result");
        require(count, "count");
        auto params = result->result.best.parameters();
        *count = params.size();
        if (capacity > 0) require(out, "out");
        for (size_t i = 0; i < params.size() && i < capacity; i++) {
            out[i] = params[i];
        }
    });
}

mixqec_status mixqec_opt_result_json(const mixqec_opt_result *result, mixqec_text **out) {
    return guarded([&] {
        require(result, "result");
        require(out, "out");
        *out = nullptr;
        const auto &r = result->result;
        int na = r.best.n_qubits() - 1;
        nlohmann::json angles = nlohmann::json::array();
        for (size_t s = 0; s < r.best.angles().size(); s++) {
            const auto &a = r.best.angles()[s];
            angles.push_back({{"ancilla", bit_string(static_cast<uint32_t>(s), na)},
                              {"alpha", a.alpha},
                              {"beta", a.beta},
                              {"gamma", a.gamma}});
        }
        nlohmann::json j = {
            {"code", result->label},
            {"p", result->p},
            {"q", result->q},
            {"seed", result->options.seed},
            {"restarts", result->options.restarts},
            {"best_fidelity", r.fidelity},
            {"augmented_fidelity", result->augmented},
            {"unaugmented_fidelity", result->unaugmented},
            {"gap_to_augmented", r.fidelity - result->augmented},
            {"best_restart", r.best_restart},
            {"evaluations", r.evaluations},
            {"restart_fidelities", r.restart_fidelities},
            {"angles", angles},
        };
        *out = make_text(j.dump(2) + "\n");
    });
}

void mixqec_verify_options_default(mixqec_verify_options *options) {
    if (options == nullptr) {
        return;
    }
    mixqec::VerifyOptions d;
    *options = {d.oracle_points, d.grid, d.seed, d.workers, d.inject_corruption ? 1 : 0};
}

mixqec_status mixqec_verify(const mixqec_verify_options *options, mixqec_property_callback callback, void *user,
                            int *all_passed) {
    return guarded([&] {
        require(all_passed, "all_passed");
        mixqec_verify_options o;
        mixqec_verify_options_default(&o);
        if (options) o = *options;
        if (o.oracle_points < 0) throw std::invalid_argument("oracle points must be non-negative");
        if (o.grid < 1) throw std::invalid_argument("grid must be at least 1");
        if (o.workers < 1) throw std::invalid_argument("workers must be at least 1");
        mixqec::VerifyOptions v{o.oracle_points, o.grid, o.seed, o.workers, o.inject_corruption != 0};
        bool ok = true;
        mixqec::run_verification(v, [&](const mixqec::PropertyResult &r) {
            ok = ok && r.passed;
            if (callback) {
                callback(r.name.c_str(), r.passed ? 1 : 0, r.detail.c_str(), user);
            }
        });
        *all_passed = ok ? 1 : 0;
    });
}

}  // extern "C"
