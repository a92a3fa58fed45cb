/*
 * Copyright 2026 The mixqec Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the mixqec library.
 *
 * Every fallible call returns a mixqec_status. On failure a description is
 * available from mixqec_last_error() on the calling thread until the next
 * failing call on that thread. Handles are not safe to share between threads
 * without external locking; distinct handles are independent.
 */

#ifndef MIXQEC_MIXQEC_H
#define MIXQEC_MIXQEC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(MIXQEC_BUILDING_LIBRARY)
#define MIXQEC_API __declspec(dllexport)
#else
#define MIXQEC_API __declspec(dllimport)
#endif
#else
#define MIXQEC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mixqec_status {
    MIXQEC_OK = 0,
    MIXQEC_INVALID_ARGUMENT = 1,
    MIXQEC_UNKNOWN_CODE = 2,
    MIXQEC_BUFFER_TOO_SMALL = 3,
    MIXQEC_INTERNAL = 4
} mixqec_status;

typedef enum mixqec_channel { MIXQEC_BITFLIP = 0, MIXQEC_DEPOLARIZING = 1 } mixqec_channel;

typedef struct mixqec_code mixqec_code;
typedef struct mixqec_poly mixqec_poly;
typedef struct mixqec_text mixqec_text;
typedef struct mixqec_opt_result mixqec_opt_result;

MIXQEC_API const char *mixqec_version(void);
MIXQEC_API const char *mixqec_last_error(void);
MIXQEC_API const char *mixqec_status_name(mixqec_status status);

/* Owned text (JSON, CSV). The data pointer stays valid until destroy. */
MIXQEC_API const char *mixqec_text_data(const mixqec_text *text);
MIXQEC_API size_t mixqec_text_size(const mixqec_text *text);
MIXQEC_API void mixqec_text_destroy(mixqec_text *text);

/* Labels accepted by mixqec_code_create, in canonical order. */
MIXQEC_API size_t mixqec_standard_label_count(void);
MIXQEC_API const char *mixqec_standard_label(size_t index);

/* ---- codes ---- */

MIXQEC_API mixqec_status mixqec_code_create(const char *label, mixqec_code **out);
/* New handle holding the augmented variant of `code`. */
MIXQEC_API mixqec_status mixqec_code_augment(const mixqec_code *code, mixqec_code **out);
MIXQEC_API mixqec_status mixqec_code_set_channel(mixqec_code *code, mixqec_channel channel);
/* Worker threads used when the fidelity polynomial is first computed. */
MIXQEC_API mixqec_status mixqec_code_set_workers(mixqec_code *code, int workers);
MIXQEC_API void mixqec_code_destroy(mixqec_code *code);

MIXQEC_API mixqec_status mixqec_code_info(const mixqec_code *code, int *n_qubits, int *augmented,
                                          mixqec_channel *channel);
/* Copies the NUL-terminated label. `needed` (optional) receives the required
 * size including the terminator. A NULL buffer with capacity 0 is a size query. */
MIXQEC_API mixqec_status mixqec_code_label(const mixqec_code *code, char *buffer, size_t capacity, size_t *needed);

/* ---- fidelity polynomials ---- */

MIXQEC_API mixqec_status mixqec_code_fidelity(mixqec_code *code, mixqec_poly **out);
MIXQEC_API void mixqec_poly_destroy(mixqec_poly *poly);
MIXQEC_API mixqec_status mixqec_poly_eval(const mixqec_poly *poly, double p, double q, double *out);
MIXQEC_API mixqec_status mixqec_poly_term_count(const mixqec_poly *poly, size_t *out);
/* Terms in canonical order: total degree ascending, then higher p power first. */
MIXQEC_API mixqec_status mixqec_poly_term(const mixqec_poly *poly, size_t index, int *p_pow, int *q_pow,
                                          double *coeff);
MIXQEC_API mixqec_status mixqec_poly_degrees(const mixqec_poly *poly, int *degree_p, int *degree_q);
MIXQEC_API mixqec_status mixqec_poly_json(const mixqec_poly *poly, mixqec_text **out);

/* {"code": label, "coefficients": [{"k": k, "terms": [...]}, ...]} for k = 0..max_k. */
MIXQEC_API mixqec_status mixqec_coefficient_table_json(mixqec_code *code, int max_k, mixqec_text **out);

/* ---- evaluation and analysis ---- */

MIXQEC_API mixqec_status mixqec_oracle_fidelity(const mixqec_code *code, double p, double q, double *out);
MIXQEC_API mixqec_status mixqec_baseline(mixqec_channel channel, double p, double *out);
MIXQEC_API mixqec_status mixqec_usefulness(mixqec_code *code, double p, double q, int *out);
MIXQEC_API mixqec_status mixqec_tolerable_q(mixqec_code *code, double p, double *out);
/* q_out must hold `count` values. */
MIXQEC_API mixqec_status mixqec_curve_sweep(mixqec_code *code, const double *p_grid, size_t count, int workers,
                                            double *q_out);
/* CSV with header "p,q_star,code" covering every code over the same grid. */
MIXQEC_API mixqec_status mixqec_curves_csv(mixqec_code *const *codes, size_t code_count, const double *p_grid,
                                           size_t count, int workers, mixqec_text **out);
/* Parses "start:stop:count". Writes at most `capacity` values; `count` receives the total. */
MIXQEC_API mixqec_status mixqec_parse_grid(const char *spec, double *out, size_t capacity, size_t *count);
/* Smallest p in [p_lo, p_hi] with tolerable q equal to 0. `found` is 0 when none exists. */
MIXQEC_API mixqec_status mixqec_zero_tolerance_crossover(mixqec_code *code, double p_lo, double p_hi, double step,
                                                         int *found, double *out);

/* ---- encoder optimization ---- */

typedef struct mixqec_opt_options {
    int restarts;
    uint64_t seed;
    int workers;
    long max_evaluations;
    double diameter_tol;
    double initial_step;
} mixqec_opt_options;

MIXQEC_API void mixqec_opt_options_default(mixqec_opt_options *options);
/* `code` must be unaugmented. A NULL `options` selects the defaults. */
MIXQEC_API mixqec_status mixqec_optimize(const mixqec_code *code, double p, double q,
                                         const mixqec_opt_options *options, mixqec_opt_result **out);
MIXQEC_API void mixqec_opt_result_destroy(mixqec_opt_result *result);
MIXQEC_API mixqec_status mixqec_opt_result_fidelity(const mixqec_opt_result *result, double *optimized,
                                                    double *augmented, double *unaugmented);
MIXQEC_API mixqec_status mixqec_opt_result_angles(const mixqec_opt_result *result, double *out, size_t capacity,
                                                  size_t *count);
MIXQEC_API mixqec_status mixqec_opt_result_json(const mixqec_opt_result *result, mixqec_text **out);

/* ---- property suites ---- */

typedef struct mixqec_verify_options {
    int oracle_points;
    int grid;
    uint64_t seed;
    int workers;
    int inject_corruption;
} mixqec_verify_options;

typedef void (*mixqec_property_callback)(const char *name, int passed, const char *detail, void *user);

MIXQEC_API void mixqec_verify_options_default(mixqec_verify_options *options);
/* Calls `callback` (optional) once per property. `all_passed` receives 1 iff every property held. */
MIXQEC_API mixqec_status mixqec_verify(const mixqec_verify_options *options, mixqec_property_callback callback,
                                       void *user, int *all_passed);

#ifdef __cplusplus
}
#endif

#endif
