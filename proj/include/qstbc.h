/* Copyright 2026 The qstbc authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* Public C interface of the qstbc shared library.
 *
 * The library builds stabilizer-based noncoherent space-time block codes for
 * M x N antenna geometries (square, or rectangular with M | N), manages
 * Grassmannian line-packing codebooks, and runs reproducible Rayleigh/AWGN
 * bit-error-rate sweeps. All state lives behind opaque handles; every
 * function returns a qstbc_status and leaves a human-readable message in
 * qstbc_last_error() on failure.
 */

#ifndef QSTBC_H
#define QSTBC_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define QSTBC_API __declspec(dllexport)
#else
#define QSTBC_API __attribute__((visibility("default")))
#endif

typedef enum qstbc_status {
  QSTBC_OK = 0,
  QSTBC_ERR_INVALID_ARG = 1,
  QSTBC_ERR_INVALID_CONFIG = 2,
  QSTBC_ERR_PARSE = 3,
  QSTBC_ERR_IO = 4,
  QSTBC_ERR_VERIFY_FAILED = 5,
  QSTBC_ERR_INTERNAL = 6
} qstbc_status;

QSTBC_API const char* qstbc_version(void);
QSTBC_API const char* qstbc_status_name(qstbc_status status);

/* Message describing the most recent failure on this thread; empty string if
 * the last call succeeded. */
QSTBC_API const char* qstbc_last_error(void);

/* Frees strings returned through char** out parameters. */
QSTBC_API void qstbc_string_free(char* s);

/* ---- Stabilizer codes ------------------------------------------------- */

typedef struct qstbc_code qstbc_code;

/* Validates (M, N, T, d) and builds the code: generators, code matrix,
 * syndrome table and recovery maps, verified numerically. */
QSTBC_API qstbc_status qstbc_code_create(int m, int n, int t, int d,
                                         qstbc_code** out_code);
QSTBC_API void qstbc_code_free(qstbc_code* code);

QSTBC_API int qstbc_code_symbol_dim(const qstbc_code* code);      /* d  */
QSTBC_API int qstbc_code_diversity_order(const qstbc_code* code); /* MN */

/* Runs the full algebraic invariant suite for (M, N, T, d) and returns the
 * machine-readable report. QSTBC_OK when all checks pass,
 * QSTBC_ERR_VERIFY_FAILED when any check fails (the report is still
 * returned), QSTBC_ERR_INVALID_CONFIG when the tuple violates a rule.
 * *out_report_json is owned by the caller; free with qstbc_string_free. */
QSTBC_API qstbc_status qstbc_verify(int m, int n, int t, int d,
                                    char** out_report_json);

/* ---- Codebooks --------------------------------------------------------- */

typedef struct qstbc_codebook qstbc_codebook;

/* Max-min chordal distance packing of `size` lines in C^dim, deterministic
 * for fixed arguments. Pass 0 for iterations/restarts to use the defaults
 * (1500 and 32). */
QSTBC_API qstbc_status qstbc_codebook_generate(int dim, int size,
                                               uint64_t seed, int iterations,
                                               int restarts,
                                               qstbc_codebook** out_codebook);
QSTBC_API qstbc_status qstbc_codebook_load(const char* path,
                                           qstbc_codebook** out_codebook);
QSTBC_API qstbc_status qstbc_codebook_save(const qstbc_codebook* codebook,
                                           const char* path);
QSTBC_API void qstbc_codebook_free(qstbc_codebook* codebook);

QSTBC_API int qstbc_codebook_dim(const qstbc_codebook* codebook);
QSTBC_API int qstbc_codebook_size(const qstbc_codebook* codebook);
QSTBC_API double qstbc_codebook_min_distance(const qstbc_codebook* codebook);
/* 0 when the generator stopped before its update steps settled. */
QSTBC_API int qstbc_codebook_converged(const qstbc_codebook* codebook);
/* Writes 2*dim doubles (re, im interleaved) into out_re_im. */
QSTBC_API qstbc_status qstbc_codebook_vector(const qstbc_codebook* codebook,
                                             int index, double* out_re_im);
/* Bit label of vector `index` as a NUL-terminated 0/1 string of length
 * log2(size); buffer must hold at least 33 bytes. */
QSTBC_API qstbc_status qstbc_codebook_label(const qstbc_codebook* codebook,
                                            int index, char* out_bits);

/* Largest min distance any packing of `size` lines in C^dim can reach. */
QSTBC_API qstbc_status qstbc_packing_bound(int dim, int size,
                                           double* out_bound);

/* ---- Monte Carlo simulation -------------------------------------------- */

typedef struct qstbc_sim_spec {
  int m, n, t, d;
  const double* snr_grid_db; /* strictly increasing */
  int snr_points;
  int64_t trials_per_point;
  uint64_t seed;
  int workers;                 /* 0 = auto */
  int64_t stop_at_bit_errors;  /* 0 = fixed trial count */
  /* Optional; polled during the run, nonzero requests a cooperative stop. */
  const volatile int* cancel;
  /* Optional progress callback. */
  void (*progress)(int point_index, int64_t trials_done, int64_t trials_total,
                   void* user);
  void* progress_user;
} qstbc_sim_spec;

typedef struct qstbc_ber_point {
  double snr_db;
  int64_t trials;
  int64_t bits_sent;
  int64_t bit_errors;
  int64_t symbol_errors;
  double ber;
  double ser;
  double ci_low;  /* Wilson 95% interval on the BER */
  double ci_high;
  int complete;
} qstbc_ber_point;

typedef struct qstbc_results qstbc_results;

/* Runs the sweep. SNR is 1/sigma^2 in dB with unit transmit power and unit
 * fading variance. Output is bit-identical for fixed (spec, seed) no matter
 * how many workers run. */
QSTBC_API qstbc_status qstbc_simulate(const qstbc_sim_spec* spec,
                                      const qstbc_codebook* codebook,
                                      qstbc_results** out_results);
QSTBC_API void qstbc_results_free(qstbc_results* results);

QSTBC_API int qstbc_results_size(const qstbc_results* results);
QSTBC_API qstbc_status qstbc_results_point(const qstbc_results* results,
                                           int index,
                                           qstbc_ber_point* out_point);
QSTBC_API qstbc_status qstbc_results_write_csv(const qstbc_results* results,
                                               const char* path);
QSTBC_API qstbc_status qstbc_results_write_json(const qstbc_results* results,
                                                const char* path);
/* Fitted high-SNR slope in decades per 10 dB; see the CLI for usage. */
QSTBC_API qstbc_status qstbc_results_diversity_slope(
    const qstbc_results* results, double ber_min, double ber_max,
    int64_t min_bit_errors, double* out_slope);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QSTBC_H */
