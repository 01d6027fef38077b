/* Copyright 2026 The coalloc Authors
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

/* C interface to the coalloc library: cooperative-game allocation analysis.
 *
 * Conventions:
 *   - Players are 1-based. Coalitions are bitmasks with bit (p - 1) set when
 *     player p is a member; games store one value per mask, masks ascending.
 *   - Functions returning int yield COALLOC_OK or an error code;
 *     coalloc_last_error() describes the most recent failure on the calling
 *     thread. Out-parameters are written only on success.
 *   - Objects returned through coalloc_*_create/from_json/... are owned by
 *     the caller and released with the matching coalloc_*_free.
 */

#ifndef COALLOC_H
#define COALLOC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define COALLOC_OK 0
#define COALLOC_ERROR_INVALID_ARGUMENT 1
#define COALLOC_ERROR_PARSE 2
#define COALLOC_ERROR_PRECONDITION 3
#define COALLOC_ERROR_INTERNAL 4

#define COALLOC_SAMPLER_MONOTONE_RANDOM 0
#define COALLOC_SAMPLER_SUPERADDITIVE_PROBES 1
#define COALLOC_SAMPLER_BINARY_EXHAUSTIVE 2

typedef struct coalloc_game coalloc_game;
typedef struct coalloc_allocation coalloc_allocation;
typedef struct coalloc_report coalloc_report;
typedef struct coalloc_decomposition coalloc_decomposition;
typedef struct coalloc_span coalloc_span;

const char* coalloc_version(void);

/* Message for the last failure on this thread; empty string if none. */
const char* coalloc_last_error(void);

/* Releases strings returned through char** out-parameters. */
void coalloc_string_free(char* s);

/* Formats a double as decimal with 17 significant digits (the encoding used
 * in all documents). buf must hold at least 32 bytes. */
int coalloc_format_double(double x, char* buf, size_t buflen);

/* ---- games ------------------------------------------------------------ */

/* values lists 2^n numbers in mask order; NULL means the zero game. */
int coalloc_game_create(int n, const double* values, coalloc_game** out);
void coalloc_game_free(coalloc_game* g);

int coalloc_game_n(const coalloc_game* g);
size_t coalloc_game_size(const coalloc_game* g); /* 2^n, 0 on NULL */
int coalloc_game_value(const coalloc_game* g, uint32_t coalition, double* out);
int coalloc_game_values(const coalloc_game* g, double* out /* 2^n */);

int coalloc_game_from_json(const char* text, coalloc_game** out);
int coalloc_game_to_json(const coalloc_game* g, char** out);

int coalloc_game_is_monotone(const coalloc_game* g, int* out);
int coalloc_game_is_superadditive(const coalloc_game* g, int* out);
int coalloc_game_is_binary(const coalloc_game* g, int* out);

/* Writes up to capacity masks; *count receives the total number of minimal
 * coalitions. out may be NULL to query the count alone. */
int coalloc_game_minimal_sets(const coalloc_game* g, uint32_t* out,
                              size_t capacity, size_t* count);

int coalloc_game_marginal(const coalloc_game* g, int player,
                          uint32_t coalition, double* out);

int coalloc_game_truncate(const coalloc_game* g, uint32_t coalition,
                          coalloc_game** out);
int coalloc_game_pair_truncate(const coalloc_game* g, uint32_t coalition,
                               int player, coalloc_game** out);
/* embedding maps source player k+1 to embedding[k] in the target game. */
int coalloc_game_extend(const coalloc_game* g, int n_target,
                        const int* embedding, coalloc_game** out);

int coalloc_game_shapley_value(const coalloc_game* g, double* out /* n */);

/* Exact integer combination of superadditive binary games rebuilding a
 * monotone binary game. */
int coalloc_game_span(const coalloc_game* g, coalloc_span** out);

void coalloc_span_free(coalloc_span* s);
size_t coalloc_span_size(const coalloc_span* s);
int coalloc_span_coefficient(const coalloc_span* s, size_t index, double* out);
/* Returns a fresh game handle owned by the caller. */
int coalloc_span_game(const coalloc_span* s, size_t index, coalloc_game** out);

/* ---- allocation operators --------------------------------------------- */

/* entries lists n * 2^n numbers, row-major: entry of (player i, mask s) at
 * (i-1) * 2^n + s. NULL means the zero operator. */
int coalloc_allocation_create(int n, const double* entries,
                              coalloc_allocation** out);
void coalloc_allocation_free(coalloc_allocation* a);

int coalloc_allocation_n(const coalloc_allocation* a);
size_t coalloc_allocation_columns(const coalloc_allocation* a);
int coalloc_allocation_entry(const coalloc_allocation* a, int player,
                             uint32_t coalition, double* out);
int coalloc_allocation_entries(const coalloc_allocation* a,
                               double* out /* n * 2^n */);

int coalloc_allocation_from_json(const char* text, coalloc_allocation** out);
int coalloc_allocation_to_json(const coalloc_allocation* a, char** out);

/* permutation lists the n players in joining order. */
int coalloc_allocation_special(int n, const int* permutation,
                               coalloc_allocation** out);
int coalloc_allocation_shapley(int n, coalloc_allocation** out);

int coalloc_allocation_apply(const coalloc_allocation* a,
                             const coalloc_game* g, double* out /* n */);

/* ---- verification ------------------------------------------------------ */

typedef struct coalloc_violation {
  const char* condition; /* owned by the report */
  int player;            /* 0 for column-scoped conditions */
  uint32_t coalition;
  double observed;
  double required;
} coalloc_violation;

int coalloc_check_efficiency(const coalloc_allocation* a, double tol,
                             coalloc_report** out);
int coalloc_check_reasonable_structural(const coalloc_allocation* a,
                                        double tol, coalloc_report** out);
int coalloc_check_abs_sums(const coalloc_allocation* a, double tol,
                           coalloc_report** out);
int coalloc_check_row_sums_zero(const coalloc_allocation* a, double tol,
                                coalloc_report** out);

void coalloc_report_free(coalloc_report* r);
const char* coalloc_report_name(const coalloc_report* r);
int coalloc_report_pass(const coalloc_report* r);
size_t coalloc_report_violation_count(const coalloc_report* r);
int coalloc_report_violation(const coalloc_report* r, size_t index,
                             coalloc_violation* out);

typedef struct coalloc_falsify_info {
  int player;
  double payoff;
  double lower;
  double upper;
  char probe[64]; /* name of the violating game */
} coalloc_falsify_info;

/* Searches the sampler's game family for a payoff outside the player's
 * marginal-contribution bounds. On success *found is 0 or 1; when 1 and
 * out_game is non-NULL it receives the violating game (caller-owned). */
int coalloc_falsify(const coalloc_allocation* a, int sampler, int trials,
                    uint64_t seed, double tol, int* found,
                    coalloc_game** out_game, coalloc_falsify_info* out_info);

/* ---- convex decomposition ---------------------------------------------- */

/* Chain peeling. Requires the efficiency and structural reasonableness
 * checks to pass at tol; otherwise fails with COALLOC_ERROR_PRECONDITION and
 * an error message naming the failed check. */
int coalloc_decompose(const coalloc_allocation* a, double tol,
                      coalloc_decomposition** out);

void coalloc_decomposition_free(coalloc_decomposition* d);
int coalloc_decomposition_n(const coalloc_decomposition* d);
size_t coalloc_decomposition_size(const coalloc_decomposition* d);
/* perm_out (length n) and weight_out may each be NULL. */
int coalloc_decomposition_term(const coalloc_decomposition* d, size_t index,
                               int* perm_out, double* weight_out);

/* Peel-trace accessors; certificates that were parsed or generated rather
 * than peeled have no trace (steps = 0, residual unavailable). */
size_t coalloc_decomposition_steps(const coalloc_decomposition* d);
int coalloc_decomposition_trace_step(const coalloc_decomposition* d,
                                     size_t index, double* epsilon,
                                     double* residual_after);
int coalloc_decomposition_residual(const coalloc_decomposition* d,
                                   double* out);

int coalloc_decomposition_from_json(const char* text,
                                    coalloc_decomposition** out);
int coalloc_decomposition_to_json(const coalloc_decomposition* d, char** out);

int coalloc_verify_decomposition(const coalloc_allocation* a,
                                 const coalloc_decomposition* d, double tol,
                                 coalloc_report** out);

/* Seeded polytope sample plus its generating certificate. */
int coalloc_random_allocation(int n, int support, uint64_t seed,
                              coalloc_allocation** out_allocation,
                              coalloc_decomposition** out_certificate);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* COALLOC_H */
