/* psc - probabilistic semialgebraic circuit toolkit: public C API.
 *
 * All functions return PSC_OK (0) on success; on failure they return a
 * nonzero status and leave a message retrievable with psc_last_error()
 * (thread-local). Every char** output is allocated by the library and must
 * be released with psc_string_free. Handles are opaque and freed with their
 * psc_*_free function.
 *
 * Conventions: rationals are "num/den" strings ("/1" may be omitted),
 * vectors are comma-separated rationals, randomized entry points take a
 * 64-bit master seed and are bit-reproducible for a fixed seed regardless
 * of the thread count.
 */
#ifndef PSC_H
#define PSC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum psc_status {
  PSC_OK = 0,
  PSC_ERR_PARSE = 1,
  PSC_ERR_INVALID = 2,
  PSC_ERR_DIVISION_BY_ZERO = 3,
  PSC_ERR_PRECONDITION = 4,
  PSC_ERR_BUDGET = 5,
  PSC_ERR_RETRIES = 6,
  PSC_ERR_UNSUPPORTED = 7,
  PSC_ERR_VERIFY = 8,
  PSC_ERR_INTERNAL = 9
} psc_status;

typedef struct psc_circuit psc_circuit;
typedef struct psc_matrix psc_matrix;

const char* psc_status_name(psc_status status);
const char* psc_last_error(void);
void psc_string_free(char* text);

/* --- circuits ----------------------------------------------------------- */

psc_status psc_circuit_parse(const char* text, psc_circuit** out);
psc_status psc_circuit_load(const char* path, psc_circuit** out);
void psc_circuit_free(psc_circuit* circuit);
psc_status psc_circuit_print(const psc_circuit* circuit, char** out_text);

int psc_circuit_num_inputs(const psc_circuit* circuit);   /* n */
int psc_circuit_num_random(const psc_circuit* circuit);   /* k */
int64_t psc_circuit_size(const psc_circuit* circuit);     /* gate count */
int psc_circuit_max_gate_complexity(const psc_circuit* circuit);

psc_status psc_circuit_eval(const psc_circuit* circuit, const char* x_csv,
                            const char* r_csv, char** out_value);
psc_status psc_circuit_eval_double(const psc_circuit* circuit, const char* x_csv,
                                   const char* r_csv, double* out_value);
psc_status psc_circuit_fix_random(const psc_circuit* circuit, const char* r_csv,
                                  psc_circuit** out);
psc_status psc_circuit_sample_seed(const psc_circuit* circuit,
                                   uint64_t master_seed, uint64_t stream_index,
                                   char** out_r_csv);

/* Existential description of a deterministic circuit's graph, as an
 * s-expression (EXISTS <free_vars> <quantified_vars> <matrix>). */
psc_status psc_circuit_to_formula(const psc_circuit* circuit, char** out_sexpr);

/* --- synthesized circuits ------------------------------------------------ */

psc_status psc_synth_median_network(int m, psc_circuit** out);
psc_status psc_synth_zero_vote(int n, psc_circuit** out);

/* --- polynomials, sign patterns, bound calculators ------------------------ */

/* polys_text: one polynomial per line; points_text: one vector per line. */
psc_status psc_count_sign_patterns(const char* polys_text, const char* points_text,
                                   uint64_t* out_count);

psc_status psc_warren_bound(uint64_t m, uint64_t d, uint64_t n,
                            char** out_value, char** out_ceiling);
psc_status psc_warren_corollary_bound(uint64_t m, uint64_t t, uint64_t n,
                                      char** out_value, char** out_ceiling);

psc_status psc_sz_zero_count(const char* poly, const char* set_csv, int n,
                             uint64_t budget, uint64_t* out_zeros,
                             char** out_bound);

psc_status psc_bound_m_exact(uint64_t n, uint64_t s, uint64_t b, const char* C,
                             uint64_t* out_m);
psc_status psc_bound_m_approx(uint64_t n, uint64_t s, uint64_t b, uint64_t t_f,
                              uint64_t t_rho, const char* C, uint64_t* out_m);
psc_status psc_bound_m_infinite(uint64_t n, uint64_t t, const char* C,
                                uint64_t* out_m);
psc_status psc_bound_bpr(uint64_t n, uint64_t q, uint64_t kappa, double C,
                         double* out_value);
psc_status psc_bound_vc(uint64_t growth_at_2m, const char* eps, uint64_t m,
                        double* out_value);

/* --- finite matrices ------------------------------------------------------ */

/* rows_text: one witness input vector per line. The oracle is a
 * deterministic circuit over the same inputs. seeds == 0 enumerates the
 * random-input support exhaustively (exact weights) when it is finite and
 * small; otherwise seeds vectors are sampled from the circuit's spec. */
psc_status psc_matrix_build(const psc_circuit* circuit, const psc_circuit* oracle,
                            const char* rows_text, const char* relation,
                            uint64_t seeds, uint64_t master_seed,
                            unsigned threads, psc_matrix** out);
psc_status psc_matrix_parse(const char* text, psc_matrix** out);
psc_status psc_matrix_load(const char* path, psc_matrix** out);
void psc_matrix_free(psc_matrix* matrix);
psc_status psc_matrix_print(const psc_matrix* matrix, char** out_text);

psc_status psc_matrix_density(const psc_matrix* matrix, const char* threshold,
                              int* out_dense, uint64_t* out_worst_row,
                              char** out_worst_density);
/* trials == 0: exhaustive enumeration within budget; otherwise a sampled
 * lower bound from that many random column tuples. */
psc_status psc_matrix_growth(const psc_matrix* matrix, unsigned m,
                             uint64_t trials, uint64_t budget, uint64_t seed,
                             uint64_t* out_count);
psc_status psc_matrix_find_majority(const psc_matrix* matrix, uint64_t master_seed,
                                    int retry_limit, char** out_report_json);

/* --- derandomization pipelines -------------------------------------------- */

/* Reports are deterministic JSON documents (schema in the project README).
 * out_wrapper may be NULL; when non-NULL and the wrapper is a pure circuit,
 * it receives the spliced wrapper circuit. */
psc_status psc_derand_finite(const psc_circuit* circuit, const psc_circuit* oracle,
                             const char* witness_rows_text, const char* relation,
                             uint64_t seeds_budget, uint64_t t_f,
                             uint64_t master_seed, unsigned threads,
                             char** out_report_json, psc_circuit** out_wrapper);

psc_status psc_derand_tropical(const char* problem_text, const char* sampler_text,
                               const char* p, uint64_t master_seed,
                               unsigned threads, char** out_report_json,
                               psc_circuit** out_wrapper);

psc_status psc_derand_arithmetic(const psc_circuit* circuit,
                                 const char* oracle_numerator,
                                 const char* oracle_denominator,
                                 uint64_t max_deg_r, uint64_t seeds_budget,
                                 uint64_t grid_budget, uint64_t master_seed,
                                 unsigned threads, char** out_report_json,
                                 psc_circuit** out_wrapper);

/* Isolating-set check of a deterministic (max,+) circuit against a
 * multilinear constant-free problem ("tropical-problem" text format). */
psc_status psc_verify_isolating(const psc_circuit* circuit, const char* problem_text,
                                uint64_t spot_checks, uint64_t spot_seed,
                                unsigned threads, char** out_report_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PSC_H */
