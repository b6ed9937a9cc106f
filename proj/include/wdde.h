#ifndef WDDE_H
#define WDDE_H

/* C interface to the wdde solver library.
 *
 * Inputs and outputs cross this boundary as JSON text; handles are opaque.
 * Every function that can fail returns a wdde_status and, when err is
 * non-NULL, leaves a malloc'd message in *err on failure.  Strings returned
 * through char** parameters are released with wdde_string_free. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wdde_status {
    WDDE_OK = 0,
    WDDE_ERR_INPUT = 1,    /* malformed JSON, schema or coverage violations */
    WDDE_ERR_SINGULAR = 2, /* a matrix the solution needs failed the SV gate */
    WDDE_ERR_INTERNAL = 3
} wdde_status;

typedef struct wdde_problem wdde_problem;
typedef struct wdde_result wdde_result;

typedef struct wdde_options {
    double residual_tol; /* caller-side acceptance bound on residual_rel;
                          * solving itself never fails on it */
    double sv_threshold; /* singular-value gate level */
    const char* method;  /* "auto", "n1", "general" */
} wdde_options;

void wdde_options_init(wdde_options* opt);

wdde_status wdde_problem_parse(const char* json, double sv_threshold, wdde_problem** out,
                               char** err);
void wdde_problem_free(wdde_problem* p);
long wdde_problem_dimension(const wdde_problem* p);
long wdde_problem_max_delay(const wdde_problem* p);

/* Structured solve per opt->method, and the dense reference solve. */
wdde_status wdde_solve(const wdde_problem* p, const wdde_options* opt, wdde_result** out,
                       char** err);
wdde_status wdde_solve_dense(const wdde_problem* p, const wdde_options* opt, wdde_result** out,
                             char** err);

void wdde_result_free(wdde_result* r);
wdde_status wdde_result_to_json(const wdde_result* r, char** out, char** err);
double wdde_result_residual_rel(const wdde_result* r);

/* Apply the window operator to sampled data ("u" fibers in the problem
 * layout); cross_check != 0 additionally compares the gated and the
 * contiguous evaluation routes and reports their largest gap. */
wdde_status wdde_box_apply(const char* json, int cross_check, char** out, char** err);

/* Word expansion of the n-th delta term, and its evaluation on a pair given
 * as {"beta": matrix, "gamma": matrix}. */
wdde_status wdde_delta_words(long n, char** out, char** err);
wdde_status wdde_delta_eval(const char* pair_json, long n, char** out, char** err);

/* Random-pair screening at dimension d: trials draws, delta terms checked up
 * to n_max against the given singular-value threshold. */
wdde_status wdde_genericity_sample(long d, long n_max, long trials, uint64_t seed,
                                   double threshold, char** out, char** err);

void wdde_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* WDDE_H */
