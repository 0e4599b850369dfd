#ifndef CHVIP_H
#define CHVIP_H

/* C interface to the exact Chvatal-conjecture IP toolkit. All functions
 * return chv_status; output strings are heap-allocated and must be
 * released with chv_string_free. chv_last_error describes the most recent
 * failure on the calling thread. */

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    CHV_OK = 0,
    CHV_ERR_INVALID = 1,  /* bad arguments or semantic rejection */
    CHV_ERR_PARSE = 2,    /* malformed certificate or family literal */
    CHV_ERR_INTERNAL = 3  /* internal invariant failure */
} chv_status;

typedef enum {
    CHV_SOLVE_OPTIMAL = 0,
    CHV_SOLVE_INFEASIBLE = 1,
    CHV_SOLVE_LIMIT = 2
} chv_solve_status;

typedef struct chv_model chv_model;
typedef struct chv_result chv_result;

const char* chv_last_error(void);
void chv_string_free(char* s);

/* form is "inf", "opt", or "red". */
chv_status chv_model_create(const char* form, int n, chv_model** out);
/* family_literal uses the textual family syntax, e.g. "{1,2},{3}"; every
 * member must have size m. */
chv_status chv_model_apply_level_fixings(chv_model* m, int level, const char* family_literal);
chv_status chv_model_stats(const chv_model* m, int* vars, int* vars_excluding_z, long* ineqs, int* fixings);
/* readable nonzero selects the annotated text form; zero the certificate
 * problem section. */
chv_status chv_model_emit(const chv_model* m, int readable, char** text);
void chv_model_free(chv_model* m);

/* time_limit_seconds <= 0 means no time limit; node_limit < 0 means no
 * node limit; progress nonzero enables stderr progress lines. */
chv_status chv_solve(const chv_model* m, double time_limit_seconds, long node_limit, int progress, chv_result** out);
chv_solve_status chv_result_status(const chv_result* r);
long chv_result_nodes(const chv_result* r);
/* Rational strings; objective/solution require a solution to be present,
 * dual bound and certificate may be absent (CHV_ERR_INVALID). */
chv_status chv_result_objective(const chv_result* r, char** value);
chv_status chv_result_dual_bound(const chv_result* r, char** value);
chv_status chv_result_certificate(const chv_result* r, char** text);
/* One "name value" line per nonzero variable of the best solution. */
chv_status chv_result_solution(const chv_result* r, char** text);
void chv_result_free(chv_result* r);

/* CHV_OK verified; CHV_ERR_INVALID refuted with *reason set;
 * CHV_ERR_PARSE on grammar violations. */
chv_status chv_check_certificate(const char* text, char** reason);
/* Compares the certificate's problem section with the regenerated model;
 * level/family as in chv_model_apply_level_fixings, level 0 disables. */
chv_status chv_verify_input(const char* text, const char* form, int n, int level, const char* family_literal, char** detail);

/* Report is a fixed-key text block; *all_satisfy is 1 when every downset
 * has the star property. long_run gates n = 6. */
chv_status chv_oracle(int n, int long_run, int progress, int* all_satisfy, char** report);

/* One canonical family literal per line: the isomorphism classes of
 * k-families of m-subsets of [n]. */
chv_status chv_classes(int n, int m, int k, char** text);

#ifdef __cplusplus
}
#endif

#endif /* CHVIP_H */
