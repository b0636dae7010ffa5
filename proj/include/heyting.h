/* C interface to the Heyting workbench.
 *
 * Conventions: every function returns a heyting_status; results are written
 * to out-parameters. Strings returned through char** are heap-allocated and
 * must be released with heyting_free_string. Algebras are opaque handles
 * released with heyting_algebra_free. heyting_last_error() describes the
 * most recent failure on the calling thread.
 *
 * Structured payloads travel as JSON; the schemas are documented in the
 * project README (posets as {"elements", "leq"}, algebras as {"poset",
 * "generators"}, systems as {"t", "s", "vars", "qvars"}).
 */
#ifndef HEYTING_H
#define HEYTING_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum heyting_status {
  HEYTING_OK = 0,
  HEYTING_ERR_PARSE = 1,
  HEYTING_ERR_ARITY = 2,
  HEYTING_ERR_CAP = 3,
  HEYTING_ERR_DOMAIN = 4,
  HEYTING_ERR_INTERNAL = 5,
  HEYTING_ERR_ARGUMENT = 6
} heyting_status;

typedef struct heyting_algebra heyting_algebra;

const char* heyting_last_error(void);
void heyting_free_string(char* s);

/* ---- algebras ---- */
heyting_status heyting_algebra_from_json(const char* json, heyting_algebra** out);
heyting_status heyting_algebra_upsets_of_poset(const char* poset_json,
                                               heyting_algebra** out);
void heyting_algebra_free(heyting_algebra* a);
heyting_status heyting_algebra_to_json(const heyting_algebra* a, char** out);
heyting_status heyting_algebra_to_dot(const heyting_algebra* a, char** out);
heyting_status heyting_algebra_size(const heyting_algebra* a, int* out);

/* ---- prover ---- */
/* verdict JSON: {"valid": bool, "countermodel": {...}} */
heyting_status heyting_prove(const char* formula, int vars, int qvars, char** out);
heyting_status heyting_countermodel(const char* formula, int vars, int max_points,
                                    char** out);

/* ---- fragments and similarity ---- */
heyting_status heyting_fragment(int vars, int degree, int max_reps, char** out);
heyting_status heyting_balls(int vars, int degree, int max_reps, char** out);
/* tuple/tuple2: JSON arrays of element indices */
heyting_status heyting_theory(const heyting_algebra* a, const char* tuple, int n,
                              int max_reps, char** out);
heyting_status heyting_similar(const heyting_algebra* a, const char* tuple,
                               const heyting_algebra* a2, const char* tuple2, int n,
                               int max_reps, int* out);
heyting_status heyting_equiv_sentence(int vars, int n, int max_reps, char** out);
heyting_status heyting_yn(const heyting_algebra* a, const char* tuple, int n,
                          int max_reps, char** out);
heyting_status heyting_h_index(const heyting_algebra* a, int vars, int degree,
                               int n_max, int max_reps, char** out);
heyting_status heyting_emit_fc(int vars, int degree, int n, int max_reps, char** out);

/* ---- systems and solving ---- */
heyting_status heyting_solve_in(const heyting_algebra* a, const char* system_json,
                                const char* tuple, char** out);
heyting_status heyting_solve_in_extension(const heyting_algebra* a,
                                          const char* system_json, const char* tuple,
                                          int dual_size_cap, char** out);
heyting_status heyting_discriminant(const char* system_json, int radius, int max_reps,
                                    char** out);
heyting_status heyting_decide(const heyting_algebra* a, const char* system_json,
                              const char* tuple, int radius, int max_reps, char** out);
/* cases: JSON array of {"algebra": ..., "tuple": [...]} */
heyting_status heyting_stable_radius(const char* system_json, const char* cases_json,
                                     int r_max, int witness_cap, int max_reps,
                                     char** out);
heyting_status heyting_kernel_projection_check(const char* t_formula, int vars,
                                               const heyting_algebra* a,
                                               const char* tuple, int degree_cap,
                                               int max_reps, int* out);

/* ---- structural checkers ---- */
heyting_status heyting_density(const heyting_algebra* a, char** out);
heyting_status heyting_splitting(const heyting_algebra* a, char** out);
heyting_status heyting_codim(const heyting_algebra* a, char** out);
heyting_status heyting_dimension(const heyting_algebra* a, int* out);
heyting_status heyting_dfilter(const heyting_algebra* a, int d, char** out);
/* pairs: JSON array of {"first": alg, "first_tuple": [...],
                         "second": alg, "second_tuple": [...]} */
heyting_status heyting_lemma_a2(const char* pairs_json, int d, int* out);

/* ---- duality workbench ---- */
heyting_status heyting_amalgamate(const heyting_algebra* base,
                                  const heyting_algebra* left, const char* left_map,
                                  const heyting_algebra* right, const char* right_map,
                                  char** out);
heyting_status heyting_minimal_extensions(const heyting_algebra* a, int extra_cap,
                                          char** out);
heyting_status heyting_embed_over(const heyting_algebra* base,
                                  const heyting_algebra* b, const char* b_map,
                                  const heyting_algebra* h, const char* h_map,
                                  char** out);
heyting_status heyting_build_h0(int level, int ext_cap, int max_dual_points,
                                int max_steps, char** out);

#ifdef __cplusplus
}
#endif

#endif
