#ifndef COMPRO_H
#define COMPRO_H

/*
 * C surface over the composite projection toolkit. Handles are opaque;
 * results come back as JSON or DOT text in heap strings released with
 * compro_string_free. Functions return compro_status; on any nonzero
 * status compro_last_error() carries a message (thread local).
 */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct compro_system compro_system;
typedef struct compro_model compro_model;

typedef enum {
  COMPRO_OK = 0,
  COMPRO_REPORTED_FAILURES = 1, /* checks ran and some failed; see the report */
  COMPRO_INVALID = 2,           /* schema, flag, or word-syntax problem */
  COMPRO_CONTRADICTION = 3,     /* an outcome the verified theory forbids */
  COMPRO_ERROR = 4              /* i/o or internal failure */
} compro_status;

const char* compro_last_error(void);
void compro_string_free(char* s);

/* ---- table-backed systems ---- */

compro_status compro_system_load_file(const char* path, int strict,
                                      compro_system** out);
compro_status compro_system_load_json(const char* json, int strict,
                                      compro_system** out);
void compro_system_free(compro_system* sys);

/* Axiom sweep at theta ("p/q"; NULL uses the instance theta). The report is
 * canonical JSON. Returns COMPRO_REPORTED_FAILURES when an axiom fails. */
compro_status compro_check(compro_system* sys, const char* theta, char** report);

/* Instance calibration: least workable kappa/Theta plus the derived rungs. */
compro_status compro_calibrate(compro_system* sys, char** ladder_json);

/* Projection complex of one coordinate at threshold K, as DOT text. */
compro_status compro_complex_dot(compro_system* sys, int coord, const char* K,
                                 char** dot);

compro_status compro_system_to_json(compro_system* sys, char** json);

/* ---- generators ---- */

/* Materializes a model spec (tree-segments, adversarial, or graph-product)
 * into the instance table format. */
compro_status compro_gen_instance(const char* model_spec_json, char** instance_json);

/* ---- generated models with group action ---- */

compro_status compro_model_create(const char* model_spec_json, compro_model** out);
void compro_model_free(compro_model* m);

compro_status compro_model_ladder(compro_model* m, char** ladder_json);

/* Rotating-family verification sweep; COMPRO_REPORTED_FAILURES on any
 * failed instance. */
compro_status compro_verify_family(compro_model* m, char** report);

/* Windmill process: runs until the truncation is absorbed or the budget is
 * hit. trace receives JSON lines (one per step), presentation the emitted
 * document. form is "transversal" or "closure". */
compro_status compro_windmill(compro_model* m, int budget, const char* form,
                              char** trace, char** presentation);

/* Shortening search for a word over the emitted generators ("s0 s1^-1 ...")
 * or over the group generators ("a1^5027 ..."). Runs the full reduction. */
compro_status compro_greendlinger(compro_model* m, const char* word, int max_steps,
                                  char** report);

/* Word-problem answers for a group word: triviality and membership in the
 * normal closure of the q-th powers. */
compro_status compro_oracle(compro_model* m, const char* word, char** verdict);

#ifdef __cplusplus
}
#endif

#endif /* COMPRO_H */
