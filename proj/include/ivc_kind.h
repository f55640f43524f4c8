/* C interface to the IVC model-checking core.
 *
 * All functions that produce text allocate with malloc; release results with
 * ivk_string_free. Status codes mirror the CLI exit codes:
 *   0 success (proved / analysis complete)
 *   1 property falsified (counterexample in the result JSON)
 *   2 unknown / timeout
 *   3 usage or I/O error (bad input, unparseable model, bad options)
 *   4 internal or solver-protocol error
 */
#ifndef IVC_KIND_H
#define IVC_KIND_H

#ifdef __cplusplus
extern "C" {
#endif

enum {
  IVK_OK = 0,
  IVK_FALSIFIED = 1,
  IVK_UNKNOWN = 2,
  IVK_USAGE = 3,
  IVK_INTERNAL = 4,
};

typedef struct ivk_model ivk_model;

/* Parses and normalizes Lustre source text. Returns NULL on error with a
 * diagnostic in *err (malloc'd). */
ivk_model* ivk_model_load(const char* source, char** err);
void ivk_model_free(ivk_model* m);
void ivk_string_free(char* s);

/* options_json for check/ivc (all keys optional):
 *   {"solver": "<command>", "solver_name": "<label>", "max_k": 20,
 *    "timeout_ms": 60000, "algorithm": "uc|bf|ucbf", "dump_smt": "<dir>"}
 */

/* k-induction check. Result JSON:
 *   {"status":"proved","k":...,"invariants":[...],"time_ms":...}
 *   {"status":"cex","length":...,"lustre_length":...,"trace":[{var:value}]}
 *   {"status":"unknown","reason":...}                                    */
int ivk_check(const ivk_model* m, const char* options_json, char** result_json, char** err);

/* IVC extraction (proves first). Result JSON:
 *   {"model":..., "property":..., "algorithm":..., "core":[names],
 *    "minimal":bool, "k":..., "invariants":[...], "proof_ms":...,
 *    "ivc_ms":..., "solver":...}                                         */
int ivk_ivc(const ivk_model* m, const char* options_json, char** result_json, char** err);

/* Backward slice from `root`, or from every property variable when root is
 * NULL. Result JSON: {"roots":[...], "slice":[names]} */
int ivk_slice(const ivk_model* m, const char* root, char** result_json, char** err);

/* Transition-system dump as SMT-LIB2-style text (for differential testing). */
int ivk_dump_ts(const ivk_model* m, char** text, char** err);

/* Diversity analysis over a directory of run-record JSON files. Result JSON:
 *   {"models":[<per-model report>], "summary_csv":..., "distances_csv":...} */
int ivk_diversity(const char* records_dir, char** result_json, char** err);

/* Bench matrix. config JSON:
 *   {"corpus_dir":..., "out_dir":...,
 *    "solvers":[{"name":...,"command":...}], "algorithms":[...],
 *    "max_k":20, "timeout_ms":60000, "jobs":1, "force":false}
 * Result JSON: {"records":[...], "summary":..., "summary_csv":...} */
int ivk_bench(const char* config_json, char** result_json, char** err);

#ifdef __cplusplus
}
#endif

#endif /* IVC_KIND_H */
