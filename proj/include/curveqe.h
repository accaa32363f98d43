/* curveqe: exact quantifier-elimination workbench over constructible
 * plane-curve vocabularies, plus the finite counterexample experiments.
 *
 * C interface of the shared library.  All results are returned as
 * heap-allocated JSON or formula strings owned by the library; release them
 * with cqe_string_free.  Functions return CQE_OK on success; on failure the
 * per-workspace (or thread-local, for workspace-less calls) message from
 * cqe_last_error explains what went wrong.
 */

#ifndef CURVEQE_H
#define CURVEQE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct cqe_workspace cqe_workspace;

typedef enum {
  CQE_OK = 0,
  CQE_ERR_INVALID_ARGUMENT = 1,
  CQE_ERR_PARSE = 2,
  CQE_ERR_UNSUPPORTED = 3,
  CQE_ERR_PRECISION = 4,
  CQE_ERR_CHECK_FAILED = 5, /* the run finished but some check did not pass */
  CQE_ERR_INTERNAL = 6
} cqe_status;

const char* cqe_version(void);
const char* cqe_status_name(cqe_status status);

/* Workspace: a signature plus derived-symbol tables and configuration. */
cqe_workspace* cqe_workspace_new(uint64_t seed, uint32_t precision_bits);
void cqe_workspace_free(cqe_workspace* ws);
const char* cqe_last_error(const cqe_workspace* ws); /* ws may be NULL */

/* Declares predicate symbols (and named constants) from a signature JSON
 * document; may be called once per workspace. */
cqe_status cqe_load_signature(cqe_workspace* ws, const char* signature_json);

/* Parses and normalizes a formula; *normalized_out receives its printed
 * form. */
cqe_status cqe_parse_formula(cqe_workspace* ws, const char* text, char** normalized_out);

/* Quantifier elimination: the eliminated formula and the serialized rewrite
 * trace.  Either output pointer may be NULL. */
cqe_status cqe_qe(cqe_workspace* ws, const char* formula_text, char** result_out,
                  char** trace_json_out);

/* Sampled semantic equivalence of two formulas over the workspace signature;
 * *report_json_out carries the JSON report, return value is CQE_OK also for
 * disagreeing formulas (consult the report). */
cqe_status cqe_check_equivalence(cqe_workspace* ws, const char* formula_a,
                                 const char* formula_b, uint32_t samples,
                                 char** report_json_out);

/* Exact evaluation at a rational point: point_json maps variable names to
 * rational strings; *truth_out receives 0 or 1. */
cqe_status cqe_eval(cqe_workspace* ws, const char* formula_text, const char* point_json,
                    int* truth_out);

/* The workspace's constant table (named handles that eliminated formulas may
 * reference), as a JSON object name -> value. */
cqe_status cqe_constants(cqe_workspace* ws, char** constants_json_out);

/* Experiment drivers.  Each writes a self-contained JSON report.  They
 * return CQE_ERR_CHECK_FAILED when the report contains failing checks.
 * a_rational accepts "p", "p/q" or decimal text.  config_json accepts the
 * same keys as the CLI flags: seed, precision_bits, a_values, n_range,
 * N_range, data_dir, sample_points. */
cqe_status cqe_galois(const char* config_json, char** report_json_out);
cqe_status cqe_example21(const char* config_json, char** report_json_out);
cqe_status cqe_combi(const char* config_json, char** report_json_out);
cqe_status cqe_theta(const char* config_json, char** report_json_out);
cqe_status cqe_claim_b(const char* config_json, char** report_json_out);
cqe_status cqe_binarize(const char* config_json, char** report_json_out);
cqe_status cqe_qe_corpus(const char* config_json, char** report_json_out);
cqe_status cqe_kernel_properties(const char* config_json, char** report_json_out);
cqe_status cqe_run_all(const char* config_json, char** report_json_out);

void cqe_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* CURVEQE_H */
