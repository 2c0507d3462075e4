#ifndef WELLFOUND_H
#define WELLFOUND_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum {
  WF_STATUS_OK = 0,
  WF_STATUS_NULL_POINTER = 1,
  WF_STATUS_INVALID_UTF8 = 2,
  WF_STATUS_PARSE = 3,
  WF_STATUS_INVALID_ARGUMENT = 4,
  WF_STATUS_LIMIT = 5,
  WF_STATUS_PANIC = 6,
} WfStatus;

/**
 * A predicate on a truncated universe.
 */
typedef struct WfPred WfPred;

/**
 * A clause theory.
 */
typedef struct WfTheory WfTheory;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or an empty string. The
 * pointer stays valid until the next call on the same thread.
 */
const char *wf_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void wf_string_free(char *s);

/**
 * Parses a YAML or JSON theory document.
 *
 * # Safety
 * `source` must be a NUL-terminated string; `out_theory` must be writable.
 */
WfStatus wf_theory_parse(const char *source, WfTheory **out_theory);

/**
 * # Safety
 * `theory` must come from [`wf_theory_parse`] and not have been freed.
 */
void wf_theory_free(WfTheory *theory);

/**
 * Number of atoms; atom `i` is bit `i` of every atom set.
 *
 * # Safety
 * `theory` must be a live handle.
 */
WfStatus wf_theory_num_atoms(const WfTheory *theory, size_t *out_atoms);

/**
 * Whether the empty sequent is underivable.
 *
 * # Safety
 * `theory` must be a live handle; `out_consistent` must be writable.
 */
WfStatus wf_theory_is_consistent(const WfTheory *theory, bool *out_consistent);

/**
 * Searches a model. On success `*out_found` tells whether one exists and
 * `*out_truth` holds the set of true atoms.
 *
 * # Safety
 * `theory` must be a live handle; both out-pointers must be writable.
 */
WfStatus wf_theory_find_model(const WfTheory *theory, bool *out_found, uint64_t *out_truth);

/**
 * Derivation of `antecedent ▷ succedent` as JSON, or null in
 * `*out_json` when the sequent is not derivable.
 *
 * # Safety
 * `theory` must be a live handle; `out_json` must be writable.
 */
WfStatus wf_theory_derivation_json(const WfTheory *theory,
                                   uint64_t antecedent,
                                   uint64_t succedent,
                                   char **out_json);

/**
 * Membership of a Boolean expression over the theory's atoms in its
 * filter, or in its ideal when `ideal` is set.
 *
 * # Safety
 * `theory` must be a live handle; `expr` a NUL-terminated string;
 * `out_member` writable.
 */
WfStatus wf_expr_in_theory_filter(const WfTheory *theory,
                                  const char *expr,
                                  bool ideal,
                                  bool *out_member);

/**
 * Parses a predicate listing, one sequence per line, on the universe of
 * sequences over `alphabet` letters of length at most `depth`.
 *
 * # Safety
 * `source` must be a NUL-terminated string; `out_pred` writable.
 */
WfStatus wf_pred_from_lines(const char *source, size_t alphabet, size_t depth, WfPred **out_pred);

/**
 * # Safety
 * `pred` must come from [`wf_pred_from_lines`] and not have been freed.
 */
void wf_pred_free(WfPred *pred);

/**
 * Every foundedness property of the predicate as a JSON array of
 * `{property, holds, witness}` objects.
 *
 * # Safety
 * `pred` must be a live handle; `out_json` writable.
 */
WfStatus wf_pred_classify_json(const WfPred *pred, bool closed_boundary, char **out_json);

/**
 * Runs a check suite (or `all`) with default sampling and reports the
 * instance and failure counts.
 *
 * # Safety
 * `suite` must be a NUL-terminated string; both out-pointers writable.
 */
WfStatus wf_check_suite(const char *suite,
                        size_t alphabet,
                        size_t depth,
                        bool closed_boundary,
                        size_t *out_instances,
                        size_t *out_failures);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WELLFOUND_H */
