/* C interface to the spic spectral-invariant engine. */

#ifndef SPIC_H
#define SPIC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Outcome of a call. Anything but `Ok` leaves a message readable through
// `spic_last_error`.
typedef enum SpicStatus {
  // The call succeeded.
  SPIC_STATUS_OK = 0,
  // A required pointer argument was null.
  SPIC_STATUS_NULL_ARGUMENT = 1,
  // An input string was not valid UTF-8.
  SPIC_STATUS_INVALID_UTF8 = 2,
  // The problem text does not parse; the message names the line.
  SPIC_STATUS_PARSE_ERROR = 3,
  // The operation is not defined for this problem (for example,
  // emitting a non-cyclic module model).
  SPIC_STATUS_UNSUPPORTED = 4,
  // A panic was caught at the boundary.
  SPIC_STATUS_PANIC = 5,
} SpicStatus;

// A parsed problem file. Opaque; create with `spic_problem_parse` and
// release with `spic_problem_free`.
typedef struct SpicProblem SpicProblem;

// A finished run. Opaque; create with `spic_run` and release with
// `spic_report_free`.
typedef struct SpicReport SpicReport;

// Run configuration; obtain defaults from `spic_options_default`.
typedef struct SpicOptions {
  // Budget for generic-sample searches per component.
  size_t sample_budget;
  // Thickening bound for stabilized dimension counts.
  size_t max_k;
  // Starting offset into the deterministic sample stream.
  size_t seed;
  // Execute only the `verify` queries.
  bool verify_only;
} SpicOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message for the most recent non-`Ok` status on this thread, or null.
// The pointer stays valid until the next call into this library from the
// same thread.
const char *spic_last_error(void);

// The default run configuration.
struct SpicOptions spic_options_default(void);

// Parses problem text into a new handle stored in `*out`.
//
// # Safety
// `text` must point to a nul-terminated string and `out` must be a valid
// pointer; on `Ok` the caller owns `*out` and must release it with
// `spic_problem_free`.
enum SpicStatus spic_problem_parse(const char *text, struct SpicProblem **out);

// Releases a problem handle. A null pointer is ignored.
//
// # Safety
// `problem` must be null or a pointer obtained from `spic_problem_parse`
// that has not been freed already.
void spic_problem_free(struct SpicProblem *problem);

// Writes the canonical text of the problem to `*out`; parsing that text
// reproduces the problem.
//
// # Safety
// `problem` must be a live handle and `out` a valid pointer; on `Ok` the
// caller owns `*out` and must release it with `spic_string_free`.
enum SpicStatus spic_problem_emit(const struct SpicProblem *problem, char **out);

// Runs all queries of the problem and stores a report handle in `*out`.
// Per-query failures are recorded inside the report, not here.
//
// # Safety
// `problem` must be a live handle; `options` must be null (defaults) or
// valid; `out` must be a valid pointer. On `Ok` the caller owns `*out`
// and must release it with `spic_report_free`.
enum SpicStatus spic_run(const struct SpicProblem *problem,
                         const struct SpicOptions *options,
                         struct SpicReport **out);

// Releases a report handle. A null pointer is ignored.
//
// # Safety
// `report` must be null or a pointer obtained from `spic_run` that has
// not been freed already.
void spic_report_free(struct SpicReport *report);

// Writes the machine-readable JSON report to `*out`.
//
// # Safety
// `report` must be a live handle and `out` a valid pointer; on `Ok` the
// caller owns `*out` and must release it with `spic_string_free`.
enum SpicStatus spic_report_json(const struct SpicReport *report, char **out);

// Writes the human-readable report to `*out`.
//
// # Safety
// `report` must be a live handle and `out` a valid pointer; on `Ok` the
// caller owns `*out` and must release it with `spic_string_free`.
enum SpicStatus spic_report_human(const struct SpicReport *report, char **out);

// The process exit status the report calls for: 0 for success, 2 when a
// verification verdict failed, 1 when any query recorded an error.
//
// # Safety
// `report` must be a live handle.
int spic_report_exit_status(const struct SpicReport *report);

// Releases a string produced by this library. A null pointer is ignored.
//
// # Safety
// `s` must be null or a pointer produced by this library that has not
// been freed already.
void spic_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SPIC_H */
