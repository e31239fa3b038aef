#ifndef REALGAUGE_H
#define REALGAUGE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible function.
typedef enum rg_status {
  RG_STATUS_OK = 0,
  RG_STATUS_NULL_POINTER = 1,
  RG_STATUS_INVALID_UTF8 = 2,
  RG_STATUS_SYNTAX = 3,
  RG_STATUS_CONFIG = 4,
  RG_STATUS_INVALID_ARGUMENT = 5,
  RG_STATUS_NOT_DEFINITE = 6,
  RG_STATUS_UNSUPPORTED = 7,
  RG_STATUS_MATH = 8,
  RG_STATUS_PANIC = 9,
} rg_status;

// An element of a field, tied to its variable names.
typedef struct rg_element rg_element;

// Variable names of `ℚ(x_1, …, x_r)`.
typedef struct rg_field rg_field;

// Result of a configuration or scenario run.
typedef struct rg_report rg_report;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null after a success.
// The pointer stays valid until the next call on this thread.
const char *rg_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *rg_version(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void rg_string_free(char *s);

// Creates the field `ℚ(names[0], …, names[n-1])`. `names` may be null when `n` is 0.
//
// # Safety
// `names` must point to `n` valid C strings; `out` must be writable.
enum rg_status rg_field_new(const char *const *names, size_t n, struct rg_field **out);

// Number of variables of `field`, or 0 for null.
//
// # Safety
// `field` must be null or a live handle.
size_t rg_field_var_count(const struct rg_field *field);

// # Safety
// `field` must be null or a live handle; it is invalid afterwards.
void rg_field_free(struct rg_field *field);

// Parses an expression such as `"(x - y^2)/(3*x)"` in `field`.
//
// # Safety
// `field` must be a live handle, `expr` a C string and `out` writable.
enum rg_status rg_element_parse(const struct rg_field *field,
                                const char *expr,
                                struct rg_element **out);

// Canonical text of `elem`; release with [`rg_string_free`].
//
// # Safety
// `elem` must be a live handle and `out` writable.
enum rg_status rg_element_to_string(const struct rg_element *elem, char **out);

// Valuation of `elem` as `"(a_1, …, a_r)"`, or `"inf"` for zero.
//
// # Safety
// `elem` must be a live handle and `out` writable.
enum rg_status rg_element_valuation(const struct rg_element *elem, char **out);

// Sign of `elem` (-1, 0 or 1) at the ordering given by one ±1 per variable.
//
// # Safety
// `signs` must point to `n` values (may be null when `n` is 0); `out` writable.
enum rg_status rg_element_sign_at(const struct rg_element *elem,
                                  const int8_t *signs,
                                  size_t n,
                                  int8_t *out);

// # Safety
// `elem` must be null or a live handle; it is invalid afterwards.
void rg_element_free(struct rg_element *elem);

// Index of the value cosets of the diagonal form `⟨elems[0], …, elems[n-1]⟩`.
// All entries must be nonzero and belong to fields with the same variables.
//
// # Safety
// `elems` must point to `n` live handles; `out` writable.
enum rg_status rg_coset_index(const struct rg_element *const *elems, size_t n, size_t *out);

// Runs a JSON scenario configuration (the CLI's `run <config>` format).
//
// # Safety
// `json` must be a C string and `out` writable.
enum rg_status rg_run_config(const char *json, struct rg_report **out);

// Runs a built-in scenario by name (`"bk2_example"` or `"m6_index_example"`).
//
// # Safety
// `name` must be a C string and `out` writable.
enum rg_status rg_run_scenario(const char *name,
                               uint64_t seed,
                               size_t samples,
                               struct rg_report **out);

// True when the run had no violations and no analysis errors. False for null.
//
// # Safety
// `report` must be null or a live handle.
bool rg_report_ok(const struct rg_report *report);

// Report as pretty-printed JSON; release with [`rg_string_free`].
//
// # Safety
// `report` must be a live handle and `out` writable.
enum rg_status rg_report_json(const struct rg_report *report, char **out);

// # Safety
// `report` must be null or a live handle; it is invalid afterwards.
void rg_report_free(struct rg_report *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REALGAUGE_H */
