/* Copyright 2026 The lpw Authors
 * SPDX-License-Identifier: Apache-2.0
 */

/* C interface to liblpw.
 *
 * Objects are opaque handles released with their _free function.  Every
 * call returns an lpw_status; on failure lpw_last_error() describes it (the
 * message is per thread and valid until the next call on that thread).
 * Rationals are passed as strings ("3/2", "2", "0.75" is not accepted).
 * Strings returned through char** are owned by the caller and released with
 * lpw_string_free.  Structured results are JSON.
 */

#ifndef LPW_LPW_H_
#define LPW_LPW_H_

#include <stdint.h>

#if defined(_WIN32)
#define LPW_API __declspec(dllexport)
#else
#define LPW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lpw_status {
  LPW_OK = 0,
  LPW_ERR_INVALID_INPUT,
  LPW_ERR_DOMAIN,
  LPW_ERR_EXPONENT_TWO,
  LPW_ERR_EXPONENT_MISMATCH,
  LPW_ERR_INCONSISTENT,
  LPW_ERR_ZERO_SPACE,
  LPW_ERR_NOT_A_DISINTEGRATION,
  LPW_ERR_NOT_NORMALIZED,
  LPW_ERR_NOT_AN_ISOMORPHISM,
  LPW_ERR_NOT_IN_SPAN,
  LPW_ERR_INVALID_ORDER,
  LPW_ERR_TOO_FEW_ELEMENTS,
  LPW_ERR_NOT_HILBERT,
  LPW_ERR_PRECISION_EXHAUSTED,
  LPW_ERR_IO,
  LPW_ERR_NULL_ARGUMENT,
  LPW_ERR_INTERNAL
} lpw_status;

typedef struct lpw_presentation lpw_presentation;
typedef struct lpw_name lpw_name;
typedef struct lpw_order lpw_order;

typedef enum lpw_space { LPW_SPACE_LPN = 0, LPW_SPACE_LP = 1, LPW_SPACE_LP01 = 2 } lpw_space;

typedef enum lpw_monitor_kind {
  LPW_MONITOR_BANACH = 0,
  LPW_MONITOR_VTREE,
  LPW_MONITOR_DISINT,
  LPW_MONITOR_LSPACE,
  LPW_MONITOR_HILBERT
} lpw_monitor_kind;

typedef enum lpw_iso { LPW_ISOMORPHIC = 0, LPW_NOT_ISOMORPHIC = 1, LPW_ISO_UNDETERMINED = 2 } lpw_iso;

LPW_API const char* lpw_version(void);
LPW_API const char* lpw_status_name(lpw_status s);
LPW_API const char* lpw_last_error(void);
LPW_API void lpw_string_free(char* s);

/* ---- presentations */

/* n is ignored unless space is LPW_SPACE_LPN. */
LPW_API lpw_status lpw_presentation_standard(lpw_space space, uint64_t n, const char* p, lpw_presentation** out);
/* JSON object as described in the README ("space": lpn | lp | lp01 | sum |
 * measure | order). */
LPW_API lpw_status lpw_presentation_from_json(const char* json, const char* p, lpw_presentation** out);
LPW_API lpw_status lpw_presentation_sum(const lpw_presentation* a, const lpw_presentation* b, const char* p,
                                        lpw_presentation** out);
LPW_API void lpw_presentation_free(lpw_presentation* pres);
LPW_API lpw_status lpw_presentation_describe(const lpw_presentation* pres, char** out);
/* vector_json is a dense list of rationals; out is {"lo": .., "hi": ..}
 * with width at most 2^-k. */
LPW_API lpw_status lpw_presentation_norm(const lpw_presentation* pres, const char* vector_json, int32_t k,
                                         char** out_json);
/* JSON lines of the disintegration snapshot: tree dump then chain dump. */
LPW_API lpw_status lpw_presentation_tree(const lpw_presentation* pres, uint64_t depth, int32_t k, char** out_jsonl);

/* ---- names */

LPW_API lpw_status lpw_name_of_presentation(const lpw_presentation* pres, lpw_name** out);
LPW_API lpw_status lpw_name_of_exponent(const char* p, lpw_name** out);
/* Text with one "m n" pair per line. */
LPW_API lpw_status lpw_name_parse(const char* text, lpw_name** out);
LPW_API lpw_status lpw_name_read_file(const char* path, lpw_name** out);
LPW_API void lpw_name_free(lpw_name* name);
/* First `count` pairs (fewer for a shorter finite name). */
LPW_API lpw_status lpw_name_write_file(const lpw_name* name, uint64_t count, const char* path);
LPW_API lpw_status lpw_name_text(const lpw_name* name, uint64_t count, char** out);
/* Finite names report their length; *is_finite is 0 for infinite ones. */
LPW_API lpw_status lpw_name_length(const lpw_name* name, int* is_finite, uint64_t* length);
/* Tree name of the presentation's disintegration (a growing one for the
 * l^p gadget). */
LPW_API lpw_status lpw_name_of_tree(const lpw_presentation* pres, uint64_t depth, lpw_name** out);

/* ---- orders */

LPW_API lpw_status lpw_order_from_json(const char* json, lpw_order** out);
LPW_API void lpw_order_free(lpw_order* order);
/* {"values": [G(0), ..], "adjacencies": [[a, b], ..]} over the first `stages`
 * elements. */
LPW_API lpw_status lpw_order_trace(const lpw_order* order, uint64_t stages, char** out_json);
LPW_API lpw_status lpw_order_to_space(const lpw_order* order, const char* p, lpw_presentation** out);

/* ---- convexity */

LPW_API lpw_status lpw_delta(const char* p, const char* eps, int32_t k, char** out_json);
LPW_API lpw_status lpw_estimate_exponent(const lpw_name* f, const char* tol, uint64_t budget, char** out_json);

/* ---- monitors */

/* g and h may be NULL where the monitor does not use them.  *violation is
 * set to 1 on a violation, 0 otherwise. */
LPW_API lpw_status lpw_monitor(lpw_monitor_kind kind, const lpw_name* f, const lpw_name* g, const lpw_name* h,
                               uint64_t stages, int* violation, char** out_json);

/* ---- classification */

/* *definite is 0 for UndeterminedAtBudget. */
LPW_API lpw_status lpw_classify(const lpw_presentation* pres, const char* p, uint64_t budget, int* definite,
                                char** out_json);
LPW_API lpw_status lpw_iso_check(const lpw_presentation* a, const lpw_presentation* b, const char* p,
                                 uint64_t budget, lpw_iso* verdict, char** out_json);
/* Exponent estimate followed by L^p monitoring against a name of p that
 * claims only the estimated interval.  The answer only speaks for the given
 * budget. */
LPW_API lpw_status lpw_lebesgue_probe(const lpw_name* f, uint64_t budget, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* LPW_LPW_H_ */
