/* C interface to the hmom library. Matrices cross the boundary as row-major
 * arrays of interleaved (re, im) doubles: q*q*2 values per matrix. Strings
 * returned through char** are owned by the caller and released with
 * hmom_string_free. */
#ifndef HMOM_H
#define HMOM_H

#include <stdint.h>

#if defined(_WIN32)
#  if defined(HMOM_BUILDING_LIBRARY)
#    define HMOM_API __declspec(dllexport)
#  else
#    define HMOM_API __declspec(dllimport)
#  endif
#else
#  define HMOM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct hmom_sequence hmom_sequence;

typedef enum hmom_status {
  HMOM_OK = 0,
  HMOM_ERR_PARSE = 1,
  HMOM_ERR_SHAPE = 2,
  HMOM_ERR_ARGUMENT = 3,
  HMOM_ERR_RANGE = 4,
  HMOM_ERR_PRECONDITION = 5,
  HMOM_ERR_OUTSIDE = 6,
  HMOM_ERR_INCONSISTENT = 7,
  HMOM_ERR_UNKNOWN_SUITE = 8,
  HMOM_ERR_INTERNAL = 9
} hmom_status;

typedef struct hmom_tolerances {
  double herm;
  double psd;
  double rank;
  double range;
} hmom_tolerances;

HMOM_API const char* hmom_version(void);
HMOM_API const char* hmom_status_name(hmom_status status);
/* Message of the last failing call on this thread; empty if none. */
HMOM_API const char* hmom_last_error(void);
HMOM_API void hmom_default_tolerances(hmom_tolerances* out);
HMOM_API void hmom_string_free(char* s);

/* tol may be NULL for defaults. */
HMOM_API hmom_status hmom_sequence_create(int q, double alpha, double beta, int count,
                                          const double* entries, const hmom_tolerances* tol,
                                          hmom_sequence** out);
/* Tolerances in the document override defaults_or_null. */
HMOM_API hmom_status hmom_sequence_parse(const char* json, const hmom_tolerances* defaults_or_null,
                                         hmom_sequence** out);
HMOM_API void hmom_sequence_free(hmom_sequence* seq);
HMOM_API hmom_status hmom_sequence_serialize(const hmom_sequence* seq, char** json_out);

HMOM_API int hmom_sequence_q(const hmom_sequence* seq);
HMOM_API int hmom_sequence_last_index(const hmom_sequence* seq);
HMOM_API double hmom_sequence_alpha(const hmom_sequence* seq);
HMOM_API double hmom_sequence_beta(const hmom_sequence* seq);
HMOM_API hmom_status hmom_sequence_moment(const hmom_sequence* seq, int j, double* entries_out);
HMOM_API hmom_status hmom_sequence_get_tolerances(const hmom_sequence* seq, hmom_tolerances* out);
HMOM_API hmom_status hmom_sequence_set_tolerances(hmom_sequence* seq, const hmom_tolerances* tol);

/* Reports are JSON objects with keys verdicts, residuals, data and status. */
HMOM_API hmom_status hmom_check(const hmom_sequence* seq, const char* require, char** report_out,
                                int* satisfied_out);
HMOM_API hmom_status hmom_interval(const hmom_sequence* seq, int m, char** report_out);
HMOM_API hmom_status hmom_membership(const hmom_sequence* seq, const double* candidate,
                                     char** report_out, int* status_out);
/* suite: one suite name, or "all". */
HMOM_API hmom_status hmom_verify(const hmom_sequence* seq, const char* suite, char** report_out,
                                 int* passed_out);
HMOM_API hmom_status hmom_degenerate_tail(const hmom_sequence* seq, char** report_out);

/* mode: lower, upper, central, ball or explicit. For ball, matrices holds one
 * contraction or one per step; for explicit, the candidates (steps is ignored). */
HMOM_API hmom_status hmom_extend(const hmom_sequence* seq, const char* mode, int steps,
                                 const double* matrices, int matrix_count, hmom_sequence** out);
/* Same, with the matrices given as a JSON document (see the CLI --k-file option). */
HMOM_API hmom_status hmom_extend_json(const hmom_sequence* seq, const char* mode, int steps,
                                      const char* matrices_json, hmom_sequence** out);
HMOM_API hmom_status hmom_random(int q, double alpha, double beta, int m, uint64_t seed, int pd,
                                 const hmom_tolerances* tol, hmom_sequence** out);

#ifdef __cplusplus
}
#endif

#endif
