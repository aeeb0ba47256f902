#ifndef KRAW_H
#define KRAW_H

/*
 * C interface to the multivariate Krawtchouk library.
 *
 * Parameter sets are opaque handles that remember the scalar mode (exact
 * rational or approximate complex), tolerance and thread count they were
 * created with.  Every function returns a kraw_status; on failure the
 * message is available from kraw_last_error() on the calling thread.
 * Strings returned through char** are owned by the caller and released
 * with kraw_string_free().
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define KRAW_API __declspec(dllexport)
#else
#define KRAW_API __attribute__((visibility("default")))
#endif

typedef enum kraw_status {
  KRAW_OK = 0,
  KRAW_CHECK_FAILED = 1,   /* a verification ran and reported failures */
  KRAW_PARSE_ERROR = 2,    /* malformed JSON, number, suite list */
  KRAW_INVALID_PARAMS = 3, /* input is not a valid parameter set */
  KRAW_DOMAIN_ERROR = 4,   /* argument out of range, e.g. |m| > N */
  KRAW_INTERNAL_ERROR = 5
} kraw_status;

typedef enum kraw_mode { KRAW_MODE_EXACT = 0, KRAW_MODE_APPROX = 1 } kraw_mode;

typedef enum kraw_method {
  KRAW_METHOD_HYPERGEOMETRIC = 0,
  KRAW_METHOD_GENERATING = 1,
  KRAW_METHOD_PAIRING = 2
} kraw_method;

typedef enum kraw_operator {
  KRAW_OPERATOR_MTILDE = 0,   /* acts on the variable, index i in 1..d */
  KRAW_OPERATOR_M = 1,        /* acts on the degree index, i in 1..d */
  KRAW_OPERATOR_UNIVERSAL = 2 /* i ignored */
} kraw_operator;

typedef struct kraw_options {
  kraw_mode mode;
  double eps;       /* approximate-mode tolerance */
  unsigned threads; /* 0 or 1 runs single-threaded */
} kraw_options;

typedef struct kraw_params kraw_params;

/* Exact mode, eps = 1e-10, one thread. */
KRAW_API void kraw_options_init(kraw_options* options);

KRAW_API const char* kraw_last_error(void);
KRAW_API void kraw_string_free(char* s);
KRAW_API const char* kraw_version(void);

/* Parameter sets.  A NULL options pointer means the defaults. */
KRAW_API kraw_status kraw_params_from_json(const char* json, const kraw_options* options, kraw_params** out);
KRAW_API kraw_status kraw_params_to_json(const kraw_params* params, char** out);
KRAW_API void kraw_params_free(kraw_params* params);
KRAW_API int kraw_params_dim(const kraw_params* params);
KRAW_API kraw_mode kraw_params_mode(const kraw_params* params);

/* Writes {"valid", "violations"} to *report; KRAW_INVALID_PARAMS when the
 * input parsed but violates a defining condition. */
KRAW_API kraw_status kraw_params_validate_json(const char* json, const kraw_options* options, char** report);

/* Constructions.  Scalars are rational strings ("a", "a/b" or decimal). */
KRAW_API kraw_status kraw_params_griffiths(const char* const* p, size_t count, const kraw_options* options,
                                           kraw_params** out);
KRAW_API kraw_status kraw_params_hoare_rahman(const char* const* pp4, const kraw_options* options, kraw_params** out);
KRAW_API kraw_status kraw_params_milch(const char* const* p, size_t count, const kraw_options* options,
                                       kraw_params** out);
KRAW_API kraw_status kraw_params_ds(const char* q, int d, const kraw_options* options, kraw_params** out);
KRAW_API kraw_status kraw_params_involute(const kraw_params* params, kraw_params** out);

/* P(m, mt) for m, mt of length d with |m|, |mt| <= N, as a scalar string. */
KRAW_API kraw_status kraw_eval(const kraw_params* params, int N, const int* m, const int* mt, size_t d,
                               kraw_method method, char** value);

KRAW_API kraw_status kraw_table_json(const kraw_params* params, int N, char** out);

/* Runs a comma list of checks (NULL, "" or "full" for all) and writes the
 * aggregate report.  KRAW_CHECK_FAILED when any check fails. */
KRAW_API kraw_status kraw_check(const kraw_params* params, int N, const char* suite, char** report);

/* Same, with the parameter set, N and polynomial values read from a table
 * document; table-based checks use the stored values. */
KRAW_API kraw_status kraw_check_table(const char* table_json, const char* suite, const kraw_options* options,
                                      char** report);

KRAW_API kraw_status kraw_stencil_json(const kraw_params* params, int N, kraw_operator op, int i, char** out);

#ifdef __cplusplus
}
#endif

#endif /* KRAW_H */
