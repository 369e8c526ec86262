#ifndef TMIG_H
#define TMIG_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define TMIG_API __attribute__((visibility("default")))
#else
#define TMIG_API
#endif

typedef struct tmig_universe tmig_universe;
typedef struct tmig_result tmig_result;

typedef enum tmig_status {
  TMIG_OK = 0,
  TMIG_E_PARSE = 1,          /* malformed control data, version, policy or DIMACS */
  TMIG_E_UNKNOWN_PACKAGE = 2,
  TMIG_E_INVALID_ARGUMENT = 3,
  TMIG_E_IO = 4,
  TMIG_E_UNSOLVABLE = 5,
  TMIG_E_TIMEOUT = 6,
  TMIG_E_SOLVER = 7,         /* external solver crashed or misbehaved */
  TMIG_E_UNSUPPORTED = 8,    /* encoding not applicable to this universe */
  TMIG_E_NOT_CANDIDATE = 9,  /* target not in unstable-only set, or nothing can change */
  TMIG_E_ACTUALLY_SOLVABLE = 10,
  TMIG_E_UNVERIFIED = 11,
  TMIG_E_UNTRIMMED = 12,
  TMIG_E_INTERNAL = 13
} tmig_status;

typedef enum tmig_mode { TMIG_MODE_MAX = 0, TMIG_MODE_MIN = 1, TMIG_MODE_TARGET = 2 } tmig_mode;
typedef enum tmig_format { TMIG_FORMAT_TEXT = 0, TMIG_FORMAT_STRUCTURED = 1 } tmig_format;
typedef enum tmig_dimacs { TMIG_DIMACS_CNF = 0, TMIG_DIMACS_WCNF = 1 } tmig_dimacs;

typedef struct tmig_options {
  tmig_mode mode;
  const char* target;      /* "name/version", target mode and explain */
  const char* encoding;    /* p1 p2-oracle p3 p4 p5 p5-strict; NULL means p5 */
  const char* policy_path; /* optional */
  const char* solver;      /* external solver command line; NULL means embedded */
  double timeout;          /* seconds; <= 0 unlimited */
  size_t p2_bound;
  int abort_on_untrimmed;
  size_t alternatives;
} tmig_options;

TMIG_API void tmig_options_init(tmig_options* opts);

/* Message of the last failed call on this thread; never NULL. */
TMIG_API const char* tmig_last_error(void);
TMIG_API const char* tmig_status_name(tmig_status status);

TMIG_API tmig_status tmig_universe_load(const char* testing_path, const char* unstable_path, tmig_universe** out);
TMIG_API tmig_status tmig_universe_from_text(const char* testing, const char* unstable, tmig_universe** out);
TMIG_API void tmig_universe_free(tmig_universe* u);
TMIG_API size_t tmig_universe_size(const tmig_universe* u);

TMIG_API tmig_status tmig_migrate(const tmig_universe* u, const tmig_options* opts, tmig_result** out);
TMIG_API void tmig_result_free(tmig_result* r);
TMIG_API size_t tmig_result_delta(const tmig_result* r);
TMIG_API int tmig_result_verified(const tmig_result* r);
TMIG_API tmig_status tmig_result_render(const tmig_result* r, tmig_format format, char** out);
TMIG_API tmig_status tmig_result_hints(const tmig_result* r, char** out);

/* Explains why opts->target cannot migrate. When it can, *migrates is set to 1
   and the text reports the smallest delta that brings it in. */
TMIG_API tmig_status tmig_explain(const tmig_universe* u, const tmig_options* opts, tmig_format format, char** out,
                                  int* migrates);
/* *clean is 1 when testing is unique and trimmed. */
TMIG_API tmig_status tmig_check(const tmig_universe* u, tmig_format format, char** out, int* clean);
TMIG_API tmig_status tmig_stats(const tmig_universe* u, const tmig_options* opts, tmig_format format, char** out);
/* With with_objective == 0 only the encoding's hard clauses are emitted. */
TMIG_API tmig_status tmig_emit(const tmig_universe* u, const tmig_options* opts, tmig_dimacs kind, int with_objective,
                               char** dimacs, char** atom_map);

TMIG_API void tmig_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
