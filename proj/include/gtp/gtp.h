/* C interface to the game-theoretic probability library.
 *
 * Every function returns a gtp_status. On failure the message is available from
 * gtp_last_error() on the same thread until the next call. Strings returned
 * through char** out-parameters are owned by the caller: release them with
 * gtp_string_free().
 */
#ifndef GTP_H
#define GTP_H

#if defined(__GNUC__)
#define GTP_API __attribute__((visibility("default")))
#else
#define GTP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct gtp_spec gtp_spec;

typedef enum {
  GTP_OK = 0,
  GTP_PROPERTY_VIOLATED = 1, /* computed, and the checked property fails; the output holds a witness */
  GTP_INPUT_ERROR = 2,
  GTP_INTERNAL_ERROR = 3
} gtp_status;

typedef enum { GTP_VARIANT_LIMINF = 0, GTP_VARIANT_SUP = 1 } gtp_variant;

GTP_API const char* gtp_version(void);
GTP_API const char* gtp_last_error(void);
GTP_API void gtp_string_free(char* s);

/* Rewrites "p/q", "inf" or "-inf" in canonical form (lowest terms, q > 0). */
GTP_API gtp_status gtp_extreal_normalize(const char* text, char** out);

GTP_API gtp_status gtp_spec_load_file(const char* path, gtp_spec** out);
GTP_API gtp_status gtp_spec_load_json(const char* json, gtp_spec** out);
GTP_API void gtp_spec_free(gtp_spec* spec);
GTP_API int gtp_spec_is_protocol2(const gtp_spec* spec);
GTP_API int gtp_spec_horizon(const gtp_spec* spec);
GTP_API gtp_status gtp_spec_dump_json(const gtp_spec* spec, char** out);

/* Audits every distinct content of the spec. PROPERTY_VIOLATED when some
 * content's effective level is below its declared level. */
GTP_API gtp_status gtp_check_axioms(const gtp_spec* spec, int json, char** report);

/* Conditional upper (or lower) expectation of a payoff at a situation.
 * Payoff names: a named payoff from the spec, e_w<k>, const:<c>, cap:<A>, event:<name>. */
GTP_API gtp_status gtp_expect(const gtp_spec* spec, const char* payoff, const char* situation, gtp_variant variant,
                      int lower, char** value);

/* Checks a supermartingale table given as CSV text. PROPERTY_VIOLATED with
 * "situation: lhs > rhs" in the report on the first failing situation. */
GTP_API gtp_status gtp_verify_table(const gtp_spec* spec, const char* csv, char** report);

typedef struct {
  const char* strategy;  /* "table", "doob:a,b" or "levy:a,b" */
  const char* table_csv; /* strategy table for "table" */
  const char* base_csv;  /* base supermartingale for "doob"; defaults to the spec's base */
  const char* payoff;    /* required for "levy"; adds conditional values to the trace otherwise */
  const char* path;      /* comma-separated outcome labels */
  const char* origin;    /* start situation for "doob" */
  int dyadic;            /* "levy": dyadic slack instead of exact witnesses */
} gtp_simulate_options;

typedef struct {
  char* trace_csv; /* n,situation,capital,conditional_upper,note */
  char* summary;
  char* table_csv;      /* constructed table, when there is one */
  char* cut_trace_json; /* "doob" only */
} gtp_simulate_result;

GTP_API gtp_status gtp_simulate(const gtp_spec* spec, const gtp_simulate_options* options, gtp_simulate_result* result);
GTP_API void gtp_simulate_result_free(gtp_simulate_result* result);

typedef struct {
  const char* payoff;     /* levy */
  const char* events;     /* comma-separated event names; kolmogorov, ergodic, classify use the first */
  const char* paths;      /* levy: ';'-separated paths of comma-separated labels; all paths when empty */
  const char* situation;  /* ergodic */
  const char* delta;      /* mixing */
  const char* gaps;       /* mixing: "n:a,n:a" */
  const char* ns;         /* mixing: comma-separated depths */
  const char* exceptions; /* mixing: ';'-separated outcome situations */
  const char* horizons;   /* classify: comma-separated horizons */
  int json;
} gtp_law_options;

typedef struct {
  char* report;
  char* trace_csv; /* levy only */
} gtp_law_result;

/* law: "levy", "kolmogorov", "ergodic", "mixing" or "classify". */
GTP_API gtp_status gtp_law(const gtp_spec* spec, const char* law, const gtp_law_options* options, gtp_law_result* result);
GTP_API void gtp_law_result_free(gtp_law_result* result);

#ifdef __cplusplus
}
#endif

#endif /* GTP_H */
