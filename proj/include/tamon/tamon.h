/*
 * C interface to the timed-automaton stream monitor.
 *
 * Objects are opaque handles created and destroyed through this API. Every
 * fallible call returns a tamon_status; on failure, tamon_last_error() gives
 * a message for the calling thread. Strings returned through `char**` are
 * owned by the caller and must be released with tamon_string_free().
 */
#ifndef TAMON_TAMON_H
#define TAMON_TAMON_H

#include <stddef.h>
#include <stdint.h>

#if defined(TAMON_BUILDING_LIBRARY) && defined(__GNUC__)
#define TAMON_API __attribute__((visibility("default")))
#else
#define TAMON_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tamon_status {
  TAMON_OK = 0,
  TAMON_ERR_PARSE = 1,
  TAMON_ERR_INVALID_ARGUMENT = 2,
  TAMON_ERR_UNBOUND_PARAMETER = 3,
  TAMON_ERR_MALFORMED_GUARD = 4,
  TAMON_ERR_UNKNOWN_LETTER = 5,
  TAMON_ERR_UNSUPPORTED = 6,
  TAMON_ERR_CONTRACT = 7,
  TAMON_ERR_OVERFLOW = 8,
  TAMON_ERR_INTERNAL = 9
} tamon_status;

/* FAST: amortised constant-time monitor, one clock only.
 * NAIVE: explicit configuration sets, any number of clocks. */
typedef enum tamon_engine { TAMON_ENGINE_FAST = 0, TAMON_ENGINE_NAIVE = 1 } tamon_engine;

typedef struct tamon_automaton tamon_automaton;
typedef struct tamon_bindings tamon_bindings;
typedef struct tamon_stream tamon_stream;
typedef struct tamon_monitor tamon_monitor;

typedef struct tamon_counters {
  uint64_t node_inserts;
  uint64_t node_removals;
  uint64_t forest_links;
  uint64_t root_merges;
  uint64_t parent_hops;
  uint64_t evictions;
  uint64_t migrations;
  uint64_t total;
} tamon_counters;

typedef struct tamon_bench_report {
  size_t n;
  uint64_t total_ops;
  uint64_t max_ops_per_read;
  double amortised;
  double wall_seconds;
  tamon_counters counters;
} tamon_bench_report;

/* ---- errors and strings ---- */
TAMON_API const char* tamon_last_error(void);
TAMON_API const char* tamon_status_name(tamon_status status);
TAMON_API void tamon_string_free(char* s);

/* ---- automata ---- */
TAMON_API tamon_status tamon_automaton_parse(const char* text, tamon_automaton** out);
TAMON_API tamon_status tamon_automaton_format(const tamon_automaton* aut, char** out);
TAMON_API size_t tamon_automaton_clock_count(const tamon_automaton* aut);
/* 1 if both describe the same automaton, 0 otherwise. */
TAMON_API int tamon_automaton_equal(const tamon_automaton* a, const tamon_automaton* b);
TAMON_API void tamon_automaton_free(tamon_automaton* aut);

/* ---- parameter bindings ---- */
TAMON_API tamon_bindings* tamon_bindings_new(void);
/* `value` is an exact rational: "10", "3/2", "0.25". */
TAMON_API tamon_status tamon_bindings_set(tamon_bindings* b, const char* name, const char* value);
/* "NAME=VALUE". */
TAMON_API tamon_status tamon_bindings_parse(tamon_bindings* b, const char* assignment);
/* Newline-separated "NAME=VALUE" lines. */
TAMON_API tamon_status tamon_bindings_format(const tamon_bindings* b, char** out);
TAMON_API void tamon_bindings_free(tamon_bindings* b);

/* ---- streams ---- */
TAMON_API tamon_status tamon_stream_parse(const char* text, tamon_stream** out);
/* Space-separated tokens. */
TAMON_API tamon_status tamon_stream_format(const tamon_stream* s, char** out);
TAMON_API size_t tamon_stream_length(const tamon_stream* s);
TAMON_API void tamon_stream_free(tamon_stream* s);

/* ---- monitors ---- */
/* `bindings` may be NULL when the automaton has no parameters. */
TAMON_API tamon_status tamon_monitor_new(const tamon_automaton* aut, const tamon_bindings* bindings,
                                         tamon_engine engine, tamon_monitor** out);
/* One stream token: a letter, or "+<rational>" for a time span. */
TAMON_API tamon_status tamon_monitor_read_token(tamon_monitor* m, const char* token);
TAMON_API tamon_status tamon_monitor_read_letter(tamon_monitor* m, const char* letter);
TAMON_API tamon_status tamon_monitor_read_span(tamon_monitor* m, int64_t num, int64_t den);
TAMON_API tamon_status tamon_monitor_read_stream(tamon_monitor* m, const tamon_stream* s);
TAMON_API int tamon_monitor_accepted(const tamon_monitor* m);
TAMON_API uint64_t tamon_monitor_step(const tamon_monitor* m);
/* TAMON_ERR_UNSUPPORTED for the naive engine. */
TAMON_API tamon_status tamon_monitor_counters(const tamon_monitor* m, tamon_counters* out);
TAMON_API void tamon_monitor_free(tamon_monitor* m);

/* ---- generators ---- */
/* `nfa` must be clock-free. `window` is a positive rational or a parameter
 * name, which is then declared on the result. */
TAMON_API tamon_status tamon_gen_window(const tamon_automaton* nfa, const char* window,
                                        tamon_automaton** out);
/* Pattern ((a;b) WITHIN 4 ; c) WITHIN 10; default bindings optional (NULL). */
TAMON_API tamon_status tamon_gen_cel_example(tamon_automaton** out, tamon_bindings** bindings_out);
TAMON_API tamon_status tamon_gen_frobenius(const uint64_t* ks, size_t n, tamon_automaton** out);
/* `set` holds rationals as text; either output may be NULL. */
TAMON_API tamon_status tamon_gen_threesum(const char* const* set, size_t n, tamon_automaton** aut_out,
                                          tamon_stream** word_out);
/* kind: "discrete", "random_spans" or "adversarial_burst"; letters are
 * drawn from the automaton's alphabet. */
TAMON_API tamon_status tamon_gen_stream(const char* kind, size_t n, uint64_t seed,
                                        const tamon_automaton* aut, tamon_stream** out);
/* Random one-clock automaton and stream, reproducible from `seed`. */
TAMON_API tamon_status tamon_gen_random(uint64_t seed, tamon_automaton** aut_out,
                                        tamon_stream** stream_out);
/* "+1" before each letter. */
TAMON_API tamon_status tamon_encode_discrete(const char* const* letters, size_t n, tamon_stream** out);

/* ---- analysis ---- */
TAMON_API tamon_status tamon_bench_run(const tamon_automaton* aut, const tamon_bindings* bindings,
                                       const tamon_stream* s, tamon_bench_report* out);
/* Runs both engines; *diverged is 1 if verdicts ever differ, with the first
 * such step and both verdicts. Step 0 is before any input. */
TAMON_API tamon_status tamon_compare_engines(const tamon_automaton* aut, const tamon_bindings* bindings,
                                             const tamon_stream* s, int* diverged, uint64_t* step,
                                             int* fast_verdict, int* naive_verdict);

#ifdef __cplusplus
}
#endif

#endif /* TAMON_TAMON_H */
