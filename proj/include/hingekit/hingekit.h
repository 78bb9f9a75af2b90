/*
 * hingekit C interface.
 *
 * Scenarios are opaque handles created from JSON text. Every analysis call
 * returns a status code and, on success, a heap string (JSON report or CSV)
 * that the caller releases with hk_string_free. On failure, hk_last_error()
 * describes the problem; the message is thread-local and valid until the
 * next failing call on the same thread.
 */
#ifndef HINGEKIT_H
#define HINGEKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(HK_BUILDING_LIBRARY)
#define HK_API __declspec(dllexport)
#else
#define HK_API __declspec(dllimport)
#endif
#else
#define HK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as process exit codes of the CLI. */
typedef enum hk_status {
    HK_OK = 0,
    HK_ERR_USAGE = 1,
    HK_ERR_INPUT = 2,       /* schema, semantic or dimension errors */
    HK_ERR_DEGENERATE = 3,  /* degenerate geometry, non-generic cycle, projection failure */
    HK_ERR_INTERNAL = 4     /* internal consistency check failed */
} hk_status;

typedef struct hk_scenario hk_scenario;

typedef struct hk_options {
    double tol;          /* relative rank tolerance; <= 0 selects the default 1e-10 */
    int exact;           /* nonzero: also certify ranks in rational arithmetic */
    int steps;           /* flex: number of steps */
    double step_size;    /* flex: step length in radians */
    uint64_t samples;    /* sweep: number of samples */
    uint64_t seed;       /* sweep: generator seed */
    unsigned threads;    /* sweep: worker threads (output is thread-count independent) */
} hk_options;

HK_API const char* hk_version(void);
HK_API const char* hk_last_error(void);
HK_API void hk_options_init(hk_options* opts);

HK_API hk_status hk_scenario_parse(const char* json_text, hk_scenario** out);
HK_API void hk_scenario_free(hk_scenario* scenario);
/* "chain", "cycle" or "platform"; the string is owned by the handle. */
HK_API const char* hk_scenario_kind(const hk_scenario* scenario);
HK_API hk_status hk_scenario_emit(const hk_scenario* scenario, char** json_out);

HK_API hk_status hk_analyze_chain(const hk_scenario* scenario, const hk_options* opts, char** report_json);
HK_API hk_status hk_analyze_cycle(const hk_scenario* scenario, const hk_options* opts, char** report_json);
HK_API hk_status hk_analyze_platform(const hk_scenario* scenario, const hk_options* opts, char** report_json);
HK_API hk_status hk_convert_linkage(const hk_scenario* scenario, const hk_options* opts, char** report_json);
HK_API hk_status hk_flex(const hk_scenario* scenario, const hk_options* opts, char** report_json, char** path_csv);
HK_API hk_status hk_sweep(const hk_scenario* scenario, const hk_options* opts, char** report_json, char** rows_csv);

/* Classical fixture as scenario JSON. `args` holds `nargs` positional parameters. */
HK_API hk_status hk_example(const char* name, const char* const* args, size_t nargs, uint64_t seed,
                            char** scenario_json);

HK_API void hk_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* HINGEKIT_H */
