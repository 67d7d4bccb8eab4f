/* Public C interface to the skypick multi-rotor search-and-retrieve
 * simulator. All library state lives behind the two opaque handles; every
 * call that can fail returns an sp_status and, where offered, a diagnostic
 * in the caller's error buffer. */
#ifndef SKYPICK_H
#define SKYPICK_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sp_status {
  SP_OK = 0,
  SP_ERR_INVALID_ARGUMENT = 1, /* null handle or bad parameter */
  SP_ERR_CONFIG = 2,           /* scenario rejected; see errbuf */
  SP_ERR_IO = 3,               /* file not readable / not writable */
  SP_ERR_RUNTIME = 4           /* run failed after a valid start */
} sp_status;

const char* sp_status_name(sp_status status);
const char* sp_version(void);

typedef struct sp_scenario sp_scenario;
typedef struct sp_result sp_result;

/* Built-in scenario registry. Indices are stable within a version. */
int sp_builtin_count(void);
const char* sp_builtin_name(int index); /* NULL when out of range */

/* Scenario construction. On success *out owns the scenario and must be
 * released with sp_scenario_free. errbuf (optional) receives a field-level
 * diagnostic on SP_ERR_CONFIG. */
sp_status sp_scenario_from_file(const char* path, sp_scenario** out, char* errbuf,
                                size_t errbuf_len);
sp_status sp_scenario_from_json(const char* text, sp_scenario** out, char* errbuf,
                                size_t errbuf_len);
sp_status sp_scenario_from_builtin(const char* name, sp_scenario** out);

const char* sp_scenario_name(const sp_scenario* scenario);
void sp_scenario_set_seed(sp_scenario* scenario, uint64_t seed);
void sp_scenario_free(sp_scenario* scenario);

/* Executes the scenario. out_dir may be NULL or empty to skip the log and
 * metrics files; otherwise the CSV logs and metrics.json are written there.
 * On success *out owns the result. */
sp_status sp_run(const sp_scenario* scenario, const char* out_dir, sp_result** out,
                 char* errbuf, size_t errbuf_len);

/* JSON document with the run metrics. Owned by the result handle. */
const char* sp_result_metrics_json(const sp_result* result);
void sp_result_free(sp_result* result);

#ifdef __cplusplus
}
#endif

#endif /* SKYPICK_H */
