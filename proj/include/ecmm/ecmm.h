/* ecmm.h -- C API of the ecmm shared library.
 *
 * Opaque handles + integer status codes. Every function that can fail returns
 * an ecmm_status; on failure ecmm_last_error() holds a thread-local message.
 * Pointers returned by *_to_csv / *_to_json / warnings are heap strings owned
 * by the caller; release them with ecmm_string_free. Handles are released with
 * their matching *_free; all *_free functions accept NULL.
 */
#ifndef ECMM_H
#define ECMM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ecmm_status {
    ECMM_OK = 0,
    ECMM_ERROR_INVALID_ARGUMENT = 1,
    ECMM_ERROR_VALIDATION = 2,       /* config rejected; message has the field path */
    ECMM_ERROR_RUNTIME = 3,
    ECMM_ERROR_TRAJECTORY_ABORTS = 4 /* > 0.1% of trajectories blew up */
} ecmm_status;

typedef struct ecmm_config_t ecmm_config;
typedef struct ecmm_result_t ecmm_result;
typedef struct ecmm_bath_table_t ecmm_bath_table;
typedef struct ecmm_check_report_t ecmm_check_report;

const char* ecmm_version(void);
const char* ecmm_last_error(void); /* last failure message on this thread; "" if none */
void ecmm_string_free(char* s);

/* --- configuration ------------------------------------------------------ */

ecmm_status ecmm_config_parse(const char* json_text, ecmm_config** out);
ecmm_status ecmm_config_load(const char* path, ecmm_config** out);
ecmm_status ecmm_config_set_seed(ecmm_config* cfg, uint64_t seed);
ecmm_status ecmm_config_to_json(const ecmm_config* cfg, char** out_json);
/* newline-separated advisory lines; empty string when there are none */
ecmm_status ecmm_config_warnings(const ecmm_config* cfg, char** out_text);
void ecmm_config_free(ecmm_config* cfg);

/* --- simulation --------------------------------------------------------- */

/* threads <= 0 means: ECMM_THREADS environment variable, else hardware count.
 * The result is byte-identical for any thread count at a fixed seed. */
ecmm_status ecmm_simulate(const ecmm_config* cfg, int threads, ecmm_result** out);

size_t ecmm_result_num_times(const ecmm_result* res);
size_t ecmm_result_num_states(const ecmm_result* res);
const double* ecmm_result_times(const ecmm_result* res);
/* state is 0-based; NULL when out of range */
const double* ecmm_result_population(const ecmm_result* res, size_t state);
const double* ecmm_result_population_se(const ecmm_result* res, size_t state);
const double* ecmm_result_difference(const ecmm_result* res);    /* P_1 - P_2 */
const double* ecmm_result_difference_se(const ecmm_result* res);
uint64_t ecmm_result_abort_count(const ecmm_result* res);
double ecmm_result_wall_seconds(const ecmm_result* res);
/* scale_time_by_delta != 0 multiplies the time column by the model delta */
ecmm_status ecmm_result_to_csv(const ecmm_result* res, int scale_time_by_delta, char** out_csv);
/* run metadata document (effective config echo, version, aborts, wall time) */
ecmm_status ecmm_result_run_json(const ecmm_result* res, char** out_json);
void ecmm_result_free(ecmm_result* res);

/* --- bath table --------------------------------------------------------- */

ecmm_status ecmm_bath_table_create(const ecmm_config* cfg, ecmm_bath_table** out);
size_t ecmm_bath_table_num_modes(const ecmm_bath_table* tab);
const double* ecmm_bath_table_omega(const ecmm_bath_table* tab);
const double* ecmm_bath_table_coupling(const ecmm_bath_table* tab);
double ecmm_bath_table_reorg_discrete(const ecmm_bath_table* tab);
double ecmm_bath_table_reorg_continuum(const ecmm_bath_table* tab);
ecmm_status ecmm_bath_table_to_csv(const ecmm_bath_table* tab, char** out_csv);
void ecmm_bath_table_free(ecmm_bath_table* tab);

/* --- self checks -------------------------------------------------------- */

ecmm_status ecmm_check_run(int quick, ecmm_check_report** out);
size_t ecmm_check_num_rows(const ecmm_check_report* rep);
const char* ecmm_check_name(const ecmm_check_report* rep, size_t i);
int ecmm_check_passed(const ecmm_check_report* rep, size_t i);
const char* ecmm_check_detail(const ecmm_check_report* rep, size_t i);
int ecmm_check_all_passed(const ecmm_check_report* rep);
void ecmm_check_report_free(ecmm_check_report* rep);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ECMM_H */
