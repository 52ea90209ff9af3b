#include "ecmm/ecmm.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>
#include <utility>
#include <vector>

#include "ecmm/check.hpp"
#include "ecmm/config.hpp"
#include "ecmm/io.hpp"
#include "ecmm/runner.hpp"

#ifndef ECMM_VERSION_STRING
#define ECMM_VERSION_STRING "v0.0.0"
#endif

struct ecmm_config_t {
    ecmm::RunConfig cfg;
};

struct ecmm_result_t {
    ecmm::RunOutput out;
};

struct ecmm_bath_table_t {
    ecmm::SpectralDensity sd;
    ecmm::DiscretizedBath bath;
};

struct ecmm_check_report_t {
    std::vector<ecmm::CheckRow> rows;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
ecmm_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return ECMM_OK;
    } catch (const ecmm::ValidationError& e) {
        g_last_error = e.what();
        return ECMM_ERROR_VALIDATION;
    } catch (const ecmm::AbortThresholdExceeded& e) {
        g_last_error = e.what();
        return ECMM_ERROR_TRAJECTORY_ABORTS;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return ECMM_ERROR_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return ECMM_ERROR_RUNTIME;
    } catch (...) {
        g_last_error = "unknown error";
        return ECMM_ERROR_RUNTIME;
    }
}

ecmm_status invalid(const char* msg) {
    g_last_error = msg;
    return ECMM_ERROR_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* ecmm_version(void) { return ECMM_VERSION_STRING; }

const char* ecmm_last_error(void) { return g_last_error.c_str(); }

void ecmm_string_free(char* s) { std::free(s); }

/* --- configuration ------------------------------------------------------ */

ecmm_status ecmm_config_parse(const char* json_text, ecmm_config** out) {
    if (!json_text || !out) return invalid("ecmm_config_parse: null pointer");
    *out = nullptr;
    return guarded([&] { *out = new ecmm_config_t{ecmm::parse_run_config(json_text)}; });
}

ecmm_status ecmm_config_load(const char* path, ecmm_config** out) {
    if (!path || !out) return invalid("ecmm_config_load: null pointer");
    *out = nullptr;
    return guarded([&] { *out = new ecmm_config_t{ecmm::load_run_config(path)}; });
}

ecmm_status ecmm_config_set_seed(ecmm_config* cfg, uint64_t seed) {
    if (!cfg) return invalid("ecmm_config_set_seed: null config");
    cfg->cfg.seed = seed;
    g_last_error.clear();
    return ECMM_OK;
}

ecmm_status ecmm_config_to_json(const ecmm_config* cfg, char** out_json) {
    if (!cfg || !out_json) return invalid("ecmm_config_to_json: null pointer");
    *out_json = nullptr;
    return guarded([&] {
        *out_json = dup_string(ecmm::run_config_to_json(cfg->cfg));
        if (!*out_json) throw std::bad_alloc();
    });
}

ecmm_status ecmm_config_warnings(const ecmm_config* cfg, char** out_text) {
    if (!cfg || !out_text) return invalid("ecmm_config_warnings: null pointer");
    *out_text = nullptr;
    return guarded([&] {
        std::string text;
        for (const std::string& line : ecmm::config_warnings(cfg->cfg)) {
            text += line;
            text += '\n';
        }
        *out_text = dup_string(text);
        if (!*out_text) throw std::bad_alloc();
    });
}

void ecmm_config_free(ecmm_config* cfg) { delete cfg; }

/* --- simulation --------------------------------------------------------- */

ecmm_status ecmm_simulate(const ecmm_config* cfg, int threads, ecmm_result** out) {
    if (!cfg || !out) return invalid("ecmm_simulate: null pointer");
    *out = nullptr;
    return guarded([&] { *out = new ecmm_result_t{ecmm::run_simulation(cfg->cfg, threads)}; });
}

size_t ecmm_result_num_times(const ecmm_result* res) {
    return res ? res->out.result.times.size() : 0;
}

size_t ecmm_result_num_states(const ecmm_result* res) {
    return res ? static_cast<size_t>(res->out.result.num_states) : 0;
}

const double* ecmm_result_times(const ecmm_result* res) {
    return res ? res->out.result.times.data() : nullptr;
}

const double* ecmm_result_population(const ecmm_result* res, size_t state) {
    if (!res || state >= res->out.result.populations.size()) return nullptr;
    return res->out.result.populations[state].data();
}

const double* ecmm_result_population_se(const ecmm_result* res, size_t state) {
    if (!res || state >= res->out.result.populations_se.size()) return nullptr;
    return res->out.result.populations_se[state].data();
}

const double* ecmm_result_difference(const ecmm_result* res) {
    return res ? res->out.result.difference.data() : nullptr;
}

const double* ecmm_result_difference_se(const ecmm_result* res) {
    return res ? res->out.result.difference_se.data() : nullptr;
}

uint64_t ecmm_result_abort_count(const ecmm_result* res) {
    return res ? res->out.result.n_aborted : 0;
}

double ecmm_result_wall_seconds(const ecmm_result* res) {
    return res ? res->out.result.wall_seconds : 0.0;
}

ecmm_status ecmm_result_to_csv(const ecmm_result* res, int scale_time_by_delta, char** out_csv) {
    if (!res || !out_csv) return invalid("ecmm_result_to_csv: null pointer");
    *out_csv = nullptr;
    return guarded([&] {
        const double scale = scale_time_by_delta ? res->out.effective_config.delta : 1.0;
        *out_csv = dup_string(ecmm::populations_csv(res->out.result, scale));
        if (!*out_csv) throw std::bad_alloc();
    });
}

ecmm_status ecmm_result_run_json(const ecmm_result* res, char** out_json) {
    if (!res || !out_json) return invalid("ecmm_result_run_json: null pointer");
    *out_json = nullptr;
    return guarded([&] {
        *out_json =
            dup_string(ecmm::run_json(res->out.effective_config, res->out.result, ecmm_version()));
        if (!*out_json) throw std::bad_alloc();
    });
}

void ecmm_result_free(ecmm_result* res) { delete res; }

/* --- bath table --------------------------------------------------------- */

ecmm_status ecmm_bath_table_create(const ecmm_config* cfg, ecmm_bath_table** out) {
    if (!cfg || !out) return invalid("ecmm_bath_table_create: null pointer");
    *out = nullptr;
    return guarded([&] {
        ecmm::SpectralDensity sd = ecmm::make_spectral_density(cfg->cfg);
        ecmm::DiscretizedBath bath = ecmm::discretize(sd, cfg->cfg.n_modes);
        *out = new ecmm_bath_table_t{std::move(sd), std::move(bath)};
    });
}

size_t ecmm_bath_table_num_modes(const ecmm_bath_table* tab) {
    return tab ? static_cast<size_t>(tab->bath.num_modes()) : 0;
}

const double* ecmm_bath_table_omega(const ecmm_bath_table* tab) {
    return tab ? tab->bath.omega.data() : nullptr;
}

const double* ecmm_bath_table_coupling(const ecmm_bath_table* tab) {
    return tab ? tab->bath.c.data() : nullptr;
}

double ecmm_bath_table_reorg_discrete(const ecmm_bath_table* tab) {
    return tab ? ecmm::reorganization_energy(tab->bath) : 0.0;
}

double ecmm_bath_table_reorg_continuum(const ecmm_bath_table* tab) {
    return tab ? tab->sd.reorganization_energy() : 0.0;
}

ecmm_status ecmm_bath_table_to_csv(const ecmm_bath_table* tab, char** out_csv) {
    if (!tab || !out_csv) return invalid("ecmm_bath_table_to_csv: null pointer");
    *out_csv = nullptr;
    return guarded([&] {
        *out_csv = dup_string(ecmm::bath_csv(tab->sd, tab->bath));
        if (!*out_csv) throw std::bad_alloc();
    });
}

void ecmm_bath_table_free(ecmm_bath_table* tab) { delete tab; }

/* --- self checks -------------------------------------------------------- */

ecmm_status ecmm_check_run(int quick, ecmm_check_report** out) {
    if (!out) return invalid("ecmm_check_run: null pointer");
    *out = nullptr;
    return guarded([&] { *out = new ecmm_check_report_t{ecmm::run_check_suite(quick != 0)}; });
}

size_t ecmm_check_num_rows(const ecmm_check_report* rep) { return rep ? rep->rows.size() : 0; }

const char* ecmm_check_name(const ecmm_check_report* rep, size_t i) {
    if (!rep || i >= rep->rows.size()) return nullptr;
    return rep->rows[i].name.c_str();
}

int ecmm_check_passed(const ecmm_check_report* rep, size_t i) {
    if (!rep || i >= rep->rows.size()) return 0;
    return rep->rows[i].passed ? 1 : 0;
}

const char* ecmm_check_detail(const ecmm_check_report* rep, size_t i) {
    if (!rep || i >= rep->rows.size()) return nullptr;
    return rep->rows[i].detail.c_str();
}

int ecmm_check_all_passed(const ecmm_check_report* rep) {
    if (!rep) return 0;
    for (const ecmm::CheckRow& row : rep->rows)
        if (!row.passed) return 0;
    return 1;
}

void ecmm_check_report_free(ecmm_check_report* rep) { delete rep; }

} /* extern "C" */
