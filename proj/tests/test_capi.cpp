#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "ecmm/ecmm.h"

namespace {

const char* kSmallConfig = R"({
  "model": {
    "epsilon": 1.0,
    "delta": 1.0,
    "spectral_density": {"kind": "ohmic", "alpha": 0.1, "omega_c": 1.0},
    "n_modes": 5,
    "beta": 1.0
  },
  "mapping": {"gamma": 0.5},
  "dynamics": {"t_max": 2.0},
  "ensemble": {"n_traj": 600, "seed": 4}
})";

struct OwnedString {
    char* s = nullptr;
    ~OwnedString() { ecmm_string_free(s); }
    std::string str() const { return s ? s : ""; }
};

}  // namespace

TEST_CASE("version and error channel") {
    REQUIRE(ecmm_version() != nullptr);
    CHECK(std::strlen(ecmm_version()) > 0);
    REQUIRE(ecmm_last_error() != nullptr);
    ecmm_string_free(nullptr);  // harmless on null
}

TEST_CASE("config parse, mutate, serialize") {
    ecmm_config* cfg = nullptr;
    REQUIRE(ecmm_config_parse(kSmallConfig, &cfg) == ECMM_OK);
    REQUIRE(cfg != nullptr);

    OwnedString first;
    REQUIRE(ecmm_config_to_json(cfg, &first.s) == ECMM_OK);
    CHECK(first.str().find("\"gamma\": 0.5") != std::string::npos);

    CHECK(ecmm_config_set_seed(cfg, 99) == ECMM_OK);
    OwnedString second;
    REQUIRE(ecmm_config_to_json(cfg, &second.s) == ECMM_OK);
    CHECK(second.str().find("\"seed\": 99") != std::string::npos);

    OwnedString warn;
    REQUIRE(ecmm_config_warnings(cfg, &warn.s) == ECMM_OK);
    CHECK(warn.str().empty());

    ecmm_config_free(cfg);

    // a parse failure reports the field path through the error channel
    ecmm_config* bad = nullptr;
    CHECK(ecmm_config_parse("{\"model\": {}}", &bad) == ECMM_ERROR_VALIDATION);
    CHECK(bad == nullptr);
    CHECK(std::string(ecmm_last_error()).find("model.") != std::string::npos);

    CHECK(ecmm_config_parse(nullptr, &bad) == ECMM_ERROR_INVALID_ARGUMENT);
    CHECK(ecmm_config_parse(kSmallConfig, nullptr) == ECMM_ERROR_INVALID_ARGUMENT);
    CHECK(ecmm_config_load("/no/such/file.json", &bad) == ECMM_ERROR_VALIDATION);
}

TEST_CASE("simulation through the c interface") {
    ecmm_config* cfg = nullptr;
    REQUIRE(ecmm_config_parse(kSmallConfig, &cfg) == ECMM_OK);

    ecmm_result* res = nullptr;
    REQUIRE(ecmm_simulate(cfg, 2, &res) == ECMM_OK);
    REQUIRE(res != nullptr);

    const size_t nt = ecmm_result_num_times(res);
    REQUIRE(nt > 1);
    CHECK(ecmm_result_num_states(res) == 2);
    const double* times = ecmm_result_times(res);
    REQUIRE(times != nullptr);
    CHECK(times[0] == 0.0);
    CHECK(times[nt - 1] >= 2.0);

    const double* p1 = ecmm_result_population(res, 0);
    const double* p2 = ecmm_result_population(res, 1);
    const double* se1 = ecmm_result_population_se(res, 0);
    const double* d = ecmm_result_difference(res);
    const double* dse = ecmm_result_difference_se(res);
    REQUIRE(p1 != nullptr);
    REQUIRE(p2 != nullptr);
    REQUIRE(se1 != nullptr);
    REQUIRE(d != nullptr);
    REQUIRE(dse != nullptr);
    CHECK(ecmm_result_population(res, 5) == nullptr);
    CHECK(std::abs(p1[0] - 1.0) <= 3.5 * se1[0]);
    for (size_t k = 0; k < nt; ++k)
        CHECK(std::abs(d[k] - (p1[k] - p2[k])) <= 1e-12);

    CHECK(ecmm_result_abort_count(res) == 0);
    CHECK(ecmm_result_wall_seconds(res) >= 0.0);

    OwnedString csv;
    REQUIRE(ecmm_result_to_csv(res, 0, &csv.s) == ECMM_OK);
    CHECK(csv.str().rfind("t,P_1_1,P_2_1,D,se_P_1_1,se_P_2_1,se_D\n", 0) == 0);

    // delta = 1 here, so the scaled and raw tables coincide
    OwnedString scaled;
    REQUIRE(ecmm_result_to_csv(res, 1, &scaled.s) == ECMM_OK);
    CHECK(scaled.str() == csv.str());

    OwnedString run;
    REQUIRE(ecmm_result_run_json(res, &run.s) == ECMM_OK);
    CHECK(run.str().find("\"config\"") != std::string::npos);
    CHECK(run.str().find("\"n_trajectories\": 600") != std::string::npos);

    // the effective config in run.json reparses and reproduces the run exactly
    ecmm_config* echo = nullptr;
    REQUIRE(ecmm_config_parse(run.s, &echo) == ECMM_OK);
    ecmm_result* res2 = nullptr;
    REQUIRE(ecmm_simulate(echo, 1, &res2) == ECMM_OK);
    OwnedString csv2;
    REQUIRE(ecmm_result_to_csv(res2, 0, &csv2.s) == ECMM_OK);
    CHECK(csv2.str() == csv.str());

    ecmm_result_free(res2);
    ecmm_config_free(echo);
    ecmm_result_free(res);
    ecmm_config_free(cfg);

    CHECK(ecmm_simulate(nullptr, 1, &res) == ECMM_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("abort threshold surfaces as its own status") {
    const char* doomed = R"({
      "model": {
        "epsilon": 0.6,
        "delta": 1.0,
        "spectral_density": {"kind": "ohmic", "alpha": 0.4, "omega_c": 1.0},
        "n_modes": 2,
        "beta": 1.0
      },
      "mapping": {"gamma": 0.5},
      "dynamics": {"dt": 5.0, "t_max": 4000.0, "record_stride": 400},
      "ensemble": {"n_traj": 40, "seed": 1}
    })";
    ecmm_config* cfg = nullptr;
    REQUIRE(ecmm_config_parse(doomed, &cfg) == ECMM_OK);

    // the oversized explicit dt also trips the advisory channel
    OwnedString warn;
    REQUIRE(ecmm_config_warnings(cfg, &warn.s) == ECMM_OK);
    CHECK_FALSE(warn.str().empty());

    ecmm_result* res = nullptr;
    CHECK(ecmm_simulate(cfg, 1, &res) == ECMM_ERROR_TRAJECTORY_ABORTS);
    CHECK(res == nullptr);
    CHECK(std::string(ecmm_last_error()).find("0.1%") != std::string::npos);
    ecmm_config_free(cfg);
}

TEST_CASE("bath table over the c interface") {
    ecmm_config* cfg = nullptr;
    REQUIRE(ecmm_config_parse(kSmallConfig, &cfg) == ECMM_OK);

    ecmm_bath_table* tab = nullptr;
    REQUIRE(ecmm_bath_table_create(cfg, &tab) == ECMM_OK);
    REQUIRE(tab != nullptr);
    REQUIRE(ecmm_bath_table_num_modes(tab) == 5);
    const double* omega = ecmm_bath_table_omega(tab);
    const double* c = ecmm_bath_table_coupling(tab);
    REQUIRE(omega != nullptr);
    REQUIRE(c != nullptr);
    for (size_t j = 0; j + 1 < 5; ++j) CHECK(omega[j] < omega[j + 1]);
    CHECK(omega[2] == doctest::Approx(std::log(2.0)).epsilon(1e-14));

    // alpha omega_c / 2 = 0.05, five modes keep exactly 5/6 of it
    CHECK(ecmm_bath_table_reorg_continuum(tab) == doctest::Approx(0.05).epsilon(1e-14));
    CHECK(ecmm_bath_table_reorg_discrete(tab) ==
          doctest::Approx(0.05 * 5.0 / 6.0).epsilon(1e-13));

    OwnedString csv;
    REQUIRE(ecmm_bath_table_to_csv(tab, &csv.s) == ECMM_OK);
    CHECK(csv.str().rfind("j,omega_j,c_j\n", 0) == 0);
    CHECK(csv.str().find("# reorganization energy") != std::string::npos);

    ecmm_bath_table_free(tab);
    ecmm_config_free(cfg);

    CHECK(ecmm_bath_table_create(nullptr, &tab) == ECMM_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("built-in checks run and report rows") {
    ecmm_check_report* rep = nullptr;
    REQUIRE(ecmm_check_run(1, &rep) == ECMM_OK);
    REQUIRE(rep != nullptr);
    REQUIRE(ecmm_check_num_rows(rep) >= 6);
    for (size_t i = 0; i < ecmm_check_num_rows(rep); ++i) {
        CHECK(ecmm_check_name(rep, i) != nullptr);
        CHECK(ecmm_check_detail(rep, i) != nullptr);
        CHECK(ecmm_check_passed(rep, i) == 1);
    }
    CHECK(ecmm_check_all_passed(rep) == 1);
    ecmm_check_report_free(rep);
}
