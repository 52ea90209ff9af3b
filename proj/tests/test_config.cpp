#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <functional>
#include <string>

#include "ecmm/config.hpp"
#include "ecmm/io.hpp"
#include "ecmm/runner.hpp"

using namespace ecmm;

namespace {

const char* kValid = R"({
  "model": {
    "epsilon": 1.0,
    "delta": 1.0,
    "spectral_density": {"kind": "ohmic", "alpha": 0.1, "omega_c": 2.5},
    "n_modes": 100,
    "beta": 0.25
  },
  "mapping": {"F": 2, "gamma": 0.5},
  "dynamics": {"dt": 0.002, "t_max": 15.0, "record_stride": 20},
  "ensemble": {"n_traj": 1000, "seed": 7},
  "method": "ecmm",
  "initial_state": 1
})";

std::string error_path(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        return msg.substr(0, msg.find(':'));
    }
    return "<no error>";
}

std::string replaced(const std::string& from, const std::string& to) {
    std::string s = kValid;
    const std::size_t pos = s.find(from);
    REQUIRE(pos != std::string::npos);
    return s.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("full valid config parses to the exact field values") {
    const RunConfig cfg = parse_run_config(kValid);
    CHECK(cfg.epsilon == 1.0);
    CHECK(cfg.delta == 1.0);
    CHECK(cfg.spectral_kind == SpectralKind::ohmic);
    CHECK(cfg.spectral_coupling == 0.1);
    CHECK(cfg.spectral_omega_c == 2.5);
    CHECK(cfg.n_modes == 100);
    CHECK(cfg.beta.value() == 0.25);
    CHECK(cfg.num_states == 2);
    CHECK(cfg.gamma == 0.5);
    REQUIRE(cfg.dt.has_value());
    CHECK(*cfg.dt == 0.002);
    CHECK(cfg.t_max == 15.0);
    CHECK(cfg.record_stride == 20);
    CHECK(cfg.n_traj == 1000);
    CHECK(cfg.seed == 7);
    CHECK(cfg.method == Method::ecmm);
    CHECK(cfg.initial_state == 1);
}

TEST_CASE("optional keys fall back to their defaults") {
    const char* minimal = R"({
      "model": {
        "epsilon": 0.0,
        "delta": 1.0,
        "spectral_density": {"kind": "debye", "lambda": 0.25, "omega_c": 5.0},
        "beta": "inf"
      },
      "mapping": {"gamma": 0.0},
      "dynamics": {"t_max": 10.0},
      "ensemble": {"n_traj": 100}
    })";
    const RunConfig cfg = parse_run_config(minimal);
    CHECK(cfg.spectral_kind == SpectralKind::debye);
    CHECK(cfg.n_modes == 300);
    CHECK(cfg.beta.is_infinite());
    CHECK(cfg.num_states == 2);
    CHECK_FALSE(cfg.dt.has_value());
    CHECK(cfg.record_stride == 10);
    CHECK(cfg.seed == 0);
    CHECK(cfg.method == Method::ecmm);
    CHECK(cfg.initial_state == 1);
}

TEST_CASE("validation failures carry the dotted field path") {
    CHECK(error_path([] { parse_run_config("not json at all"); }) == "$");
    CHECK(error_path([] { parse_run_config("[1, 2]"); }) == "$");

    CHECK(error_path([] {
              parse_run_config(replaced("\"epsilon\": 1.0,", ""));
          }) == "model.epsilon");
    CHECK(error_path([] {
              parse_run_config(replaced("\"epsilon\": 1.0", "\"epsilon\": \"x\""));
          }) == "model.epsilon");
    CHECK(error_path([] {
              parse_run_config(replaced("\"delta\": 1.0,", ""));
          }) == "model.delta");
    CHECK(error_path([] {
              parse_run_config(replaced("\"kind\": \"ohmic\"", "\"kind\": \"lorentz\""));
          }) == "model.spectral_density.kind");
    CHECK(error_path([] {
              parse_run_config(replaced("\"alpha\": 0.1", "\"alpha\": -0.1"));
          }) == "model.spectral_density.alpha");
    // the coupling key must match the kind
    CHECK(error_path([] {
              parse_run_config(replaced("\"alpha\": 0.1", "\"lambda\": 0.1"));
          }) == "model.spectral_density.lambda");
    CHECK(error_path([] {
              parse_run_config(replaced("\"omega_c\": 2.5", "\"omega_c\": 0"));
          }) == "model.spectral_density.omega_c");
    CHECK(error_path([] {
              parse_run_config(replaced("\"n_modes\": 100", "\"n_modes\": 0"));
          }) == "model.n_modes");
    CHECK(error_path([] {
              parse_run_config(replaced("\"beta\": 0.25", "\"beta\": 0"));
          }) == "model.beta");
    CHECK(error_path([] {
              parse_run_config(replaced("\"beta\": 0.25", "\"beta\": \"infinity\""));
          }) == "model.beta");
    CHECK(error_path([] {
              parse_run_config(replaced("\"F\": 2", "\"F\": 3"));
          }) == "mapping.F");
    CHECK(error_path([] {
              parse_run_config(replaced("\"gamma\": 0.5", "\"gamma\": -0.5"));
          }) == "mapping.gamma");
    CHECK(error_path([] {
              parse_run_config(replaced("\"dt\": 0.002", "\"dt\": -0.002"));
          }) == "dynamics.dt");
    CHECK(error_path([] {
              parse_run_config(replaced("\"t_max\": 15.0", "\"t_max\": 0.0"));
          }) == "dynamics.t_max");
    CHECK(error_path([] {
              parse_run_config(replaced("\"record_stride\": 20", "\"record_stride\": 0"));
          }) == "dynamics.record_stride");
    CHECK(error_path([] {
              parse_run_config(replaced("\"n_traj\": 1000", "\"n_traj\": 0"));
          }) == "ensemble.n_traj");
    CHECK(error_path([] {
              parse_run_config(replaced("\"n_traj\": 1000", "\"n_traj\": 2.5"));
          }) == "ensemble.n_traj");
    CHECK(error_path([] {
              parse_run_config(replaced("\"method\": \"ecmm\"", "\"method\": \"exact\""));
          }) == "method");
    CHECK(error_path([] {
              parse_run_config(replaced("\"initial_state\": 1", "\"initial_state\": 3"));
          }) == "initial_state");

    // unknown keys are rejected at every level
    CHECK(error_path([] {
              parse_run_config(replaced("\"method\": \"ecmm\"", "\"temprature\": 1"));
          }) == "temprature");
    CHECK(error_path([] {
              parse_run_config(replaced("\"n_modes\": 100", "\"nmodes\": 100"));
          }) == "model.nmodes");
    CHECK(error_path([] {
              parse_run_config(replaced("\"seed\": 7", "\"sneed\": 7"));
          }) == "ensemble.sneed");
}

TEST_CASE("integral floats are accepted for counts") {
    const RunConfig cfg =
        parse_run_config(replaced("\"n_traj\": 1000", "\"n_traj\": 1e5"));
    CHECK(cfg.n_traj == 100000);
}

TEST_CASE("canonical serialization round-trips and is a fixed point") {
    const RunConfig cfg = parse_run_config(kValid);
    const std::string text = run_config_to_json(cfg);
    const RunConfig again = parse_run_config(text);
    CHECK(run_config_to_json(again) == text);
    CHECK(again.gamma == cfg.gamma);
    CHECK(again.n_traj == cfg.n_traj);
    CHECK(again.beta.value() == cfg.beta.value());
    CHECK(*again.dt == *cfg.dt);

    // zero-temperature round trip
    RunConfig zt = cfg;
    zt.beta = Beta::infinite();
    const RunConfig zt2 = parse_run_config(run_config_to_json(zt));
    CHECK(zt2.beta.is_infinite());

    // dt left unset stays unset through the round trip
    RunConfig free_dt = cfg;
    free_dt.dt.reset();
    const std::string free_text = run_config_to_json(free_dt);
    CHECK(free_text.find("\"dt\"") == std::string::npos);
    CHECK_FALSE(parse_run_config(free_text).dt.has_value());
}

TEST_CASE("run metadata documents feed back in as configs") {
    const RunConfig cfg = parse_run_config(kValid);
    PopulationResult tiny;
    tiny.times = {0.0};
    tiny.num_states = 2;
    tiny.populations = {{1.0}, {0.0}};
    tiny.populations_se = {{0.0}, {0.0}};
    tiny.difference = {1.0};
    tiny.difference_se = {0.0};
    tiny.population_sum = {1.0};
    tiny.population_sum_se = {0.0};
    tiny.n_trajectories = 1000;

    const std::string doc = run_json(cfg, tiny, "test-version");
    const RunConfig inner = parse_run_config(doc);
    CHECK(inner.gamma == cfg.gamma);
    CHECK(inner.n_traj == cfg.n_traj);
    CHECK(inner.t_max == cfg.t_max);
}

TEST_CASE("file loading reports unreadable paths") {
    CHECK(error_path([] { load_run_config("/nonexistent/nowhere.json"); }) == "$");

    const std::string path = "test_config_roundtrip.json";
    {
        std::ofstream out(path);
        out << kValid;
    }
    const RunConfig cfg = load_run_config(path);
    CHECK(cfg.n_traj == 1000);
    std::remove(path.c_str());
}

TEST_CASE("warnings flag an explicit dt above the accuracy guideline") {
    RunConfig cfg = parse_run_config(kValid);
    CHECK(config_warnings(cfg).empty());  // dt = 0.002 is comfortably small

    cfg.dt = 1.0;  // omega_max is ~11.5 here, far past dt * omega_max = 0.2
    CHECK_FALSE(config_warnings(cfg).empty());

    cfg.dt.reset();  // the default rule needs no advisory
    CHECK(config_warnings(cfg).empty());
}
