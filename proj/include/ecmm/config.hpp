// config.hpp -- run configuration: JSON schema, validation with field-path
// diagnostics, canonical serialization.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "ecmm/bath.hpp"

namespace ecmm {

// Message always starts with the dotted field path of the offending entry.
class ValidationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Method { ecmm, ehrenfest };

struct RunConfig {
    // model
    double epsilon = 0.0;
    double delta = 0.0;
    SpectralKind spectral_kind = SpectralKind::ohmic;
    double spectral_coupling = 0.0;  // alpha (ohmic) or lambda (debye)
    double spectral_omega_c = 0.0;
    int n_modes = 300;
    Beta beta = Beta::infinite();

    // mapping
    int num_states = 2;
    double gamma = 0.0;

    // dynamics
    std::optional<double> dt;  // empty -> default_time_step rule
    double t_max = 0.0;
    int record_stride = 10;

    // ensemble
    std::uint64_t n_traj = 0;
    std::uint64_t seed = 0;

    Method method = Method::ecmm;
    int initial_state = 1;  // 1-based in the file format
};

// Parses and validates. Accepts either a bare config object or a run-metadata
// wrapper containing a "config" entry (so a previous run's run.json can be fed
// straight back in). Unknown keys are rejected with their path.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);  // reads the file, then parses

// Canonical serialization (sorted keys, shortest round-trip numbers). "dt" is
// emitted only when set; materialize it first to freeze the effective value.
std::string run_config_to_json(const RunConfig& cfg);

}  // namespace ecmm
