// runner.hpp -- builds the system from a RunConfig and drives one simulation.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ecmm/config.hpp"
#include "ecmm/dynamics.hpp"
#include "ecmm/estimators.hpp"

namespace ecmm {

// Raised after a finished ensemble when more than 0.1% of trajectories blew up.
class AbortThresholdExceeded : public std::runtime_error {
public:
    AbortThresholdExceeded(std::uint64_t aborted, std::uint64_t total);
    std::uint64_t aborted() const noexcept { return aborted_; }
    std::uint64_t total() const noexcept { return total_; }

private:
    std::uint64_t aborted_;
    std::uint64_t total_;
};

SpectralDensity make_spectral_density(const RunConfig& cfg);
SpinBosonSystem make_system(const RunConfig& cfg);
IntegratorConfig make_integrator_config(const RunConfig& cfg, const SpinBosonSystem& sys);

// Non-fatal configuration advisories (e.g. dt * omega_max above the accuracy
// guideline 0.2). One line each.
std::vector<std::string> config_warnings(const RunConfig& cfg);

// requested > 0 takes precedence; otherwise ECMM_THREADS; otherwise the
// hardware concurrency. Always >= 1.
int resolve_thread_count(int requested);

struct RunOutput {
    PopulationResult result;
    // Config with every default materialized (dt resolved to the value used),
    // sufficient to reproduce the run byte for byte.
    RunConfig effective_config;
};

// Dispatches on cfg.method. Throws ValidationError-adjacent std exceptions on
// bad input and AbortThresholdExceeded when the abort fraction crosses 0.1%.
RunOutput run_simulation(const RunConfig& cfg, int threads);

}  // namespace ecmm
