#include "ecmm/runner.hpp"

#include <cstdlib>
#include <string>
#include <thread>

#include "ecmm/io.hpp"

namespace ecmm {

AbortThresholdExceeded::AbortThresholdExceeded(std::uint64_t aborted, std::uint64_t total)
    : std::runtime_error("aborted trajectories exceed the 0.1% threshold: " +
                         std::to_string(aborted) + " of " + std::to_string(total)),
      aborted_(aborted), total_(total) {}

SpectralDensity make_spectral_density(const RunConfig& cfg) {
    return cfg.spectral_kind == SpectralKind::ohmic
               ? SpectralDensity::ohmic(cfg.spectral_coupling, cfg.spectral_omega_c)
               : SpectralDensity::debye(cfg.spectral_coupling, cfg.spectral_omega_c);
}

SpinBosonSystem make_system(const RunConfig& cfg) {
    return SpinBosonSystem(cfg.epsilon, cfg.delta,
                           discretize(make_spectral_density(cfg), cfg.n_modes));
}

IntegratorConfig make_integrator_config(const RunConfig& cfg, const SpinBosonSystem& sys) {
    IntegratorConfig ic;
    ic.dt = cfg.dt ? *cfg.dt : default_time_step(sys);
    ic.t_max = cfg.t_max;
    ic.record_stride = cfg.record_stride;
    return ic;
}

std::vector<std::string> config_warnings(const RunConfig& cfg) {
    std::vector<std::string> out;
    if (cfg.dt) {
        const DiscretizedBath bath = discretize(make_spectral_density(cfg), cfg.n_modes);
        const double product = *cfg.dt * bath.omega_max();
        if (product > 0.2)
            out.push_back("dynamics.dt: dt * omega_max = " + format_double(product) +
                          " exceeds the accuracy guideline 0.2");
    }
    return out;
}

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("ECMM_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

RunOutput run_simulation(const RunConfig& cfg, int threads) {
    const SpinBosonSystem sys = make_system(cfg);
    const IntegratorConfig ic = make_integrator_config(cfg, sys);

    EnsembleOptions opts;
    opts.n_traj = cfg.n_traj;
    opts.seed = cfg.seed;
    opts.beta = cfg.beta;
    opts.initial_state = cfg.initial_state - 1;
    opts.threads = resolve_thread_count(threads);

    PopulationResult result;
    if (cfg.method == Method::ecmm) {
        const MappingSpace space(cfg.num_states, cfg.gamma);
        result = estimate_population(sys, space, ic, opts);
    } else {
        result = ehrenfest_population(sys, ic, opts);
    }
    if (result.n_aborted * 1000 > opts.n_traj)
        throw AbortThresholdExceeded(result.n_aborted, opts.n_traj);

    RunConfig effective = cfg;
    effective.dt = ic.dt;
    return {std::move(result), effective};
}

}  // namespace ecmm
