// estimators.hpp -- trajectory-ensemble estimators for populations and
// electronic correlation functions, with deterministic batched accumulation.
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ecmm/bath.hpp"
#include "ecmm/dynamics.hpp"
#include "ecmm/mapping.hpp"

namespace ecmm {

// Initial-side weight of `state` (0-based):   (x^2 + p^2)/2 - gamma.
// Final-side weight:                    scale (x^2 + p^2)/2 - shift
// with the inverse-kernel coefficients of the space. Each sums to exactly 1
// over states on the constraint sphere. The overall factor F is applied once
// at estimate finalization, not here.
double initial_weight(const MappingSpace& space, const ElectronicPhasePoint& z, int state);
double final_weight(const MappingSpace& space, const ElectronicPhasePoint& z, int state);

// Per-(time, channel) running sum and sum of squares over trajectories.
// Accumulation and merging are plain ordered float sums, so a fixed batch
// structure plus a fixed merge order gives bit-reproducible statistics
// independent of thread count.
class TimeSeriesAccumulator {
public:
    TimeSeriesAccumulator(std::size_t n_times, std::size_t n_channels);

    std::size_t n_times() const noexcept { return nt_; }
    std::size_t n_channels() const noexcept { return nc_; }
    std::uint64_t count() const noexcept { return n_; }

    // values laid out time-major: values[t * n_channels + ch]
    void add_trajectory(const double* values);
    void merge(const TimeSeriesAccumulator& other);

    double mean(std::size_t t, std::size_t ch) const;
    double standard_error(std::size_t t, std::size_t ch) const;  // 0 when count < 2

private:
    std::size_t nt_;
    std::size_t nc_;
    std::uint64_t n_ = 0;
    std::vector<double> sum_;
    std::vector<double> sumsq_;
};

struct EnsembleOptions {
    std::uint64_t n_traj = 0;
    std::uint64_t seed = 0;
    Beta beta = Beta::infinite();
    int initial_state = 0;  // 0-based
    int threads = 1;
};

struct PopulationResult {
    std::vector<double> times;
    int num_states = 0;
    int initial_state = 0;  // 0-based
    // populations[m][k]: population of state m at times[k], transferred from
    // the initial state; plus the matching standard errors.
    std::vector<std::vector<double>> populations;
    std::vector<std::vector<double>> populations_se;
    std::vector<double> difference;  // P_0 - P_1
    std::vector<double> difference_se;
    std::vector<double> population_sum;  // sum_m P_m; constant in t up to rounding
    std::vector<double> population_sum_se;
    std::uint64_t n_trajectories = 0;
    std::uint64_t n_aborted = 0;
    double wall_seconds = 0.0;
};

// Population transfer P_{m<-n}(t): initial electronic point uniform on the
// constraint sphere, nuclear point Wigner thermal; per trajectory the product
// initial_weight(n) * final_weight(m, t); finalized with the overall factor F.
// Trajectories whose propagation blows up are dropped and counted in n_aborted.
PopulationResult estimate_population(const SpinBosonSystem& sys, const MappingSpace& space,
                                     const IntegratorConfig& cfg, const EnsembleOptions& opts);

// Mean-field baseline: focused initial condition, populations read directly as
// (x_m^2 + p_m^2)/2, no kernel weights and no overall factor.
PopulationResult ehrenfest_population(const SpinBosonSystem& sys, const IntegratorConfig& cfg,
                                      const EnsembleOptions& opts);

struct CorrelationResult {
    std::vector<double> times;
    std::vector<complexd> value;
    std::vector<double> se_re;
    std::vector<double> se_im;
    std::uint64_t n_trajectories = 0;
    std::uint64_t n_aborted = 0;
};

// C(t) = F * E[ A(z_0) Btilde(z_t) ] for electronic operators A, B, with the
// same initial ensemble as estimate_population. The population estimator is
// the special case A = |n><n|, B = |m><m|.
CorrelationResult estimate_correlation(const SpinBosonSystem& sys, const MappingSpace& space,
                                       const IntegratorConfig& cfg, const EnsembleOptions& opts,
                                       const HermitianOperator& a, const HermitianOperator& b);

// Record grid implied by (dt, record_stride, t_max): times k * stride * dt for
// k = 0..n_steps/stride, where n_steps is the smallest stride multiple with
// n_steps * dt >= t_max.
std::vector<double> record_grid(const IntegratorConfig& cfg);

}  // namespace ecmm
