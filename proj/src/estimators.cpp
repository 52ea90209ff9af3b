#include "ecmm/estimators.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <thread>

#include "ecmm/sampling.hpp"

namespace ecmm {

double initial_weight(const MappingSpace& space, const ElectronicPhasePoint& z, int state) {
    if (state < 0 || state >= space.num_states())
        throw std::invalid_argument("initial_weight: state out of range");
    return 0.5 * (z.x[state] * z.x[state] + z.p[state] * z.p[state]) - space.gamma();
}

double final_weight(const MappingSpace& space, const ElectronicPhasePoint& z, int state) {
    if (state < 0 || state >= space.num_states())
        throw std::invalid_argument("final_weight: state out of range");
    return 0.5 * space.inv_kernel_scale() * (z.x[state] * z.x[state] + z.p[state] * z.p[state]) -
           space.inv_kernel_shift();
}

TimeSeriesAccumulator::TimeSeriesAccumulator(std::size_t n_times, std::size_t n_channels)
    : nt_(n_times), nc_(n_channels), sum_(n_times * n_channels, 0.0),
      sumsq_(n_times * n_channels, 0.0) {
    if (n_times == 0 || n_channels == 0)
        throw std::invalid_argument("accumulator: empty time or channel axis");
}

void TimeSeriesAccumulator::add_trajectory(const double* values) {
    const std::size_t n = nt_ * nc_;
    for (std::size_t i = 0; i < n; ++i) {
        sum_[i] += values[i];
        sumsq_[i] += values[i] * values[i];
    }
    ++n_;
}

void TimeSeriesAccumulator::merge(const TimeSeriesAccumulator& other) {
    if (other.nt_ != nt_ || other.nc_ != nc_)
        throw std::invalid_argument("accumulator merge: shape mismatch");
    const std::size_t n = nt_ * nc_;
    for (std::size_t i = 0; i < n; ++i) {
        sum_[i] += other.sum_[i];
        sumsq_[i] += other.sumsq_[i];
    }
    n_ += other.n_;
}

double TimeSeriesAccumulator::mean(std::size_t t, std::size_t ch) const {
    if (t >= nt_ || ch >= nc_) throw std::out_of_range("accumulator mean: index out of range");
    if (n_ == 0) throw std::logic_error("accumulator mean: no trajectories");
    return sum_[t * nc_ + ch] / static_cast<double>(n_);
}

double TimeSeriesAccumulator::standard_error(std::size_t t, std::size_t ch) const {
    if (t >= nt_ || ch >= nc_) throw std::out_of_range("accumulator se: index out of range");
    if (n_ < 2) return 0.0;
    const double n = static_cast<double>(n_);
    const double s = sum_[t * nc_ + ch];
    const double var = std::max(0.0, (sumsq_[t * nc_ + ch] - s * s / n) / (n - 1.0));
    return std::sqrt(var / n);
}

std::vector<double> record_grid(const IntegratorConfig& cfg) {
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt))
        throw std::invalid_argument("record_grid: dt must be positive");
    if (!(cfg.t_max >= 0.0) || !std::isfinite(cfg.t_max))
        throw std::invalid_argument("record_grid: t_max must be >= 0");
    if (cfg.record_stride < 1)
        throw std::invalid_argument("record_grid: record_stride must be >= 1");
    const double block = cfg.record_stride * cfg.dt;
    std::uint64_t m = static_cast<std::uint64_t>(std::floor(cfg.t_max / block));
    if (static_cast<double>(m) * block < cfg.t_max) ++m;
    std::vector<double> times(m + 1);
    for (std::uint64_t k = 0; k <= m; ++k) times[k] = static_cast<double>(k) * block;
    return times;
}

namespace {

constexpr std::uint64_t kBatch = 1024;

struct EnsembleStats {
    TimeSeriesAccumulator acc;
    std::uint64_t aborted = 0;
};

// Runs fn(k, row) for k = 0..n_traj-1 in fixed batches of kBatch consecutive
// indices. Each batch accumulates sequentially into its own slot, and the
// slots merge in a fixed pairwise tree, so the totals are bit-identical for
// every thread count. fn returns false when the trajectory aborted.
template <typename TrajFn>
EnsembleStats run_batched(std::uint64_t n_traj, int threads, std::size_t n_times,
                          std::size_t n_channels, const TrajFn& fn) {
    if (n_traj == 0) throw std::invalid_argument("ensemble: n_traj must be positive");
    const std::uint64_t n_batches = (n_traj + kBatch - 1) / kBatch;
    std::vector<TimeSeriesAccumulator> acc(n_batches, TimeSeriesAccumulator(n_times, n_channels));
    std::vector<std::uint64_t> aborted(n_batches, 0);
    std::atomic<std::uint64_t> next{0};

    auto worker = [&](std::exception_ptr& err) noexcept {
        try {
            std::vector<double> row(n_times * n_channels);
            for (;;) {
                const std::uint64_t b = next.fetch_add(1, std::memory_order_relaxed);
                if (b >= n_batches) return;
                const std::uint64_t lo = b * kBatch;
                const std::uint64_t hi = std::min(n_traj, lo + kBatch);
                for (std::uint64_t k = lo; k < hi; ++k) {
                    if (fn(k, row.data()))
                        acc[b].add_trajectory(row.data());
                    else
                        ++aborted[b];
                }
            }
        } catch (...) {
            err = std::current_exception();
        }
    };

    const int nthreads = std::max(1, threads);
    std::vector<std::exception_ptr> errs(static_cast<std::size_t>(nthreads));
    if (nthreads == 1 || n_batches == 1) {
        worker(errs[0]);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&worker, &errs, t] { worker(errs[t]); });
        for (auto& th : pool) th.join();
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);

    for (std::uint64_t stride = 1; stride < n_batches; stride *= 2)
        for (std::uint64_t i = 0; i + stride < n_batches; i += 2 * stride)
            acc[i].merge(acc[i + stride]);

    EnsembleStats out{std::move(acc[0]), 0};
    for (std::uint64_t a : aborted) out.aborted += a;
    return out;
}

// Propagates stride steps between records and fills one row per record time.
// fill(row_ptr) reads the current state.
template <typename Fill>
bool propagate_and_record(const SpinBosonSystem& sys, const IntegratorConfig& cfg,
                          TrajectoryState& st, std::size_t n_rec, std::size_t n_channels,
                          double* row, const Fill& fill) {
    try {
        for (std::size_t rec = 0; rec < n_rec; ++rec) {
            if (rec > 0)
                for (int s = 0; s < cfg.record_stride; ++s) step_mm(sys, cfg, st);
            fill(row + rec * n_channels);
        }
    } catch (const std::runtime_error&) {
        return false;
    }
    return true;
}

}  // namespace

PopulationResult estimate_population(const SpinBosonSystem& sys, const MappingSpace& space,
                                     const IntegratorConfig& cfg, const EnsembleOptions& opts) {
    const int f = space.num_states();
    if (f != 2) throw std::invalid_argument("estimate_population: propagation needs two states");
    if (opts.initial_state < 0 || opts.initial_state >= f)
        throw std::invalid_argument("estimate_population: initial_state out of range");
    const std::vector<double> times = record_grid(cfg);
    const std::size_t n_rec = times.size();
    const std::size_t nc = static_cast<std::size_t>(f) + 2;  // populations, D, sum

    const auto t0 = std::chrono::steady_clock::now();
    auto traj = [&](std::uint64_t k, double* row) -> bool {
        RngStream rng(opts.seed, k);
        TrajectoryState st;
        st.z = sample_uniform_constraint(space, rng);
        st.nuc = sample_wigner_thermal(sys.bath(), opts.beta, rng);
        const double w0 = initial_weight(space, st.z, opts.initial_state);
        return propagate_and_record(sys, cfg, st, n_rec, nc, row, [&](double* out) {
            double total = 0.0;
            for (int m = 0; m < f; ++m) {
                out[m] = w0 * final_weight(space, st.z, m);
                total += out[m];
            }
            out[f] = out[0] - out[1];
            out[f + 1] = total;
        });
    };
    EnsembleStats stats = run_batched(opts.n_traj, opts.threads, n_rec, nc, traj);
    const auto t1 = std::chrono::steady_clock::now();

    PopulationResult res;
    res.times = times;
    res.num_states = f;
    res.initial_state = opts.initial_state;
    res.populations.assign(f, std::vector<double>(n_rec));
    res.populations_se.assign(f, std::vector<double>(n_rec));
    res.difference.resize(n_rec);
    res.difference_se.resize(n_rec);
    res.population_sum.resize(n_rec);
    res.population_sum_se.resize(n_rec);
    const double ff = static_cast<double>(f);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t k = 0; k < n_rec; ++k) {
        for (int m = 0; m < f; ++m) {
            res.populations[m][k] = stats.acc.count() ? ff * stats.acc.mean(k, m) : nan;
            res.populations_se[m][k] = ff * stats.acc.standard_error(k, m);
        }
        res.difference[k] = stats.acc.count() ? ff * stats.acc.mean(k, f) : nan;
        res.difference_se[k] = ff * stats.acc.standard_error(k, f);
        res.population_sum[k] = stats.acc.count() ? ff * stats.acc.mean(k, f + 1) : nan;
        res.population_sum_se[k] = ff * stats.acc.standard_error(k, f + 1);
    }
    res.n_trajectories = stats.acc.count();
    res.n_aborted = stats.aborted;
    res.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    return res;
}

PopulationResult ehrenfest_population(const SpinBosonSystem& sys, const IntegratorConfig& cfg,
                                      const EnsembleOptions& opts) {
    const int f = 2;
    if (opts.initial_state < 0 || opts.initial_state >= f)
        throw std::invalid_argument("ehrenfest_population: initial_state out of range");
    const std::vector<double> times = record_grid(cfg);
    const std::size_t n_rec = times.size();
    const std::size_t nc = static_cast<std::size_t>(f) + 2;

    const auto t0 = std::chrono::steady_clock::now();
    auto traj = [&](std::uint64_t k, double* row) -> bool {
        RngStream rng(opts.seed, k);
        TrajectoryState st;
        st.z = sample_ehrenfest_initial(f, opts.initial_state, rng);
        st.nuc = sample_wigner_thermal(sys.bath(), opts.beta, rng);
        return propagate_and_record(sys, cfg, st, n_rec, nc, row, [&](double* out) {
            double total = 0.0;
            for (int m = 0; m < f; ++m) {
                out[m] = 0.5 * (st.z.x[m] * st.z.x[m] + st.z.p[m] * st.z.p[m]);
                total += out[m];
            }
            out[f] = out[0] - out[1];
            out[f + 1] = total;
        });
    };
    EnsembleStats stats = run_batched(opts.n_traj, opts.threads, n_rec, nc, traj);
    const auto t1 = std::chrono::steady_clock::now();

    PopulationResult res;
    res.times = times;
    res.num_states = f;
    res.initial_state = opts.initial_state;
    res.populations.assign(f, std::vector<double>(n_rec));
    res.populations_se.assign(f, std::vector<double>(n_rec));
    res.difference.resize(n_rec);
    res.difference_se.resize(n_rec);
    res.population_sum.resize(n_rec);
    res.population_sum_se.resize(n_rec);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t k = 0; k < n_rec; ++k) {
        for (int m = 0; m < f; ++m) {
            res.populations[m][k] = stats.acc.count() ? stats.acc.mean(k, m) : nan;
            res.populations_se[m][k] = stats.acc.standard_error(k, m);
        }
        res.difference[k] = stats.acc.count() ? stats.acc.mean(k, f) : nan;
        res.difference_se[k] = stats.acc.standard_error(k, f);
        res.population_sum[k] = stats.acc.count() ? stats.acc.mean(k, f + 1) : nan;
        res.population_sum_se[k] = stats.acc.standard_error(k, f + 1);
    }
    res.n_trajectories = stats.acc.count();
    res.n_aborted = stats.aborted;
    res.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    return res;
}

CorrelationResult estimate_correlation(const SpinBosonSystem& sys, const MappingSpace& space,
                                       const IntegratorConfig& cfg, const EnsembleOptions& opts,
                                       const HermitianOperator& a, const HermitianOperator& b) {
    const int f = space.num_states();
    if (f != 2) throw std::invalid_argument("estimate_correlation: propagation needs two states");
    if (a.dim() != f || b.dim() != f)
        throw std::invalid_argument("estimate_correlation: operator dimension != state count");
    const std::vector<double> times = record_grid(cfg);
    const std::size_t n_rec = times.size();
    constexpr std::size_t nc = 2;  // re, im

    auto traj = [&](std::uint64_t k, double* row) -> bool {
        RngStream rng(opts.seed, k);
        TrajectoryState st;
        st.z = sample_uniform_constraint(space, rng);
        st.nuc = sample_wigner_thermal(sys.bath(), opts.beta, rng);
        const complexd a0 = op_to_function(space, a, st.z);
        return propagate_and_record(sys, cfg, st, n_rec, nc, row, [&](double* out) {
            const complexd g = a0 * op_to_adjoint_function(space, b, st.z);
            out[0] = g.real();
            out[1] = g.imag();
        });
    };
    EnsembleStats stats = run_batched(opts.n_traj, opts.threads, n_rec, nc, traj);

    CorrelationResult res;
    res.times = times;
    res.value.resize(n_rec);
    res.se_re.resize(n_rec);
    res.se_im.resize(n_rec);
    const double ff = static_cast<double>(f);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t k = 0; k < n_rec; ++k) {
        res.value[k] = stats.acc.count() ? ff * complexd(stats.acc.mean(k, 0), stats.acc.mean(k, 1))
                                         : complexd(nan, nan);
        res.se_re[k] = ff * stats.acc.standard_error(k, 0);
        res.se_im[k] = ff * stats.acc.standard_error(k, 1);
    }
    res.n_trajectories = stats.acc.count();
    res.n_aborted = stats.aborted;
    return res;
}

}  // namespace ecmm
