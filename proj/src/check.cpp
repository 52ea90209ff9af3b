#include "ecmm/check.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ecmm/estimators.hpp"
#include "ecmm/io.hpp"
#include "ecmm/oracles.hpp"
#include "ecmm/runner.hpp"
#include "ecmm/sampling.hpp"

namespace ecmm {

namespace {

constexpr double kGammaMenu[] = {-0.2, 0.0, 0.36602540378443865, 0.5, 1.0};

CheckRow kernel_trace_check() {
    double worst = 0.0;
    std::uint64_t stream = 0;
    for (int f : {2, 3})
        for (double g : kGammaMenu) {
            const MappingSpace space(f, g);
            RngStream rng(7, stream++);
            for (int s = 0; s < 200; ++s) {
                const ElectronicPhasePoint z = sample_uniform_constraint(space, rng);
                const complexd tk = kernel(space, z).matrix().trace();
                const complexd ti = inverse_kernel(space, z).matrix().trace();
                worst = std::max({worst, std::abs(tk.real() - 1.0), std::abs(tk.imag()),
                                  std::abs(ti.real() - 1.0), std::abs(ti.imag())});
            }
        }
    return {"kernel unit traces", worst <= 1e-12, "max |trace - 1| = " + format_double(worst)};
}

CheckRow moment_oracle_check() {
    double worst = 0.0;
    for (int f : {2, 3, 4})
        for (double g : kGammaMenu) {
            const MappingSpace space(f, g);
            const int dim = 2 * f;
            const double xi = 1.0 + f * g;
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) {
                    const double a = sphere_moment2(space, i, j);
                    const double b = sphere_moment_oracle({i, j}, dim, xi);
                    worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(b)));
                }
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j)
                    for (int k = 0; k < dim; ++k)
                        for (int l = 0; l < dim; ++l) {
                            const double a = sphere_moment4(space, i, j, k, l);
                            const double b = sphere_moment_oracle({i, j, k, l}, dim, xi);
                            worst =
                                std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(b)));
                        }
        }
    return {"sphere moment oracles", worst <= 1e-12,
            "max relative deviation = " + format_double(worst)};
}

CheckRow reorganization_check() {
    double worst = 0.0;
    for (int kind = 0; kind < 2; ++kind)
        for (int n : {1, 3, 50, 300}) {
            const SpectralDensity sd = kind == 0 ? SpectralDensity::ohmic(0.4, 2.5)
                                                 : SpectralDensity::debye(0.25, 5.0);
            const double disc = reorganization_energy(discretize(sd, n));
            const double expect = n / (n + 1.0) * sd.reorganization_energy();
            worst = std::max(worst, std::abs(disc - expect) / expect);
        }
    return {"bath reorganization identity", worst <= 1e-12,
            "max relative deviation = " + format_double(worst)};
}

CheckRow pinned_rotation_check() {
    DiscretizedBath bath;
    bath.omega = {1.3};
    bath.c = {0.4};
    const SpinBosonSystem sys(0.7, 1.1, std::move(bath));
    const MappingSpace space(2, 0.5);
    RngStream rng(11, 0);

    TrajectoryState st;
    st.z = sample_uniform_constraint(space, rng);
    st.nuc.R = {0.7};
    st.nuc.P = {0.0};
    const Eigen::MatrixXd v = potential_matrix(sys, st.nuc.R);

    Eigen::VectorXcd c0(2);
    c0 << complexd(st.z.x[0], st.z.p[0]), complexd(st.z.x[1], st.z.p[1]);

    IntegratorConfig cfg;
    cfg.pin_nuclei = true;
    const double omega_eff = std::hypot(v(0, 0), v(0, 1));
    cfg.dt = 0.05 / omega_eff;
    cfg.t_max = 50.0 / omega_eff;
    const std::uint64_t n_steps = static_cast<std::uint64_t>(std::ceil(cfg.t_max / cfg.dt));

    double worst = 0.0;
    for (std::uint64_t s = 1; s <= n_steps; ++s) {
        step_mm(sys, cfg, st);
        const Eigen::VectorXcd ce = propagate_exact(v, c0, s * cfg.dt);
        for (int n = 0; n < 2; ++n) {
            const double act = 0.5 * (st.z.x[n] * st.z.x[n] + st.z.p[n] * st.z.p[n]);
            const double act_exact = 0.5 * std::norm(ce[n]);
            worst = std::max(worst, std::abs(act - act_exact));
        }
    }
    return {"pinned-nuclei rotation vs matrix exponential", worst <= 1e-8,
            "max action deviation = " + format_double(worst)};
}

CheckRow rabi_check(bool quick) {
    const SpinBosonSystem sys(1.0, 1.0, discretize(SpectralDensity::ohmic(0.0, 1.0), 3));
    const MappingSpace space(2, 0.5);
    IntegratorConfig cfg;
    cfg.dt = default_time_step(sys);
    cfg.t_max = 12.0;
    cfg.record_stride = 20;
    EnsembleOptions opts;
    opts.n_traj = quick ? 10000 : 100000;
    opts.seed = 20;
    opts.beta = Beta::finite(1.0);
    opts.initial_state = 0;
    opts.threads = resolve_thread_count(0);
    const PopulationResult res = estimate_population(sys, space, cfg, opts);

    double worst_z = 0.0;
    for (std::size_t k = 0; k < res.times.size(); ++k) {
        double p1 = 0.0, p2 = 0.0;
        rabi_populations(1.0, 1.0, res.times[k], p1, p2);
        const double z1 = std::abs(res.populations[0][k] - p1) /
                          std::max(res.populations_se[0][k], 1e-300);
        const double z2 = std::abs(res.populations[1][k] - p2) /
                          std::max(res.populations_se[1][k], 1e-300);
        worst_z = std::max({worst_z, z1, z2});
    }
    return {"decoupled-bath populations vs analytic", worst_z <= 3.0,
            "worst z-score = " + format_double(worst_z) + " over " +
                std::to_string(2 * res.times.size()) + " points"};
}

CheckRow determinism_check() {
    const SpinBosonSystem sys(1.0, 1.0, discretize(SpectralDensity::ohmic(0.1, 1.0), 3));
    const MappingSpace space(2, 0.5);
    IntegratorConfig cfg;
    cfg.dt = default_time_step(sys);
    cfg.t_max = 2.0;
    cfg.record_stride = 10;
    EnsembleOptions opts;
    opts.n_traj = 4096;
    opts.seed = 3;
    opts.beta = Beta::finite(5.0);
    opts.initial_state = 0;

    opts.threads = 1;
    const std::string csv1 = populations_csv(estimate_population(sys, space, cfg, opts));
    opts.threads = 4;
    const std::string csv4 = populations_csv(estimate_population(sys, space, cfg, opts));
    return {"thread-count determinism", csv1 == csv4,
            csv1 == csv4 ? "1-thread and 4-thread CSV bytes identical"
                         : "1-thread and 4-thread CSV bytes differ"};
}

}  // namespace

std::vector<CheckRow> run_check_suite(bool quick) {
    std::vector<CheckRow> rows;
    rows.push_back(kernel_trace_check());
    rows.push_back(moment_oracle_check());
    rows.push_back(reorganization_check());
    rows.push_back(pinned_rotation_check());
    rows.push_back(rabi_check(quick));
    rows.push_back(determinism_check());
    return rows;
}

}  // namespace ecmm
