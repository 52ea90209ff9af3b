#include "ecmm/dynamics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ecmm {

namespace {

// z <- exp(-i V dt) z for a symmetric 2x2 V, split into the mean phase exp(-i mbar dt)
// and the closed-form rotation of the traceless remainder.
inline void rotate2(double v00, double v01, double v11, double dt, double* x, double* p) {
    const double mbar = 0.5 * (v00 + v11);
    const double a = 0.5 * (v00 - v11);
    const double b = v01;
    const double y = std::sqrt(a * a + b * b) * dt;
    const double co = std::cos(y);
    const double s = dt * (std::abs(y) < 1e-6 ? 1.0 - y * y / 6.0 : std::sin(y) / y);
    const double x0 = co * x[0] + s * (a * p[0] + b * p[1]);
    const double p0 = co * p[0] - s * (a * x[0] + b * x[1]);
    const double x1 = co * x[1] + s * (b * p[0] - a * p[1]);
    const double p1 = co * p[1] - s * (b * x[0] - a * x[1]);
    const double phi = mbar * dt;
    if (phi == 0.0) {
        x[0] = x0;
        p[0] = p0;
        x[1] = x1;
        p[1] = p1;
        return;
    }
    const double cph = std::cos(phi);
    const double sph = std::sin(phi);
    x[0] = cph * x0 + sph * p0;
    p[0] = cph * p0 - sph * x0;
    x[1] = cph * x1 + sph * p1;
    p[1] = cph * p1 - sph * x1;
}

inline double action_difference_half(const double* x, const double* p) {
    return 0.5 * ((x[0] * x[0] + p[0] * p[0]) - (x[1] * x[1] + p[1] * p[1]));
}

}  // namespace

SpinBosonSystem::SpinBosonSystem(double epsilon, double delta, DiscretizedBath bath)
    : epsilon_(epsilon), delta_(delta), bath_(std::move(bath)) {
    if (!std::isfinite(epsilon_) || !std::isfinite(delta_))
        throw std::invalid_argument("spin-boson system: epsilon and delta must be finite");
    omega_sq_.resize(bath_.omega.size());
    for (std::size_t j = 0; j < omega_sq_.size(); ++j) {
        if (!(bath_.omega[j] > 0.0))
            throw std::invalid_argument("spin-boson system: mode frequencies must be positive");
        omega_sq_[j] = bath_.omega[j] * bath_.omega[j];
    }
    if (bath_.c.size() != bath_.omega.size())
        throw std::invalid_argument("spin-boson system: omega and c length mismatch");
}

double SpinBosonSystem::rabi_frequency() const noexcept {
    return std::sqrt(epsilon_ * epsilon_ + delta_ * delta_);
}

double default_time_step(const SpinBosonSystem& sys) {
    double dt = std::numeric_limits<double>::infinity();
    if (sys.bath().num_modes() > 0) dt = 0.05 / sys.bath().omega_max();
    if (sys.rabi_frequency() > 0.0) dt = std::min(dt, 0.05 / sys.rabi_frequency());
    if (!std::isfinite(dt))
        throw std::invalid_argument("default_time_step: the system has no frequency scale");
    return dt;
}

Eigen::MatrixXd potential_matrix(const SpinBosonSystem& sys, const std::vector<double>& r) {
    const auto& bath = sys.bath();
    if (static_cast<int>(r.size()) != bath.num_modes())
        throw std::invalid_argument("potential_matrix: coordinate count != mode count");
    double h = sys.epsilon();
    for (std::size_t j = 0; j < r.size(); ++j) h += bath.c[j] * r[j];
    Eigen::MatrixXd v(2, 2);
    v << h, sys.delta(), sys.delta(), -h;
    return v;
}

double bare_bath_potential(const SpinBosonSystem& sys, const std::vector<double>& r) {
    if (r.size() != sys.omega_sq().size())
        throw std::invalid_argument("bare_bath_potential: coordinate count != mode count");
    double u = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) u += 0.5 * sys.omega_sq()[j] * r[j] * r[j];
    return u;
}

void nuclear_force(const SpinBosonSystem& sys, const TrajectoryState& state,
                   std::vector<double>& force) {
    const auto& bath = sys.bath();
    const int nb = bath.num_modes();
    if (state.z.num_states() != 2)
        throw std::invalid_argument("nuclear_force: needs two electronic states");
    if (static_cast<int>(state.nuc.R.size()) != nb)
        throw std::invalid_argument("nuclear_force: coordinate count != mode count");
    force.resize(nb);
    const double a = action_difference_half(state.z.x.data(), state.z.p.data());
    for (int j = 0; j < nb; ++j)
        force[j] = -sys.omega_sq()[j] * state.nuc.R[j] - bath.c[j] * a;
}

void electronic_rotation(const Eigen::MatrixXd& v, double dt, ElectronicPhasePoint& z) {
    const int f = z.num_states();
    if (v.rows() != f || v.cols() != f)
        throw std::invalid_argument("electronic_rotation: matrix size != state count");
    if (f == 2) {
        rotate2(v(0, 0), v(0, 1), v(1, 1), dt, z.x.data(), z.p.data());
        return;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(v);
    Eigen::VectorXcd c(f);
    for (int n = 0; n < f; ++n) c[n] = complexd(z.x[n], z.p[n]);
    Eigen::VectorXcd w = es.eigenvectors().transpose() * c;
    for (int k = 0; k < f; ++k) w[k] *= std::exp(complexd(0.0, -es.eigenvalues()[k] * dt));
    c = es.eigenvectors() * w;
    for (int n = 0; n < f; ++n) {
        z.x[n] = c[n].real();
        z.p[n] = c[n].imag();
    }
}

void step_mm(const SpinBosonSystem& sys, const IntegratorConfig& cfg, TrajectoryState& state) {
    if (state.z.num_states() != 2)
        throw std::invalid_argument("step_mm: needs two electronic states");
    const int nb = sys.bath().num_modes();
    if (static_cast<int>(state.nuc.R.size()) != nb || static_cast<int>(state.nuc.P.size()) != nb)
        throw std::invalid_argument("step_mm: nuclear point size != mode count");

    const double dt = cfg.dt;
    const double half = 0.5 * dt;
    double* x = state.z.x.data();
    double* p = state.z.p.data();

    if (cfg.pin_nuclei) {
        double hsum = 0.0;
        for (int j = 0; j < nb; ++j) hsum += sys.bath().c[j] * state.nuc.R[j];
        const double h = sys.epsilon() + hsum;
        if (!std::isfinite(h)) throw std::runtime_error("step_mm: non-finite coupling sum");
        rotate2(h, sys.delta(), -h, dt, x, p);
        state.t += dt;
        return;
    }

    double* r = state.nuc.R.data();
    double* pp = state.nuc.P.data();
    const double* w2 = sys.omega_sq().data();
    const double* c = sys.bath().c.data();

    double a = action_difference_half(x, p);
    double hsum = 0.0;
    for (int j = 0; j < nb; ++j) {
        pp[j] -= half * (w2[j] * r[j] + c[j] * a);
        r[j] += half * pp[j];
        hsum += c[j] * r[j];
    }
    const double h = sys.epsilon() + hsum;
    if (!std::isfinite(h)) throw std::runtime_error("step_mm: non-finite coupling sum");
    rotate2(h, sys.delta(), -h, dt, x, p);
    a = action_difference_half(x, p);
    for (int j = 0; j < nb; ++j) {
        r[j] += half * pp[j];
        pp[j] -= half * (w2[j] * r[j] + c[j] * a);
    }
    state.t += dt;
}

void step_ehrenfest(const SpinBosonSystem& sys, const IntegratorConfig& cfg,
                    TrajectoryState& state) {
    step_mm(sys, cfg, state);
}

double electronic_norm(const ElectronicPhasePoint& z) { return z.action_norm(); }

double total_energy(const SpinBosonSystem& sys, const MappingSpace& space,
                    const TrajectoryState& state) {
    if (state.z.num_states() != space.num_states())
        throw std::invalid_argument("total_energy: state count mismatch");
    double e = bare_bath_potential(sys, state.nuc.R);
    for (double pj : state.nuc.P) e += 0.5 * pj * pj;
    const Eigen::MatrixXd v = potential_matrix(sys, state.nuc.R);
    const int f = state.z.num_states();
    if (v.rows() != f) throw std::invalid_argument("total_energy: potential size mismatch");
    for (int n = 0; n < f; ++n)
        for (int m = 0; m < f; ++m) {
            const double knm = 0.5 * (state.z.x[n] * state.z.x[m] + state.z.p[n] * state.z.p[m]) -
                               (n == m ? space.gamma() : 0.0);
            e += knm * v(n, m);
        }
    return e;
}

}  // namespace ecmm
