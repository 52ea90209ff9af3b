// dynamics.hpp -- spin-boson trajectory propagation: exact electronic rotation
// sandwiched between symmetric nuclear half-steps.
#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ecmm/bath.hpp"
#include "ecmm/mapping.hpp"

namespace ecmm {

// Two electronic states linearly coupled to a discretized harmonic bath
// (mass-weighted coordinates, unit masses):
//   V(R)  = [[epsilon + sum_j c_j R_j, delta], [delta, -(epsilon + sum_j c_j R_j)]]
//   U0(R) = sum_j omega_j^2 R_j^2 / 2
class SpinBosonSystem {
public:
    SpinBosonSystem(double epsilon, double delta, DiscretizedBath bath);

    double epsilon() const noexcept { return epsilon_; }
    double delta() const noexcept { return delta_; }
    const DiscretizedBath& bath() const noexcept { return bath_; }
    const std::vector<double>& omega_sq() const noexcept { return omega_sq_; }
    double rabi_frequency() const noexcept;  // sqrt(epsilon^2 + delta^2)

private:
    double epsilon_;
    double delta_;
    DiscretizedBath bath_;
    std::vector<double> omega_sq_;
};

struct TrajectoryState {
    BathPhasePoint nuc;
    ElectronicPhasePoint z;
    double t = 0.0;
};

struct IntegratorConfig {
    double dt = 0.0;
    double t_max = 0.0;
    int record_stride = 10;
    // Hold (R, P) fixed and rotate the electronic variables under V(R) only.
    // Test hook for comparing against the constant-V matrix exponential.
    bool pin_nuclei = false;
};

// dt = min(0.05 / omega_max, 0.05 / sqrt(epsilon^2 + delta^2)); the electronic
// bound is skipped when epsilon = delta = 0.
double default_time_step(const SpinBosonSystem& sys);

Eigen::MatrixXd potential_matrix(const SpinBosonSystem& sys, const std::vector<double>& r);
double bare_bath_potential(const SpinBosonSystem& sys, const std::vector<double>& r);  // U0(R)

// dP_j/dt = -omega_j^2 R_j - c_j [(x_1^2 + p_1^2) - (x_2^2 + p_2^2)] / 2.
// The zero-point parameter cancels in the difference, so the force is the same
// for every gamma.
void nuclear_force(const SpinBosonSystem& sys, const TrajectoryState& state,
                   std::vector<double>& force);

// z <- exp(-i V dt) acting on c_n = (x_n + i p_n)/sqrt(2). Exactly norm
// preserving up to rounding; closed form for 2x2 V, eigendecomposition above.
void electronic_rotation(const Eigen::MatrixXd& v, double dt, ElectronicPhasePoint& z);

// One symmetric step of size dt: half-kick P, half-drift R, exact electronic
// rotation under V at the midpoint geometry, half-drift R, half-kick P.
// Second order overall, time reversible, and exactly norm preserving on the
// electronic variables. Throws std::runtime_error when the bath coordinate sum
// turns non-finite (blown-up trajectory).
void step_mm(const SpinBosonSystem& sys, const IntegratorConfig& cfg, TrajectoryState& state);

// The mean-field baseline uses the identical flow (the zero-point parameter
// never enters the equations of motion); provided under its own name so call
// sites read as what they are.
void step_ehrenfest(const SpinBosonSystem& sys, const IntegratorConfig& cfg,
                    TrajectoryState& state);

double electronic_norm(const ElectronicPhasePoint& z);  // sum_n (x_n^2 + p_n^2)

// H = sum_j P_j^2/2 + U0(R) + sum_nm [ (x_n x_m + p_n p_m)/2 - gamma d_nm ] V_nm(R).
double total_energy(const SpinBosonSystem& sys, const MappingSpace& space,
                    const TrajectoryState& state);

}  // namespace ecmm
