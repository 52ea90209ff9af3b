// bath.hpp -- harmonic bath spectral densities, finite-mode discretization,
// and Wigner thermal sampling of the modes.
#pragma once

#include <stdexcept>
#include <vector>

#include "ecmm/sampling.hpp"

namespace ecmm {

// Inverse temperature with the zero-temperature limit as a first-class value.
class Beta {
public:
    static Beta finite(double value);  // value > 0
    static Beta infinite();

    bool is_infinite() const noexcept { return infinite_; }
    double value() const;  // throws std::logic_error when infinite

private:
    Beta(double value, bool infinite) : value_(value), infinite_(infinite) {}
    double value_;
    bool infinite_;
};

enum class SpectralKind { ohmic, debye };

// Bath spectral density J(omega):
//   ohmic:  (pi/2) alpha omega exp(-omega/omega_c)
//   debye:  2 lambda omega_c omega / (omega_c^2 + omega^2)
// Zero coupling strength is allowed (decoupled bath, used for analytic checks);
// negative values are rejected.
class SpectralDensity {
public:
    static SpectralDensity ohmic(double alpha, double omega_c);
    static SpectralDensity debye(double lambda, double omega_c);

    SpectralKind kind() const noexcept { return kind_; }
    double coupling() const noexcept { return coupling_; }  // alpha or lambda
    double omega_c() const noexcept { return omega_c_; }

    double value(double omega) const;  // J(omega), omega >= 0

    // Continuum reorganization energy (1/pi) Int_0^inf J(omega)/omega domega:
    // alpha omega_c / 2 (ohmic), lambda (debye).
    double reorganization_energy() const noexcept;

private:
    SpectralDensity(SpectralKind kind, double coupling, double omega_c);
    SpectralKind kind_;
    double coupling_;
    double omega_c_;
};

// Finite bath of n modes, kept in the index order of the closed-form quantile
// rule (ascending frequencies for ohmic, descending for debye).
struct DiscretizedBath {
    std::vector<double> omega;
    std::vector<double> c;

    int num_modes() const noexcept { return static_cast<int>(omega.size()); }
    double omega_max() const;
};

// Equal-weight quantile discretization:
//   ohmic:  omega_j = -omega_c ln(1 - j/(1+N)),        c_j = omega_j sqrt(alpha omega_c/(1+N))
//   debye:  omega_j = omega_c tan((pi/2)(1 - j/(1+N))), c_j = omega_j sqrt(2 lambda/(1+N))
// for j = 1..N. Every mode carries reorganization energy c_j^2/(2 omega_j^2)
// equal to exactly 1/(N+1) of the continuum value.
DiscretizedBath discretize(const SpectralDensity& sd, int n_modes);

// sum_j c_j^2 / (2 omega_j^2); equals N/(N+1) of the continuum value exactly.
double reorganization_energy(const DiscretizedBath& bath);

struct BathPhasePoint {
    std::vector<double> R;
    std::vector<double> P;
};

// Gaussian widths of the thermal Wigner distribution of one mode:
//   sigma_R^2 = coth(beta omega / 2) / (2 omega)
//   sigma_P^2 = omega coth(beta omega / 2) / 2
// with coth -> 1 at beta = inf (zero temperature).
struct WignerWidths {
    double sigma_r_sq;
    double sigma_p_sq;
};
WignerWidths wigner_widths(double omega, Beta beta);

// Independent Gaussian (R_j, P_j) for every mode, drawn in mode order, R before P.
BathPhasePoint sample_wigner_thermal(const DiscretizedBath& bath, Beta beta, RngStream& rng);

}  // namespace ecmm
