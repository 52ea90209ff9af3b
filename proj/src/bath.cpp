#include "ecmm/bath.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ecmm {

Beta Beta::finite(double value) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw std::invalid_argument("beta must be positive and finite");
    return Beta(value, false);
}

Beta Beta::infinite() { return Beta(0.0, true); }

double Beta::value() const {
    if (infinite_) throw std::logic_error("zero-temperature beta has no finite value");
    return value_;
}

SpectralDensity::SpectralDensity(SpectralKind kind, double coupling, double omega_c)
    : kind_(kind), coupling_(coupling), omega_c_(omega_c) {
    if (!(coupling_ >= 0.0) || !std::isfinite(coupling_))
        throw std::invalid_argument("spectral density: coupling strength must be >= 0");
    if (!(omega_c_ > 0.0) || !std::isfinite(omega_c_))
        throw std::invalid_argument("spectral density: omega_c must be positive");
}

SpectralDensity SpectralDensity::ohmic(double alpha, double omega_c) {
    return SpectralDensity(SpectralKind::ohmic, alpha, omega_c);
}

SpectralDensity SpectralDensity::debye(double lambda, double omega_c) {
    return SpectralDensity(SpectralKind::debye, lambda, omega_c);
}

double SpectralDensity::value(double omega) const {
    if (omega < 0.0) throw std::invalid_argument("spectral density: omega must be >= 0");
    if (kind_ == SpectralKind::ohmic)
        return 0.5 * std::numbers::pi * coupling_ * omega * std::exp(-omega / omega_c_);
    return 2.0 * coupling_ * omega_c_ * omega / (omega_c_ * omega_c_ + omega * omega);
}

double SpectralDensity::reorganization_energy() const noexcept {
    return kind_ == SpectralKind::ohmic ? 0.5 * coupling_ * omega_c_ : coupling_;
}

double DiscretizedBath::omega_max() const {
    if (omega.empty()) throw std::logic_error("omega_max: empty bath");
    return *std::max_element(omega.begin(), omega.end());
}

DiscretizedBath discretize(const SpectralDensity& sd, int n_modes) {
    if (n_modes < 1) throw std::invalid_argument("discretize: need at least one mode");
    DiscretizedBath bath;
    bath.omega.resize(n_modes);
    bath.c.resize(n_modes);
    const double denom = 1.0 + n_modes;
    if (sd.kind() == SpectralKind::ohmic) {
        const double cfac = std::sqrt(sd.coupling() * sd.omega_c() / denom);
        for (int j = 1; j <= n_modes; ++j) {
            const double w = -sd.omega_c() * std::log(1.0 - j / denom);
            bath.omega[j - 1] = w;
            bath.c[j - 1] = w * cfac;
        }
    } else {
        const double cfac = std::sqrt(2.0 * sd.coupling() / denom);
        for (int j = 1; j <= n_modes; ++j) {
            const double w = sd.omega_c() * std::tan(0.5 * std::numbers::pi * (1.0 - j / denom));
            bath.omega[j - 1] = w;
            bath.c[j - 1] = w * cfac;
        }
    }
    return bath;
}

double reorganization_energy(const DiscretizedBath& bath) {
    double s = 0.0;
    for (std::size_t j = 0; j < bath.omega.size(); ++j)
        s += bath.c[j] * bath.c[j] / (2.0 * bath.omega[j] * bath.omega[j]);
    return s;
}

WignerWidths wigner_widths(double omega, Beta beta) {
    if (!(omega > 0.0)) throw std::invalid_argument("wigner_widths: omega must be positive");
    const double coth = beta.is_infinite() ? 1.0 : 1.0 / std::tanh(0.5 * beta.value() * omega);
    return {coth / (2.0 * omega), 0.5 * omega * coth};
}

BathPhasePoint sample_wigner_thermal(const DiscretizedBath& bath, Beta beta, RngStream& rng) {
    const int nb = bath.num_modes();
    BathPhasePoint pt;
    pt.R.resize(nb);
    pt.P.resize(nb);
    for (int j = 0; j < nb; ++j) {
        const WignerWidths w = wigner_widths(bath.omega[j], beta);
        pt.R[j] = std::sqrt(w.sigma_r_sq) * rng.normal();
        pt.P[j] = std::sqrt(w.sigma_p_sq) * rng.normal();
    }
    return pt;
}

}  // namespace ecmm
