// oracles.hpp -- independent reference routes used by tests and the built-in
// check suite: exact few-state propagation, the two-state analytic populations,
// direct operator traces, and a grid-quadrature route to the thermal Wigner widths.
#pragma once

#include <Eigen/Dense>

#include "ecmm/bath.hpp"
#include "ecmm/mapping.hpp"

namespace ecmm {

// c(t) = exp(-i V t) c0 for a real symmetric V, via eigendecomposition.
Eigen::VectorXcd propagate_exact(const Eigen::MatrixXd& v, const Eigen::VectorXcd& c0, double t);

// Populations of the isolated two-state system started in state 1 under
// V = [[eps, delta], [delta, -eps]]:
//   p2(t) = delta^2 / (eps^2 + delta^2) * sin^2(sqrt(eps^2 + delta^2) t).
void rabi_populations(double eps, double delta, double t, double& p1, double& p2);

// Tr[A B] evaluated directly.
complexd trace_product_direct(const HermitianOperator& a, const HermitianOperator& b);

// Second moments of the thermal oscillator Wigner function obtained the long
// way: Boltzmann-weighted eigenstate sum for the density matrix on a position
// lattice (hard cap 200 states), Fourier quadrature to the Wigner function on
// an (x, p) grid, then moment quadrature. Throws std::domain_error when beta
// is too small for the eigenstate sum to converge within the cap.
WignerWidths wigner_width_oracle(double omega, Beta beta);

}  // namespace ecmm
