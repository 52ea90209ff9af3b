#include <doctest.h>

#include <cmath>
#include <complex>

#include "ecmm/oracles.hpp"

using namespace ecmm;

TEST_CASE("exact propagation of a small hermitian system") {
    Eigen::MatrixXd v(2, 2);
    v << 1.0, 1.0, 1.0, -1.0;
    Eigen::VectorXcd c0(2);
    c0 << 1.0, 0.0;

    // V = sigma_z + sigma_x has eigenvalues +-sqrt(2); |c2|^2 = sin^2(sqrt(2) t)/2
    for (double t : {0.1, 0.7, 2.0, 9.0}) {
        const Eigen::VectorXcd c = propagate_exact(v, c0, t);
        CHECK(std::abs(c.squaredNorm() - 1.0) <= 1e-13);
        const double p2 = std::norm(c(1));
        const double expect = 0.5 * std::sin(std::sqrt(2.0) * t) * std::sin(std::sqrt(2.0) * t);
        CHECK(std::abs(p2 - expect) <= 1e-12);
    }

    // t = 0 is the identity, and forward then backward returns the start
    const Eigen::VectorXcd id = propagate_exact(v, c0, 0.0);
    CHECK(std::abs(id(0) - c0(0)) <= 1e-15);
    const Eigen::VectorXcd back = propagate_exact(v, propagate_exact(v, c0, 1.3), -1.3);
    CHECK(std::abs(back(0) - c0(0)) <= 1e-13);
    CHECK(std::abs(back(1) - c0(1)) <= 1e-13);

    Eigen::VectorXcd wrong(3);
    wrong.setZero();
    CHECK_THROWS_AS(propagate_exact(v, wrong, 1.0), std::invalid_argument);
}

TEST_CASE("two-state analytic populations") {
    double p1 = 0.0, p2 = 0.0;

    // eps = delta = 1: Omega = sqrt(2), full population return at t = pi/sqrt(2)
    rabi_populations(1.0, 1.0, 3.14159265358979323846 / std::sqrt(2.0), p1, p2);
    CHECK(p2 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(p1 == doctest::Approx(1.0).epsilon(1e-12));

    // at the half period the transfer peaks at delta^2/Omega^2 = 1/2
    rabi_populations(1.0, 1.0, 3.14159265358979323846 / (2.0 * std::sqrt(2.0)), p1, p2);
    CHECK(p2 == doctest::Approx(0.5).epsilon(1e-12));

    // resonant case: p2 = sin^2(delta t)
    rabi_populations(0.0, 0.7, 0.9, p1, p2);
    CHECK(p2 == doctest::Approx(std::pow(std::sin(0.63), 2)).epsilon(1e-12));
    CHECK(p1 + p2 == doctest::Approx(1.0).epsilon(1e-14));

    // uncoupled states never transfer
    rabi_populations(1.0, 0.0, 5.0, p1, p2);
    CHECK(p1 == 1.0);
    CHECK(p2 == 0.0);

    // degenerate decoupled system stays put as well
    rabi_populations(0.0, 0.0, 5.0, p1, p2);
    CHECK(p1 == 1.0);
}

TEST_CASE("direct operator traces") {
    using HO = HermitianOperator;
    CHECK(trace_product_direct(HO::pauli_x(), HO::pauli_x()).real() ==
          doctest::Approx(2.0).epsilon(1e-15));
    CHECK(std::abs(trace_product_direct(HO::pauli_x(), HO::pauli_y())) <= 1e-15);
    CHECK(std::abs(trace_product_direct(HO::pauli_x(), HO::pauli_z())) <= 1e-15);
    CHECK(trace_product_direct(HO::projector(0, 2), HO::projector(0, 2)).real() ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(trace_product_direct(HO::projector(0, 2), HO::projector(1, 2))) <= 1e-15);
    CHECK(trace_product_direct(HO::identity(3), HO::identity(3)).real() ==
          doctest::Approx(3.0).epsilon(1e-15));
    CHECK_THROWS_AS(trace_product_direct(HO::identity(2), HO::identity(3)),
                    std::invalid_argument);
}

TEST_CASE("grid-quadrature wigner widths agree with the closed form") {
    struct Case {
        double omega;
        Beta beta;
    };
    const Case cases[] = {
        {2.0, Beta::infinite()},   {1.0, Beta::infinite()},  {1.0, Beta::finite(2.0)},
        {1.0, Beta::finite(10.0)}, {2.0, Beta::finite(0.6)}, {0.5, Beta::finite(20.0)},
    };
    for (const Case& c : cases) {
        CAPTURE(c.omega);
        const WignerWidths closed = wigner_widths(c.omega, c.beta);
        const WignerWidths grid = wigner_width_oracle(c.omega, c.beta);
        CHECK(std::abs(grid.sigma_r_sq - closed.sigma_r_sq) <= 1e-6 * closed.sigma_r_sq);
        CHECK(std::abs(grid.sigma_p_sq - closed.sigma_p_sq) <= 1e-6 * closed.sigma_p_sq);
    }

    // too hot: the eigenstate sum cannot converge within its cap
    CHECK_THROWS_AS(wigner_width_oracle(1.0, Beta::finite(0.01)), std::domain_error);
    CHECK_THROWS_AS(wigner_width_oracle(-1.0, Beta::infinite()), std::invalid_argument);
}
