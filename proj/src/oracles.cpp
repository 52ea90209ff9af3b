#include "ecmm/oracles.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace ecmm {

Eigen::VectorXcd propagate_exact(const Eigen::MatrixXd& v, const Eigen::VectorXcd& c0, double t) {
    if (v.rows() != v.cols() || v.rows() != c0.size())
        throw std::invalid_argument("propagate_exact: dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(v);
    const Eigen::MatrixXd& u = es.eigenvectors();
    Eigen::VectorXcd w = u.transpose() * c0;
    for (Eigen::Index k = 0; k < w.size(); ++k)
        w[k] *= std::exp(complexd(0.0, -es.eigenvalues()[k] * t));
    return u * w;
}

void rabi_populations(double eps, double delta, double t, double& p1, double& p2) {
    const double osq = eps * eps + delta * delta;
    if (osq == 0.0) {
        p1 = 1.0;
        p2 = 0.0;
        return;
    }
    const double s = std::sin(std::sqrt(osq) * t);
    p2 = delta * delta / osq * s * s;
    p1 = 1.0 - p2;
}

complexd trace_product_direct(const HermitianOperator& a, const HermitianOperator& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("trace_product_direct: dimension mismatch");
    return (a.matrix() * b.matrix()).trace();
}

WignerWidths wigner_width_oracle(double omega, Beta beta) {
    if (!(omega > 0.0)) throw std::invalid_argument("wigner_width_oracle: omega must be positive");

    // Boltzmann weights of the truncated eigenstate sum; n_used is the smallest
    // level count whose geometric tail is below 1e-8 relative to the partial sum.
    constexpr int nmax_cap = 200;
    std::vector<double> w;
    int n_used = 0;
    if (beta.is_infinite()) {
        w = {1.0};
    } else {
        const double q = std::exp(-beta.value() * omega);
        double partial = 0.0;
        double qn = 1.0;
        n_used = -1;
        w.reserve(nmax_cap + 1);
        for (int n = 0; n <= nmax_cap; ++n) {
            partial += qn;
            w.push_back(qn);
            qn *= q;
            if (qn / (1.0 - q) / partial < 1e-8) {
                n_used = n;
                break;
            }
        }
        if (n_used < 0)
            throw std::domain_error(
                "wigner_width_oracle: eigenstate sum not converged within 200 states");
        for (double& x : w) x /= partial;
    }

    // Dimensionless position lattice wide enough for the highest level kept.
    const double h = 0.04;
    const double span = std::sqrt(2.0 * n_used + 3.0) + 8.0;
    const int ni = static_cast<int>(std::ceil(span / h));
    const int nu = 2 * ni + 1;
    std::vector<double> u(nu);
    for (int i = 0; i < nu; ++i) u[i] = (i - ni) * h;

    // Hermite functions psi_0..psi_{n_used} on the lattice via the stable
    // three-term recurrence.
    std::vector<std::vector<double>> psi(n_used + 1, std::vector<double>(nu));
    const double g0 = std::pow(std::numbers::pi, -0.25);
    for (int i = 0; i < nu; ++i) psi[0][i] = g0 * std::exp(-0.5 * u[i] * u[i]);
    if (n_used >= 1)
        for (int i = 0; i < nu; ++i) psi[1][i] = std::numbers::sqrt2 * u[i] * psi[0][i];
    for (int n = 1; n < n_used; ++n) {
        const double a = std::sqrt(2.0 / (n + 1));
        const double b = std::sqrt(n / (n + 1.0));
        for (int i = 0; i < nu; ++i) psi[n + 1][i] = a * u[i] * psi[n][i] - b * psi[n - 1][i];
    }

    // Grid extents only; the closed form never enters the computed moments.
    const double coth = beta.is_infinite() ? 1.0 : 1.0 / std::tanh(0.5 * beta.value() * omega);
    const double dmax = std::max(6.0 * std::sqrt(2.0 / coth), 3.0);
    const int kmax = static_cast<int>(std::ceil(dmax / (2.0 * h)));
    const double vmax = 6.0 * std::sqrt(0.5 * coth) + 1.0;
    constexpr int nv = 201;
    const double hv = 2.0 * vmax / (nv - 1);
    std::vector<double> v(nv);
    for (int j = 0; j < nv; ++j) v[j] = -vmax + j * hv;

    // The Fourier sum over pair separations d_k = 2 k h factorizes each term
    // into a position sum times a cosine sum, so the moments accumulate
    // without forming the full (u, v) table.
    double s_norm = 0.0, s_u2 = 0.0, s_v2 = 0.0;
    std::vector<double> rho(nu);
    for (int k = 0; k <= kmax; ++k) {
        if (2 * k >= nu) break;
        std::fill(rho.begin(), rho.end(), 0.0);
        for (int n = 0; n <= n_used; ++n)
            for (int i = k; i < nu - k; ++i) rho[i] += w[n] * psi[n][i - k] * psi[n][i + k];
        double r0 = 0.0, r2 = 0.0;
        for (int i = 0; i < nu; ++i) {
            r0 += rho[i];
            r2 += u[i] * u[i] * rho[i];
        }
        const double d = 2.0 * k * h;
        double c0 = 0.0, c2 = 0.0;
        for (int j = 0; j < nv; ++j) {
            const double cj = std::cos(v[j] * d);
            c0 += cj;
            c2 += v[j] * v[j] * cj;
        }
        const double mult = (k == 0) ? 1.0 : 2.0;
        s_norm += mult * r0 * c0;
        s_u2 += mult * r2 * c0;
        s_v2 += mult * r0 * c2;
    }

    // sigma_u^2 and sigma_v^2 in oscillator units, then back to (R, P).
    const double su2 = s_u2 / s_norm;
    const double sv2 = s_v2 / s_norm;
    return {su2 / omega, sv2 * omega};
}

}  // namespace ecmm
