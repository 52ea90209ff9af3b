#include "ecmm/mapping.hpp"

#include <cmath>
#include <string>

#include "ecmm/sampling.hpp"

namespace ecmm {

namespace {

std::string violation_message(double measured, double expected) {
    return "phase-space point off the action constraint: |z|^2 = " + std::to_string(measured) +
           ", expected " + std::to_string(expected);
}

}  // namespace

ConstraintViolation::ConstraintViolation(double measured_norm, double expected_norm)
    : std::runtime_error(violation_message(measured_norm, expected_norm)),
      measured_(measured_norm),
      expected_(expected_norm) {}

HermitianOperator::HermitianOperator(Eigen::MatrixXcd m, double tol) : m_(std::move(m)) {
    if (m_.rows() < 1 || m_.rows() != m_.cols())
        throw std::invalid_argument("HermitianOperator: matrix must be square and non-empty");
    const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
    const double dev = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (!(dev <= tol * scale))
        throw std::invalid_argument("HermitianOperator: matrix is not Hermitian (deviation " +
                                    std::to_string(dev) + ")");
}

HermitianOperator HermitianOperator::identity(int dim) {
    return HermitianOperator(Eigen::MatrixXcd::Identity(dim, dim));
}

HermitianOperator HermitianOperator::projector(int state, int dim) {
    if (state < 0 || state >= dim) throw std::invalid_argument("projector: state out of range");
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    m(state, state) = 1.0;
    return HermitianOperator(std::move(m));
}

HermitianOperator HermitianOperator::pauli_x() {
    Eigen::MatrixXcd m(2, 2);
    m << 0, 1, 1, 0;
    return HermitianOperator(std::move(m));
}

HermitianOperator HermitianOperator::pauli_y() {
    Eigen::MatrixXcd m(2, 2);
    m << 0, complexd(0, -1), complexd(0, 1), 0;
    return HermitianOperator(std::move(m));
}

HermitianOperator HermitianOperator::pauli_z() {
    Eigen::MatrixXcd m(2, 2);
    m << 1, 0, 0, -1;
    return HermitianOperator(std::move(m));
}

double ElectronicPhasePoint::action_norm() const noexcept {
    double s = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) s += x[n] * x[n] + p[n] * p[n];
    return s;
}

MappingSpace::MappingSpace(int num_states, double gamma) : f_(num_states), gamma_(gamma) {
    if (f_ < 1) throw std::invalid_argument("MappingSpace: need at least one state");
    if (!(gamma_ > -1.0 / f_))
        throw std::invalid_argument("MappingSpace: gamma must exceed -1/F = " +
                                    std::to_string(-1.0 / f_));
    const double one_plus = 1.0 + f_ * gamma_;
    radius_sq_ = 2.0 * one_plus;
    inv_scale_ = (1.0 + f_) / (one_plus * one_plus);
    inv_shift_ = (1.0 - gamma_) / one_plus;
}

bool MappingSpace::on_constraint(const ElectronicPhasePoint& z, double rel_tol) const {
    if (z.num_states() != f_) return false;
    return std::abs(z.action_norm() - radius_sq_) <= rel_tol * radius_sq_;
}

void MappingSpace::require_on_constraint(const ElectronicPhasePoint& z, double rel_tol) const {
    if (z.num_states() != f_)
        throw std::invalid_argument("phase-space point has wrong number of states");
    if (!on_constraint(z, rel_tol)) throw ConstraintViolation(z.action_norm(), radius_sq_);
}

namespace {

// K = q * c c^dag - s * Id with c_n = x_n + i p_n; hermitian by construction.
Eigen::MatrixXcd rank_one_kernel(const ElectronicPhasePoint& z, double q, double s) {
    const int f = z.num_states();
    Eigen::VectorXcd c(f);
    for (int n = 0; n < f; ++n) c(n) = complexd(z.x[n], z.p[n]);
    Eigen::MatrixXcd m = q * (c * c.adjoint());
    m.diagonal().array() -= s;
    return m;
}

complexd quadratic_form(const Eigen::MatrixXcd& a, const ElectronicPhasePoint& z) {
    const int f = z.num_states();
    Eigen::VectorXcd c(f);
    for (int n = 0; n < f; ++n) c(n) = complexd(z.x[n], z.p[n]);
    return (c.adjoint() * a * c)(0);
}

}  // namespace

HermitianOperator kernel(const MappingSpace& space, const ElectronicPhasePoint& z) {
    space.require_on_constraint(z);
    return HermitianOperator(rank_one_kernel(z, 0.5, space.gamma()));
}

HermitianOperator inverse_kernel(const MappingSpace& space, const ElectronicPhasePoint& z) {
    space.require_on_constraint(z);
    return HermitianOperator(rank_one_kernel(z, 0.5 * space.inv_kernel_scale(),
                                             space.inv_kernel_shift()));
}

complexd op_to_function(const MappingSpace& space, const HermitianOperator& a,
                        const ElectronicPhasePoint& z) {
    if (a.dim() != space.num_states())
        throw std::invalid_argument("op_to_function: operator dimension mismatch");
    space.require_on_constraint(z);
    // Tr[A K] = (1/2) c^dag A c - gamma Tr A
    return 0.5 * quadratic_form(a.matrix(), z) - space.gamma() * a.matrix().trace();
}

complexd op_to_adjoint_function(const MappingSpace& space, const HermitianOperator& b,
                                const ElectronicPhasePoint& z) {
    if (b.dim() != space.num_states())
        throw std::invalid_argument("op_to_adjoint_function: operator dimension mismatch");
    space.require_on_constraint(z);
    // Tr[Kinv B] = (scale/2) c^dag B c - shift Tr B
    return 0.5 * space.inv_kernel_scale() * quadratic_form(b.matrix(), z) -
           space.inv_kernel_shift() * b.matrix().trace();
}

double sphere_moment2(const MappingSpace& space, int i, int j) {
    const int d = 2 * space.num_states();
    if (i < 0 || i >= d || j < 0 || j >= d)
        throw std::invalid_argument("sphere_moment2: index out of range");
    if (i != j) return 0.0;
    return 0.5 * space.radius_sq() / space.num_states();
}

double sphere_moment4(const MappingSpace& space, int i, int j, int k, int l) {
    const int d = 2 * space.num_states();
    for (int idx : {i, j, k, l})
        if (idx < 0 || idx >= d) throw std::invalid_argument("sphere_moment4: index out of range");
    const double xi = 0.5 * space.radius_sq();  // 1 + F gamma
    const int f = space.num_states();
    const double unit = xi * xi / (static_cast<double>(f) * (f + 1));
    const int pairings = (i == j && k == l) + (i == k && j == l) + (i == l && j == k);
    return unit * pairings;
}

McTraceEstimate trace_product_mc(const MappingSpace& space, const HermitianOperator& a,
                                 const HermitianOperator& b, std::uint64_t n_samples,
                                 std::uint64_t seed) {
    if (a.dim() != space.num_states() || b.dim() != space.num_states())
        throw std::invalid_argument("trace_product_mc: operator dimension mismatch");
    if (n_samples < 2) throw std::invalid_argument("trace_product_mc: need at least 2 samples");

    const double gamma = space.gamma();
    const double scale = space.inv_kernel_scale();
    const double shift = space.inv_kernel_shift();
    const complexd tra = a.matrix().trace();
    const complexd trb = b.matrix().trace();

    // Welford update; a shifted sum of squares loses all precision when the
    // integrand is near constant, e.g. for the identity pair.
    RngStream rng(seed, 0);
    double mean_re = 0.0, mean_im = 0.0, m2_re = 0.0, m2_im = 0.0;
    for (std::uint64_t s = 0; s < n_samples; ++s) {
        const ElectronicPhasePoint z = sample_uniform_constraint(space, rng);
        const complexd fa = 0.5 * quadratic_form(a.matrix(), z) - gamma * tra;
        const complexd fb = 0.5 * scale * quadratic_form(b.matrix(), z) - shift * trb;
        const complexd g = fa * fb;
        const double k = static_cast<double>(s + 1);
        const double d_re = g.real() - mean_re;
        mean_re += d_re / k;
        m2_re += d_re * (g.real() - mean_re);
        const double d_im = g.imag() - mean_im;
        mean_im += d_im / k;
        m2_im += d_im * (g.imag() - mean_im);
    }

    const double n = static_cast<double>(n_samples);
    const double f = space.num_states();
    const double var_re = m2_re / (n - 1.0);
    const double var_im = m2_im / (n - 1.0);
    McTraceEstimate est;
    est.value = complexd(f * mean_re, f * mean_im);
    est.se_re = f * std::sqrt(var_re / n);
    est.se_im = f * std::sqrt(var_im / n);
    return est;
}

}  // namespace ecmm
